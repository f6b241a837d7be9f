"""Typed terms over 0, S, the type-0 recursor, arithmetic primitives and the
constants U, K and mu."""

from .evaluate import (
    DEFAULT_FUEL,
    Evaluator,
    Oracles,
    bounded_mu,
    evaluate,
    filter_oracles,
)
from .sites import SetExpr, collect_usites, to_upset
from .syntax import (
    N,
    T1,
    T2,
    App,
    Arrow,
    Base,
    Cert,
    Const,
    Lam,
    Num,
    Var,
    app,
    fun,
    parse,
    parse_type,
    pretty,
)
from .typecheck import typecheck

__all__ = [
    "DEFAULT_FUEL", "Evaluator", "Oracles", "bounded_mu", "evaluate", "filter_oracles",
    "SetExpr", "collect_usites", "to_upset",
    "N", "T1", "T2", "App", "Arrow", "Base", "Cert", "Const", "Lam", "Num", "Var",
    "app", "fun", "parse", "parse_type", "pretty", "typecheck",
]
