"""U-application sites and their conversion to sets.

In the normal form handled here every ``U`` is applied to a one-variable
set expression whose other free variables are inputs of the whole term.
The sites are listed innermost first, so a site that mentions another
site's verdict comes after it.
"""

from dataclasses import dataclass

from ..errors import NonUPArgument
from . import forms
from .evaluate import DEFAULT_FUEL, Evaluator
from .syntax import App, Cert, Const, Lam, Var, set_lambda, spine, subterms

__all__ = ["SetExpr", "collect_usites", "to_upset"]

_SET_PRIMS = set(forms.PRIM_OPS)


@dataclass(frozen=True)
class SetExpr:
    term: object

    @property
    def lam(self):
        return set_lambda(self.term)

    @property
    def key(self):
        return self.term.site_key

    def __str__(self):
        return str(self.lam)


def _check_grammar(body, var):
    """Syntactic check that subterms mentioning ``var`` stay inside the set
    grammar; subterms not mentioning it are unrestricted.  Products of two
    unbounded factors pass here and are rejected during conversion."""
    if var not in body.free_vars:
        return
    if isinstance(body, Var):
        return
    if isinstance(body, App):
        head, args = spine(body)
        if isinstance(head, Const) and head.name in _SET_PRIMS:
            for a in args:
                _check_grammar(a, var)
            return
        if isinstance(head, Lam):
            _check_grammar(head.body, var if head.var != var else None)
            for a in args:
                _check_grammar(a, var)
            return
    raise NonUPArgument(f"{body} is outside the set-expression grammar", term=str(body))


def collect_usites(term):
    """Distinct U-argument set expressions of ``term``, innermost first.

    A site may mention only the free variables of the whole term besides
    its own bound variable.
    """
    allowed = term.free_vars
    seen = {}
    for t in subterms(term):
        if not isinstance(t, App) or t.fn != Const("U"):
            continue
        arg = t.arg
        if not arg.free_vars <= allowed:
            bound = sorted(arg.free_vars - allowed)
            raise NonUPArgument(
                f"U-argument {arg} depends on bound variables {bound}", term=str(arg)
            )
        lam = set_lambda(arg)
        if isinstance(lam, Lam):
            _check_grammar(lam.body, lam.var)
        seen.setdefault(arg.site_key, SetExpr(arg))
    _check_bare_u(term)
    return list(seen.values())


def _check_bare_u(t, applied=False):
    if isinstance(t, Const) and t.name == "U" and not applied:
        raise NonUPArgument("U used without an argument", term=str(t))
    if isinstance(t, App):
        _check_bare_u(t.fn, applied=True)
        _check_bare_u(t.arg)
    elif isinstance(t, (Lam, Cert)):
        _check_bare_u(t.body)


def to_upset(expr, resolved=None, oracles=None, inputs=None, fuel=DEFAULT_FUEL):
    """Exact set ``{j : expr(j) = 0}``.

    Inner ``U`` calls are answered from ``resolved`` (site key -> verdict)
    first and from ``oracles`` otherwise.
    """
    ev = Evaluator(oracles, fuel, resolved)
    return ev.to_upset(ev.eval(expr.term, dict(inputs or {})))
