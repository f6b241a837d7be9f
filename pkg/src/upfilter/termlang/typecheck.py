from ..errors import TermTypeError
from .syntax import CONST_TYPES, N, T1, App, Arrow, Cert, Const, Lam, Num, Var


def typecheck(term, ctx=None):
    """Type of ``term`` under ``ctx`` (free variable name -> type).

    >>> from .syntax import parse
    >>> str(typecheck(parse("U")))
    '0(0(0))'
    """
    return _check(term, dict(ctx or {}))


def _check(t, ctx):
    if isinstance(t, Num):
        return N
    if isinstance(t, Var):
        if t.name not in ctx:
            raise TermTypeError(f"unbound variable {t.name!r}", term=t.name)
        return ctx[t.name]
    if isinstance(t, Const):
        return CONST_TYPES[t.name]
    if isinstance(t, Lam):
        return Arrow(_check(t.body, {**ctx, t.var: t.ty}), t.ty)
    if isinstance(t, App):
        fn = _check(t.fn, ctx)
        arg = _check(t.arg, ctx)
        if not isinstance(fn, Arrow):
            raise TermTypeError(
                f"{t.fn} has type {fn} and cannot be applied",
                term=str(t), expected="a function type", actual=str(fn),
            )
        if fn.arg != arg:
            raise TermTypeError(
                f"argument {t.arg} has type {arg}, expected {fn.arg}",
                term=str(t), expected=str(fn.arg), actual=str(arg),
            )
        return fn.result
    if isinstance(t, Cert):
        body = _check(t.body, ctx)
        if body != T1:
            raise TermTypeError(
                f"certified term must have type 1, got {body}",
                term=str(t), expected=str(T1), actual=str(body),
            )
        return T1
    raise TypeError(f"not a term: {t!r}")
