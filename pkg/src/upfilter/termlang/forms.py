"""Eventual closed forms of one-variable arithmetic expressions.

A :class:`Form` describes a function ``f`` of a natural ``j`` from some
threshold on: for ``j >= threshold``, ``f(j) = slope[r] * j + offset[r]``
with ``r = j % period``.  Numerals, ``j``, addition, truncated subtraction,
multiplication (one side eventually periodic), ``mod`` and ``min``/``max``
by numerals, comparisons, connectives and ``if`` are all closed on forms,
and the zero set of a form is ultimately periodic.  Anything else raises
:class:`NonUPArgument`.

Truth values follow the membership convention: 0 is true, 1 is false.
"""

from dataclasses import dataclass

from .. import upset
from ..errors import NonUPArgument, PeriodOverflow

__all__ = ["Form", "J", "const", "PRIM_OPS"]


@dataclass(frozen=True)
class Form:
    threshold: int
    period: int
    slope: tuple
    offset: tuple

    def at(self, j):
        r = j % self.period
        return self.slope[r] * j + self.offset[r]

    def constant(self):
        """The value if this form is eventually constant, else ``None``."""
        if any(self.slope) or len(set(self.offset)) != 1:
            return None
        return self.offset[0]

    def zero_residues(self):
        """``(threshold, period, bits)`` with bit ``r`` set iff ``f(j) == 0``
        for every ``j >= threshold`` with ``j % period == r``."""
        t, bits = self.threshold, 0
        for r, (a, c) in enumerate(zip(self.slope, self.offset)):
            if a:
                t = max(t, _settle(a, c))
            elif c == 0:
                bits |= 1 << r
        return t, self.period, bits


def const(n):
    return Form(0, 1, (0,), (n,))


J = Form(0, 1, (1,), (0,))


def _settle(d, e):
    # from here on d*j + e has the sign of d (d != 0)
    return abs(e) // abs(d) + 1


def _classes(*forms):
    p = 1
    for f in forms:
        p = upset.lcm(p, f.period)
    if p > upset.PERIOD_CAP:
        raise PeriodOverflow(f"period {p} exceeds cap {upset.PERIOD_CAP}", period=p)
    t = max(f.threshold for f in forms)
    rows = [
        tuple(x for f in forms for x in (f.slope[r % f.period], f.offset[r % f.period]))
        for r in range(p)
    ]
    return t, p, rows


def _pointwise(forms, step):
    """Apply ``step(*row) -> (slope, offset, bound)`` per residue class."""
    t, p, rows = _classes(*forms)
    slope, offset = [], []
    for row in rows:
        a, c, bound = step(*row)
        slope.append(a)
        offset.append(c)
        t = max(t, bound)
    return Form(t, p, tuple(slope), tuple(offset))


def _truth(b):
    return 0 if b else 1


def add(f, g):
    return _pointwise((f, g), lambda a1, c1, a2, c2: (a1 + a2, c1 + c2, 0))


def sub(f, g):
    def step(a1, c1, a2, c2):
        d, e = a1 - a2, c1 - c2
        if d > 0:
            return d, e, _settle(d, e)
        if d == 0:
            return 0, max(e, 0), 0
        return 0, 0, _settle(d, e)

    return _pointwise((f, g), step)


def mul(f, g):
    def step(a1, c1, a2, c2):
        if a1 and a2:
            raise NonUPArgument("product of two unbounded expressions")
        return a1 * c2 + a2 * c1, c1 * c2, 0

    return _pointwise((f, g), step)


def mod(f, g):
    m = g.constant()
    if m is None:
        raise NonUPArgument("mod by a non-constant expression")
    if m == 0:
        return f
    p = upset.lcm(f.period, m)
    if p > upset.PERIOD_CAP:
        raise PeriodOverflow(f"period {p} exceeds cap {upset.PERIOD_CAP}", period=p)
    # m divides p, so j = r (mod p) gives a*j + c = a*r + c (mod m)
    offsets = tuple(
        (f.slope[r % f.period] * r + f.offset[r % f.period]) % m for r in range(p)
    )
    return Form(f.threshold, p, (0,) * p, offsets)


def _compare(f, g, pick):
    # pick(d, e) -> result row given d = a1 - a2, e = c1 - c2
    def step(a1, c1, a2, c2):
        d, e = a1 - a2, c1 - c2
        a, c = pick(d, e, (a1, c1), (a2, c2))
        return a, c, _settle(d, e) if d else 0

    return _pointwise((f, g), step)


def minimum(f, g):
    return _compare(f, g, lambda d, e, x, y: x if (d < 0 or (d == 0 and e <= 0)) else y)


def maximum(f, g):
    return _compare(f, g, lambda d, e, x, y: x if (d > 0 or (d == 0 and e >= 0)) else y)


def eq(f, g):
    return _compare(f, g, lambda d, e, x, y: (0, _truth(d == 0 and e == 0)))


def lt(f, g):
    return _compare(f, g, lambda d, e, x, y: (0, _truth(d < 0 or (d == 0 and e < 0))))


def le(f, g):
    return _compare(f, g, lambda d, e, x, y: (0, _truth(d < 0 or (d == 0 and e <= 0))))


def _is_zero(a, c):
    # eventual truth of "value == 0" in one class, with its bound
    if a:
        return False, _settle(a, c)
    return c == 0, 0


def land(f, g):
    def step(a1, c1, a2, c2):
        z1, b1 = _is_zero(a1, c1)
        z2, b2 = _is_zero(a2, c2)
        return 0, _truth(z1 and z2), max(b1, b2)

    return _pointwise((f, g), step)


def lor(f, g):
    def step(a1, c1, a2, c2):
        z1, b1 = _is_zero(a1, c1)
        z2, b2 = _is_zero(a2, c2)
        return 0, _truth(z1 or z2), max(b1, b2)

    return _pointwise((f, g), step)


def lnot(f):
    def step(a, c):
        z, b = _is_zero(a, c)
        return 0, _truth(not z), b

    return _pointwise((f,), step)


def ite(cond, f, g):
    def step(a0, c0, a1, c1, a2, c2):
        z, b = _is_zero(a0, c0)
        return (a1, c1, b) if z else (a2, c2, b)

    return _pointwise((cond, f, g), step)


def succ(f):
    return add(f, const(1))


PRIM_OPS = {
    "S": succ,
    "add": add,
    "sub": sub,
    "mul": mul,
    "mod": mod,
    "min": minimum,
    "max": maximum,
    "eq": eq,
    "lt": lt,
    "le": le,
    "and": land,
    "or": lor,
    "not": lnot,
    "if": ite,
}
