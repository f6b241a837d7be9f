"""Call-by-value evaluation of terms against pluggable U, K and mu oracles.

Type-1 arguments of ``U``, ``K`` and ``mu`` are turned into exact
:class:`UPSet` values before an oracle sees them.  A lambda is analysed
symbolically (see :mod:`.forms`): the tail of its zero set comes from the
eventual closed form, the finite head from evaluating it pointwise.  A
``cert`` term is sampled over two periods instead.  Characteristic
functions are normalized with ``min(X(n), 1)`` on the way, so only the
zero set reaches the oracle.
"""

from dataclasses import dataclass
from typing import Callable, Optional

from ..errors import FuelExhausted, NonUPArgument, OracleUnavailable
from ..mu import SearchableFn, k_prime, mu_search
from ..upset import UPSet
from . import forms
from .forms import Form
from .syntax import ARITY, App, Cert, Const, Lam, Num, Var, site_key

__all__ = [
    "Oracles",
    "Evaluator",
    "evaluate",
    "filter_oracles",
    "bounded_mu",
    "DEFAULT_FUEL",
    "DEFAULT_MU_BOUND",
]

DEFAULT_FUEL = 10**7
DEFAULT_MU_BOUND = 10_000


@dataclass(frozen=True, eq=False)
class Closure:
    var: str
    body: object
    env: dict


@dataclass(frozen=True)
class Prim:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Certified:
    threshold: int
    period: int
    fn: object


@dataclass(frozen=True, eq=False)
class SymLam:
    # a lambda whose environment mentions the set variable
    var: str
    body: object
    env: dict


@dataclass
class Oracles:
    U: Optional[Callable[[UPSet], int]] = None
    K: Optional[Callable[[int, UPSet], int]] = None
    mu: Optional[Callable[[SearchableFn], int]] = None


def bounded_mu(bound=DEFAULT_MU_BOUND):
    """mu by bounded search; 0 when no zero is found.

    With a zero-set certificate the bound is raised to cover the least zero.
    """

    def mu(f):
        b = bound
        if f.zero_set is not None:
            b = max(b, f.zero_set.threshold + f.zero_set.period)
        x = mu_search(f, b)
        return 0 if x is None else x

    return mu


def filter_oracles(filt, mu_bound=DEFAULT_MU_BOUND):
    """U answers from ``filt`` (0 = member), K is K', mu is bounded search."""
    return Oracles(U=lambda s: 0 if filt.contains(s) else 1, K=k_prime, mu=bounded_mu(mu_bound))


def _is_sym(v):
    if isinstance(v, (Form, SymLam)):
        return True
    return isinstance(v, Prim) and any(_is_sym(a) for a in v.args)


class Evaluator:
    def __init__(self, oracles=None, fuel=DEFAULT_FUEL, resolved=None):
        self.oracles = oracles or Oracles()
        self.fuel = fuel
        self.resolved = resolved
        self.queries = []

    def tick(self):
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted("evaluation step budget exhausted")

    # -- concrete evaluation ------------------------------------------

    def eval(self, t, env):
        self.tick()
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise OracleUnavailable(f"no value for free variable {t.name!r}") from None
        if isinstance(t, Const):
            return Prim(t.name)
        if isinstance(t, Lam):
            return Closure(t.var, t.body, env)
        if isinstance(t, App):
            if self.resolved is not None and t.fn == Const("U"):
                key = site_key(t.arg)
                if key in self.resolved:
                    return self.resolved[key]
            return self.apply(self.eval(t.fn, env), self.eval(t.arg, env))
        if isinstance(t, Cert):
            return Certified(t.threshold, t.period, self.eval(t.body, env))
        raise TypeError(f"not a term: {t!r}")

    def apply(self, fn, arg):
        self.tick()
        if isinstance(fn, Closure):
            return self.eval(fn.body, {**fn.env, fn.var: arg})
        if isinstance(fn, Certified):
            return self.apply(fn.fn, arg)
        if isinstance(fn, Prim):
            args = fn.args + (arg,)
            if len(args) < ARITY[fn.name]:
                return Prim(fn.name, args)
            return self._prim(fn.name, args)
        raise TypeError(f"cannot apply {fn!r}")

    def _prim(self, name, args):
        if name == "S":
            return args[0] + 1
        if name == "rec":
            x, _, z = args
            acc = 0
            for i in range(x):
                acc = self.apply(self.apply(z, acc), i)
            return acc
        if name == "U":
            return self._query_u(args[0])
        if name == "K":
            return self._query_k(*args)
        if name == "mu":
            return self._query_mu(args[0])
        return _ARITH[name](*args)

    def _query_u(self, fn):
        if self.oracles.U is None:
            raise OracleUnavailable("no U oracle")
        s = self.to_upset(fn)
        v = self.oracles.U(s)
        self.queries.append(("U", s, v))
        return v

    def _query_k(self, n, fn):
        if self.oracles.K is None:
            raise OracleUnavailable("no K oracle")
        s = self.to_upset(fn)
        k = self.oracles.K(n, s)
        self.queries.append(("K", n, s, k))
        return k

    def _query_mu(self, fn):
        if self.oracles.mu is None:
            raise OracleUnavailable("no mu oracle")
        try:
            zeros = self.to_upset(fn)
        except NonUPArgument:
            zeros = None
        return self.oracles.mu(SearchableFn(lambda x: self.apply(fn, x), zeros))

    # -- type-1 values to sets ----------------------------------------

    def char(self, fn, n):
        """Normalized characteristic value ``min(fn(n), 1)``."""
        return min(self.apply(fn, n), 1)

    def to_upset(self, fn):
        """The set ``{n : fn(n) = 0}``."""
        if isinstance(fn, Certified):
            return self._sample(fn)
        if not isinstance(fn, (Closure, Prim)):
            raise NonUPArgument(f"not a type-1 value: {fn!r}")
        form = self._apply_sym(fn, forms.J)
        if isinstance(form, int):
            form = forms.const(form)
        if not isinstance(form, Form):
            raise NonUPArgument("set expression does not denote a number")
        t, p, bits = form.zero_residues()
        exc = 0
        for n in range(t):
            if self.char(fn, n) == 0:
                exc |= 1 << n
        return UPSet._from_bits(t, p, exc, bits)

    def _sample(self, c):
        t, p = c.threshold, c.period
        s = UPSet._from_bits(
            t, p,
            sum(1 << n for n in range(t) if self.char(c.fn, n) == 0),
            sum(1 << (n % p) for n in range(t, t + p) if self.char(c.fn, n) == 0),
        )
        for n in range(t + p, t + 2 * p):
            if (self.char(c.fn, n) == 0) != (n in s):
                raise NonUPArgument(
                    f"certificate (threshold {t}, period {p}) refuted at {n}", n=n
                )
        return s

    def _sym(self, t, env):
        self.tick()
        if not any(_is_sym(env.get(v)) for v in t.free_vars):
            return self.eval(t, env)
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Lam):
            return SymLam(t.var, t.body, env)
        if isinstance(t, App):
            return self._apply_sym(self._sym(t.fn, env), self._sym(t.arg, env))
        raise NonUPArgument(f"{t} depends on the set variable outside the set grammar",
                            term=str(t))

    def _apply_sym(self, fn, arg):
        if not _is_sym(fn) and not _is_sym(arg):
            return self.apply(fn, arg)
        self.tick()
        if isinstance(fn, (SymLam, Closure)):
            return self._sym(fn.body, {**fn.env, fn.var: arg})
        if isinstance(fn, Prim):
            args = fn.args + (arg,)
            if len(args) < ARITY[fn.name]:
                return Prim(fn.name, args)
            op = forms.PRIM_OPS.get(fn.name)
            if op is None:
                raise NonUPArgument(
                    f"{fn.name} applied to an argument depending on the set variable"
                )
            if any(isinstance(a, (SymLam, Prim, Closure, Certified)) for a in args):
                raise NonUPArgument(f"higher-type argument to {fn.name} in a set expression")
            return op(*(a if isinstance(a, Form) else forms.const(a) for a in args))
        raise NonUPArgument(f"cannot analyse application of {fn!r}")


_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: max(a - b, 0),
    "mul": lambda a, b: a * b,
    "mod": lambda a, b: a % b if b else a,
    "min": min,
    "max": max,
    "eq": lambda a, b: 0 if a == b else 1,
    "lt": lambda a, b: 0 if a < b else 1,
    "le": lambda a, b: 0 if a <= b else 1,
    "and": lambda a, b: 0 if a == 0 and b == 0 else 1,
    "or": lambda a, b: 0 if a == 0 or b == 0 else 1,
    "not": lambda a: 1 if a == 0 else 0,
    "if": lambda c, a, b: a if c == 0 else b,
}


def evaluate(term, oracles=None, inputs=None, fuel=DEFAULT_FUEL, resolved=None, args=()):
    """Evaluate ``term`` with free variables bound by ``inputs``, then apply
    the result to the numerals in ``args``."""
    ev = Evaluator(oracles, fuel, resolved)
    value = ev.eval(term, dict(inputs or {}))
    for a in args:
        value = ev.apply(value, a)
    return value
