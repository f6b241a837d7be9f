"""Ultimately periodic subsets of the naturals.

A set ``S`` is stored as ``(exceptions, threshold, period, residues)``:
below ``threshold`` membership is listed explicitly, from ``threshold`` on
``n in S`` iff ``n % period in residues``.  Both finite parts are kept as
Python ints used as bit vectors, so Boolean operations on sets with large
periods stay cheap.

Every constructor canonicalizes (minimal period, then minimal threshold),
so two ``UPSet`` values denote the same subset of N exactly when their
fields are identical and ``==`` is structural.

>>> evens = UPSet.residue_class(2, [0])
>>> mult3 = UPSet.residue_class(3, [0])
>>> (evens & mult3) == UPSet.residue_class(6, [0])
True
>>> (~evens).residues
(1,)
"""

from functools import lru_cache
from math import gcd

from .errors import NotEnoughElements, PeriodOverflow

__all__ = ["UPSet", "PERIOD_CAP", "lcm", "sample_bound"]

PERIOD_CAP = 10**6


def lcm(a, b):
    return a // gcd(a, b) * b


def _mask(n):
    return (1 << n) - 1


def _replicate(word, width, times):
    # concatenation of `times` copies of a `width`-bit word
    # (binary doubling; the repunit product is quadratic for wide words)
    out = shift = 0
    while times:
        if times & 1:
            out |= word << shift
            shift += width
        word |= word << width
        width *= 2
        times >>= 1
    return out


def _lowbit(x):
    return (x & -x).bit_length() - 1


def _bits(x):
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return tuple(out)


@lru_cache(maxsize=4096)
def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _canonical(threshold, period, exc, res):
    # Periods of a cyclic word are closed under gcd, so stripping prime
    # factors greedily reaches the minimal one.
    for q in _prime_factors(period):
        while period % q == 0:
            d = period // q
            low = res & _mask(d)
            if _replicate(low, d, q) != res:
                break
            period, res = d, low
    if threshold:
        pattern = _replicate(res, period, -(-threshold // period)) & _mask(threshold)
        threshold = ((exc ^ pattern) & _mask(threshold)).bit_length()
        exc &= _mask(threshold)
    return threshold, period, exc, res


def _check_period(period):
    if period > PERIOD_CAP:
        raise PeriodOverflow(
            f"period {period} exceeds cap {PERIOD_CAP}", period=period, cap=PERIOD_CAP
        )


class UPSet:
    """An ultimately periodic set of naturals in canonical form.

    The constructor accepts non-canonical data: any period, any threshold,
    as long as every exception is below the threshold and every residue is
    below the period.
    """

    __slots__ = ("threshold", "period", "_exc", "_res")

    def __init__(self, exceptions=(), threshold=0, period=1, residues=()):
        threshold, period = int(threshold), int(period)
        if threshold < 0:
            raise ValueError("threshold must be a natural number")
        if period < 1:
            raise ValueError("period must be >= 1")
        _check_period(period)
        exc = 0
        for n in exceptions:
            n = int(n)
            if not 0 <= n < threshold:
                raise ValueError(f"exception {n} is not below threshold {threshold}")
            exc |= 1 << n
        res = 0
        for r in residues:
            r = int(r)
            if not 0 <= r < period:
                raise ValueError(f"residue {r} is not below period {period}")
            res |= 1 << r
        self._set(*_canonical(threshold, period, exc, res))

    def _set(self, threshold, period, exc, res):
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "_exc", exc)
        object.__setattr__(self, "_res", res)

    def __setattr__(self, name, value):
        raise AttributeError("UPSet is immutable")

    @classmethod
    def _from_bits(cls, threshold, period, exc, res):
        _check_period(period)
        obj = cls.__new__(cls)
        obj._set(*_canonical(threshold, period, exc & _mask(threshold), res & _mask(period)))
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def naturals(cls):
        return cls(residues=[0])

    @classmethod
    def finite(cls, elements):
        elements = sorted({int(n) for n in elements})
        top = elements[-1] + 1 if elements else 0
        return cls(elements, top)

    @classmethod
    def cofinite(cls, missing):
        return ~cls.finite(missing)

    @classmethod
    def at_least(cls, m):
        """``{n : n >= m}``."""
        return cls((), m, 1, [0])

    @classmethod
    def residue_class(cls, modulus, residues):
        return cls((), 0, modulus, [r % modulus for r in residues])

    @classmethod
    def from_predicate(cls, pred, threshold, period):
        """Sample ``pred`` on ``[0, threshold + period)``.

        Only sound if ``pred`` really is periodic with ``period`` from
        ``threshold`` on; the caller vouches for that.
        """
        _check_period(period)
        exc = 0
        for n in range(threshold):
            if pred(n):
                exc |= 1 << n
        res = 0
        for n in range(threshold, threshold + period):
            if pred(n):
                res |= 1 << (n % period)
        return cls._from_bits(threshold, period, exc, res)

    # -- views --------------------------------------------------------

    @property
    def exceptions(self):
        return _bits(self._exc)

    @property
    def residues(self):
        return _bits(self._res)

    def key(self):
        return (self.threshold, self.period, self._exc, self._res)

    def __eq__(self, other):
        if not isinstance(other, UPSet):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"UPSet(exceptions={list(self.exceptions)}, threshold={self.threshold}, "
            f"period={self.period}, residues={list(self.residues)})"
        )

    def to_dict(self):
        return {
            "exceptions": list(self.exceptions),
            "threshold": self.threshold,
            "period": self.period,
            "residues": list(self.residues),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data.get("exceptions", ()),
            data.get("threshold", 0),
            data.get("period", 1),
            data.get("residues", ()),
        )

    # -- membership and predicates ------------------------------------

    def member(self, n):
        if n < 0:
            return False
        if n < self.threshold:
            return bool(self._exc >> n & 1)
        return bool(self._res >> (n % self.period) & 1)

    __contains__ = member

    def is_empty(self):
        return not self._exc and not self._res

    def is_infinite(self):
        return self._res != 0

    def is_cofinite(self):
        return self._res == _mask(self.period)

    def cardinality(self):
        """Number of elements, or ``None`` for an infinite set."""
        if self._res:
            return None
        return self._exc.bit_count()

    def equals(self, other):
        return self == other

    def subset(self, other):
        return self.intersect(other.complement()).is_empty()

    __le__ = subset

    def prefix_bits(self, bound):
        """Membership of ``0 .. bound-1`` as a bit vector."""
        t = self.threshold
        if bound <= t:
            return self._exc & _mask(bound)
        tail = _replicate(self._res, self.period, -(-bound // self.period))
        return self._exc | (tail & _mask(bound) & ~_mask(t))

    # -- Boolean algebra ----------------------------------------------

    def complement(self):
        # flipping every bit keeps both the period and the threshold minimal
        obj = UPSet.__new__(UPSet)
        obj._set(
            self.threshold,
            self.period,
            self._exc ^ _mask(self.threshold),
            self._res ^ _mask(self.period),
        )
        return obj

    def _combine(self, other, op):
        t = max(self.threshold, other.threshold)
        p = lcm(self.period, other.period)
        _check_period(p)
        rs = _replicate(self._res, self.period, p // self.period)
        ro = _replicate(other._res, other.period, p // other.period)
        exc = op(self.prefix_bits(t), other.prefix_bits(t))
        return UPSet._from_bits(t, p, exc, op(rs, ro))

    def intersect(self, other):
        return self._combine(other, lambda a, b: a & b)

    def union(self, other):
        return self._combine(other, lambda a, b: a | b)

    def difference(self, other):
        return self._combine(other, lambda a, b: a & ~b)

    __and__ = intersect
    __or__ = union
    __sub__ = difference
    __invert__ = complement

    # -- element selection --------------------------------------------

    def kth_element(self, k):
        """The (k+1)-st smallest element (0-based ``k``)."""
        if k < 0:
            raise ValueError("k must be a natural number")
        n_exc = self._exc.bit_count()
        if k < n_exc:
            return self.exceptions[k]
        if not self._res:
            raise NotEnoughElements(
                f"set has only {n_exc} elements, asked for index {k}", size=n_exc, k=k
            )
        k -= n_exc
        t, p = self.threshold, self.period
        block = sorted(n for n in range(t, t + p) if self.member(n))
        q, r = divmod(k, len(block))
        return block[r] + q * p

    def least_above(self, n):
        """Least element strictly greater than ``n``, or ``None``."""
        m = max(n + 1, 0)
        if m < self.threshold:
            above = self._exc >> m
            if above:
                return m + _lowbit(above)
            m = self.threshold
        if not self._res:
            return None
        p = self.period
        shift = m % p
        rest = self._res >> shift
        if rest:
            return m + _lowbit(rest)
        return m + (p - shift) + _lowbit(self._res)

    def min(self):
        return self.least_above(-1)


def sample_bound(*sets):
    """``max(thresholds) + lcm(periods)``: agreement on ``[0, bound)``
    decides equality for these sets."""
    t = max((s.threshold for s in sets), default=0)
    p = 1
    for s in sets:
        p = lcm(p, s.period)
    return t + p
