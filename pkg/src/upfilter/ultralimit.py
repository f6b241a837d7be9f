"""Ultralimits of eventually periodic [0, 1]-valued sequences.

At level ``k`` the index set is cut into the dyadic level sets
``A[i] = {n : x_n in [i/2^k, (i+1)/2^k)}`` for ``i = 0 .. 2^k``; the last
cell only catches ``x_n = 1``.  Picking the level set the filter holds at
every level gives nested index sets whose cells shrink to the ultralimit,
and taking the k-th element of the level-k set gives a subsequence with
an explicit Cauchy rate.
"""

from dataclasses import dataclass
from fractions import Fraction

from .pfilter import PartialFilter
from .upset import UPSet

__all__ = [
    "UPSeq",
    "Level",
    "DyadicTrace",
    "level_sets",
    "ultralimit",
    "subsequence_witness",
    "K_MAX",
]

K_MAX = 24


@dataclass(frozen=True)
class UPSeq:
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        object.__setattr__(self, "cycle", tuple(Fraction(v) for v in self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        for v in self.prefix + self.cycle:
            if not 0 <= v <= 1:
                raise ValueError(f"value {v} outside [0, 1]")

    def __getitem__(self, n):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def tail_values(self):
        """Values attained infinitely often."""
        return set(self.cycle)

    def to_dict(self):
        return {"prefix": [str(v) for v in self.prefix], "cycle": [str(v) for v in self.cycle]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(data.get("prefix", ())), tuple(data["cycle"]))


def _cell(v, k):
    # floor(v * 2^k); v = 1 lands in the extra top cell 2^k
    return (v.numerator << k) // v.denominator


def _level_map(seq, k):
    # cell index -> nonempty level set
    t, p = len(seq.prefix), len(seq.cycle)
    # prefix position n is bit n; cycle position c covers n = t + c + p*q,
    # whose residue mod p is (t + c) % p
    exc, res = {}, {}
    for n, v in enumerate(seq.prefix):
        i = _cell(v, k)
        exc[i] = exc.get(i, 0) | 1 << n
    for c, v in enumerate(seq.cycle):
        i = _cell(v, k)
        res[i] = res.get(i, 0) | 1 << ((t + c) % p)
    cells = sorted(set(exc) | set(res))
    return {i: UPSet._from_bits(t, p, exc.get(i, 0), res.get(i, 0)) for i in cells}


def _check_precision(k, k_max):
    if not 0 <= k <= k_max:
        raise ValueError(f"precision {k} outside [0, {k_max}]")


def level_sets(seq, k, k_max=K_MAX):
    """The ``2^k + 1`` level sets at precision ``k``, as a list indexed by cell."""
    _check_precision(k, k_max)
    nonempty = _level_map(seq, k)
    empty = UPSet.empty()
    return [nonempty.get(i, empty) for i in range((1 << k) + 1)]


@dataclass(frozen=True)
class Level:
    k: int
    index: int
    level_set: UPSet
    witness: int
    filter: PartialFilter

    @property
    def cell(self):
        return Fraction(self.index, 1 << self.k), Fraction(self.index + 1, 1 << self.k)


@dataclass(frozen=True)
class DyadicTrace:
    levels: tuple

    def nested(self):
        return all(b.level_set <= a.level_set for a, b in zip(self.levels, self.levels[1:]))


def ultralimit(seq, precision, filt, tiebreak="bit0", k_max=K_MAX):
    """Returns ``(interval, trace, extended filter)``.

    ``interval`` is the half-open level-``precision`` cell ``(lo, hi)``
    holding the ultralimit.  Empty level sets can never be selected, so
    the partition handed to the filter at each level is the nonempty part
    of :func:`level_sets`.
    """
    _check_precision(precision, k_max)
    levels = []
    for k in range(precision + 1):
        cells = _level_map(seq, k)
        idx = list(cells)
        j, filt = filt.select_from_partition([cells[i] for i in idx], tiebreak)
        chosen = cells[idx[j]]
        if levels and not chosen <= levels[-1].level_set:
            raise AssertionError(f"level {k} set not nested in level {k - 1}")
        levels.append(Level(k, idx[j], chosen, chosen.kth_element(k), filt))
    trace = DyadicTrace(tuple(levels))
    return levels[-1].cell, trace, filt


def subsequence_witness(trace, seq):
    """``[(g(k), x_g(k)) for each level]`` with ``g(k)`` the k-th element
    of the chosen level-k set."""
    return [(lv.witness, seq[lv.witness]) for lv in trace.levels]
