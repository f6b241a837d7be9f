"""Partial non-principal ultrafilters on finitely generated algebras.

A filter is a branch word over the generators of an :class:`Algebra`.  The
atom at that word is the *core*; a set of the algebra belongs to the filter
iff it contains the core.  On a finite algebra this is the only ultrafilter
compatible with the branch, and it is non-principal as long as the core is
infinite.

Extending a filter by new generators refines the core one generator at a
time, always keeping an infinite piece.  One of the two pieces of an
infinite set is infinite, so the refinement never gets stuck.
"""

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .algebra import DEFAULT_GENERATOR_CAP, Algebra, span
from .errors import NotAPartition, NotInAlgebra
from .report import Report
from .upset import UPSet

__all__ = [
    "PartialFilter",
    "trivial_filter",
    "verify_axioms",
    "index_filter",
    "verify_index_filter",
    "TIEBREAKS",
]

TIEBREAKS = ("bit0", "complement-first")


def _check_tiebreak(tiebreak):
    if tiebreak not in TIEBREAKS:
        raise ValueError(f"unknown tiebreak {tiebreak!r}; expected one of {TIEBREAKS}")


@dataclass(frozen=True)
class PartialFilter:
    algebra: Algebra
    branch: str

    def __post_init__(self):
        if len(self.branch) != self.algebra.size or set(self.branch) - {"0", "1"}:
            raise ValueError(
                f"branch {self.branch!r} is not a word of length {self.algebra.size}"
            )

    @cached_property
    def core(self):
        return self.algebra.atoms[self.branch]

    @property
    def generators(self):
        return self.algebra.generators

    def contains(self, s):
        if s.is_empty():
            return self.core.is_empty()
        if not self.algebra.contains_set(s):
            raise NotInAlgebra("set is not in the filter's algebra", set=s.to_dict())
        return self.core <= s

    def __contains__(self, s):
        return self.contains(s)

    def extend(self, new_generators, tiebreak="bit0", cap=DEFAULT_GENERATOR_CAP):
        """Add generators, refining the core while keeping it infinite.

        When both pieces of the core are infinite the tie-break decides:
        ``"bit0"`` keeps the generator, ``"complement-first"`` keeps its
        complement.  Memberships of sets already in the algebra never
        change.
        """
        _check_tiebreak(tiebreak)
        new_generators = tuple(new_generators)
        algebra = self.algebra.extend(new_generators, cap)
        order = "01" if tiebreak == "bit0" else "10"
        branch, core = self.branch, self.core
        for g in new_generators:
            pieces = {"0": core & g, "1": core - g}
            bit = next((b for b in order if pieces[b].is_infinite()), order[0])
            branch += bit
            core = pieces[bit]
        return PartialFilter(algebra, branch)

    def extend_to_include(self, sets, tiebreak="bit0", cap=DEFAULT_GENERATOR_CAP):
        """Extend by exactly those of ``sets`` not yet in the algebra."""
        f = self
        for s in sets:
            if not s.is_empty() and not f.algebra.contains_set(s):
                f = f.extend([s], tiebreak, cap)
        return f

    def select_from_partition(self, parts, tiebreak="bit0", cap=DEFAULT_GENERATOR_CAP):
        """Return ``(i, extended)`` where ``parts[i]`` is the unique part in
        the extended filter.

        >>> evens = UPSet.residue_class(2, [0])
        >>> i, _ = trivial_filter().extend([evens]).select_from_partition([evens, ~evens])
        >>> i
        0
        """
        parts = list(parts)
        _check_partition(parts)
        f = self.extend_to_include(parts, tiebreak, cap)
        chosen = [i for i, p in enumerate(parts) if f.contains(p)]
        if len(chosen) != 1:
            raise AssertionError(f"partition selection not unique: {chosen}")
        return chosen[0], f

    def to_dict(self):
        return {"generators": [g.to_dict() for g in self.generators], "branch": self.branch}

    @classmethod
    def from_dict(cls, data):
        return cls(span(UPSet.from_dict(g) for g in data["generators"]), data["branch"])


def _check_partition(parts):
    parts = [p for p in parts if not p.is_empty()]
    overlap = UPSet.empty()
    for a, b in combinations(parts, 2):
        overlap = overlap | (a & b)
    if not overlap.is_empty():
        n = overlap.min()
        count = sum(n in p for p in parts)
        raise NotAPartition(f"{n} lies in {count} parts", witness=n, count=count)
    cover = UPSet.empty()
    for p in parts:
        cover = cover | p
    if cover != UPSet.naturals():
        n = (~cover).min()
        raise NotAPartition(f"{n} lies in no part", witness=n, count=0)


def trivial_filter():
    """The filter ``{N}`` on the algebra ``{empty, N}``."""
    return PartialFilter(span([]), "")


def _sample_masks(rng, nbits, count):
    full = 1 << nbits
    if full <= count:
        return list(range(full))
    return [rng.getrandbits(nbits) for _ in range(count)]


def verify_axioms(f, max_checks=1024, seed=0):
    """Check the relativized ultrafilter clauses on atom-unions of ``f``.

    Unions of nonempty atoms are enumerated when there are at most
    ``max_checks`` of them and sampled uniformly otherwise; pairs are
    handled the same way.  Clause numbering: 1 complement dichotomy
    (exactly one of S, ~S), 2 upward closure via intersection,
    3 intersection closure, 4 non-principality.  The characteristic
    function clause concerns representations, not sets, and is checked
    at the term-language boundary.
    """
    rng = random.Random(seed)
    rep = Report("axioms")
    alg = f.algebra
    m = len(alg.nonempty_words())
    sets = [alg.union_of_mask(mask) for mask in _sample_masks(rng, m, max_checks)]
    verdict = {}

    def member(s):
        if s not in verdict:
            verdict[s] = f.contains(s)
        return verdict[s]

    def first(clause, bad, message):
        if bad is None:
            rep.ok(clause, message)
        else:
            rep.fail(clause, message, **bad)

    bad = None
    for s in sets:
        if member(s) == member(~s):
            bad = {"set": s.to_dict(), "in_filter": member(s)}
            break
    first("1-dichotomy", bad, "exactly one of S, complement(S) in F")

    n = len(sets)
    if n * n <= max_checks:
        pairs = [(a, b) for a in sets for b in sets]
    else:
        pairs = [(rng.choice(sets), rng.choice(sets)) for _ in range(max_checks)]
    bad2 = bad3 = None
    for s, t in pairs:
        st = s & t
        if bad2 is None and member(st) and not member(t):
            bad2 = {"S": s.to_dict(), "T": t.to_dict()}
        if bad3 is None and member(s) and member(t) and not member(st):
            bad3 = {"S": s.to_dict(), "T": t.to_dict()}
    first("2-upward", bad2, "S & T in F implies T in F")
    first("3-intersection", bad3, "S, T in F implies S & T in F")

    bad = next(({"set": s.to_dict()} for s in sets if member(s) and not s.is_infinite()), None)
    first("4-nonprincipal", bad, "every member of F is infinite")
    rep.ok("5-normalization", "delegated to characteristic-function conversion")
    rep.checks[-1].data["checked_sets"] = len(sets)
    rep.checks[-1].data["checked_pairs"] = len(pairs)
    return rep


def index_filter(f, enumeration):
    """Indices ``i`` with ``enumeration[i]`` in ``f``."""
    out = set()
    for i, s in enumerate(enumeration):
        if not f.algebra.contains_set(s):
            raise NotInAlgebra(f"enumerated set {i} is not in the algebra", index=i)
        if f.contains(s):
            out.add(i)
    return frozenset(out)


def verify_index_filter(indices, enumeration):
    """The four clauses an index set must satisfy, over all index pairs
    and triples of the enumeration."""
    sets = list(enumeration)
    idx = range(len(sets))
    rep = Report("index-filter")

    bad = next(
        ((i, j) for i in idx for j in idx
         if sets[i] == ~sets[j] and i not in indices and j not in indices),
        None,
    )
    _record(rep, "complement-pair", bad, "A_i = ~A_j implies i or j in F")
    bad = next(
        ((i, j) for i in indices for j in idx
         if sets[i] <= sets[j] and j not in indices),
        None,
    )
    _record(rep, "upward", bad, "A_i <= A_j and i in F implies j in F")
    meets = {}
    for i in indices:
        for j in indices:
            meets.setdefault(sets[i] & sets[j], (i, j))
    bad = next(
        (meets[sets[k]] + (k,) for k in idx if sets[k] in meets and k not in indices),
        None,
    )
    _record(rep, "intersection", bad, "i, j in F and A_k = A_i & A_j implies k in F")
    bad = next((i for i in sorted(indices) if not sets[i].is_infinite()), None)
    _record(rep, "nonprincipal", bad, "i in F implies A_i infinite")
    return rep


def _record(rep, name, witness, message):
    if witness is None:
        rep.ok(name, message)
    else:
        rep.fail(name, message, witness=witness)
