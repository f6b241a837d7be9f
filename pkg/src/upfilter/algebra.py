"""Finitely generated algebras of ultimately periodic sets.

The atom at word ``x`` (a string over ``"01"``, one letter per generator)
is the intersection of generator ``i`` where ``x[i] == "0"`` and of its
complement where ``x[i] == "1"``.  For any generator list the atoms
partition N; empty atoms stay in the map so every word of the right length
indexes something.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .errors import GeneratorCap
from .report import Report
from .upset import UPSet, _replicate, lcm

__all__ = ["Algebra", "span", "DEFAULT_GENERATOR_CAP"]

DEFAULT_GENERATOR_CAP = 16


def _split(atoms, gen):
    empty = UPSet.empty()
    out = {}
    for word, atom in atoms.items():
        if atom.is_empty():
            out[word + "0"] = out[word + "1"] = empty
        else:
            out[word + "0"] = atom & gen
            out[word + "1"] = atom - gen
    return out


@dataclass(frozen=True)
class Algebra:
    generators: tuple
    atoms: dict = field(compare=False, repr=False)

    @property
    def size(self):
        return len(self.generators)

    def nonempty_words(self):
        return [w for w, a in self.atoms.items() if not a.is_empty()]

    @cached_property
    def _raw(self):
        # every nonempty atom unrolled to a common threshold and period
        nonempty = [(w, self.atoms[w]) for w in self.nonempty_words()]
        t = max((a.threshold for _, a in nonempty), default=0)
        p = 1
        for _, a in nonempty:
            p = lcm(p, a.period)
        rows = [(w, *_raw_bits(a, t, p)) for w, a in nonempty]
        return t, p, rows

    def decompose(self, s):
        """Words of the atoms whose union is ``s``, or ``None`` if ``s``
        is not in the algebra."""
        t, p, rows = self._raw
        # members of the algebra are periodic from t with a period dividing p
        if s.threshold > t or p % s.period:
            return None
        se, sr = _raw_bits(s, t, p)
        words = []
        for word, ae, ar in rows:
            if not (ae & ~se or ar & ~sr):
                words.append(word)
            elif ae & se or ar & sr:
                return None
        return words

    def union_of_mask(self, mask):
        """Union of the nonempty atoms selected by the bits of ``mask``
        (bit ``i`` selects the ``i``-th nonempty atom)."""
        t, p, rows = self._raw
        exc = res = 0
        i = 0
        while mask:
            if mask & 1:
                exc |= rows[i][1]
                res |= rows[i][2]
            mask >>= 1
            i += 1
        return UPSet._from_bits(t, p, exc, res)

    def contains_set(self, s):
        return self.decompose(s) is not None

    def union_of(self, words):
        out = UPSet.empty()
        for w in words:
            out = out | self.atoms[w]
        return out

    def extend(self, new_generators, cap=DEFAULT_GENERATOR_CAP):
        new_generators = tuple(new_generators)
        total = self.size + len(new_generators)
        if total > cap:
            raise GeneratorCap(f"{total} generators exceed cap {cap}", count=total, cap=cap)
        atoms = self.atoms
        for g in new_generators:
            atoms = _split(atoms, g)
        return Algebra(self.generators + new_generators, atoms)

    def verify_partition(self, bound):
        """Check that the atoms partition N.

        Pointwise for ``n < bound``, and symbolically: pairwise
        intersections of atoms are empty and their union is N.
        """
        if bound < 1:
            raise ValueError("bound must be >= 1")
        rep = Report("partition")
        nonempty = [(w, self.atoms[w]) for w in self.nonempty_words()]
        for n in range(bound):
            hits = [w for w, a in nonempty if n in a]
            if len(hits) != 1:
                rep.fail("pointwise", f"{n} lies in {len(hits)} atoms", n=n, words=hits)
                break
        else:
            rep.ok("pointwise", f"every n < {bound} in exactly one atom")
        bad = next(
            (
                (u, v)
                for i, (u, a) in enumerate(nonempty)
                for v, b in nonempty[i + 1 :]
                if not (a & b).is_empty()
            ),
            None,
        )
        if bad:
            rep.fail("disjoint", f"atoms {bad[0]} and {bad[1]} overlap", words=list(bad))
        else:
            rep.ok("disjoint", "pairwise intersections empty")
        cover = self.union_of(w for w, _ in nonempty)
        if cover == UPSet.naturals():
            rep.ok("cover", "union of atoms is N")
        else:
            rep.fail("cover", "atoms miss some n", witness=(~cover).min())
        return rep

    def to_dict(self):
        return {"generators": [g.to_dict() for g in self.generators]}

    @classmethod
    def from_dict(cls, data):
        return span(UPSet.from_dict(g) for g in data["generators"])


def span(generators, cap=DEFAULT_GENERATOR_CAP):
    """Atoms of the algebra generated by ``generators``.

    >>> evens = UPSet.residue_class(2, [0])
    >>> span([evens]).atoms["1"] == ~evens
    True
    """
    return Algebra((), {"": UPSet.naturals()}).extend(generators, cap)


def _raw_bits(s, t, p):
    return s.prefix_bits(t), _replicate(s._res, s.period, p // s.period)


def all_words(n):
    return ["".join(w) for w in product("01", repeat=n)]
