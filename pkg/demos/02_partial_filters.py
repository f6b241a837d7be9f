"""Partial non-principal ultrafilters on finite algebras of sets."""

from upfilter import UPSet, span, trivial_filter, verify_axioms

evens = UPSet.residue_class(2, [0])
mult3 = UPSet.residue_class(3, [0])
small = UPSet.finite(range(10))

# %% Atoms
# Two generators give four atoms, one per word over {0, 1}; "0" picks a
# generator, "1" its complement.
alg = span([evens, mult3])
for word, atom in alg.atoms.items():
    print(word, atom)
print(alg.verify_partition(100).passed)

# %% Growing a filter
f = trivial_filter()
print("start:", f.branch or "(empty branch)", f.core)

f = f.extend([evens])
print("after evens:", f.branch, f.core)

# finite sets are never chosen, whatever the tie-break says
f = f.extend([small], tiebreak="bit0")
print("after a finite set:", f.branch, f.contains(small), f.contains(~small))

f = f.extend([mult3], tiebreak="complement-first")
print("after mult3:", f.branch, f.core)

# %% Membership is decided for every set of the algebra
for s in (evens, ~evens, mult3, evens & ~mult3, evens | mult3):
    print(f"{str(s):60s} {f.contains(s)}")

rep = verify_axioms(f)
for check in rep.checks:
    print(f"{check.name:16s} {check.passed}")

# %% Choosing from a partition
thirds = [UPSet.residue_class(3, [r]) for r in range(3)]
i, g = trivial_filter().select_from_partition(thirds)
print("selected part", i, thirds[i])
