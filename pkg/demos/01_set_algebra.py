"""Ultimately periodic sets: construction, canonical form, Boolean algebra."""

from upfilter import UPSet

# %% Building sets
evens = UPSet.residue_class(2, [0])
mult3 = UPSet.residue_class(3, [0])
print("evens       ", evens)
print("mult3       ", mult3)

# Representations are canonicalized on construction, so a period-4
# description of the evens is the same object as the period-2 one.
print("period 4 -> ", UPSet(period=4, residues=[0, 2]))
print("same set?   ", UPSet(period=4, residues=[0, 2]) == evens)

# %% Boolean operations
mult6 = evens & mult3
print("evens & mult3 ", mult6)
print("evens | mult3 ", evens | mult3)
print("~evens        ", ~evens)
print("evens - mult3 ", evens - mult3)

# exceptions below the threshold, periodic pattern above it
odd_set = UPSet(exceptions=[0, 3], threshold=5, period=4, residues=[1])
print("irregular     ", odd_set, sorted(n for n in range(30) if n in odd_set))

# %% Queries
print("6 in mult6?     ", 6 in mult6)
print("4th element     ", mult6.kth_element(4))
print("least above 20  ", mult6.least_above(20))
print("finite?         ", not UPSet.finite([1, 5, 9]).is_infinite())
print("cofinite?       ", UPSet.at_least(10).is_cofinite())
print("mult6 <= evens  ", mult6 <= evens)

# %% Serialization
print(mult6.to_dict())
assert UPSet.from_dict(mult6.to_dict()) == mult6
