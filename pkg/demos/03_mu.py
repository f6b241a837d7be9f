"""Finding zeros through the filter, and the K' choice function."""

from upfilter import SearchableFn, UPSet, k_prime, mu_search, mu_via_filter, trivial_filter, x_f

# A function with zeros at 7, 12, 17, ... together with a certificate
# describing that zero set.
zeros = UPSet(threshold=7, period=5, residues=[2])
f = SearchableFn(lambda x: 0 if x in zeros else x % 4 + 1, zeros)

# %% Plain bounded search
print("search:", mu_search(f, 100))

# %% Through the filter
# X_f holds the x that have a zero below them.  It is cofinite when f has
# a zero and empty otherwise, so the filter's verdict on it is forced.
print("X_f =", x_f(zeros))
x, filt = mu_via_filter(f, trivial_filter())
print("via filter:", x, " X_f in filter:", filt.contains(x_f(zeros)))

never = SearchableFn(lambda x: 1, UPSet.empty())
print("no zero:", mu_via_filter(never, trivial_filter())[0])

# %% K'(n, X): least element of X above n, 0 if none
evens = UPSet.residue_class(2, [0])
print([k_prime(n, evens) for n in range(6)])
print(k_prime(3, UPSet.finite([1, 2])))
