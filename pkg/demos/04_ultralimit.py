"""Ultralimits of eventually periodic sequences through dyadic level sets."""

from fractions import Fraction as F

from upfilter import UPSeq, level_sets, subsequence_witness, trivial_filter, ultralimit

# 1/2, 3/4, then 0, 1, 1/4, 1, 0, 1, 1/4, 1, ...
seq = UPSeq((F(1, 2), F(3, 4)), (F(0), F(1), F(1, 4), F(1)))
print([str(seq[n]) for n in range(12)])

# %% Level sets at precision 2: which indices land in each quarter
for i, s in enumerate(level_sets(seq, 2)):
    print(f"[{F(i, 4)}, {F(i + 1, 4)})", s)

# %% The limit along the filter
for tiebreak in ("bit0", "complement-first"):
    (lo, hi), trace, _ = ultralimit(seq, 8, trivial_filter(), tiebreak)
    print(tiebreak, "->", f"[{lo}, {hi})", "nested:", trace.nested())

# %% A converging subsequence: g(k) is the k-th index of the level-k set
(lo, hi), trace, _ = ultralimit(seq, 6, trivial_filter())
for k, (n, v) in enumerate(subsequence_witness(trace, seq)):
    print(k, n, v)
