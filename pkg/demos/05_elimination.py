"""Evaluating terms that use U, then replacing U by a finite filter."""

from upfilter import eliminate
from upfilter.termlang import collect_usites, parse, typecheck

# %% A term with a nested U-site
term = parse("""
    ; the outer set depends on the verdict for the evens
    if (U (lam j:0. if (U (lam i:0. mod i 2)) (mod j 3) 1))
       (K 10 (lam j:0. mod j 3))
       0
""")
print(term)
print("type", typecheck(term))
for site in collect_usites(term):
    print("site", site)

# %% Elimination
value, trace = eliminate(term)
print("value", value)
for st in trace.stages:
    print(f"stage {st.index}: {st.set}  verdict {st.verdict}  forced {st.forced}")
print("filter branch", trace.filter.branch)
print("all instances hold:", all(rep.passed for *_, rep in trace.instances))

# %% The tie-break only matters when a site's set is neither finite nor cofinite
cofinite = parse("U (lam j:0. sub 5 j)")
for tb in ("bit0", "complement-first"):
    print(tb, eliminate(term, tiebreak=tb)[0], eliminate(cofinite, tiebreak=tb)[0])
