"""Replace U in a term by a partial ultrafilter built for that term.

The U-sites of the term are processed innermost first.  Starting from the
trivial filter on ``{empty, N}``, stage ``i`` evaluates site ``i`` with
every inner U answered by the verdicts of earlier stages (and K by K'),
adds the resulting set to the algebra, and records the new filter's
verdict.  Because extension is conservative, earlier verdicts stay valid in
the final filter, which then answers every U in the term.
"""

from dataclasses import dataclass, field

from .algebra import DEFAULT_GENERATOR_CAP
from .errors import TermTypeError
from .mu import k_prime
from .pfilter import PartialFilter, trivial_filter
from .report import Report
from .termlang import N, collect_usites, filter_oracles, typecheck
from .termlang.evaluate import DEFAULT_FUEL, DEFAULT_MU_BOUND, Evaluator
from .termlang.sites import to_upset
from .upset import UPSet

__all__ = ["Stage", "FilterTrace", "eliminate", "verify_uqf"]


@dataclass(frozen=True)
class Stage:
    index: int
    site: str
    set: UPSet
    generators_before: int
    generators_after: int
    bits: str
    core: UPSet
    verdict: int
    forced: bool

    def to_dict(self):
        return {
            "index": self.index,
            "site": self.site,
            "set": self.set.to_dict(),
            "generators_before": self.generators_before,
            "generators_after": self.generators_after,
            "bits": self.bits,
            "core": self.core.to_dict(),
            "verdict": self.verdict,
            "forced": self.forced,
        }


@dataclass
class FilterTrace:
    term: str
    inputs: dict
    stages: list
    filter: PartialFilter
    value: int
    instances: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "config": self.config,
            "term": self.term,
            "inputs": dict(sorted(self.inputs.items())),
            "stages": [s.to_dict() for s in self.stages],
            "filter": self.filter.to_dict(),
            "value": self.value,
            "uqf": [
                {"X": x.to_dict(), "Y": y.to_dict(), "n": n, "passed": rep.passed}
                for x, y, n, rep in self.instances
            ],
        }


def _forced(s):
    return not s.is_infinite() or s.is_cofinite()


def eliminate(
    term,
    inputs=None,
    tiebreak="bit0",
    fuel=DEFAULT_FUEL,
    generator_cap=DEFAULT_GENERATOR_CAP,
    mu_bound=DEFAULT_MU_BOUND,
    config=None,
):
    """Evaluate ``term`` with U replaced by a staged partial ultrafilter.

    Returns ``(value, trace)``.
    """
    inputs = dict(inputs or {})
    ty = typecheck(term, {x: N for x in inputs})
    if ty != N:
        raise TermTypeError(f"term has type {ty}, expected 0", expected="0", actual=str(ty))
    sites = collect_usites(term)

    filt = trivial_filter()
    resolved = {}
    stages = []
    for i, site in enumerate(sites):
        s = to_upset(site, resolved, filter_oracles(filt, mu_bound), inputs, fuel)
        before = filt
        filt = filt.extend_to_include([s], tiebreak, generator_cap)
        verdict = 0 if filt.contains(s) else 1
        resolved[site.key] = verdict
        stages.append(
            Stage(
                i, str(site), s, before.algebra.size, filt.algebra.size,
                filt.branch[len(before.branch):], filt.core, verdict, _forced(s),
            )
        )

    ev = Evaluator(filter_oracles(filt, mu_bound), fuel, resolved)
    value = ev.eval(term, inputs)

    queried = []
    for st in stages:
        if st.set not in queried:
            queried.append(st.set)
    ns = {0}
    for q in ev.queries:
        if q[0] == "K":
            ns.add(q[1])
            if q[2] not in queried:
                queried.append(q[2])
    instances = [
        (x, y, n, verify_uqf(filt, x, y, n, tiebreak))
        for x in queried for y in queried for n in sorted(ns)
    ]
    trace = FilterTrace(str(term), inputs, stages, filt, value, instances, dict(config or {}))
    return value, trace


def verify_uqf(filt, x, y, n, tiebreak="bit0"):
    """Check the quantifier-free ultrafilter matrix at ``(X, Y, n)`` with the
    witness ``k = K'(n, X)``.

    Sets outside the filter's algebra are added first (the check concerns
    the extended filter, which agrees with ``filt`` on its algebra).
    """
    filt = filt.extend_to_include([x, y], tiebreak)
    rep = Report("uqf")
    xin, yin = filt.contains(x), filt.contains(y)
    xy = x & y
    xyin = filt.contains(xy)
    k = k_prime(n, x)

    if xin or filt.contains(~x):
        rep.ok("dichotomy", "X in F or ~X in F")
    else:
        rep.fail("dichotomy", "neither X nor ~X in F")
    if not xyin or yin:
        rep.ok("upward", "X & Y in F implies Y in F")
    else:
        rep.fail("upward", "X & Y in F but Y not in F")
    if not (xin and yin) or xyin:
        rep.ok("intersection", "X, Y in F implies X & Y in F")
    else:
        rep.fail("intersection", "X, Y in F but X & Y not in F")
    if not xin or (k > n and k in x):
        rep.ok("witness", f"k = {k}", k=k)
    else:
        rep.fail("witness", f"X in F but k = {k} is not an element of X above {n}", k=k)
    rep.ok("normalization", "sets carry no characteristic-function representation")
    return rep
