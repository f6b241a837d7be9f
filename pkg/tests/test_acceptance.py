"""Acceptance suite: one test per criterion.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import io
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from golden import CASES, DATA
from oracles import TermGen, raw_members, random_raw, ref_apply, ref_eval, vec
from upfilter import (
    SearchableFn,
    UPSeq,
    UPSet,
    eliminate,
    mu_search,
    mu_via_filter,
    subsequence_witness,
    trivial_filter,
    ultralimit,
    verify_axioms,
    x_f,
)
from upfilter.cli import main
from upfilter.pfilter import TIEBREAKS
from upfilter.termlang import (
    N,
    T1,
    App,
    Cert,
    Const,
    Lam,
    Num,
    evaluate,
    filter_oracles,
    parse,
    typecheck,
)
from upfilter.termlang.syntax import subterms

RESULTS = {}


def record(n, title, ok, detail=""):
    RESULTS[n] = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}" + (
        f"  ({detail})" if detail else ""
    )
    return ok


def summary_lines():
    return [RESULTS[k] for k in sorted(RESULTS)]


# -- 1 ----------------------------------------------------------------------


def test_c01_set_algebra_oracle():
    rng = random.Random(101)
    start = time.perf_counter()
    raws = [random_raw(rng, max_period=24, max_threshold=32) for _ in range(500)]
    sets = [UPSet(*r) for r in raws]
    vecs = [raw_members(*r) for r in raws]
    bad = 0
    for i in range(500):
        a, b, va, vb = sets[i], sets[i - 1], vecs[i], vecs[i - 1]
        checks = [
            (vec(a), va),
            (vec(~a), ~va),
            (vec(a & b), va & vb),
            (vec(a | b), va | vb),
            (vec(a - b), va & ~vb),
        ]
        bad += sum(not np.array_equal(x, y) for x, y in checks)
        bad += (a == b) != np.array_equal(va, vb)
        bad += (a <= b) != bool(np.all(~va | vb))
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5
    record(1, "set algebra vs bit-vector oracle", ok, f"{bad} disagreements, {elapsed:.2f}s")
    assert bad == 0
    assert elapsed < 5


# -- 2, 3 -------------------------------------------------------------------


def _membership_probe(f, rng, count=48):
    """Sets of ``f``'s algebra to track across later stages."""
    alg = f.algebra
    m = len(alg.nonempty_words())
    masks = {rng.getrandbits(m) for _ in range(count)} if m else {0}
    probe = [alg.union_of_mask(mask) for mask in masks]
    probe += list(f.generators) + [~g for g in f.generators]
    return {s: f.contains(s) for s in probe}


@lru_cache(maxsize=1)
def staged_runs():
    rng = random.Random(202)
    start = time.perf_counter()
    axiom_failures, flips, stages = [], 0, 0
    for run in range(200):
        f = trivial_filter()
        tiebreak = rng.choice(TIEBREAKS)
        total = rng.randint(1, 6)
        decided = []
        while f.algebra.size < total:
            k = min(rng.randint(1, 3), total - f.algebra.size)
            new = [UPSet(*random_raw(rng, max_period=12, max_threshold=32)) for _ in range(k)]
            f = f.extend(new, tiebreak)
            stages += 1
            rep = verify_axioms(f, seed=run)
            if not rep.passed:
                axiom_failures.append((run, rep.first_failure()))
            for earlier in decided:
                flips += sum(f.contains(s) != v for s, v in earlier.items())
            decided.append(_membership_probe(f, rng))
    return axiom_failures, flips, stages, time.perf_counter() - start


def test_c02_filter_axioms():
    failures, _, stages, elapsed = staged_runs()
    ok = not failures and elapsed < 30
    record(2, "relativized filter axioms on staged constructions", ok,
           f"200 runs, {stages} stages, {len(failures)} failures, {elapsed:.1f}s")
    assert not failures, failures[:3]
    assert elapsed < 30


def test_c03_conservativity():
    _, flips, stages, _ = staged_runs()
    record(3, "extension conservativity", flips == 0, f"{flips} changed memberships")
    assert flips == 0


# -- 4 ----------------------------------------------------------------------


def random_partition(rng, m):
    p = rng.randint(max(2, m // 2), 24)
    t = rng.randint(0, 16)
    cells = list(range(t + p))
    owner = [rng.randrange(m) for _ in cells]
    for i, c in enumerate(rng.sample(cells, min(m, len(cells)))):
        owner[c] = i
    parts = []
    for i in range(m):
        exc = [n for n in range(t) if owner[n] == i]
        res = [(t + c) % p for c in range(p) if owner[t + c] == i]
        parts.append(UPSet(exc, t, p, res))
    return parts


def test_c04_finite_partition_property():
    rng = random.Random(404)
    bad = []
    for trial in range(200):
        m = rng.randint(2, 16)
        parts = random_partition(rng, m)
        pre = [UPSet(*random_raw(rng, max_period=6, max_threshold=8))
               for _ in range(min(2, 17 - m))]
        start = trivial_filter().extend(pre, rng.choice(TIEBREAKS))
        i, f = start.select_from_partition(parts, rng.choice(TIEBREAKS))
        members = [j for j, s in enumerate(parts) if f.contains(s)]
        if members != [i]:
            bad.append((trial, i, members))
    record(4, "finite partition property", not bad, f"200 partitions, {len(bad)} bad")
    assert not bad


# -- 5 ----------------------------------------------------------------------


def test_c05_mu_from_filter():
    rng = random.Random(505)
    bad = []
    for trial in range(100):
        if trial < 20:
            zeros = UPSet.empty()
        else:
            zeros = UPSet(*random_raw(rng, max_period=24, max_threshold=32))
            if zeros.is_empty():
                zeros = UPSet.finite([rng.randint(0, 40)])
        noise = rng.randint(1, 9)
        f = SearchableFn(lambda x, z=zeros, c=noise: 0 if x in z else 1 + (c * x) % 5, zeros)
        start = trivial_filter().extend(
            [UPSet(*random_raw(rng, max_period=6, max_threshold=6))], rng.choice(TIEBREAKS))
        got, _ = mu_via_filter(f, start, rng.choice(TIEBREAKS))
        want = mu_search(f, 256)
        if got != want or (zeros.is_empty() and not x_f(zeros).is_empty()):
            bad.append((trial, got, want))
    record(5, "mu via filter agrees with search", not bad, f"100 functions, {len(bad)} bad")
    assert not bad


# -- 6 ----------------------------------------------------------------------


def random_dyadic_seq(rng, constant=False):
    den = 1 << rng.randint(0, 12)

    def pick():
        return Fraction(rng.randint(0, den), den)

    prefix = tuple(pick() for _ in range(rng.randint(0, 4)))
    cycle = (pick(),) if constant else tuple(pick() for _ in range(rng.randint(1, 12)))
    return UPSeq(prefix, cycle)


def test_c06_ultralimit():
    rng = random.Random(606)
    k = 10
    bad = []
    start = time.perf_counter()
    for trial in range(100):
        constant = trial % 5 == 0
        seq = random_dyadic_seq(rng, constant)
        cluster = {seq[n] for n in range(len(seq.prefix), len(seq.prefix) + len(seq.cycle))}
        for tb in TIEBREAKS if constant else (rng.choice(TIEBREAKS),):
            (lo, hi), trace, _ = ultralimit(seq, k, trivial_filter(), tb)
            levels = trace.levels
            nested = all(b.level_set <= a.level_set for a, b in zip(levels, levels[1:]))
            attained = any(lo <= v < hi for v in cluster)
            wit = subsequence_witness(trace, seq)
            cauchy = all(
                abs(wit[a][1] - wit[b][1]) <= Fraction(2, 1 << min(a, b))
                for a in range(k + 1) for b in range(k + 1)
            )
            limit = not constant or lo <= seq.cycle[0] < hi
            if not (nested and attained and cauchy and limit and len(levels) == k + 1):
                bad.append((trial, tb, nested, attained, cauchy, limit))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    record(6, "ultralimit nesting, cluster point, Cauchy rate", ok,
           f"100 sequences at k={k}, {len(bad)} bad, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 30


# -- 7 ----------------------------------------------------------------------

# (name, term, inputs, value where it does not depend on the tie-break)
CORPUS = [
    ("parity", "if (U (lam j:0. mod j 2)) 10 20", {}, None),
    ("two finite", "add (U (lam j:0. sub j 7)) (U (lam j:0. lt j 3))", {}, 2),
    ("cofinite with K", "if (U (lam j:0. sub 5 j)) (K 3 (lam j:0. mod j 4)) 0", {}, 4),
    ("nested 2", "if (U (lam j:0. if (U (lam i:0. mod i 2)) (mod j 3) 1)) 1 2", {}, None),
    (
        "nested 3",
        "U (lam a:0. if (U (lam b:0. if (U (lam c:0. mod c 3)) (mod b 2) (mod b 5)))"
        " (mod a 4) (sub a 6))",
        {}, None,
    ),
    ("input bound", "if (U (lam j:0. lt j x)) (mul x 2) (add x 1)", {"x": 5}, 6),
    (
        "four sites",
        "add (add (U (lam j:0. mod j 2)) (U (lam j:0. mod j 3)))"
        " (add (U (lam j:0. mod j 6)) (U (lam j:0. eq (mod j 6) 1)))",
        {}, None,
    ),
    ("mu inside", "if (U (lam j:0. sub (mu (lam i:0. sub 4 i)) j)) 1 0", {}, 1),
    (
        "recursion outside",
        "rec (add 2 (U (lam j:0. mod j 2))) 3 (lam r:0. lam i:0. K (add r i) (lam j:0. mod j 5))",
        {}, None,
    ),
    ("input nested", "U (lam j:0. if (U (lam i:0. lt i y)) (mod j y) (mod j 2))", {"y": 3}, None),
    (
        "certified",
        "if (U (cert 0 3 (lam j:0. rec j 0 (lam r:0. lam i:0. mod (add i 1) 3)))) 7 8",
        {}, None,
    ),
    ("eta site", "if (U (sub 7)) 1 0", {}, 1),
    (
        "complements",
        "add (U (lam j:0. mod j 4)) (U (lam j:0. not (mod j 4)))",
        {}, 1,
    ),
]


def u_depth(t):
    """Maximal nesting of U applications."""
    if isinstance(t, App):
        d = max(u_depth(t.fn), u_depth(t.arg))
        return d + 1 if t.fn == Const("U") else d
    if isinstance(t, (Lam, Cert)):
        return u_depth(t.body)
    return 0


def _count_u(t):
    return sum(isinstance(s, App) and s.fn == Const("U") for s in subterms(t))


def test_c07_elimination():
    bad = []
    forced_terms = 0
    for name, text, inputs, expected in CORPUS:
        term = parse(text)
        sites, depth = _count_u(term), u_depth(term)
        if not (1 <= sites <= 4 and depth <= 3):
            bad.append((name, "corpus shape", sites, depth))
            continue
        runs = {}
        for tb in TIEBREAKS:
            value, trace = eliminate(term, inputs, tiebreak=tb)
            if not all(rep.passed for *_, rep in trace.instances):
                bad.append((name, tb, "uqf"))
            if evaluate(term, filter_oracles(trace.filter), inputs) != value:
                bad.append((name, tb, "oracle consistency"))
            if expected is not None and value != expected:
                bad.append((name, tb, "value", value))
            runs[tb] = (value, all(s.forced for s in trace.stages))
        if all(forced for _, forced in runs.values()):
            forced_terms += 1
            if len({v for v, _ in runs.values()}) != 1:
                bad.append((name, "forced verdict changed with tie-break"))
    ok = not bad and forced_terms >= 1
    record(7, "elimination corpus", ok,
           f"{len(CORPUS)} terms, {forced_terms} forced, {len(bad)} bad")
    assert not bad
    assert forced_terms >= 1


# -- 8 ----------------------------------------------------------------------


def unrolled(raw, rng):
    """Another representation of the same set: later threshold, multiple
    of the period."""
    exc, t, p, res = raw
    members = raw_members(exc, t, p, res, 512)
    t2 = t + rng.randint(1, 8)
    p2 = p * rng.randint(2, 3)
    return (
        [n for n in range(t2) if members[n]],
        t2,
        p2,
        sorted({n % p2 for n in range(t2, t2 + p2) if members[n]}),
    )


def char_term(raw, scale=0):
    """A type-1 term whose zero set is the represented set; with ``scale``
    the non-zero values are spread out (not normalized)."""
    exc, t, p, res = raw
    below = _disjunction([f"(eq j {e})" for e in exc])
    above = _disjunction([f"(eq (mod j {p}) {r})" for r in res])
    body = f"(if (lt j {t}) {below} {above})"
    if scale:
        body = f"(mul {body} (add {scale} (mod j 5)))"
    return f"(lam j:0. {body})"


def _disjunction(items):
    if not items:
        return "1"
    out = items[0]
    for it in items[1:]:
        out = f"(or {out} {it})"
    return out


def test_c08_extensionality_and_normalization():
    rng = random.Random(808)
    bad = []
    for trial in range(200):
        raw = random_raw(rng, max_period=8, max_threshold=10)
        alt = unrolled(raw, rng)
        a, b = UPSet(*raw), UPSet(*alt)
        tb = rng.choice(TIEBREAKS)
        if trial < 100:
            # pre-canonical representations of one set
            if (alt[1], alt[2]) == (raw[1], raw[2]) or a != b:
                bad.append((trial, "representations"))
                continue
            fa = trivial_filter().extend_to_include([a], tb)
            fb = trivial_filter().extend_to_include([b], tb)
            if fa.contains(a) != fb.contains(b) or fa.contains(b) != fa.contains(a):
                bad.append((trial, "verdict"))
        else:
            # normalized vs spread-out characteristic expressions
            t1 = parse(f"if (U {char_term(raw)}) 3 4")
            t2 = parse(f"if (U {char_term(alt, rng.randint(1, 9))}) 3 4")
            v1, tr1 = eliminate(t1, tiebreak=tb)
            v2, tr2 = eliminate(t2, tiebreak=tb)
            if tr1.stages[0].set != a or tr2.stages[0].set != a:
                bad.append((trial, "zero set"))
            if (v1, tr1.stages[0].verdict) != (v2, tr2.stages[0].verdict):
                bad.append((trial, "eval"))
            n = rng.randint(0, 30)
            k1 = parse(f"K {n} {char_term(raw)}")
            k2 = parse(f"K {n} {char_term(alt, rng.randint(1, 9))}")
            if eliminate(k1)[0] != eliminate(k2)[0]:
                bad.append((trial, "K"))
    record(8, "extensionality and characteristic normalization", not bad,
           f"200 pairs, {len(bad)} bad")
    assert not bad


# -- 9 ----------------------------------------------------------------------


def test_c09_evaluator_differential():
    gen = TermGen(909)
    bad = []
    for i in range(1000):
        if i % 4 == 3:
            f = gen.fn1([], 3)
            ty = typecheck(f)
            n = gen.rng.randint(0, 12)
            got = evaluate(f, args=[n])
            want = ref_apply(ref_eval(f), Num(n)).value
            assert ty == T1
        else:
            t = gen.nat([], 5)
            ty = typecheck(t)
            got, want = evaluate(t), ref_eval(t).value
        if got != want or ty.degree > 1:
            bad.append((i, got, want))
    rec_bad = []
    rng = random.Random(990)
    for _ in range(100):
        x, y = rng.randint(0, 15), Num(rng.randint(0, 20))
        r, i = gen.var(), gen.var()
        z = Lam(r, N, Lam(i, N, gen.nat([r, i], 3)))
        rec = Const("rec")
        zero = evaluate(App(App(App(rec, Num(0)), y), z))
        prev = evaluate(App(App(App(rec, Num(x)), y), z))
        lhs = evaluate(App(App(App(rec, Num(x + 1)), y), z))
        rhs = evaluate(App(App(z, Num(prev)), Num(x)))
        if zero != 0 or lhs != rhs:
            rec_bad.append((x, y, str(z)))
    record(9, "evaluator vs reference interpreter, recursor equations",
           not bad and not rec_bad, f"{len(bad)}/1000 terms, {len(rec_bad)}/100 triples bad")
    assert not bad and not rec_bad


# -- 10 ---------------------------------------------------------------------


def _in_process(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue()


def _subprocess(argv, hashseed):
    env = {**os.environ, "PYTHONHASHSEED": str(hashseed)}
    proc = subprocess.run([sys.executable, "-m", "upfilter", *argv], cwd=DATA, env=env,
                          capture_output=True)
    return proc.returncode, proc.stdout


def test_c10_determinism(monkeypatch):
    monkeypatch.chdir(DATA)
    bad = []
    for name, (argv, _) in sorted(CASES.items()):
        argv = [*argv, "--seed", "11"] if "--seed" not in argv else argv
        first = _in_process(argv)
        if first[0] != 0 or any(_in_process(argv) != first for _ in range(2)):
            bad.append((name, "in-process"))
        runs = {_subprocess(argv, h) for h in (0, 1)}
        if len(runs) != 1 or runs.pop()[1].decode() != first[1]:
            bad.append((name, "subprocess"))
    record(10, "CLI determinism", not bad, f"{len(CASES)} golden cases, {len(bad)} differ")
    assert not bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
