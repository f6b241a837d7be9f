"""Command-line entry point.

Sets, sequences, filters and traces are JSON; terms are text in the term
syntax.  Any argument naming a JSON document may also be given inline
(starting with ``{`` or ``[``).  Results go to stdout as JSON, errors to
stderr as a JSON object; exit status 1 means a usage error, 2 a domain
error.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, fields

from .algebra import DEFAULT_GENERATOR_CAP, Algebra, span
from .eliminate import eliminate
from .errors import DomainError, TermTypeError
from .mu import SearchableFn, k_prime, mu_search, mu_via_filter, x_f
from .pfilter import (
    TIEBREAKS,
    PartialFilter,
    index_filter,
    trivial_filter,
    verify_axioms,
    verify_index_filter,
)
from .termlang import N, T1, filter_oracles, parse, typecheck
from .termlang.evaluate import DEFAULT_FUEL, Evaluator
from .termlang.sites import collect_usites
from .ultralimit import K_MAX, UPSeq, subsequence_witness, ultralimit
from .upset import UPSet


@dataclass
class Config:
    tiebreak: str = "bit0"
    k_max: int = K_MAX
    fuel: int = DEFAULT_FUEL
    generator_cap: int = DEFAULT_GENERATOR_CAP
    seed: int = 0

    def __post_init__(self):
        if self.tiebreak not in TIEBREAKS:
            raise ValueError(f"tiebreak must be one of {TIEBREAKS}")
        for name in ("k_max", "fuel", "generator_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_args(cls, args):
        data = {}
        if getattr(args, "config", None):
            data.update(_load_json(args.config))
        for f in fields(cls):
            value = getattr(args, f.name, None)
            if value is not None:
                data[f.name] = value
        unknown = set(data) - {f.name for f in fields(cls)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(arg):
    if arg.lstrip().startswith(("{", "[")):
        return json.loads(arg)
    if arg == "-":
        return json.load(sys.stdin)
    try:
        with open(arg) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {arg}: {e.strerror}") from None


def _load_set(arg):
    return UPSet.from_dict(_load_json(arg))


def _load_filter(arg):
    return PartialFilter.from_dict(_load_json(arg))


def _load_sets(args):
    """Set arguments; a single JSON list stands for several sets."""
    out = []
    for a in args:
        data = _load_json(a)
        out.extend(UPSet.from_dict(d) for d in (data if isinstance(data, list) else [data]))
    return out


def _load_term(arg):
    if os.path.isfile(arg):
        with open(arg) as fh:
            return parse(fh.read())
    return parse(arg)


def _parse_inputs(text):
    inputs = {}
    for item in filter(None, (text or "").split(",")):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad input assignment {item!r}; expected name=value")
        inputs[name.strip()] = int(value)
    return inputs


def _frac(q):
    return str(q)


# -- commands ------------------------------------------------------------


def cmd_upset(args, cfg):
    op = args.op
    if op == "member":
        return {"member": _load_set(args.set).member(args.n)}
    if op == "complement":
        return _load_set(args.set).complement().to_dict()
    if op in ("intersect", "union", "equals", "subset"):
        a, b = _load_set(args.a), _load_set(args.b)
        if op == "intersect":
            return a.intersect(b).to_dict()
        if op == "union":
            return a.union(b).to_dict()
        return {op: getattr(a, op)(b)}
    if op == "kth":
        return {"element": _load_set(args.set).kth_element(args.k)}
    if op == "above":
        return {"least_above": _load_set(args.set).least_above(args.n)}
    raise UsageError(op)


def cmd_algebra(args, cfg):
    if args.op == "span":
        return span(_load_sets(args.sets), cfg.generator_cap).to_dict()
    alg = Algebra.from_dict(_load_json(args.algebra))
    if args.op == "atoms":
        return {"atoms": {w: a.to_dict() for w, a in alg.atoms.items()}}
    return alg.verify_partition(args.bound).to_dict()


def cmd_filter(args, cfg):
    op = args.op
    if op == "new":
        return trivial_filter().to_dict()
    f = _load_filter(args.filter)
    if op == "extend":
        return f.extend(_load_sets(args.sets), cfg.tiebreak, cfg.generator_cap).to_dict()
    if op == "verify":
        rep = verify_axioms(f, seed=cfg.seed).to_dict()
        rep["config"] = asdict(cfg)
        return rep
    if op == "select":
        i, g = f.select_from_partition(_load_sets(args.parts), cfg.tiebreak, cfg.generator_cap)
        return {"index": i, "filter": g.to_dict()}
    if op == "index":
        enum = _load_sets([args.enum])
        idx = index_filter(f, enum)
        return {
            "indices": sorted(idx),
            "report": verify_index_filter(idx, enum).to_dict(),
        }
    raise UsageError(op)


def cmd_mu(args, cfg):
    if args.op == "search":
        return {"result": mu_search(_type1(args.f, cfg), args.bound)}
    if args.op == "kprime":
        return {"k": k_prime(args.n, _load_set(args.set))}
    zeros = _load_set(args.zeros)
    if args.f:
        sf = SearchableFn(_type1(args.f, cfg), zeros)
    else:
        sf = SearchableFn(lambda x: 0 if x in zeros else 1, zeros)
    filt = _load_filter(args.filter) if args.filter else trivial_filter()
    x, g = mu_via_filter(sf, filt, cfg.tiebreak)
    return {"result": x, "x_f": x_f(zeros).to_dict(), "filter": g.to_dict()}


def _type1(arg, cfg):
    """A closed type-1 term as a Python function."""
    term = _load_term(arg)
    ty = typecheck(term)
    if ty != T1:
        raise TermTypeError(f"{term} has type {ty}, expected 1", expected=str(T1), actual=str(ty))
    ev = Evaluator(fuel=cfg.fuel)
    fn = ev.eval(term, {})
    return lambda x: ev.apply(fn, x)


def cmd_ultralimit(args, cfg):
    seq = UPSeq.from_dict(_load_json(args.seq))
    filt = _load_filter(args.filter) if args.filter else trivial_filter()
    (lo, hi), trace, g = ultralimit(seq, args.precision, filt, cfg.tiebreak, cfg.k_max)
    witness = subsequence_witness(trace, seq)
    return {
        "config": asdict(cfg),
        "interval": [_frac(lo), _frac(hi)],
        "trace": [
            {"k": lv.k, "f": lv.index, "g": gk, "x_g": _frac(xg)}
            for lv, (gk, xg) in zip(trace.levels, witness)
        ],
        "nested": trace.nested(),
        "filter": g.to_dict(),
    }


def cmd_term(args, cfg):
    term = _load_term(args.term)
    inputs = _parse_inputs(getattr(args, "inputs", None))
    ty = typecheck(term, {x: N for x in inputs})
    if args.op == "check":
        return {"term": str(term), "type": str(ty), "degree": ty.degree}
    if args.op == "sites":
        return {"sites": [str(s) for s in collect_usites(term)]}
    oracles = filter_oracles(_load_filter(args.oracle)) if args.oracle else None
    ev = Evaluator(oracles, cfg.fuel)
    value = ev.eval(term, inputs)
    for a in args.apply or ():
        value = ev.apply(value, a)
    if not isinstance(value, int):
        raise TermTypeError("result is not a numeral; supply arguments with --apply")
    return {"value": value}


def cmd_eliminate(args, cfg):
    term = _load_term(args.term)
    value, trace = eliminate(
        term,
        _parse_inputs(args.inputs),
        tiebreak=cfg.tiebreak,
        fuel=cfg.fuel,
        generator_cap=cfg.generator_cap,
        config=asdict(cfg),
    )
    out = trace.to_dict()
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(_dump(out))
    return out


# -- parser --------------------------------------------------------------


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--config", default=argparse.SUPPRESS, help="JSON config file")
    g.add_argument("--tiebreak", choices=TIEBREAKS, default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--fuel", type=int, default=argparse.SUPPRESS)
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="upfilter", parents=[common], description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(group, name, **kw):
        return group.add_parser(name, parents=[common], **kw)

    up = sub.add_parser("upset", help="ultimately periodic set calculator")
    ups = up.add_subparsers(dest="op", required=True, parser_class=_Parser)
    for name in ("member", "above"):
        p = leaf(ups, name)
        p.add_argument("set")
        p.add_argument("n", type=int)
    p = leaf(ups, "kth")
    p.add_argument("set")
    p.add_argument("k", type=int)
    leaf(ups, "complement").add_argument("set")
    for name in ("intersect", "union", "equals", "subset"):
        p = leaf(ups, name)
        p.add_argument("a")
        p.add_argument("b")
    up.set_defaults(func=cmd_upset)

    al = sub.add_parser("algebra", help="finitely generated algebras")
    als = al.add_subparsers(dest="op", required=True, parser_class=_Parser)
    leaf(als, "span").add_argument("sets", nargs="*")
    leaf(als, "atoms").add_argument("algebra")
    p = leaf(als, "verify")
    p.add_argument("algebra")
    p.add_argument("--bound", type=int, default=256)
    al.set_defaults(func=cmd_algebra)

    fl = sub.add_parser("filter", help="partial ultrafilters")
    fls = fl.add_subparsers(dest="op", required=True, parser_class=_Parser)
    leaf(fls, "new")
    p = leaf(fls, "extend")
    p.add_argument("filter")
    p.add_argument("sets", nargs="+")
    leaf(fls, "verify").add_argument("filter")
    p = leaf(fls, "select")
    p.add_argument("filter")
    p.add_argument("parts", nargs="+")
    p = leaf(fls, "index")
    p.add_argument("filter")
    p.add_argument("--enum", required=True)
    fl.set_defaults(func=cmd_filter)

    mu = sub.add_parser("mu", help="Feferman's mu and K'")
    mus = mu.add_subparsers(dest="op", required=True, parser_class=_Parser)
    p = leaf(mus, "search")
    p.add_argument("--f", required=True, help="type-1 term")
    p.add_argument("--bound", type=int, required=True)
    p = leaf(mus, "via-filter")
    p.add_argument("--zeros", required=True, help="zero-set certificate")
    p.add_argument("--f", help="type-1 term (default: indicator of the zero set)")
    p.add_argument("--filter")
    p = leaf(mus, "kprime")
    p.add_argument("n", type=int)
    p.add_argument("set")
    mu.set_defaults(func=cmd_mu)

    p = leaf(sub, "ultralimit", help="ultralimit of an eventually periodic sequence")
    p.add_argument("--seq", required=True)
    p.add_argument("--precision", type=int, required=True)
    p.add_argument("--filter")
    p.add_argument("--k-max", dest="k_max", type=int, default=None)
    p.set_defaults(func=cmd_ultralimit)

    tm = sub.add_parser("term", help="term language tools")
    tms = tm.add_subparsers(dest="op", required=True, parser_class=_Parser)
    for name in ("check", "sites"):
        p = leaf(tms, name)
        p.add_argument("term")
        p.add_argument("--inputs")
    p = leaf(tms, "eval")
    p.add_argument("term")
    p.add_argument("--oracle", help="filter file answering U")
    p.add_argument("--inputs")
    p.add_argument("--apply", type=int, nargs="*")
    tm.set_defaults(func=cmd_term)

    p = leaf(sub, "eliminate", help="eliminate U from a term")
    p.add_argument("--term", required=True)
    p.add_argument("--inputs")
    p.add_argument("--trace", help="write the trace JSON here as well")
    p.set_defaults(func=cmd_eliminate)
    return parser


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = Config.from_args(args)
        out = args.func(args, cfg)
    except UsageError as e:
        stderr.write(_dump({"error": "UsageError", "message": str(e)}))
        return 1
    except DomainError as e:
        stderr.write(_dump(e.to_dict()))
        return 2
    except (ValueError, KeyError, TypeError) as e:
        stderr.write(_dump({"error": type(e).__name__, "message": str(e)}))
        return 2
    stdout.write(_dump(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
