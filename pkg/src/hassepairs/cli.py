"""Command-line entry point ``hassepairs``.

Exit codes: 0 success, 1 a negative mathematical finding (non-isomorphic
graphs, a violation, a failed fixture), 2 usage or environment error with a
JSON object on stderr.  Streams are JSON lines closed by one summary object.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import density
from .curves import enumerate_set
from .errors import EmptySet, HasseError, MixedTypes
from .field import field_of_order
from .fixtures import run_fixture_suite
from .graph import UnsupportedGraph, graphs_isomorphic, to_dot
from .modpoly import SUPPORTED_DEGREES as _SUPPORTED
from .modpoly import ModularPolynomialStore
from .pairs import Status, classify_pair, enumerate_hasse_pairs
from .sweep import DEFAULT_DEGREES, default_jobs, pair_graphs, sweep

PAIR_SEARCH_CAP = 10 ** 7
SWEEP_CAP = 10 ** 5
CELLS = [f"{a.value}-{b.value}" for a in Status for b in Status]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # machine-readable usage errors
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _degrees(text: str) -> tuple[int, ...]:
    try:
        B = tuple(sorted({int(s) for s in text.split(",") if s.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")
    bad = [ell for ell in B if ell not in _SUPPORTED]
    if not B or bad:
        raise argparse.ArgumentTypeError(f"degrees must be a non-empty subset of {list(_SUPPORTED)}")
    return B


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _cap(n: int, cap: int, what: str) -> int:
    if n > cap:
        raise UsageError(f"{what} {n} above the cap {cap}")
    return n


class _Stream:
    """JSON-lines writer with a summary trailer."""

    def __init__(self, out, timing: bool):
        self.out, self.timing, self.t0 = out, timing, time.perf_counter()

    def emit(self, obj: dict) -> None:
        self.out.write(_dump(obj) + "\n")

    def close(self, **counts) -> None:
        summary = {"type": "summary", **counts}
        if self.timing:
            summary["wall_time_s"] = round(time.perf_counter() - self.t0, 3)
        self.emit(summary)


# -------------------------------------------------------------- commands


def cmd_classify(args, out) -> int:
    rec = classify_pair(args.q1, args.q2)
    d = rec.as_dict()
    if args.curves:
        sides = (("e1", rec.e1_status, args.q1, args.q2), ("e2", rec.e2_status, args.q2, args.q1))
        for key, status, q, n in sides:
            S = [] if status is Status.EMPTY else enumerate_set(field_of_order(q), n)
            d[key]["count"] = len(S)
            d[key]["js"] = [c.j.serialize() for c in S]
    out.write(_dump(d) + "\n")
    return 0


def cmd_graph(args, out) -> int:
    G1, G2 = pair_graphs(args.q1, args.q2, args.degrees, args.store, args.allow_ss)
    if args.format == "dot":
        out.write(to_dot(G1, "E1") + to_dot(G2, "E2"))
    else:
        out.write(_dump({"q1": args.q1, "q2": args.q2, "E1": G1.to_json(), "E2": G2.to_json()}) + "\n")
    return 0


def cmd_verify_iso(args, out) -> int:
    G1, G2 = pair_graphs(args.q1, args.q2, args.degrees, args.store, args.allow_ss)
    sigma = graphs_isomorphic(G1, G2)
    if sigma is not None:
        out.write(_dump({"isomorphic": True, "degrees": list(args.degrees), "bijection": sigma}) + "\n")
        return 0
    profile = lambda G: sorted(  # noqa: E731
        [G.out_degree(u, ell) for ell in G.degrees] for u in range(len(G))
    )
    out.write(
        _dump(
            {
                "isomorphic": False,
                "degrees": list(args.degrees),
                "vertices": [len(G1), len(G2)],
                "out_degree_profiles": [profile(G1), profile(G2)],
                "edges": [G1.to_json()["edges"], G2.to_json()["edges"]],
            }
        )
        + "\n"
    )
    return 1


def cmd_search_empty(args, out) -> int:
    s = _Stream(out, args.timing)
    n = found = 0
    for rec in enumerate_hasse_pairs(_cap(args.max, PAIR_SEARCH_CAP, "--max")):
        n += 1
        if rec.e1_status is Status.EMPTY and rec.e2_status is Status.EMPTY:
            found += 1
            s.emit({"type": "finding", **rec.as_dict()})
    s.close(max=args.max, pairs_checked=n, findings=found)
    return 0


def cmd_andrica(args, out) -> int:
    s = _Stream(out, args.timing)
    table = density.sieve(_cap(args.max, density.SIEVE_LIMIT, "--max"))
    rep = density.andrica_scan(table, args.over)
    for a, b in rep.violations:
        s.emit({"type": "violation", "q": a, "next": b})
    for a, b in rep.equalities:
        s.emit({"type": "equality", "q": a, "next": b})
    s.close(over=rep.over, max=args.max, gaps_checked=rep.checked, violations=len(rep.violations),
            equalities=len(rep.equalities))
    return 1 if rep.violations else 0


def cmd_partners(args, out) -> int:
    s = _Stream(out, args.timing)
    x = _cap(args.max, density.SIEVE_LIMIT // 2, "--max")
    _, hi = density.hasse_window(x)
    table = density.sieve(hi)
    exceptions = density.threshold_report(table, x)
    for p, n, thr in exceptions:
        s.emit({"type": "exception", "p": p, "partners": n, "threshold": round(thr, 6)})
    s.close(max=x, primes_checked=table.prime_count(2, x), exceptions=len(exceptions))
    return 1 if exceptions else 0


def cmd_enumerate(args, out) -> int:
    s = _Stream(out, args.timing)
    n = 0
    for rec in enumerate_hasse_pairs(_cap(args.max, PAIR_SEARCH_CAP, "--max"), odd_only=args.odd):
        if args.filter and rec.table_cell != args.filter:
            continue
        n += 1
        s.emit(rec.as_dict())
    s.close(max=args.max, filter=args.filter, pairs=n)
    return 0


def cmd_sweep(args, out) -> int:
    s = _Stream(out, args.timing)
    n = bad = 0
    for chk in sweep(_cap(args.max, SWEEP_CAP, "--max"), args.degrees, args.jobs, args.store):
        n += 1
        bad += not chk.ok
        s.emit(chk.as_dict())
    s.close(max=args.max, degrees=list(args.degrees), pairs=n, failures=bad)
    return 1 if bad else 0


def cmd_fixtures(args, out) -> int:
    s = _Stream(out, args.timing)
    res = run_fixture_suite(args.file, args.store)
    for r in res:
        s.emit(r.as_dict())
    failed = sum(not r.passed for r in res)
    s.close(cases=len(res), failed=failed)
    return 1 if failed else 0


# -------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--modpoly-dir", default=None, help="directory of phi_<l>.txt files")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: available cores)")
    common.add_argument("--timing", action="store_true", help="add wall time to summary trailers")

    p = _Parser(prog="hassepairs", description="Hasse pairs, curve sets and isogeny graphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_cmd(name, func, help_):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.add_argument("q1", type=_positive)
        c.add_argument("q2", type=_positive)
        c.set_defaults(func=func)
        return c

    c = pair_cmd("classify", cmd_classify, "classify one pair")
    c.add_argument("--curves", action="store_true", help="list the j-invariants of both sets")

    for name, func in (("graph", cmd_graph), ("verify-iso", cmd_verify_iso)):
        c = pair_cmd(name, func, "isogeny graphs of both sets" if name == "graph" else "test the two graphs for isomorphism")
        c.add_argument("--degrees", type=_degrees, default=DEFAULT_DEGREES)
        c.add_argument("--allow-ss", action="store_true", help="build supersingular sets too")
        if name == "graph":
            c.add_argument("--format", choices=("dot", "json"), default="dot")

    c = sub.add_parser("search-empty", parents=[common], help="pairs with both sets empty")
    c.add_argument("--max", type=_positive, required=True)
    c.set_defaults(func=cmd_search_empty)

    c = sub.add_parser("andrica", parents=[common], help="square-root gaps of consecutive primes or prime powers")
    c.add_argument("--max", type=_positive, required=True)
    c.add_argument("--over", choices=("primes", "prime-powers"), default="primes")
    c.set_defaults(func=cmd_andrica)

    c = sub.add_parser("partners", parents=[common], help="primes with fewer prime partners than sqrt(p)/(2 log p)")
    c.add_argument("--max", type=_positive, required=True)
    c.set_defaults(func=cmd_partners)

    c = sub.add_parser("enumerate", parents=[common], help="stream Hasse pairs q1 < q2 <= max")
    c.add_argument("--max", type=_positive, required=True)
    c.add_argument("--filter", choices=CELLS, default=None, metavar="CELL", help="e.g. ordinary-ordinary")
    c.add_argument("--odd", action="store_true", help="odd pairs only")
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("sweep", parents=[common], help="check every ordinary pair up to max")
    c.add_argument("--max", type=_positive, required=True)
    c.add_argument("--degrees", type=_degrees, default=DEFAULT_DEGREES)
    c.set_defaults(func=cmd_sweep)

    c = sub.add_parser("fixtures", parents=[common], help="re-derive the bundled worked examples")
    c.add_argument("--file", default=None, help="alternative fixture file")
    c.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr

    def fail(kind: str, message: str) -> int:
        err.write(_dump({"error": kind, "message": message}) + "\n")
        return 2

    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return fail("usage", str(exc))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    args.jobs = args.jobs or default_jobs()
    try:
        args.store = ModularPolynomialStore(args.modpoly_dir)
        return args.func(args, out)
    except UsageError as exc:
        return fail("usage", str(exc))
    except (UnsupportedGraph, MixedTypes, EmptySet) as exc:
        out.write(_dump({"unsupported": True, "reason": str(exc)}) + "\n")
        return 1
    except HasseError as exc:
        return fail(type(exc).__name__, str(exc))
    except (OSError, ValueError) as exc:
        return fail(type(exc).__name__, str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
