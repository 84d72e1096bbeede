"""``apexis`` command line.

Exit status: 0 for yes / all checks passed, 1 for no / a check failed,
2 for malformed input or other errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import catalog
from .apex import is_l_apex
from .generate import GenSpec
from .graph import GraphError, complete
from .graph6 import Graph6Error, decode, encode
from .parallel import Runner, atomic_write, default_jobs
from .planarity import embed, kuratowski_model
from .reports import apex_json, dumps, embedding_json, finish, minor_json

log = logging.getLogger("apexis")


class UsageError(Exception):
    pass


def _read_graph(arg: str):
    text = sys.stdin.readline() if arg == "-" else arg
    try:
        return decode(text)
    except (Graph6Error, GraphError) as exc:
        raise UsageError(f"malformed graph6 input: {exc}") from exc


def _runner(args) -> Runner:
    return Runner(args.jobs, getattr(args, "checkpoint", None))


def _emit(args, report: dict, start: float) -> None:
    out = finish(report, None if args.no_timing else time.time() - start,
                 None if args.no_timing else args.jobs)
    sys.stdout.write(dumps(out))


# ---------------------------------------------------------------------------


def cmd_planar(args) -> int:
    g = _read_graph(args.graph)
    start = time.time()
    emb = embed(g)
    cert = embedding_json(emb) if emb is not None else minor_json(kuratowski_model(g))
    _emit(args, {"command": "planar", "parameters": {"graph6": encode(g)},
                 "planar": emb is not None, "certificate": cert}, start)
    return 0 if emb is not None else 1


def cmd_apex(args) -> int:
    g = _read_graph(args.graph)
    start = time.time()
    res = is_l_apex(g, args.l)
    _emit(args, {"command": "apex", "parameters": {"graph6": encode(g), "l": args.l},
                 "result": apex_json(res)}, start)
    return 0 if res else 1


def cmd_enumerate(args) -> int:
    start = time.time()
    spec = GenSpec(args.n, args.e, args.e if args.e_max is None else args.e_max,
                   min_deg=args.min_deg)
    kind = "nonplanar" if args.filter == "nonplanar" else "all"
    res = catalog.sweep(kind, spec, _runner(args))
    lines = [s for e in sorted(res) for s in res[e]["hits"]]
    text = "".join(s + "\n" for s in lines)
    counts = {str(e): len(r["hits"]) for e, r in res.items()}
    if args.output:
        atomic_write(Path(args.output), text)
        _emit(args, {"command": "enumerate",
                     "parameters": {"n": args.n, "e": args.e, "e_max": spec.top,
                                    "min_deg": args.min_deg, "filter": args.filter},
                     "count": len(lines), "counts": counts}, start)
    else:
        sys.stdout.write(text)
        print(f"count {len(lines)}", file=sys.stderr)
    return 0


def cmd_table1(args) -> int:
    start = time.time()
    rep = catalog.verify_nonplanar_census(_runner(args))
    if args.json:
        _emit(args, rep, start)
    else:
        print(f"{'n':>3} {'e':>3} {'expected':>8} {'found':>6}  match")
        for c in rep["cells"]:
            print(f"{c['n']:>3} {c['e']:>3} {c['expected']:>8} {c['count']:>6}  {'yes' if c['match'] else 'NO'}")
        print("all cells match" if rep["passed"] else "MISMATCH")
    return 0 if rep["passed"] else 1


def cmd_edge_bound(args) -> int:
    start = time.time()
    rep = catalog.verify_edge_bound(args.max_n, args.max_e, _runner(args))
    _emit(args, rep, start)
    return 0 if rep["passed"] else 1


def cmd_verify_main(args) -> int:
    start = time.time()
    rep = catalog.verify_two_apex_sweep(args.max_n, args.max_e, _runner(args))
    _emit(args, rep, start)
    return 0 if rep["passed"] else 1


def cmd_verify_1apex(args) -> int:
    start = time.time()
    rep = catalog.verify_1apex_threshold(args.max_e, _runner(args))
    _emit(args, rep, start)
    return 0 if rep["passed"] else 1


def cmd_classify(args) -> int:
    start = time.time()
    rep = catalog.classify(args.n, args.e, args.min_deg, _runner(args))
    _emit(args, rep, start)
    return 0


def cmd_family(args) -> int:
    start = time.time()
    seed = complete(7) if args.seed.upper() == "K7" else _read_graph(args.seed)
    rep = catalog.family_report(None if args.seed.upper() == "K7" else seed)
    if args.output:
        d = Path(args.output)
        atomic_write(d / "family.g6", "".join(m["graph6"] + "\n" for m in rep["members"]))
        atomic_write(d / "manifest.json", dumps(rep))
    _emit(args, rep, start)
    return 0


def cmd_unknot_check(args) -> int:
    from .spatial import DiagramError, certify_unknotted, cycle_crossing_sets, load_diagram, maximal_sets

    try:
        d = load_diagram(args.diagram)
    except (DiagramError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    start = time.time()
    reports = certify_unknotted(d, args.max_states)
    sets = maximal_sets(s for _, s in cycle_crossing_sets(d))
    verdicts = [r.verdict for r in reports]
    rep = {
        "command": "unknot-check",
        "parameters": {"diagram": Path(args.diagram).name},
        "vertices": len(d.vertex_names),
        "edges": len(d.edges),
        "crossing_count": len(d.signs),
        "maximal_crossing_sets": ["".join(str(c) for c in sorted(s)) if all(c < 10 for c in s)
                                  else sorted(s) for s in sets],
        "cycles": [r.to_dict(d.vertex_names) for r in reports],
        "summary": {v: verdicts.count(v) for v in ("Unknot", "Knotted", "Unknown")},
    }
    _emit(args, rep, start)
    return 0 if all(v == "Unknot" for v in verdicts) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apexis", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, parallel=False):
        sp.add_argument("--no-timing", action="store_true",
                        help="omit wall time and worker count from the report")
        sp.add_argument("--jobs", type=int, default=default_jobs(),
                        help="worker processes (default: $APEXIS_JOBS or 1)")
        if parallel:
            sp.add_argument("--checkpoint", metavar="DIR",
                            help="store finished shards here and resume from them")

    sp = sub.add_parser("planar", help="planarity with certificate")
    sp.add_argument("graph", help="graph6 string or - for stdin")
    common(sp)
    sp.set_defaults(func=cmd_planar)

    sp = sub.add_parser("apex", help="l-apex test with certificate")
    sp.add_argument("-l", type=int, choices=(0, 1, 2, 3), required=True)
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_apex)

    sp = sub.add_parser("enumerate", help="isomorph-free generation as graph6")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-e", type=int, required=True)
    sp.add_argument("--e-max", type=int)
    sp.add_argument("--min-deg", type=int, default=0)
    sp.add_argument("--filter", choices=("nonplanar", "none"), default="none")
    sp.add_argument("-o", "--output")
    common(sp, True)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("table1", help="non-planar census of small graphs")
    sp.add_argument("--json", action="store_true")
    common(sp, True)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("edge-bound", help="edge lower bound for non-planar graphs")
    sp.add_argument("--max-n", type=int, default=11)
    sp.add_argument("--max-e", type=int, default=13)
    common(sp, True)
    sp.set_defaults(func=cmd_edge_bound)

    sp = sub.add_parser("verify-main", help="graphs with at most 20 edges are 2-apex")
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--max-e", type=int, default=20)
    common(sp, True)
    sp.set_defaults(func=cmd_verify_main)

    sp = sub.add_parser("verify-1apex", help="graphs with at most 14 edges are 1-apex")
    sp.add_argument("--max-e", type=int, default=14)
    common(sp, True)
    sp.set_defaults(func=cmd_verify_1apex)

    sp = sub.add_parser("classify", help="non-2-apex classes of a stratum")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-e", type=int, required=True)
    sp.add_argument("--min-deg", type=int, default=0)
    common(sp, True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("family", help="triangle-Y closure")
    sp.add_argument("--seed", default="K7", help="K7 or a graph6 string")
    sp.add_argument("-o", "--output", metavar="DIR")
    common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("unknot-check", help="certify the cycles of a spatial diagram")
    sp.add_argument("diagram")
    sp.add_argument("--max-states", type=int, default=5000)
    common(sp)
    sp.set_defaults(func=cmd_unknot_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"apexis: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError, OSError) as exc:
        print(f"apexis: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
