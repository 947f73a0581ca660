"""Command-line front end.

    degseq-lab bounds  --degrees 3x100 --edge 1,2
    degseq-lab oracle  --degrees 1,1,1,1 --conditional 1,2
    degseq-lab sample  --degrees 3x20 --predicate connected --replicates 1000
    degseq-lab sweep   --family base3_plus_ones --n 2000 --c1 0,1,2,4
    degseq-lab census  --degrees 2,2,2,1,1 --edge 1,2

Vertices are 1-indexed on the command line. Output is JSON (or CSV for
sweeps) with floats at 17 significant digits and exact rationals as
``{"num": ..., "den": ...}`` strings. Exit status is 0 on success, 1 on a
domain error (JSON on stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import bounds as B
from . import events
from . import oracle as O
from .connectivity_lab import FAMILY_KINDS, FamilySpec, connectivity_sweep, heavy_component_check, moment_experiment, rows_to_csv, rows_to_json
from .degree_core import make_sequence, parse_degrees
from .errors import DegSeqError
from .graph_core import ConstraintPair, LabeledGraph, canon, empty_graph, parse_edge_list
from .sampler import MAX_TRIES, estimate_event
from .seeding import DEFAULT_SEED

SCHEMA = "degseq-lab/1"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# emission helpers
# ---------------------------------------------------------------------------

def rational(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def jsonable(x):
    if isinstance(x, Fraction):
        return rational(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return float(format(x, ".17g"))
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in seq]
    return str(x)


def dump(obj) -> str:
    # repr of a float rounded through 17g is exact and stable, so json's own
    # float formatting round-trips the value byte for byte
    return json.dumps(jsonable(obj), indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected u,v got {text!r}")
    return a - 1, b - 1


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _vertices(text: str) -> list[int]:
    try:
        return [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}")


def _add_degrees(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--degrees", help="inline sequence such as 3,3,2,2 or 3x100,1x20")
    g.add_argument("--degrees-file", help="file with one degree per line or a comma-separated line")


def _add_constraints(p):
    p.add_argument("--H1", help="edge-list file of required edges (u v per line, 1-indexed, or JSON pairs)")
    p.add_argument("--H2", help="edge-list file of forbidden edges")


def _add_mc(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--max-tries", type=int, default=MAX_TRIES)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: DEGSEQ_LAB_THREADS, else CPU count)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degseq-lab", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common_out(p, formats=("json",)):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", help="write here instead of stdout")

    p = sub.add_parser("bounds", help="evaluate a probability bound")
    _add_degrees(p)
    _add_constraints(p)
    p.add_argument("--edge", type=_pair, help="u,v for the conditional edge bound")
    p.add_argument("--kind", choices=("conditional", "joint", "subgraph", "cut", "cm-subgraph", "cm-cut", "pairings"))
    p.add_argument("--mode", choices=("conservative", "idealized"), default="conservative")
    p.add_argument("--S1", type=_vertices)
    p.add_argument("--S2", type=_vertices)
    p.add_argument("--ell", type=int)
    p.add_argument("--exact", action="store_true", help="also evaluate in exact rational arithmetic")
    common_out(p)

    p = sub.add_parser("oracle", help="exact answers by exhaustive enumeration")
    _add_degrees(p)
    _add_constraints(p)
    q = p.add_mutually_exclusive_group(required=True)
    q.add_argument("--conditional", type=_pair, metavar="U,V")
    q.add_argument("--joint", action="store_true")
    q.add_argument("--event", help="connected | disconnected | edge:u,v | together:v1,v2,...")
    q.add_argument("--pairings", action="store_true")
    q.add_argument("--count", action="store_true", help="number of graphs")
    common_out(p)

    p = sub.add_parser("sample", help="Monte Carlo estimate of an event")
    _add_degrees(p)
    _add_mc(p)
    p.add_argument("--predicate", default="connected",
                   help="always | connected | disconnected | edge:u,v | heavy | moments")
    p.add_argument("--target", choices=("simple_graph", "multigraph"), default="simple_graph")
    common_out(p)

    p = sub.add_parser("sweep", help="connectivity sweep over a degree family")
    p.add_argument("--family", choices=FAMILY_KINDS, default="base3_plus_ones")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--c1", type=_floats, default=[0.0])
    p.add_argument("--c2", type=_floats, default=[0.0])
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--base", type=int, default=3)
    _add_degrees(p, required=False)
    _add_mc(p)
    common_out(p, ("csv", "json"))

    p = sub.add_parser("census", help="switching counts and the double-count identity")
    _add_degrees(p)
    _add_constraints(p)
    p.add_argument("--edge", type=_pair, required=True, metavar="U,V")
    common_out(p)
    return ap


# ---------------------------------------------------------------------------
# loading inputs
# ---------------------------------------------------------------------------

def load_degrees(args, required=True):
    if getattr(args, "degrees", None):
        raw = parse_degrees(args.degrees)
    elif getattr(args, "degrees_file", None):
        raw = parse_degrees(Path(args.degrees_file).read_text())
    elif required:
        raise UsageError("--degrees or --degrees-file is required")
    else:
        return None
    return make_sequence(raw)


def load_graph(path, n) -> LabeledGraph:
    if not path:
        return empty_graph(n)
    return LabeledGraph(n, tuple(canon(u, v) for u, v in parse_edge_list(Path(path).read_text(), n)))


def load_constraints(args, n) -> ConstraintPair:
    return ConstraintPair(load_graph(args.H1, n), load_graph(args.H2, n))


def parse_event(text: str, d):
    name, _, rest = text.partition(":")
    if name == "always":
        return events.always
    if name == "connected":
        return events.connected
    if name == "disconnected":
        return events.disconnected
    if name == "edge":
        try:
            u, v = _pair(rest)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc))
        d.check_vertex(u)
        d.check_vertex(v)
        return events.edge_present(u, v)
    if name == "together":
        try:
            vs = _vertices(rest)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc))
        for v in vs:
            d.check_vertex(v)
        return events.together(vs)
    raise UsageError(f"--event/--predicate: unknown event {text!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> dict:
    d = load_degrees(args)
    c = load_constraints(args, d.n)
    kind = args.kind or ("conditional" if args.edge else "joint")
    out = {"kind": kind}
    if kind == "conditional":
        if args.edge is None:
            raise UsageError("--edge is required for conditional bounds")
        u, v = args.edge
        d.check_vertex(u)
        d.check_vertex(v)
        rep = B.conditional_edge_bounds(d, c, u, v)
        out.update(rep.to_dict())
        if args.exact:
            out["exact"] = B.conditional_edge_bounds(d, c, u, v, exact=True).to_dict()
    elif kind == "joint":
        out.update(B.joint_probability_bounds(d, c).to_dict())
        if args.exact:
            out["exact"] = B.joint_probability_bounds(d, c, exact=True).to_dict()
    elif kind in ("subgraph", "cm-subgraph"):
        if kind == "subgraph":
            lb = B.subgraph_upper_bound(d, c.H1, args.mode, args.exact)
        else:
            lb = B.config_model_subgraph_bound(d, c.H1, args.exact)
        out.update(_logbound(lb))
    elif kind in ("cut", "cm-cut"):
        if args.S1 is None or args.S2 is None or args.ell is None:
            raise UsageError("--S1, --S2 and --ell are required for cut bounds")
        if kind == "cut":
            lb = B.cut_bound(d, args.S1, args.S2, args.ell, args.mode, args.exact)
        else:
            lb = B.config_model_cut_bound(d, args.S1, args.S2, args.ell, args.exact)
        out.update(_logbound(lb))
    elif kind == "pairings":
        out["pairing_count_upper"] = B.pairing_count_upper(d)
        out["total_pairings"] = B.total_pairings(d.M)
    return out


def _logbound(lb) -> dict:
    out = {"mode": lb.mode, "log_value": lb.log_value, "value": lb.value, "applicable": lb.applicable}
    if lb.R is not None:
        out["R"] = lb.R
    if lb.exact is not None:
        out["exact"] = lb.exact
    return out


def cmd_oracle(args) -> dict:
    d = load_degrees(args)
    if args.pairings:
        pc = O.enumerate_pairings(d)
        return {"query": "pairings", "total": pc.total, "simple": pc.simple}
    if args.count:
        return {"query": "count", "graphs": len(O.enumerate_masks(d))}
    c = load_constraints(args, d.n)
    if args.conditional:
        u, v = args.conditional
        d.check_vertex(u)
        d.check_vertex(v)
        p = O.exact_conditional_probability(d, c, u, v)
        return {"query": "conditional", "edge": [u + 1, v + 1], "probability": p}
    if args.joint:
        return {"query": "joint", "probability": O.exact_joint_probability(d, c)}
    p = O.exact_event_probability(d, parse_event(args.event, d))
    return {"query": "event", "event": args.event, "probability": p}


def cmd_sample(args) -> dict:
    d = load_degrees(args)
    pred = args.predicate
    if pred == "heavy":
        est = heavy_component_check(d, args.replicates, args.seed, args.max_tries, args.threads)
    elif pred == "moments":
        return {"predicate": pred, "row": moment_experiment(d, args.replicates, args.seed, args.max_tries, args.threads).to_dict()}
    else:
        predicate = parse_event(pred, d)
        if args.target == "multigraph" and pred not in ("always",) and not pred.startswith("edge:"):
            raise UsageError(f"--predicate {pred} needs a simple graph; use --target simple_graph")
        if args.target == "multigraph" and pred.startswith("edge:"):
            e = canon(*_pair(pred.partition(":")[2]))
            predicate = lambda G: e in G.edges  # noqa: E731
        est = estimate_event(d, predicate, args.replicates, args.seed, args.target, args.max_tries, args.threads)
    return {"predicate": pred, "target": args.target, **est.to_dict()}


def cmd_sweep(args):
    custom = load_degrees(args, required=False)
    if args.family == "custom":
        if custom is None:
            raise UsageError("--family custom needs --degrees or --degrees-file")
        spec = FamilySpec("custom", custom.n, degrees=list(custom.labeled))
    else:
        if custom is not None:
            raise UsageError("--degrees only applies to --family custom")
        spec = FamilySpec(args.family, args.n, args.c1, args.c2, args.base, args.n1, args.n2)
    rows = connectivity_sweep(spec, args.replicates, args.seed, args.max_tries, args.threads)
    if args.format == "csv":
        return rows_to_csv(rows)
    return {"rows": rows_to_json(rows)}


def cmd_census(args) -> dict:
    d = load_degrees(args)
    c = load_constraints(args, d.n)
    u, v = args.edge
    d.check_vertex(u)
    d.check_vertex(v)
    c.validate(d)
    tf, tb = O.double_count_check(d, c, u, v)
    return {"edge": [u + 1, v + 1], "T_forward": tf, "T_backward": tb, "equal": tf == tb}


COMMANDS = {"bounds": cmd_bounds, "oracle": cmd_oracle, "sample": cmd_sample, "sweep": cmd_sweep, "census": cmd_census}


def emit(result, args, stdout) -> None:
    if isinstance(result, str):
        text = result
    else:
        text = dump({"schema": SCHEMA, "command": args.command, **result})
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        emit(COMMANDS[args.command](args), args, stdout)
    except UsageError as exc:
        stderr.write(dump({"schema": SCHEMA, "error": "usage", "message": str(exc)}))
        return 2
    except DegSeqError as exc:
        stderr.write(dump({"schema": SCHEMA, **exc.to_dict()}))
        return 1
    except (ValueError, OSError) as exc:
        stderr.write(dump({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}))
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
