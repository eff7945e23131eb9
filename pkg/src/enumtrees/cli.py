"""Command-line front end: ``enumtrees <subcommand> [options]``.

Exit status: 0 on success, 1 when an operation's precondition fails,
2 when a node or point budget would be exceeded, 64 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import islice

import numpy as np

from . import chan, heights, monoid, orbit, tree
from .core import BudgetExceeded, PreconditionError, format_rational, parse_rational, to_proj
from .maps import parse_family

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64
DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _plain(data):
    """Turn report objects into dicts and lists of JSON scalars."""
    if hasattr(data, "to_dict"):
        return _plain(data.to_dict())
    if hasattr(data, "row"):
        return _plain(data.row())
    if isinstance(data, dict):
        return {str(k): _plain(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_plain(v) for v in data]
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.floating):
        return float(data)
    return data


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit_report(data, fmt: str) -> bytes:
    """Serialise a result: canonical JSON, CSV with a header row, or plain text.

    CSV and text take a dict (one row) or a list of dicts (a table); both
    keep the key order of the first row.
    """
    plain = _plain(data)
    if fmt == "json":
        return (json.dumps(plain, sort_keys=True, separators=(",", ":")) + "\n").encode()
    rows = plain if isinstance(plain, list) else [plain]
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            cols = list(rows[0])
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for row in rows:
                w.writerow([_cell(row.get(c)) for c in cols])
        return buf.getvalue().encode()
    if fmt == "text":
        if not isinstance(data, (dict, list)) and type(data).__str__ is not object.__str__:
            return (str(data) + "\n").encode()
        lines = []
        for row in rows:
            if isinstance(row, dict):
                lines.append(" ".join(f"{k}={_cell(v)}" for k, v in row.items()))
            else:
                lines.append(_cell(row))
        return ("\n".join(lines) + "\n").encode() if lines else b""
    raise UsageError(f"unknown format {fmt!r}")


def _write(out, payload: bytes):
    if hasattr(out, "buffer"):
        out.flush()
        out.buffer.write(payload)
        out.buffer.flush()
    elif isinstance(out, io.TextIOBase):
        out.write(payload.decode())
    else:
        out.write(payload)


def _format(args) -> str:
    return "json" if getattr(args, "json", False) else args.format


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _pq(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def cmd_enumerate(args, out):
    if args.count < 0 or args.start < 0:
        raise PreconditionError("count and start must be nonnegative")
    stream = islice(tree.bfs_rationals(args.start), args.count)
    fmt = _format(args)
    if fmt == "json":
        _write(out, emit_report([{"index": n, "value": _pq(x)} for n, x in stream], "json"))
        return
    if fmt == "csv":
        _write(out, b"index,value\n")
    sep = "\t" if fmt == "text" else ","
    for n, x in stream:
        _write(out, f"{n}{sep}{_pq(x)}\n".encode())


def cmd_locate(args, out):
    if (args.value is None) == (args.index is None):
        raise UsageError("locate: give exactly one of VALUE or --index")
    x = tree.index_to_rational(args.index) if args.index is not None else monoid._positive(parse_rational(args.value))
    data = {
        "value": _pq(x),
        "path": tree.tree_path(x),
        "index": tree.rational_to_index(x),
        "matrix": str(monoid.omega_inverse(x)),
        "cf": tree.format_cf(tree.cf_of(x)),
    }
    fmt = _format(args)
    if fmt == "text":
        _write(out, "".join(f"{k} {v}\n" for k, v in data.items()).encode())
    else:
        _write(out, emit_report(data, fmt))


def cmd_decompose(args, out):
    if (args.matrix is None) == (args.word is None):
        raise UsageError("decompose: give exactly one of MATRIX or --word")
    if args.word is not None:
        m = monoid.compose_word(args.word)
        word = args.word
    else:
        m = monoid.Mat2.parse(args.matrix)
        word = monoid.decompose(m)
    data = {
        "matrix": str(m),
        "word": word,
        "runs": "".join(f"{c}{k}" for c, k in monoid.runs(word)),
        "length": len(word),
        "omega": format_rational(monoid.omega(m)),
    }
    fmt = _format(args)
    if fmt == "text":
        _write(out, "".join(f"{k} {v}\n" for k, v in data.items()).encode())
    else:
        _write(out, emit_report(data, fmt))


def cmd_fusc(args, out):
    if args.max < 0:
        raise PreconditionError("fusc is defined for n >= 0")
    rows = [{"n": n, "fusc": v} for n, v in enumerate(tree.fusc_values(args.max))]
    _write(out, emit_report(rows, _format(args)))


def cmd_newman(args, out):
    if args.count < 0:
        raise PreconditionError("count must be nonnegative")
    x = monoid._positive(parse_rational(args.start))
    rows = []
    for n in range(args.count):
        rows.append({"step": n, "value": format_rational(x)})
        x = tree.newman_next(x)
    _write(out, emit_report(rows, _format(args)))


def cmd_chan(args, out):
    spec = chan.gk_family(args.k) if args.family == "G" else chan.hk_family(args.k)
    report = chan.verify_partition(spec, args.height, args.depth)
    fmt = _format(args)
    if fmt == "text":
        d = report.to_dict()
        lines = [
            f"family {spec.name} height {args.height} depth {args.depth}",
            f"clean {str(report.clean).lower()}",
            f"orbit_counts {' '.join(map(str, report.orbit_counts))}",
        ]
        for key in ("duplicates", "foreign", "missing", "missing_inconclusive"):
            lines.append(f"{key} {len(d[key])}")
        _write(out, ("\n".join(lines) + "\n").encode())
    elif fmt == "csv":
        d = report.to_dict()
        rows = [{"root": format_rational(r), "count": c} for r, c in zip(spec.roots, report.orbit_counts)]
        rows += [{"root": key, "count": len(d[key])} for key in ("duplicates", "foreign", "missing", "missing_inconclusive")]
        _write(out, emit_report(rows, "csv"))
    else:
        _write(out, emit_report(report, "json"))


def cmd_count_heights(args, out):
    if args.max < 1:
        raise PreconditionError("N must be >= 1")
    if args.table:
        table = heights.count_points_table(args.max)
        rows = [heights.HeightCensus(n, int(table[n])).row() for n in range(1, args.max + 1)]
    else:
        rows = [heights.count_points_up_to(args.max).row()]
    fmt = _format(args)
    _write(out, emit_report(rows if fmt != "json" or args.table else rows[0], fmt))


def _orbit_family(args) -> orbit.Family:
    if args.maps is None or args.x0 is None:
        raise UsageError("--maps and --x0 are required")
    fam = orbit.Family(parse_family(args.maps), to_proj(parse_rational(args.x0)))
    if fam.min_degree >= 2:
        fam = fam.with_certified_c(args.c)
    elif args.c is not None:
        raise PreconditionError("a constant c needs every map of degree >= 2")
    return fam


def cmd_density(args, out):
    if args.max < 1:
        raise PreconditionError("N must be >= 1")
    if args.set == "custom-map-orbit":
        fam = _orbit_family(args)
        if fam.c is not None:
            nodes = orbit.orbit_nodes_up_to(fam, args.max)
        else:
            nodes = [n for n in orbit.expand_orbit(fam, args.depth) if heights.height(n.value) <= args.max]
        n = args.max
        keys = np.array(sorted({(v.value.x0 + n) * (n + 1) + v.value.x1 for v in nodes}), dtype=np.int64)

        def predicate(x0, x1):
            return np.isin((x0 + n) * (n + 1) + x1, keys)
    else:
        predicate = heights.PRESET_SETS[args.set]
    result = heights.density_estimate(predicate, args.max)
    fmt = _format(args)
    _write(out, emit_report(result.row() if fmt == "json" else [result.row()], fmt))


def cmd_schanuel(args, out):
    inv = heights.FieldInvariants(args.r1, args.r2, args.disc, args.h, args.reg, args.w, args.zeta2)
    report = heights.schanuel_report(args.degree, inv, args.residue)
    fmt = _format(args)
    data = {"closed_form": report.closed_form}
    if report.residue_form is not None:
        data["residue_form"] = report.residue_form
        data["discrepancy"] = report.discrepancy
    if fmt == "text":
        lines = [repr(report.closed_form)]
        if report.residue_form is not None:
            lines.append(f"residue_form {report.residue_form!r}")
            lines.append(f"discrepancy {report.discrepancy!r}")
        _write(out, ("\n".join(lines) + "\n").encode())
    else:
        _write(out, emit_report(data, fmt))


def cmd_orbit(args, out):
    fam = _orbit_family(args)
    results: list = []
    witnesses: list = []
    n0 = None
    if args.check == "inject":
        rep = orbit.check_injectivity(fam, args.depth)
        results.append(rep.to_dict())
        if rep.collision is not None:
            w1, w2, v = rep.collision
            witnesses.append({"words": [list(w1), list(w2)], "value": str(v)})
        if fam.c is not None and rep.injective:
            try:
                n0 = orbit.find_escape_depth(fam, args.depth)
            except orbit.EscapeNotReached:
                n0 = None
    elif args.check == "growth":
        n0 = orbit.find_escape_depth(fam, args.depth)
        rep = orbit.growth_check(fam, args.depth, n0)
        bad = orbit.closure_sample(fam, n0, args.depth, args.samples, args.seed)
        d = rep.to_dict()
        witnesses.extend(d.pop("violations"))
        witnesses.extend({"kind": "closure", "word": w} for w in bad)
        d["closure_samples"] = args.samples
        d["closure_failures"] = len(bad)
        results.append(d)
    elif args.check == "census":
        n0 = orbit.find_escape_depth(fam, args.depth)
        for b in args.B:
            res = orbit.orbit_height_census(fam, b, args.depth, n0)
            results.append(res.to_dict())
            if not res.within_bound:
                witnesses.append({"B": b, "count": res.count, "bound": res.bound})
    else:
        n_max = args.nmax
        for row in orbit.orbit_density_trace(fam, n_max, args.samples_n):
            results.append(row.row())
    report = {
        "family": [str(f) for f in fam.maps],
        "x0": str(fam.x0),
        "n0": n0,
        "c": fam.c,
        "mode": fam.mode,
        "results": results,
        "witnesses": witnesses,
    }
    fmt = _format(args)
    if fmt == "json":
        _write(out, emit_report(report, "json"))
    elif fmt == "csv":
        _write(out, emit_report(results, "csv"))
    else:
        head = f"family {'; '.join(report['family'])} x0 {report['x0']} c {fam.c} mode {fam.mode} n0 {n0}"
        body = emit_report(results, "text").decode()
        tail = "".join(f"witness {_cell(w)}\n" for w in witnesses)
        _write(out, (head + "\n" + body + tail).encode())


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="enumtrees", description="Enumeration trees of rationals and height densities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser

    def add_subcommand(name, help, fmt="text"):
        # common flags are added per subcommand: parents= would share one
        # action object and so one --format default across all of them
        s = add(name, help=help)
        s.add_argument("--format", choices=("text", "csv", "json"), default=fmt)
        s.add_argument("--json", action="store_true", help="shorthand for --format json")
        s.add_argument("--seed", type=int, default=DEFAULT_SEED)
        return s

    s = add_subcommand("enumerate", "BFS listing of the positive rationals")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--start", type=int, default=0)
    s.set_defaults(func=cmd_enumerate)

    s = add_subcommand("locate", "path, index, matrix and continued fraction of p/q")
    s.add_argument("value", nargs="?")
    s.add_argument("--index", type=int)
    s.set_defaults(func=cmd_locate)

    s = add_subcommand("decompose", "factor a matrix of SL2(N0) into L and R")
    s.add_argument("matrix", nargs="?", help="a,b,c,d")
    s.add_argument("--word")
    s.set_defaults(func=cmd_decompose)

    s = add_subcommand("fusc", "Stern's diatomic sequence")
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_fusc)

    s = add_subcommand("newman", "iterate Newman's successor map")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--start", default="1")
    s.set_defaults(func=cmd_newman)

    s = add_subcommand("chan", "check a Chan forest partition")
    s.add_argument("--family", choices=("G", "H"), required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--height", type=int, default=40)
    s.add_argument("--depth", type=int, default=100)
    s.set_defaults(func=cmd_chan)

    s = add_subcommand("count-heights", "exact counts of points of bounded height", fmt="csv")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--table", action="store_true")
    s.set_defaults(func=cmd_count_heights)

    s = add_subcommand("density", "height density of a set", fmt="csv")
    s.add_argument("--set", choices=(*heights.PRESET_SETS, "custom-map-orbit"), required=True)
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--maps")
    s.add_argument("--x0")
    s.add_argument("--c", type=float)
    s.add_argument("--depth", type=int, default=12)
    s.set_defaults(func=cmd_density)

    s = add_subcommand("schanuel", "Schanuel constant from field invariants")
    s.add_argument("--r1", type=int, required=True)
    s.add_argument("--r2", type=int, required=True)
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--reg", type=float, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--zeta2", type=float, required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--residue", type=float)
    s.set_defaults(func=cmd_schanuel)

    s = add_subcommand("orbit", "orbit growth checks for a family of rational maps")
    s.add_argument("--maps", required=True)
    s.add_argument("--x0", required=True)
    s.add_argument("--depth", type=int, default=12)
    s.add_argument("--check", choices=("inject", "growth", "census", "density"), required=True)
    s.add_argument("--c", type=float)
    s.add_argument("--B", type=float, nargs="+", default=[5.0, 10.0, 14.0])
    s.add_argument("--nmax", type=int, default=10**6)
    s.add_argument("--points", dest="samples_n", type=int, default=6, help="cutoffs in the density trace")
    s.add_argument("--samples", type=int, default=1000, help="random words in the closure check")
    s.set_defaults(func=cmd_orbit)
    return p


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args, out)
    except UsageError as e:
        print(parser.format_usage().rstrip(), file=err)
        print(e, file=err)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"error: {e}", file=err)
        return EXIT_BUDGET
    except PreconditionError as e:
        print(f"error: {e}", file=err)
        return EXIT_PRECONDITION
    except SystemExit as e:  # --help
        return int(e.code or 0)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
