"""zoomscope command line: zoom surveys, congruence statistics, toric ranks.

Each run writes into runs/<timestamp>-<command>/ (see --out-dir).  Exit code
0 on success, 1 on bad input or a library error, 2 when the two point
enumerators disagree.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
import time
from datetime import datetime
from fractions import Fraction
from pathlib import Path

from . import __version__
from .congruence import (ConstantWeight, CubicWeight, QuadPoly, central_count,
                         interval_count, rho, rho_sum, root_arrays,
                         root_discrepancy)
from .errors import UnsupportedZoomFactor, ZoomscopeError
from .surface import Region
from .toric import (Fan, admissible_multidegrees, builtin_fan, cox_inequalities,
                    irreducible_relations, lr_rank, positive_relations)
from .zoom import (ZoomQuery, _accept, bounds_used, fit_exponent, line_records,
                   offline_brute, offline_param, survey)

SCHEMA_VERSION = 1
CSV_COLUMNS = ["x", "y", "s", "t", "w", "z", "height", "region", "thin", "C3", "D", "W", "D1", "D2"]
MISMATCH = 2

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_COUNT = re.compile(r"^(\d+)(?:e(\d+))?$")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"{text!r}: write rationals as p/q (decimals are refused)")
    return Fraction(text)


def parse_count(text: str) -> int:
    m = _COUNT.match(text.strip().replace("_", ""))
    if not m:
        raise argparse.ArgumentTypeError(f"{text!r} is not a natural number (1000000 or 1e6)")
    return int(m.group(1)) * 10 ** int(m.group(2) or 0)


def parse_grid(text: str) -> list:
    return [parse_count(t) for t in text.split(",") if t.strip()]


def parse_poly(text: str) -> QuadPoly:
    try:
        lead, const = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r}: expected lead,constant such as 1,1")
    return QuadPoly(lead, const)


# ----------------------------------------------------------------- output

def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def record_row(rec):
    p, c, prof = rec.point, rec.chart, rec.profile
    extra = ["", "", "", "", ""] if prof is None else [prof.C3, prof.D, prof.W, prof.D1, prof.D2]
    return [p.x, p.y, p.s, p.t, str(c.w), str(c.z), rec.height, rec.region.value,
            int(rec.thin)] + extra


def run_dir(base: str, command: str) -> Path:
    stamp = datetime.now().strftime("%Y%m%d-%H%M%S-%f")
    d = Path(base) / f"{stamp}-{command}"
    d.mkdir(parents=True, exist_ok=False)
    return d


class Run:
    def __init__(self, args, command):
        self.args = args
        self.dir = run_dir(args.out_dir, command)
        self.t0 = time.perf_counter()
        self.bounds = {}

    def write(self, name, text):
        atomic_write(self.dir / name, text)

    def finish(self):
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "command": ["zoomscope"] + self.args.argv,
            "version": __version__,
            "workers": getattr(self.args, "threads", 1),
            "bounds": self.bounds,
            "wall_time_s": round(time.perf_counter() - self.t0, 3),
        }
        self.write("manifest.json", dump_json(manifest))


# ------------------------------------------------------------------- zoom

def _query(args, B):
    regions = None
    if args.region:
        regions = frozenset(Region(t) for t in args.region.split(","))
    return ZoomQuery(B, args.r, args.epsilon, region_filter=regions,
                     exclude_lines=args.exclude_lines, exclude_thin=args.exclude_thin,
                     exclude_Q=not args.include_q)


def _zoom_one(args, B):
    """(records, report dict) for a single height bound."""
    q = _query(args, B)
    win = q.window
    win.check_chart_radius()
    strategy = args.strategy or ("param" if q.r == Fraction(5, 2) else "brute")
    if strategy != "brute" and q.r != Fraction(5, 2):
        raise UnsupportedZoomFactor(f"--strategy {strategy} needs r = 5/2; use --strategy brute")
    mismatch = None
    if strategy == "both":
        brute = set(offline_brute(win, args.threads))
        param = {P for P, _, _ in offline_param(win, args.threads)}
        mismatch = {"brute_only": sorted(str(P) for P in brute - param),
                    "param_only": sorted(str(P) for P in param - brute)}
        strategy = "param"
    recs, rep = survey(q, strategy=strategy, workers=args.threads)
    if args.list_lines and not q.exclude_lines:
        recs = recs + [r for r in line_records(win) if _accept(r, q)]
        recs.sort(key=lambda r: r.key)
    out = rep.to_dict()
    out["strategy"] = args.strategy or strategy
    if mismatch is not None:
        out["mismatches"] = len(mismatch["brute_only"]) + len(mismatch["param_only"])
        out["mismatch_points"] = mismatch
    out["bounds"] = bounds_used(win)
    return recs, out


def cmd_zoom(args) -> int:
    if (args.B is None) == (args.grid is None):
        raise UsageError("give exactly one of --B or --grid")
    run = Run(args, "zoom")
    status = 0
    if args.B is not None:
        recs, rep = _zoom_one(args, args.B)
        run.bounds = rep["bounds"]
        run.write("points.csv", rows_to_csv(CSV_COLUMNS, [record_row(r) for r in recs]))
        report = {"schema_version": SCHEMA_VERSION, **rep}
        if rep.get("mismatches"):
            status = MISMATCH
    else:
        series = []
        for B in args.grid:
            _, rep = _zoom_one(args, B)
            series.append(rep)
            if rep.get("mismatches"):
                status = MISMATCH
        run.bounds = {str(s["B"]): s["bounds"] for s in series}
        rows = [[s["B"]] + [s["buckets"][k] for k in ("on_lines", "thin", "generic", "total")] for s in series]
        run.write("series.csv", rows_to_csv(["B", "on_lines", "thin", "generic", "total"], rows))
        report = {"schema_version": SCHEMA_VERSION, "r": str(args.r), "epsilon": str(args.epsilon),
                  "series": series}
        if args.fit:
            report["fits"] = _grid_fits(series)
    run.write("report.json", dump_json(report))
    run.finish()
    _print_summary(report, run.dir)
    if status == MISMATCH:
        print("error: brute and param enumerations disagree", file=sys.stderr)
    return status


def _grid_fits(series):
    fits = {}
    for bucket in ("generic", "thin", "on_lines", "total"):
        pts = [(s["B"], s["buckets"][bucket]) for s in series]
        try:
            slope, err = fit_exponent(pts)
            fits[bucket] = {"slope": round(slope, 6), "stderr": round(err, 6)}
        except ZoomscopeError as exc:
            fits[bucket] = {"error": str(exc)}
    return fits


def _print_summary(report, where):
    if "series" in report:
        for s in report["series"]:
            b = s["buckets"]
            print(f"B={s['B']}  on_lines={b['on_lines']}  thin={b['thin']}  generic={b['generic']}  total={b['total']}")
        for k, v in report.get("fits", {}).items():
            print(f"fit {k}: {v}")
    else:
        b = report["buckets"]
        line = f"B={report['B']}  on_lines={b['on_lines']}  thin={b['thin']}  generic={b['generic']}  total={b['total']}"
        if "mismatches" in report:
            line += f"  mismatches={report['mismatches']}"
        print(line)
    print(f"wrote {where}")


# ------------------------------------------------------------- congruence

def cmd_congruence(args) -> int:
    F = args.poly
    run = Run(args, "congruence")
    act = args.action
    if act == "rho":
        need(args, "n")
        value = rho(F, args.n)
        run.write("results.csv", rows_to_csv(["n", "rho"], [[args.n, value]]))
        print(value)
    elif act == "sum":
        need(args, "X")
        rows = []
        X = 10
        while X < args.X:
            rows.append(_sum_row(F, X))
            X *= 10
        rows.append(_sum_row(F, args.X))
        run.write("results.csv", rows_to_csv(["X", "rho_sum", "per_X", "per_X_log_X"], rows))
        _, total, per, perlog = rows[-1]
        print(f"{total} {per:.6f} {perlog:.6f}")
    elif act == "discrepancy":
        need(args, "X")
        d = root_discrepancy(F, args.X)
        if args.roots_csv:
            v, k = root_arrays(F, args.X)
            run.write("roots.csv", rows_to_csv(["k", "v", "v/k"], [[int(b), int(a), f"{a / b:.12f}"] for a, b in zip(v, k)]))
        run.write("results.csv", rows_to_csv(["X", "star_discrepancy"], [[args.X, f"{float(d):.12f}"]]))
        print(f"{float(d):.12f}")
    elif act == "interval":
        need(args, "X", "lo", "hi")
        count = interval_count(F, args.X, (args.lo, args.hi))
        total = rho_sum(F, args.X)
        prop = count / (total * float(args.hi - args.lo)) if total else float("nan")
        run.write("results.csv", rows_to_csv(["X", "lo", "hi", "count", "rho_sum", "proportion"],
                                             [[args.X, str(args.lo), str(args.hi), count, total, f"{prop:.6f}"]]))
        print(f"{count} {prop:.6f}")
    elif act == "central":
        need(args, "X", "A", "theta1", "theta2")
        G = ConstantWeight(args.c) if args.weight == "const" else CubicWeight(args.c, args.scale)
        value = central_count(F, G, args.A, args.theta2, args.theta1, args.X)
        run.write("results.csv", rows_to_csv(["X", "A", "theta2", "theta1", "count"],
                                             [[args.X, str(args.A), str(args.theta2), str(args.theta1), value]]))
        print(value)
    run.finish()
    return 0


def _sum_row(F, X):
    s = rho_sum(F, X)
    return [X, s, s / X, s / (X * math.log(X)) if X > 1 else float("nan")]


def need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.action} needs " + ", ".join("--" + n for n in missing))


# ------------------------------------------------------------------ toric

def cmd_toric(args) -> int:
    if (args.surface is None) == (args.fan is None):
        raise UsageError("give exactly one of --surface or --fan")
    fan = builtin_fan(args.surface) if args.surface else Fan.from_json(Path(args.fan).read_text())
    run = Run(args, "toric")
    act = args.action
    out = {"surface": fan.name}
    if act == "relations":
        rels = positive_relations(fan, args.maxdeg)
        out.update(relations=[list(p.coeffs) for p in rels], count=len(rels))
        text = [str(p) for p in rels]
    elif act == "irreducible":
        rels = irreducible_relations(fan, args.maxdeg)
        out.update(relations=[list(p.coeffs) for p in rels], count=len(rels))
        text = [str(p) for p in rels] + [f"{len(rels)} irreducible relations"]
    elif act == "inequalities":
        ineqs = cox_inequalities(fan, args.character_bound)
        out.update(inequalities=[{"character": list(i.character), "positive": [list(t) for t in i.positive],
                                  "negative": [list(t) for t in i.negative]} for i in ineqs])
        text = [str(i) for i in ineqs]
    else:
        if args.r is None:
            raise UsageError(f"{act} needs --r")
        rels = admissible_multidegrees(fan, args.r, args.maxdeg, args.character_bound)
        rank = lr_rank(rels)
        out.update(relations=[list(p.coeffs) for p in rels], count=len(rels), rank=rank, r=str(args.r))
        if act == "rank":
            text = [f"rank {rank}"]
        else:
            text = [f"{p}  (degree {p.degree})" for p in rels] + [f"{len(rels)} classes, rank {rank}"]
    run.write("results.json", dump_json({"schema_version": SCHEMA_VERSION, **out}))
    run.finish()
    print("\n".join(text))
    return 0


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    p = _Parser(prog="zoomscope", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--out-dir", default="runs", help="parent directory for run folders (default runs/)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    z = sub.add_parser("zoom", help="count points of bounded height in a zoom window")
    z.add_argument("--B", type=parse_count, help="height bound")
    z.add_argument("--grid", type=parse_grid, help="comma separated height bounds, e.g. 1e8,1e9")
    z.add_argument("--r", type=parse_rational, required=True, help="zoom factor p/q")
    z.add_argument("--epsilon", type=parse_rational, required=True, help="window radius p/q")
    z.add_argument("--strategy", choices=("brute", "param", "both"),
                   help="default: param at r = 5/2, brute otherwise")
    z.add_argument("--threads", type=int, default=1)
    z.add_argument("--fit", action="store_true", help="with --grid: fit log-log slopes")
    z.add_argument("--exclude-lines", action="store_true")
    z.add_argument("--exclude-thin", action="store_true")
    z.add_argument("--include-q", action="store_true", help="count Q itself")
    z.add_argument("--region", help="comma separated region tags, e.g. S1,S3")
    z.add_argument("--list-lines", action="store_true", help="write line points to the CSV too")
    z.set_defaults(func=cmd_zoom)

    c = sub.add_parser("congruence", help="roots of quadratic congruences")
    c.add_argument("action", choices=("rho", "sum", "discrepancy", "interval", "central"))
    c.add_argument("--poly", type=parse_poly, required=True, help="lead,constant of F = lead X^2 + constant")
    c.add_argument("--n", type=parse_count)
    c.add_argument("--X", type=parse_count)
    c.add_argument("--lo", type=parse_rational)
    c.add_argument("--hi", type=parse_rational)
    c.add_argument("--A", type=parse_rational)
    c.add_argument("--theta1", type=parse_rational)
    c.add_argument("--theta2", type=parse_rational)
    c.add_argument("--weight", choices=("const", "cubic"), default="const")
    c.add_argument("--c", type=parse_rational, default=Fraction(1))
    c.add_argument("--scale", type=parse_rational, default=Fraction(1))
    c.add_argument("--roots-csv", action="store_true", help="discrepancy: also write every root")
    c.set_defaults(func=cmd_congruence)

    t = sub.add_parser("toric", help="positive relations and admissible classes on toric surfaces")
    t.add_argument("action", choices=("relations", "irreducible", "inequalities", "admissible", "rank"))
    t.add_argument("--surface", help="P2, X1, X2, X3, P1xP1, Y3 or Y4")
    t.add_argument("--fan", help="JSON file {\"name\": ..., \"rays\": [[1,0], ...]}")
    t.add_argument("--r", type=parse_rational)
    t.add_argument("--maxdeg", type=int, default=4)
    t.add_argument("--character-bound", type=int, default=2)
    t.set_defaults(func=cmd_toric)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except (ZoomscopeError, UsageError, ValueError, OSError) as exc:
        print(f"zoomscope: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
