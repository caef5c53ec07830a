"""Command-line front end.

    hermwron wronskian -p "5,3,2"
    hermwron roots -p "104,100" -d 30
    hermwron overlay -p "7,4,1" --doubled
    hermwron curves --three-term -n 100 -k 5
    hermwron scan --conjecture1 --max-weight 8
    hermwron semicircle -n 100 -k 1

Every command writes its files into ``--out-dir`` (default: current
directory) through a temporary file and a rename.  The default root
precision comes from ``HERMWRON_DIGITS`` (30 if unset).

Exit codes: 0 success, 1 usage or validation error, 2 failed hard
assertion, 3 root finder did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from . import asympt, conjecture, svg
from .partition import PartitionError, diagram_points, doubled, origin_multiplicity, parse_partition
from .polyalg import wronskian_of_indices, wronskian_of_partition
from .rootfind import ConvergenceError, SymmetryError, find_roots, symmetrize_roots

log = logging.getLogger("hermwron")

DIGITS_ENV = "HERMWRON_DIGITS"
EXIT_USAGE, EXIT_ASSERT, EXIT_CONVERGENCE = 1, 2, 3


class UsageError(Exception):
    pass


def default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if raw is None:
        return 30
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{DIGITS_ENV}={raw!r} is not an integer")


def write_atomic(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _stem(text: str) -> str:
    """File-name-safe rendering of a partition or parameter string."""
    return re.sub(r"[^0-9A-Za-z]+", "_", text).strip("_") or "empty"


def _parse(text: str):
    try:
        return parse_partition(text)
    except PartitionError as e:
        raise UsageError(f"bad partition {text!r}: {e}")


def _solve(poly, digits: int, label: str, parity: bool = True):
    if digits < 10:
        raise UsageError("digits must be at least 10")
    rs = find_roots(poly, digits, partition=label)
    try:
        return symmetrize_roots(rs, parity=parity)
    except SymmetryError as e:
        log.warning("symmetrization skipped: %s", e)
        return rs


def _root_xy(rs) -> list[tuple[float, float]]:
    pts = []
    for z, _ in rs.roots:
        c = complex(z)
        pts.append((c.real, c.imag))
    if rs.origin_multiplicity:
        pts.append((0.0, 0.0))
    return pts


# ------------------------------------------------------------------- commands


def cmd_wronskian(args) -> int:
    p = _parse(args.partition)
    if not p.is_integral:
        raise UsageError(f"{p} has half-integer parts; use overlay --doubled")
    w = wronskian_of_partition(p)
    par = {0: "even", 1: "odd", None: "none"}[w.parity()]
    m = w.valuation()
    doc = {
        "partition": str(p),
        "degree": w.degree,
        "parity": par,
        "origin_multiplicity": m,
        "origin_multiplicity_formula": origin_multiplicity(p),
        **w.to_json(),
    }
    out = write_atomic(Path(args.out_dir) / f"wronskian_{_stem(p.to_text(False))}.json", _dump(doc))
    print(f"W{p}: degree {w.degree}, parity {par}, origin multiplicity {m}")
    print(f"wrote {out}")
    if m != origin_multiplicity(p):
        print("FAIL: origin multiplicity differs from d(d+1)/2", file=sys.stderr)
        return EXIT_ASSERT
    return 0


def cmd_roots(args) -> int:
    p = _parse(args.partition)
    if not p.is_integral:
        raise UsageError(f"{p} has half-integer parts")
    w = wronskian_of_partition(p)
    if w.degree < 1:
        raise UsageError("constant Wronskian has no roots")
    rs = _solve(w, args.digits, str(p))
    stem = f"roots_{_stem(p.to_text(False))}"
    d = Path(args.out_dir)
    write_atomic(d / f"{stem}.json", _dump(rs.to_json()))
    panel = svg.Panel(
        title=f"zeros of W{p}",
        series=[svg.Series(_root_xy(rs), "points", label=f"{rs.total_multiplicity()} zeros")],
        symmetric=True,
        xlabel="Re z",
        ylabel="Im z",
    )
    write_atomic(d / f"{stem}.svg", svg.render([panel]))
    cls = rs.classify()
    print(
        f"W{p}: degree {rs.degree}, origin multiplicity {rs.origin_multiplicity}, "
        f"{len(rs.roots)} distinct nonzero roots ({cls['real']} real, "
        f"{cls['imaginary_upper']} imaginary pairs, {cls['generic_upper']} generic in upper half)"
    )
    print(f"precision {rs.precision_bits} bits, inclusion radius {float(rs.inclusion_radius):.3e}")
    print(f"wrote {d / stem}.json, .svg")
    return 0


def _ls_scale(bullets: Sequence[tuple[float, float]], roots: Sequence[tuple[float, float]]) -> float:
    """Least-squares s in sum (s |b|_(i) - |z|_(i))^2 over sorted moduli."""
    rb = sorted(math.hypot(*b) for b in bullets)
    rz = sorted(math.hypot(*z) for z in roots)
    m = min(len(rb), len(rz))
    rb, rz = rb[len(rb) - m :], rz[len(rz) - m :]
    den = sum(b * b for b in rb)
    return sum(b * z for b, z in zip(rb, rz)) / den if den else 1.0


def cmd_overlay(args) -> int:
    base = _parse(args.partition)
    if args.doubled:
        target = doubled(base)
        pts = diagram_points(base, "four-quadrant")
    else:
        if not base.is_integral:
            raise UsageError(f"{base} has half-integer parts; pass --doubled")
        target = base
        pts = diagram_points(base, "french")
    w = wronskian_of_partition(target)
    if w.degree < 1:
        raise UsageError("constant Wronskian has no roots")
    rs = _solve(w, args.digits, str(target))
    zs = []
    for z, m in rs.roots:
        c = complex(z)
        zs += [(c.real, c.imag)] * m
    zs += [(0.0, 0.0)] * rs.origin_multiplicity
    bullets = [(float(x), float(y)) for x, y in pts.points]
    d = Path(args.out_dir)
    stem = f"overlay_{_stem(base.to_text(False))}{'_doubled' if args.doubled else ''}"
    info = {"partition": str(base), "wronskian_partition": str(target), "bullets": len(bullets), "zeros": len(zs)}
    title = f"W{target} vs diagram of {base}"
    if args.superimpose:
        s = _ls_scale(bullets, zs)
        info["scale"] = round(s, 12)
        panel = svg.Panel(
            title=f"superimposed, bullets x {s:.4f}",
            series=[
                svg.Series([(s * x, s * y) for x, y in bullets], "points", "#c0392b", "diagram (scaled)", 3.2),
                svg.Series(zs, "points", "#1f4e9c", "zeros", 2.0),
            ],
            symmetric=True,
        )
        panels = [panel]
        print(f"least-squares scale {s:.6f}")
    else:
        panels = [
            svg.Panel(title="diagram", series=[svg.Series(bullets, "points", "#c0392b", radius=3.2)], symmetric=True),
            svg.Panel(title="zeros", series=[svg.Series(zs, "points", "#1f4e9c")], symmetric=True),
        ]
    write_atomic(d / f"{stem}.svg", svg.render(panels, title))
    write_atomic(d / f"{stem}.csv", pts.to_csv())
    write_atomic(d / f"{stem}.json", _dump({**info, "roots": rs.to_json()}))
    print(f"{title}: {len(bullets)} bullets, {len(zs)} zeros")
    print(f"wrote {d / stem}.svg, .csv, .json")
    return 0


_FAMILY_FLAGS = {
    "two_term": "two-term",
    "three_term": "three-term",
    "four_equal": "four-term-equal",
    "four_doubled": "four-term-doubled",
}


def cmd_curves(args) -> int:
    family = _FAMILY_FLAGS[args.family]
    try:
        spec = asympt.CurveSpec(family, args.n, args.k, args.l)
        if not (0 < args.a < 1 and args.b > 0):
            raise ValueError("window needs 0 < a < 1 and b > 0")
    except ValueError as e:
        raise UsageError(str(e))
    w = wronskian_of_indices(spec.indices())
    rs = _solve(w, args.digits, spec.label())
    report = asympt.curve_fit_report(rs, spec, (args.a, args.b))
    rows = asympt.sample_curves(spec, args.num, args.a)

    d = Path(args.out_dir)
    stem = f"curves_{family}_n{spec.n}_" + (f"l{spec.l}" if family == "four-term-doubled" else f"k{spec.k}")
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["x", "branch", "y"])
    for x, name, y in rows:
        wr.writerow([repr(x), name, "" if math.isnan(y) else repr(y)])
    write_atomic(d / f"{stem}.csv", buf.getvalue())
    write_atomic(d / f"{stem}_fit.json", _dump(report.to_json()))
    write_atomic(d / f"{stem}_roots.json", _dump(rs.to_json()))

    colors = ["#c0392b", "#27ae60"]
    series = [svg.Series(_root_xy(rs), "points", "#1f4e9c", "zeros", 1.8)]
    for i, name in enumerate(spec.branches()):
        xy = [(x, y) for x, b, y in rows if b == name]
        series.append(svg.Series(xy, "line", colors[i % 2], f"{name} branch"))
        series.append(svg.Series([(x, -y) for x, y in xy], "line", colors[i % 2]))
    panel = svg.Panel(title=spec.label(), series=series, symmetric=True, equal_aspect=False, xlabel="Re z", ylabel="Im z")
    write_atomic(d / f"{stem}.svg", svg.render([panel]))

    j = report.to_json()
    print(
        f"{spec.label()}: {j['count']} roots in window, median deviation {j['median_rel_deviation']}, "
        f"within 20% {j['fraction_within_20pct']}, unmatched {j['unmatched']}"
    )
    print(f"wrote {d / stem}.csv, .svg, _fit.json, _roots.json")
    return 0


def cmd_scan(args) -> int:
    if args.conjecture1:
        fam = conjecture.Family("conjecture1", max_weight=args.max_weight)
        stem = f"scan_conjecture1_w{args.max_weight}"
    else:
        fam = conjecture.Family("conjecture2", max_part=args.max_part, max_len=args.max_len)
        stem = f"scan_conjecture2_p{args.max_part}_l{args.max_len}"
    reports, status = [], 0
    try:
        for rep in conjecture.scan(fam, workers=args.workers):
            reports.append(rep)
    except conjecture.FormulaViolation as e:
        reports.append(e.report)
        print(f"FAIL: {e}", file=sys.stderr)
        status = EXIT_ASSERT
    out = write_atomic(Path(args.out_dir) / f"{stem}.jsonl", conjecture.reports_to_jsonl(reports))
    bad = [r for r in reports if r.violation]
    for r in bad:
        print(f"CONJECTURE VIOLATION: {r.kind} {r.mu or r.partition}: {r.verdicts}", file=sys.stderr)
    for r in reports:
        for msg in r.warnings:
            log.info("%s: %s", r.mu or r.partition, msg)
    if fam.kind == "conjecture2" and reports:
        pair = sum(r.verdicts["pair_reading"] for r in reports)
        total = sum(r.verdicts["total_reading"] for r in reports)
        print(f"readings: pair holds in {pair}/{len(reports)}, total holds in {total}/{len(reports)}")
    verdict = "all pass" if not bad and status == 0 else f"{len(bad)} violations"
    print(f"{fam.kind}: {len(reports)} partitions checked, {verdict}")
    print(f"wrote {out}")
    return status


def cmd_semicircle(args) -> int:
    if args.n < 1 or args.k < 1:
        raise UsageError("need n >= 1 and k >= 1")
    if args.bins < 1:
        raise UsageError("need at least one bin")
    n, k = args.n, args.k
    w = wronskian_of_indices([n, n + k])
    rs = _solve(w, args.digits, f"W(H_{n},H_{n + k})")
    pts = rs.upper()
    if not pts:
        raise UsageError("no nonreal roots to compare")
    ks = asympt.semicircle_ks(pts, n)
    us = sorted(z.real / math.sqrt(2 * n) for z in pts)

    counts = [0] * args.bins
    for u in us:
        i = min(max(int((u + 1) / 2 * args.bins), 0), args.bins - 1)
        counts[i] += 1
    width = 2 / args.bins
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["lo", "hi", "count", "density", "semicircle"])
    for i, c in enumerate(counts):
        lo = -1 + i * width
        mid = lo + width / 2
        wr.writerow([f"{lo:.6f}", f"{lo + width:.6f}", c, f"{c / (len(us) * width):.6f}", f"{asympt.wigner_pdf(mid):.6f}"])

    d = Path(args.out_dir)
    stem = f"semicircle_n{n}_k{k}"
    write_atomic(d / f"{stem}.csv", buf.getvalue())
    write_atomic(d / f"{stem}.json", _dump({"n": n, "k": k, "samples": len(us), "ks": round(ks, 12)}))
    emp = []
    for i, u in enumerate(us):
        emp += [(u, i / len(us)), (u, (i + 1) / len(us))]
    grid = [-1 + 2 * i / 200 for i in range(201)]
    panel = svg.Panel(
        title=f"KS = {ks:.4f}",
        series=[
            svg.Series(emp, "line", "#1f4e9c", "empirical CDF"),
            svg.Series([(u, asympt.wigner_cdf(u)) for u in grid], "line", "#c0392b", "semicircle CDF"),
        ],
        equal_aspect=False,
        xlabel="Re z / sqrt(2n)",
    )
    write_atomic(d / f"{stem}.svg", svg.render([panel], f"W(H_{n},H_{n + k})"))
    print(f"W(H_{n},H_{n + k}): {len(us)} upper-half roots, KS distance {ks:.6f}")
    print(f"wrote {d / stem}.csv, .json, .svg")
    return 0


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hermwron", description="Wronskians of Hermite polynomials and their zeros")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, digits=True):
        p.add_argument("-o", "--out-dir", default=".", help="output directory (default: .)")
        if digits:
            p.add_argument("-d", "--digits", type=int, default=None, help=f"target digits (env {DIGITS_ENV}, default 30)")

    p = sub.add_parser("wronskian", help="exact W_lambda as JSON")
    p.add_argument("-p", "--partition", required=True)
    common(p, digits=False)
    p.set_defaults(func=cmd_wronskian)

    p = sub.add_parser("roots", help="certified zeros of W_lambda")
    p.add_argument("-p", "--partition", required=True)
    common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("overlay", help="zeros next to the partition diagram")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("--doubled", action="store_true", help="use the doubled partition and the four-quadrant diagram")
    p.add_argument("--superimpose", action="store_true", help="one panel, diagram scaled by least squares")
    common(p)
    p.set_defaults(func=cmd_overlay)

    p = sub.add_parser("curves", help="zeros against asymptotic curves")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--two-term", dest="family", action="store_const", const="two_term")
    fam.add_argument("--three-term", dest="family", action="store_const", const="three_term")
    fam.add_argument("--four-equal", dest="family", action="store_const", const="four_equal")
    fam.add_argument("--four-doubled", dest="family", action="store_const", const="four_doubled")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-l", type=int, default=0)
    p.add_argument("-a", type=float, default=asympt.DEFAULT_WINDOW[0], help="window half-width / sqrt(2n)")
    p.add_argument("-b", type=float, default=asympt.DEFAULT_WINDOW[1], help="minimum Im z in window")
    p.add_argument("--num", type=int, default=401, help="curve samples per branch")
    common(p)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("scan", help="exact conjecture scans as JSON lines")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--conjecture1", action="store_true", help="simplicity for all |lambda| <= max-weight")
    which.add_argument("--conjecture2", action="store_true", help="doubled partitions from distinct mu")
    p.add_argument("--max-weight", type=int, default=8)
    p.add_argument("--max-part", type=int, default=5)
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    common(p, digits=False)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("semicircle", help="real parts of W(H_n, H_{n+k}) zeros vs the semicircle law")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--bins", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_semicircle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if getattr(args, "digits", 0) is None:
            args.digits = default_digits()
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as e:
        print(f"error: {e} (achieved bound {e.achieved_bound})", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
