"""Command-line harness: ``distdist {analyze,line,circle,sweep,check}``.

Exit status: 0 on success, 2 for bad input, 3 when a cross-check fails,
4 when a size guard refuses to run.  Reports carry no timestamps, so the
same arguments always produce the same bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import circles, lines
from .bounds import SWEEP_COLUMNS, dyadic_partition, dyadic_violations, envelope_constant, sweep_row
from .distances import OverlapError, TooFewPointsError, heavy_curve_report
from .exact import DegenerateInputError
from .generators import (DuplicatePointError, ExactPoint, PointSet, circle_points, lattice,
                         line_points, load_points, make_rng, random_points, random_rational, split_by)
from .quadruples import QUADRUPLE_ENUMERATION_GUARD, SizeGuardError, enumerate_quadruples

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_GUARD = 0, 2, 3, 4
CONCYCLIC_GUARD = 600

LINE_GENERATORS = ("lattice", "random")
CIRCLE_GENERATORS = ("random", "integer", "symmetric")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to regenerate a run."""

    mode: str
    generator: Optional[str] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    seed: int = 0
    input: Optional[str] = None
    lattice: Optional[str] = None
    row: Optional[int] = None
    force: bool = False
    extras: Dict = field(default_factory=dict)

    def to_json(self) -> Dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v not in (None, {}, False)}


# --------------------------------------------------------------------------
# configuration builders
# --------------------------------------------------------------------------

def curve_share(n: int, alpha: float) -> int:
    """Points placed on the rich curve: ``round(n**alpha)`` kept in ``[2, n-1]``."""
    return min(n - 1, max(2, round(n ** alpha)))


def line_config(n: int, alpha: float, generator: str = "lattice", seed: int = 0) -> Tuple[PointSet, PointSet]:
    """``P1`` on the x-axis with ``round(n**alpha)`` points, ``P2`` the remaining points above it.

    ``lattice``: ``P1 = {0..k-1} x {0}`` and ``P2`` fills rows 1, 2, ... of a
    grid of width ``k``.  ``random``: rational x-coordinates for ``P1`` and
    random integer points off the axis for ``P2``.
    """
    if n < 3:
        raise InputError("line configurations need n >= 3")
    k = curve_share(n, alpha)
    rest = n - k
    if generator == "lattice":
        first = PointSet(tuple(ExactPoint(i, 0) for i in range(k)), "P1")
        second = PointSet(tuple(ExactPoint(i % k, 1 + i // k) for i in range(rest)), "P2")
    elif generator == "random":
        first = line_points(k, "random", seed=seed, bits=max(4, k.bit_length() + 1))
        bits = max(3, (rest.bit_length() + 3) // 2)
        second = random_points(rest, seed + 1, bits=bits, integer=True, exclude=lambda p: p.y == 0, label="P2")
    else:
        raise InputError(f"unknown line generator {generator!r}")
    return first, second


def circle_config(n: int, alpha: float, generator: str = "symmetric", seed: int = 0) -> Tuple[PointSet, PointSet]:
    """``P1`` on the unit circle with ``round(n**alpha)`` points, ``P2`` off it and off the axes."""
    if n < 3:
        raise InputError("circle configurations need n >= 3")
    k = curve_share(n, alpha)
    rest = n - k
    bad = lambda p: p.x == 0 or p.y == 0 or p.x * p.x + p.y * p.y == 1
    if generator == "symmetric":
        return _symmetric_circle_config(k, rest, seed, bad)
    first = circle_points(k, seed=seed, bits=max(3, k.bit_length()))
    if generator == "random":
        second = random_points(rest, seed + 1, bits=3, exclude=bad, label="P2")
    elif generator == "integer":
        bits = max(2, (rest.bit_length() + 3) // 2)
        second = random_points(rest, seed + 1, bits=bits, integer=True, exclude=bad, label="P2")
    else:
        raise InputError(f"unknown circle generator {generator!r}")
    return first, second


def _orbit_fill(count: int, draw, orbit, reject, max_draws: int = 100000) -> List:
    out, seen = [], set()
    for _ in range(max_draws):
        if len(out) >= count:
            break
        for v in orbit(draw()):
            if v not in seen and not reject(v) and len(out) < count:
                seen.add(v)
                out.append(v)
    if len(out) < count:
        raise InputError(f"could not draw {count} distinct symmetric points")
    return out


def _symmetric_circle_config(k: int, rest: int, seed: int, bad) -> Tuple[PointSet, PointSet]:
    """Both parts closed (up to truncation) under the reflections in the two axes."""
    rng = make_rng(seed)
    ts = _orbit_fill(k, lambda: random_rational(rng, max(3, k.bit_length()), nonzero=True),
                     lambda t: (t, -t, 1 / t, -1 / t), lambda t: t in (1, -1))
    first = circle_points(k, parameters=ts)
    bits = max(3, (rest.bit_length() + 1) // 2)
    pts = _orbit_fill(rest, lambda: ExactPoint(int(rng.integers(1, 2 ** bits)), int(rng.integers(1, 2 ** bits))),
                      lambda p: (p, ExactPoint(-p.x, p.y), ExactPoint(p.x, -p.y), ExactPoint(-p.x, -p.y)), bad)
    return first, PointSet(tuple(pts), "P2")


def _parse_lattice(text: str) -> Tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise InputError(f"--lattice expects WxH, got {text!r}") from None
    if w < 1 or h < 1:
        raise InputError("lattice dimensions must be positive")
    return w, h


def _split_input(points: PointSet) -> Tuple[PointSet, PointSet]:
    if points.parts is None:
        raise InputError("input file needs a 'parts' list tagging points as P1 or P2")
    return points.part("P1"), points.part("P2")


def _line_split(args) -> Tuple[PointSet, PointSet]:
    if args.input:
        return _split_input(load_points(args.input))
    if args.lattice:
        w, h = _parse_lattice(args.lattice)
        row = args.row if args.row is not None else 0
        if not 0 <= row < h:
            raise InputError(f"--row {row} outside a lattice of height {h}")
        pts = split_by(lattice(w, h), lambda p: p.y == row).translated(0, -row)
        return pts.part("P1"), pts.part("P2")
    return line_config(args.n, args.alpha, args.generator or "lattice", args.seed)


def _circle_split(args) -> Tuple[PointSet, PointSet]:
    if args.input:
        return _split_input(load_points(args.input))
    return circle_config(args.n, args.alpha, args.generator or "symmetric", args.seed)


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _emit(report: Dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(f"distdist: warning: {msg}", file=sys.stderr)


def _config(args, mode: str, **extras) -> Dict:
    return ExperimentConfig(mode=mode, generator=getattr(args, "generator", None), n=getattr(args, "n", None),
                            alpha=getattr(args, "alpha", None), seed=getattr(args, "seed", 0),
                            input=getattr(args, "input", None), lattice=getattr(args, "lattice", None),
                            row=getattr(args, "row", None), force=getattr(args, "force", False),
                            extras=extras).to_json()


def _enumeration_guard(first: PointSet, second: PointSet, force: bool) -> None:
    size = len(first) * len(second)
    if size > QUADRUPLE_ENUMERATION_GUARD:
        if not force:
            raise SizeGuardError(f"|P1|*|P2| = {size} exceeds {QUADRUPLE_ENUMERATION_GUARD}; "
                                 "rerun with --force to enumerate anyway")
        _warn("enumerating quadruples beyond the size guard")


def _enumeration_check(first: PointSet, second: PointSet, q_total: int) -> Dict:
    listed = sum(1 for _ in enumerate_quadruples(first, second, force=True))
    return {"enumerated": listed, "matches": listed == q_total}


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    if not args.input:
        raise InputError("analyze needs --input")
    pts = load_points(args.input)
    circles_ok = True
    if len(pts) > CONCYCLIC_GUARD:
        if not args.force:
            raise SizeGuardError(f"n = {len(pts)} exceeds the concyclic search limit {CONCYCLIC_GUARD}; "
                                 "rerun with --force")
        _warn(f"concyclic search on n = {len(pts)} points beyond the guard; this may take a long time")
    _emit(heavy_curve_report(pts, circles=circles_ok).to_json(), args.out)
    return EXIT_OK


def cmd_line(args) -> int:
    first, second = _line_split(args)
    if args.enumerate:
        _enumeration_guard(first, second, args.force)
    ledger = lines.line_ledger(first, second)
    report = {"config": _config(args, "line"), "ledger": ledger.to_json(),
              "choice_q1": lines.q1_choice_bound_check(first, second).to_json()}
    levels = dyadic_partition(ledger.family.multiplicities.tolist())
    report["dyadic_levels"] = [{"level": lv.level, "classes": lv.classes, "curves": lv.curves} for lv in levels]
    bad = list(ledger.violations()) + dyadic_violations(levels, ledger.family.gamma_size)
    if not report["choice_q1"]["ok"]:
        bad.append("q1 choice bound exceeded")
    if args.enumerate:
        report["enumeration"] = _enumeration_check(first, second, ledger.stats.q_total)
        if not report["enumeration"]["matches"]:
            bad.append("enumerated quadruples disagree with the class count")
    if args.dump_curves:
        report["curves"] = ledger.family.dump()
    report["violations"] = bad
    _emit(report, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_circle(args) -> int:
    first, second = _circle_split(args)
    if args.enumerate:
        _enumeration_guard(first, second, args.force)
    ledger = circles.circle_ledger(first, second, check_pairs=args.check_pairs, seed=args.seed)
    report = {"config": _config(args, "circle"), "ledger": ledger.to_json(),
              "choice_q1": circles.q1_choice_bound_check_circle(first, second).to_json()}
    bad = list(ledger.violations())
    if not report["choice_q1"]["ok"]:
        bad.append("q1 choice bound exceeded")
    if args.enumerate:
        report["enumeration"] = _enumeration_check(first, second, ledger.stats.q_total)
        if not report["enumeration"]["matches"]:
            bad.append("enumerated quadruples disagree with the class count")
    if args.dump_curves:
        report["curves"] = ledger.family.dump()
    report["violations"] = bad
    _emit(report, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def _parse_alpha_range(text: str) -> List[float]:
    try:
        parts = [Fraction(v) for v in text.split(":")]
    except ValueError:
        raise InputError(f"--alpha expects a number or a:b:step, got {text!r}") from None
    if len(parts) == 1:
        vals = parts
    elif len(parts) == 3 and parts[2] > 0 and parts[0] <= parts[1]:
        a, b, step = parts
        count = int((b - a) / step)
        vals = [a + i * step for i in range(count + 1)]
    else:
        raise InputError(f"--alpha expects a number or a:b:step, got {text!r}")
    if any(not 0 < v <= 1 for v in vals):
        raise InputError("alpha values must lie in (0, 1]")
    return [float(v) for v in vals]


def _parse_n_range(text: str) -> List[int]:
    try:
        parts = [int(v) for v in text.split(":")]
    except ValueError:
        raise InputError(f"--n expects an integer or lo:hi, got {text!r}") from None
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or parts[0] < 3 or parts[1] < parts[0]:
        raise InputError("--n range must satisfy 3 <= lo <= hi")
    out, n = [], parts[0]
    while n <= parts[1]:
        out.append(n)
        n *= 2
    return out


def sweep_cell(cell: Tuple[str, int, float, str, int]) -> Dict:
    """One sweep configuration; top-level so worker processes can run it."""
    mode, n, alpha, generator, seed = cell
    if mode == "line":
        first, second = line_config(n, alpha, generator, seed)
        ledger = lines.line_ledger(first, second).to_json()
    else:
        first, second = circle_config(n, alpha, generator, seed)
        ledger = circles.circle_ledger(first, second).to_json()
    row = sweep_row(mode, ledger, len(first))
    row["alpha"] = alpha
    row["violations"] = ledger["violations"]
    return row


def _workers() -> int:
    raw = os.environ.get("DISTDIST_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"DISTDIST_THREADS must be an integer, got {raw!r}") from None


def run_sweep(cells: Sequence[Tuple[str, int, float, str, int]], workers: int = 1) -> List[Dict]:
    if workers <= 1 or len(cells) <= 1:
        return [sweep_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_cell, cells))


def format_sweep_csv(rows: Sequence[Dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in SWEEP_COLUMNS])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    mode = args.mode
    if mode not in ("line", "circle"):
        raise InputError("sweep --mode must be line or circle")
    generator = args.generator or ("lattice" if mode == "line" else "symmetric")
    ns = _parse_n_range(args.n)
    alphas = _parse_alpha_range(args.alpha)
    cells = [(mode, n, a, generator, args.seed) for n in ns for a in alphas]
    rows = run_sweep(cells, _workers())
    text = format_sweep_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    bad = [f"n={r['n']} alpha={r['alpha']}: {v}" for r in rows for v in r["violations"]]
    summary = {"config": _config(args, "sweep", generator_used=generator), "rows": len(rows),
               "envelope_constant": envelope_constant(rows), "violations": bad}
    if not args.csv:
        sys.stdout.write(text)
        if args.out:
            _emit(summary, args.out)
    else:
        _emit(summary, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def _same_curve_suite(count: int, seed: int) -> Dict:
    rng = make_rng(seed)
    checked, wrong = 0, 0

    def draw():
        while True:
            p = ExactPoint(random_rational(rng, 3, nonzero=True), random_rational(rng, 3, nonzero=True))
            if p.x * p.x + p.y * p.y != 1:
                return p

    while checked < count:
        p, q = draw(), draw()
        if p.norm2() == q.norm2():
            continue
        if checked % 2:
            p2, q2 = p, q
        elif checked % 4 == 2:
            lam = random_rational(rng, 2, nonzero=True)
            p2, q2 = ExactPoint(lam * p.x, lam * p.y), ExactPoint(lam * q.x, lam * q.y)
        else:
            p2, q2 = draw(), draw()
        if p2.norm2() == q2.norm2():
            continue
        same = circles.same_curve_conditions_check(p, q, p2, q2)
        if same != ((p, q) == (p2, q2)) or same != circles.same_curve_conditions_polynomial(p, q, p2, q2):
            wrong += 1
        checked += 1
    return {"tuples": checked, "violations": wrong, "ok": wrong == 0}


def cmd_check(args) -> int:
    n = args.n or 60
    alpha = args.alpha if args.alpha is not None else 0.5
    report: Dict = {"config": _config(args, "check")}
    bad: List[str] = []
    if args.mode in ("line", "both"):
        first, second = line_config(n, alpha, "lattice", args.seed)
        fam = lines.build_hyperbola_family(second)
        choice = lines.q1_choice_bound_check(first, second)
        pairs = lines.degrees_of_freedom_check_line(lines.hyperbola_pairs(fam, seed=args.seed))
        mult = lines.multiplicity_vs_vertical_lines(second, fam)
        report["line"] = {"choice_q1": choice.to_json(), "hyperbola_pairs": pairs.to_json(),
                          "multiplicity": mult.to_json()}
        bad += ["line q1 choice"] * (not choice.ok) + ["hyperbola pairs"] * (not pairs.ok)
        bad += ["multiplicity vs vertical lines"] * (not mult.ok)
    if args.mode in ("circle", "both"):
        first, second = circle_config(n, alpha, "symmetric", args.seed)
        fam = circles.build_circle_family(second)
        choice = circles.q1_choice_bound_check_circle(first, second)
        pairs = circles.circle_pairs(fam, seed=args.seed) + circles.engineered_singular_pairs(50, seed=args.seed)
        inter = circles.check_intersections_4d(pairs)
        same = _same_curve_suite(1000, args.seed)
        report["circle"] = {"choice_q1": choice.to_json(), "curve_pairs": inter.to_json(), "same_curve": same}
        bad += ["circle q1 choice"] * (not choice.ok) + ["4d curve pairs"] * (not inter.ok)
        bad += ["same-curve conditions"] * (not same["ok"])
    report["violations"] = bad
    _emit(report, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="distdist", description="Exact distinct-distance experiments.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_type=int, alpha_type=float):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--force", action="store_true", help="override size guards")
        p.add_argument("--n", type=n_type)
        p.add_argument("--alpha", type=alpha_type)

    p = sub.add_parser("analyze", help="distinct distances and the richest line and circle")
    p.add_argument("--input", required=True)
    common(p)

    for name in ("line", "circle"):
        p = sub.add_parser(name, help=f"quadruple and incidence ledger for a rich {name}")
        p.add_argument("--input", help="JSON/CSV points with P1/P2 parts")
        p.add_argument("--generator", choices=LINE_GENERATORS if name == "line" else CIRCLE_GENERATORS)
        p.add_argument("--dump-curves", action="store_true")
        p.add_argument("--enumerate", action="store_true", help="cross-check by listing every quadruple")
        if name == "line":
            p.add_argument("--lattice", help="WxH integer grid")
            p.add_argument("--row", type=int, help="grid row used as P1")
        else:
            p.add_argument("--check-pairs", "--check-lemma41", dest="check_pairs", action="store_true",
                           help="run the pairwise intersection oracle")
        common(p)

    p = sub.add_parser("sweep", help="one CSV row per (n, alpha)")
    p.add_argument("--mode", required=True, choices=("line", "circle"))
    p.add_argument("--generator")
    p.add_argument("--csv")
    common(p, n_type=str, alpha_type=str)

    p = sub.add_parser("check", help="exact oracle suites for the curve families")
    p.add_argument("--mode", choices=("line", "circle", "both"), default="both")
    common(p)
    return ap


_COMMANDS = {"analyze": cmd_analyze, "line": cmd_line, "circle": cmd_circle, "sweep": cmd_sweep, "check": cmd_check}

_INPUT_ERRORS = (InputError, lines.MisplacedPointError, circles.OffCircleError, circles.AxisPointError,
                 DuplicatePointError, TooFewPointsError, OverlapError, DegenerateInputError, OSError,
                 json.JSONDecodeError, ValueError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.command in ("line", "circle") and not (args.input or getattr(args, "lattice", None)):
        if args.n is None or args.alpha is None:
            print("distdist: error: give --input, --lattice, or both --n and --alpha", file=sys.stderr)
            return EXIT_INPUT
    if args.command == "sweep" and (args.n is None or args.alpha is None):
        print("distdist: error: sweep needs --n and --alpha", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args)
    except SizeGuardError as exc:
        print(f"distdist: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except _INPUT_ERRORS as exc:
        print(f"distdist: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
