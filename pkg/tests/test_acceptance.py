"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary.

The class sizes behind every identity are recomputed with the test-only
oracle, so a bug in the package's own bookkeeping cannot hide here.
"""
import time

import pytest

from distdist.bounds import fit_exponent
from distdist.circles import (build_circle_family, check_intersections_4d, circle_ledger, circle_pairs,
                              engineered_singular_pairs, intersection_count_4d, q1_choice_bound_check_circle)
from distdist.cli import _same_curve_suite, circle_config, line_config, main, run_sweep
from distdist.distances import distinct_distances
from distdist.generators import PointSet, lattice, line_points, make_rng, uneven_lattice
from distdist.lines import (build_hyperbola_family, degrees_of_freedom_check_line, hyperbola_pairs, line_ledger,
                            multiplicity_vs_vertical_lines, q1_choice_bound_check)
from oracles import brute_lattice_distances, class_sizes, groebner_4d_count

RESULTS = {}

LINE_CONFIGS = 200
CIRCLE_CONFIGS = 100


def record(criterion, ok, detail):
    RESULTS[criterion] = (ok, detail)
    assert ok, detail


def tuples(points):
    return [(p.x, p.y) for p in points]


def _line_cases():
    rng = make_rng(2024)
    for i in range(LINE_CONFIGS):
        n = int(rng.integers(6, 401))
        alpha = float(rng.uniform(0.3, 0.95))
        yield (n, alpha, ("lattice", "random")[i % 2], i)


def _circle_cases():
    rng = make_rng(4048)
    for i in range(CIRCLE_CONFIGS):
        n = int(rng.integers(6, 201))
        alpha = float(rng.uniform(0.3, 0.95))
        yield (n, alpha, ("symmetric", "random", "integer")[i % 3], i)


def _identity_failures(led, first, second):
    s = led.stats
    sizes = class_sizes(tuples(first), tuples(second))
    bad = []
    if s.q_total != s.q1 + s.q2:
        bad.append("split")
    if s.q_total != sum(c * (c - 1) for c in sizes):
        bad.append("class sum")
    if s.q2 != led.incidences:
        bad.append("incidences")
    if s.D != len(sizes):
        bad.append("D")
    return bad


@pytest.fixture(scope="module")
def sweep():
    """Run every randomized configuration once; later criteria read the results."""
    start = time.perf_counter()
    rows = []
    for n, alpha, gen, seed in _line_cases():
        first, second = line_config(n, alpha, gen, seed=seed)
        led = line_ledger(first, second)
        rows.append({"mode": "line", "cfg": (n, alpha, gen, seed), "stats": led.stats,
                     "identity": _identity_failures(led, first, second),
                     "mult": led.multiplicity, "choice": q1_choice_bound_check(first, second)})
    for n, alpha, gen, seed in _circle_cases():
        first, second = circle_config(n, alpha, gen, seed=seed)
        led = circle_ledger(first, second)
        rows.append({"mode": "circle", "cfg": (n, alpha, gen, seed), "stats": led.stats,
                     "identity": _identity_failures(led, first, second),
                     "choice": q1_choice_bound_check_circle(first, second)})
    return rows, time.perf_counter() - start


def test_criterion_1_exact_identities(sweep):
    rows, elapsed = sweep
    lines = sum(r["mode"] == "line" for r in rows)
    circles = len(rows) - lines
    bad = [r["cfg"] for r in rows if r["identity"]]
    ok = lines >= 200 and circles >= 100 and not bad and elapsed < 300
    record(1, ok, f"{lines} line + {circles} circle configs, {len(bad)} failures, {elapsed:.0f}s")


def test_criterion_2_cauchy_schwarz(sweep):
    rows, _ = sweep
    bad = []
    for r in rows:
        s = r["stats"]
        excess = sum(c - 1 for c in s.class_sizes)
        if s.q_total * s.D < excess * excess:
            bad.append(r["cfg"])
    record(2, not bad, f"{len(rows)} configs, {len(bad)} failures")


def test_criterion_3_curve_oracles():
    detail = []
    hyper_bad, hyper_pairs, exhaustive = 0, 0, 0
    for n, gen in ((20, "lattice"), (16, "random"), (120, "lattice"), (120, "random")):
        first, second = line_config(n, 0.5, gen, seed=1)
        fam = build_hyperbola_family(second)
        pairs = hyperbola_pairs(fam, limit=200, samples=10_000)
        exhaustive += fam.distinct <= 200
        if fam.distinct <= 200:
            assert len(pairs) == fam.distinct * (fam.distinct - 1) // 2
        else:
            assert len(pairs) == 10_000
        rep = degrees_of_freedom_check_line(pairs)
        hyper_pairs += rep.pairs
        hyper_bad += not rep.ok
    detail.append(f"hyperbolas {hyper_pairs} pairs ({exhaustive} exhaustive families)")

    first, second = circle_config(60, 0.5, "symmetric", seed=2)
    engineered = engineered_singular_pairs(60, seed=5)
    pairs = circle_pairs(build_circle_family(second), samples=500) + engineered
    rep4 = check_intersections_4d(pairs)
    # an independent Groebner count on a slice of the engineered pairs
    groebner_bad = sum(intersection_count_4d(c1, c2).count != groebner_4d_count(c1.p, c1.q, c2.p, c2.q)[0]
                       for c1, c2 in engineered[:20])
    detail.append(f"4D {rep4.pairs} pairs max {rep4.maximum}, {len(engineered)} engineered")

    same = _same_curve_suite(1000, seed=11)
    detail.append(f"same-curve {same['tuples']} tuples")
    ok = (hyper_bad == 0 and rep4.ok and rep4.pairs >= 560 and groebner_bad == 0 and same["ok"]
          and same["tuples"] == 1000)
    record(3, ok, "; ".join(detail))


def test_criterion_4_multiplicity_law(sweep):
    rows, _ = sweep
    bad = [r["cfg"] for r in rows if r["mode"] == "line" and r["mult"].t > 2 * r["mult"].v_max]
    engineered = PointSet(((1, 1), (1, -1), (2, 3), (2, -3)))
    fam = build_hyperbola_family(engineered)
    rep = multiplicity_vs_vertical_lines(engineered, fam)
    m = fam.multiplicity_of((1, 2, 8))
    record(4, not bad and rep.ok and m >= 2, f"{len(bad)} failures; class (1,2,8) multiplicity {m}")


def test_criterion_5_choice_bounds(sweep):
    rows, _ = sweep
    worst = {"line": 0, "circle": 0}
    triples = 0
    for r in rows:
        worst[r["mode"]] = max(worst[r["mode"]], r["choice"].maximum)
        triples += r["choice"].triples
    ok = worst["line"] <= 4 and worst["circle"] <= 2
    record(5, ok, f"{triples} triples, max line {worst['line']}, max circle {worst['circle']}")


def test_criterion_6_known_values():
    mismatches = [m for m in range(2, 13) if distinct_distances(lattice(m, m)) != brute_lattice_distances(m)]
    square = distinct_distances(PointSet(((0, 0), (1, 0), (0, 1), (1, 1))))
    collinear = [n for n in (2, 3, 10, 50) if distinct_distances(line_points(n)) != n - 1]
    ok = not mismatches and distinct_distances(lattice(3, 3)) == 5 and square == 2 and not collinear
    record(6, ok, f"lattice mismatches {mismatches}, square {square}, collinear mismatches {collinear}")


def test_criterion_7_exponent_sanity():
    start = time.perf_counter()
    fit = fit_exponent([(m * m, distinct_distances(lattice(m, m))) for m in range(4, 41)])
    ratios = []
    for alpha in (0.5, 0.625, 0.75, 0.875):
        pts = uneven_lattice(1024, alpha)
        ratios.append(distinct_distances(pts) / len(pts))
    band = max(ratios) / min(ratios)
    elapsed = time.perf_counter() - start
    ok = fit.slope < 1.05 and band <= 3 and elapsed < 600
    record(7, ok, f"slope {fit.slope:.4f}, D/n band {band:.3f} ({min(ratios):.3f}..{max(ratios):.3f})")


def _capture(argv, tmp_path, name):
    path = tmp_path / name
    code = main(argv + ["--out", str(path)])
    return code, path.read_bytes()


def test_criterion_8_determinism(tmp_path, capsys, monkeypatch):
    runs = {
        "line": ["line", "--n", "120", "--alpha", "0.5", "--generator", "random", "--seed", "3"],
        "circle": ["circle", "--n", "60", "--alpha", "0.6", "--seed", "7", "--check-pairs"],
        "check": ["check", "--n", "30", "--seed", "5"],
    }
    same = []
    for label, argv in runs.items():
        first = _capture(argv, tmp_path, f"{label}-a.json")
        second = _capture(argv, tmp_path, f"{label}-b.json")
        same.append(first == second and first[0] == 0)
    csvs = []
    for threads in ("1", "2"):
        monkeypatch.setenv("DISTDIST_THREADS", threads)
        path = tmp_path / f"sweep-{threads}.csv"
        code = main(["sweep", "--mode", "circle", "--alpha", "0.5:0.75:0.25", "--n", "16:32", "--seed", "1",
                     "--csv", str(path)])
        csvs.append((code, path.read_bytes()))
    capsys.readouterr()
    cells = [("circle", 32, 0.5, "symmetric", 2), ("line", 32, 0.75, "random", 2)]
    ok = all(same) and csvs[0] == csvs[1] and csvs[0][0] == 0 and run_sweep(cells, 2) == run_sweep(cells, 1)
    record(8, ok, f"reports identical {same}, sweep CSV identical across thread counts {csvs[0] == csvs[1]}")

