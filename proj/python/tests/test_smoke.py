import itertools
import json
import math
from pathlib import Path

import pytest

import goalrec

ROOT = Path(__file__).resolve().parents[2]
CORRIDOR = ROOT / "data" / "corridor"


def test_corridor_values():
    problem = goalrec.load(CORRIDOR)
    assert problem.hypotheses == ["(at cx3y1)", "(at cx2y0)"]
    report = goalrec.recognize(problem, "delta-u")
    scores = report["hypotheses"]
    assert [s["h"] for s in scores] == [3, 3]
    assert [s["h_hc"] for s in scores] == [7, 9]
    assert report["selected"] == [0]
    assert goalrec.score(problem, 1)["delta"] == 6


def test_single_observation_widens_selection():
    problem = goalrec.load(CORRIDOR)
    single = (CORRIDOR / "obs_single.dat").read_text().split("\n")
    report = goalrec.recognize(problem, "delta-u", obs=[line for line in single if line.strip()])
    assert report["uncertainty"] == pytest.approx(13 / 7)
    assert report["selected"] == [0, 1]
    assert goalrec.uncertainty_ratio([7, 9], 1) == pytest.approx(13 / 7)
    assert goalrec.uncertainty_ratio([math.inf], 1) is None


def test_oracle_cost():
    problem = goalrec.load(CORRIDOR)
    assert goalrec.optimal_cost(problem, 0) == 3
    assert goalrec.optimal_cost(problem, 1) == 3


def test_lp_matches_scipy():
    scipy_optimize = pytest.importorskip("scipy.optimize")
    rows = [([(0, 1.0), (1, 1.0)], 2.0), ([(0, 1.0), (1, -1.0)], 0.0)]
    ours = goalrec.solve_lp([1.0, 1.0], rows)
    # linprog takes A_ub x <= b_ub, so negate the >= rows.
    ref = scipy_optimize.linprog(
        c=[1.0, 1.0],
        A_ub=[[-1.0, -1.0], [-1.0, 1.0]],
        b_ub=[-2.0, 0.0],
        bounds=[(0, None)] * 2,
        method="highs",
    )
    assert ours["status"] == "optimal"
    assert ours["value"] == pytest.approx(ref.fun) == pytest.approx(2.0)
    for backend in goalrec.backends():
        assert goalrec.solve_lp([1.0, 1.0], rows, backend)["value"] == pytest.approx(2.0)
    assert goalrec.solve_lp([1.0], [([(0, 1.0)], 1.0), ([(0, -1.0)], 0.0)])["status"] == "infeasible"


def test_blocks_grounding_count():
    domain = goalrec.generate("blocks", 3)["domain"]
    blocks = ["b1", "b2", "b3", "b4"]
    init = " ".join(f"(ontable {b}) (clear {b})" for b in blocks)
    problem_text = (
        f"(define (problem bw) (:domain blocks) (:objects {' '.join(blocks)} - block)"
        f" (:init (handempty) {init}))"
    )
    arities = {"pick-up": 1, "put-down": 1, "stack": 2, "unstack": 2}
    expected = sum(len(list(itertools.product(blocks, repeat=n))) for n in arities.values())
    problem = goalrec.load_text(domain, problem_text, "(on b1 b2)\n", prune=False)
    assert problem.num_actions == expected == 40


def test_generate_is_deterministic():
    assert goalrec.generate("grid", 4) == goalrec.generate("grid", 4)
    with pytest.raises(ValueError):
        goalrec.generate("nope", 1)


def test_run_suite():
    manifest = json.dumps({
        "seed": 2,
        "levels": [50, 100],
        "methods": ["hc", "delta"],
        "bundles": [str(CORRIDOR)],
        "generate": [{"family": "chain", "count": 2}],
    })
    first = goalrec.run_suite(manifest)
    second = goalrec.run_suite(manifest)
    assert first["rows_csv"] == second["rows_csv"]
    rows = first["rows_csv"].strip().split("\n")
    assert len(rows) == 1 + 3 * 2 * 2


def test_parse_error():
    problem = goalrec.load(CORRIDOR)
    with pytest.raises(goalrec.ParseError):
        goalrec.recognize(problem, obs=["(fly cx0y0)"])
