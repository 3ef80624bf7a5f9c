import numpy as np
import pytest

import graphsl


def test_model_tree_shape():
    t = graphsl.build_model_tree(2, 12)
    assert t.size == 8191
    assert t.degree(0) == 2
    assert t.in_halo(t.size - 1)


def test_path_solve():
    g = graphsl.parse_graph("graph 3 0\nhalo none\nedge 0 1 1\nedge 1 2 1\n")
    zero = np.zeros(3)
    u, res = graphsl.solve_dirichlet(g, [1], zero, zero, np.array([0.0, 0.0, 2.0]))
    assert u.tolist() == [0.0, 1.0, 2.0]
    assert res == 0.0


def test_radial_root_two_thirds():
    w = graphsl.radial_dirichlet(2, 1.0, [1.0, 0.25], 1, 1.0)
    assert w[0] == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_solver_matches_oracle():
    t = graphsl.build_model_tree(2, 8)
    d = graphsl.hop_metric(t)
    V = graphsl.shifted_potential(t, d, 2.0)
    interior = [x for x in range(t.size) if t.hops(x) < 7]
    u, _ = graphsl.solve_dirichlet(t, interior, V, np.zeros(t.size), np.ones(t.size))
    w = graphsl.radial_dirichlet(2, 1.0, [(1.0 + n) ** -2 for n in range(8)], 7, 1.0)
    assert abs(u[0] - w[0]) < 1e-10


def test_exhaustion_monotone():
    t = graphsl.build_model_tree(2, 10)
    d = graphsl.hop_metric(t)
    V = graphsl.shifted_potential(t, d, 1.0)
    tr = graphsl.dirichlet_exhaustion(t, d, V, 1.0, list(range(2, 9)))
    roots = [s["root_value"] for s in tr["steps"]]
    assert all(a >= b for a, b in zip(roots, roots[1:]))
    assert tr["all_monotone_ok"] and tr["all_bounds_ok"]
    assert tr["csv"].startswith("j,root_value,sup_delta")


def test_barrier_and_summability():
    h = graphsl.make_barrier(2, 2.0)
    assert (h["beta"], h["r_hat"], h["c_hat"]) == (1.0, 7, 2.0)
    verdict, ratio = graphsl.check_summability(2, 0.8, 1.0)
    assert verdict == "converges"
    assert ratio == pytest.approx(2 * np.exp(-0.8))


def test_errors_are_translated():
    with pytest.raises(graphsl.GraphslError, match="ParseError"):
        graphsl.parse_graph("graph 3 0\nedge 0 1 x\n")


def test_dichotomy_command(tmp_path):
    cfg = graphsl.ExperimentConfig()
    cfg.tree_depth = 10
    cfg.radii = list(range(2, 9))
    cfg.out_dir = str(tmp_path)
    code, log = graphsl.run_dichotomy(cfg)
    assert code == 0, log
    assert (tmp_path / "summary.csv").read_text().startswith(
        "alpha,u_final_root,sandwich_lower_bound,summability_verdict"
    )
