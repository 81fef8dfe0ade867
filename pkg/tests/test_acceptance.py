"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here.
"""
import math
import time

import numpy as np
import pytest
import scipy.sparse.csgraph as csgraph

import resdecomp as rd
from resdecomp.cli import execute

from conftest import path_graph, two_triangles_bridge

BETA = math.log(1.5)


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def hypercube10_run():
    g = rd.hypercube(10)
    started = time.monotonic()
    part, report = rd.partition(g, 8.0)
    record = rd.verify_partition(g, part, 8.0)
    elapsed = time.monotonic() - started
    return g, part, report, record, elapsed


def test_criterion_1_oracle_equivalence(corpus):
    started = time.monotonic()
    worst = 0.0
    for g in corpus:
        zeta = rd.required_solver_accuracy(g, 1e-8)
        opts = rd.SolverOptions(zeta=zeta)
        R = rd.exact_reff_matrix(g)
        for s in range(g.n):
            for t in range(s + 1, g.n):
                p = rd.st_potential(g, s, t, opts)
                worst = max(worst, abs(float(p.values[s] - p.values[t]) - R[s, t]))
    elapsed = time.monotonic() - started
    ok = worst <= 1e-6 and elapsed < 10.0
    _verdict(1, ok, f"potential-vs-oracle resistance, all pairs of 50 graphs: "
                    f"max |diff| = {worst:.3e} (<= 1e-6), elapsed {elapsed:.1f}s (< 10s)")


def test_criterion_2_metric_domination_foster(corpus):
    worst_sym = worst_tri = worst_dom = worst_foster = 0.0
    for g in corpus:
        R = rd.exact_reff_matrix(g)
        worst_sym = max(worst_sym, float(np.abs(R - R.T).max()))
        triple = R[:, :, None] + R[None, :, :]
        worst_tri = max(worst_tri, float((R[:, None, :] - triple).max()))
        A = g.adjacency_matrix().astype(float)
        A.data = 1.0 / A.data
        dist = csgraph.dijkstra(A, directed=False)
        worst_dom = max(worst_dom, float((R - dist).max()))
        eu, ev, ew = g.edges()
        worst_foster = max(worst_foster, abs(float((ew * R[eu, ev]).sum()) - (g.n - 1)))
    ok = worst_sym <= 1e-9 and worst_tri <= 1e-9 and worst_dom <= 1e-9 and worst_foster <= 1e-6
    _verdict(2, ok, f"metric suite: symmetry {worst_sym:.1e}, triangle {worst_tri:.1e}, "
                    f"domination {worst_dom:.1e} (<= 1e-9 each), foster {worst_foster:.1e} (<= 1e-6)")


def test_criterion_3_sketch_guarantee(corpus):
    bound = math.exp(BETA)
    good_seeds = 0
    for seed in range(50):
        cfg = rd.SketchConfig(seed=seed)
        ok_seed = True
        for g in corpus:
            A = rd.approx_reff_from_source(g, 0, cfg)
            R = rd.exact_reff_matrix(g)
            ratios = A[1:] / R[0, 1:]
            if ratios.max() > bound or ratios.min() < 1.0 / bound:
                ok_seed = False
                break
        good_seeds += ok_seed
    ok = good_seeds >= 49
    _verdict(3, ok, f"two-sided e^beta sketch bracket held for {good_seeds}/50 seeds "
                    f"across the corpus (need >= 49)")


def test_criterion_4_furthest_pair_factor(corpus100):
    worst = math.inf
    for g in corpus100:
        u, v, _ = rd.furthest_pair(g)
        R = rd.exact_reff_matrix(g)
        worst = min(worst, R[u, v] / R.max())
    ok = worst >= 1 / 3
    _verdict(4, ok, f"furthest-pair factor on 100 graphs: min Reff(u,v*)/Rdiam = "
                    f"{worst:.3f} (>= 1/3)")


def test_criterion_5_grid_growth():
    started = time.monotonic()
    r16 = rd.exact_resistance_diameter(rd.grid2d(16))
    r32 = rd.exact_resistance_diameter(rd.grid2d(32))
    elapsed = time.monotonic() - started
    ratio = r32 / r16
    ok = ratio >= 1.1 and elapsed < 120.0
    _verdict(5, ok, f"grid resistance diameter growth: {r32:.4f}/{r16:.4f} = {ratio:.4f} "
                    f"(>= 1.1), elapsed {elapsed:.1f}s (< 2min)")


def test_criterion_6_barbell_sparse_cuts():
    res4 = rd.find_sparse_cut(rd.barbell(4), 0.25)
    res8 = rd.find_sparse_cut(rd.barbell(8), 0.25)
    ok = (res4.stats.conductance == 1.0 / 13.0
          and sorted(res4.subset.tolist()) in ([0, 1, 2, 3], [4, 5, 6, 7])
          and res8.stats.conductance == 1.0 / 57.0)
    _verdict(6, ok, f"barbell bridge cuts: phi(4) = {res4.stats.conductance} (= 1/13), "
                    f"phi(8) = {res8.stats.conductance} (= 1/57)")


def test_criterion_7_hypercube_decomposition(hypercube10_run):
    g, part, report, record, elapsed = hypercube10_run
    r_target = report.config.resistance_target  # c_r * delta^3 * n / w(E) = 102.4
    exact_ok = all(br.value <= 3 * r_target + 1e-9
                   for br in report.per_block_rdiam if br.certified_exact)
    ok = (report.loss_fraction <= 1.0 and record.loss_ok and record.rdiam_ok
          and exact_ok and elapsed < 60.0)
    _verdict(7, ok, f"hypercube(10) delta=8: loss {report.loss_fraction:.3f} (<= 1), "
                    f"verify loss_ok={record.loss_ok} rdiam_ok={record.rdiam_ok}, "
                    f"exact blocks <= 3R={3 * r_target:.1f}, elapsed {elapsed:.1f}s (< 60s)")


def test_criterion_8_token_accounting(hypercube10_run):
    g10, _, rep10, _, _ = hypercube10_run
    runs = [(g10, rep10)]

    g_path = path_graph(40)
    _, rep = rd.partition(g_path, 2.0, c_r=4.0)
    runs.append((g_path, rep))

    g_tri = two_triangles_bridge()
    config = rd.DecompositionConfig(delta=2.0, n_original=6, cut_budget=3.5,
                                    resistance_target=1.5)
    _, rep = rd.partition_with_config(g_tri, config)
    runs.append((g_tri, rep))

    g_grid = rd.grid2d(12)
    config = rd.DecompositionConfig(delta=4.0, n_original=g_grid.n,
                                    cut_budget=g_grid.total_weight / 4,
                                    resistance_target=2.0)
    _, rep = rd.partition_with_config(g_grid, config)
    runs.append((g_grid, rep))

    worst_rel = 0.0
    budget_ok = True
    for g, rep in runs:
        charged = float((rep.psi * g.edge_w).sum())
        scale = max(rep.type_ii_weight, 1.0)
        worst_rel = max(worst_rel, abs(charged - rep.type_ii_weight) / scale)
        budget = rep.config.cut_budget / 2
        budget_ok &= rep.type_i_weight <= budget + 1e-12
    ok = worst_rel <= 1e-9 and budget_ok
    _verdict(8, ok, f"token accounting over {len(runs)} runs: max relative charge "
                    f"mismatch {worst_rel:.1e} (<= 1e-9), type-i within W/2: {budget_ok}")


def test_criterion_9_scaling_invariances(corpus):
    alpha = 3.7
    worst_reff = worst_phi = 0.0
    rng = np.random.default_rng(99)
    for g in corpus[:15]:
        h = rd.scale_weights(g, alpha)
        r = rd.exact_reff(g, 0, g.n - 1)
        worst_reff = max(worst_reff, abs(rd.exact_reff(h, 0, g.n - 1) - r / alpha) / (r / alpha))
        s = rng.permutation(g.n)[: max(1, g.n // 2)]
        a, b = rd.cut_stats(g, s), rd.cut_stats(h, s)
        if a.conductance is not None:
            worst_phi = max(worst_phi, abs(b.conductance - a.conductance))

    g = path_graph(40)
    p1, _ = rd.partition(g, 2.0, c_r=4.0)
    p2, _ = rd.partition(rd.scale_weights(g, alpha), 2.0, c_r=4.0)
    blocks_same = [x.tolist() for x in p1.blocks] == [y.tolist() for y in p2.blocks]

    ok = worst_reff <= 1e-9 and worst_phi <= 1e-12 and blocks_same
    _verdict(9, ok, f"scaling by {alpha}: reff rel err {worst_reff:.1e} (<= 1e-9), "
                    f"conductance drift {worst_phi:.1e}, blocks unchanged: {blocks_same}")


def test_criterion_10_deterministic_reports(capsys, tmp_path):
    graph_file = tmp_path / "b4.txt"
    rd.write_edgelist(rd.barbell(4), graph_file)

    outputs = []
    for _ in range(2):
        assert execute(["decompose", "--graph", str(graph_file), "--delta", "4",
                        "--seed", "11", "--exact-verify"]) == 0
        outputs.append(capsys.readouterr().out)
    decompose_same = outputs[0] == outputs[1]

    outputs = []
    for _ in range(2):
        assert execute(["cut", "--graph", str(graph_file), "--seed", "11"]) == 0
        outputs.append(capsys.readouterr().out)
    cut_same = outputs[0] == outputs[1]

    ok = decompose_same and cut_same
    with capsys.disabled():
        _verdict(10, ok, f"byte-identical reports on rerun: decompose={decompose_same}, "
                         f"cut={cut_same}")
