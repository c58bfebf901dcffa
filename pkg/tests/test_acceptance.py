#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
性质测试与蒙特卡洛验收

标记为 slow 的测试默认不运行：pytest -m slow
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from src.embedding import embed_forest_greedy, verify_embedding
from src.experiment import ExperimentConfig, ExperimentRunner, calibrate, run_experiment
from src.graph import (
    Graph, HostSpec, density, generate_dense_host, generate_gnp, min_degree, random_permutation, relabel,
)
from src.matching import StarDemand, check_hall_condition, find_star_packing, validate_star_packing
from src.regularity import (
    RegularityParams, build_partition, certify_dense, combine_delta, robust_delta, robust_eps, star_capacity,
    star_cover, validate_star_cover,
)
from src.tree import bare_path_lower_bound, count_leaves, extract_bare_paths, generate_bounded_tree
from src.utils.constants import CertifyMode, ColumnName, HallMode, HostKind, Stage, TreeShape
from src.utils.exceptions import EmbeddingError, HallViolationError, PartitionError


def all_instances(a_size: int, b_size: int):
    """A = 0..a_size-1，B 紧随其后；枚举全部二部图与 Σℓ = |B| 的需求"""
    a_side = range(a_size)
    b_side = range(a_size, a_size + b_size)
    slots = list(itertools.product(a_side, b_side))
    demands = [dict(zip(a_side, combo)) for combo in itertools.product((1, 2), repeat=a_size)
               if sum(combo) == b_size]
    if not demands:
        return
    for mask in range(1 << len(slots)):
        g = Graph(a_size + b_size, [slots[i] for i in range(len(slots)) if mask >> i & 1])
        for demand in demands:
            yield g, StarDemand(a_side, b_side, demand)


def neighbourhood_instances(a_size: int, b_size: int):
    """每个中心的邻域取遍 B 的子集（邻域多重集 × 全部需求，覆盖中心置换意义下的全部二部图）"""
    b_side = list(range(a_size, a_size + b_size))
    demands = [combo for combo in itertools.product((1, 2), repeat=a_size) if sum(combo) == b_size]
    for masks in itertools.combinations_with_replacement(range(1 << b_size), a_size):
        g = Graph(a_size + b_size, [(a, b_side[i]) for a, mask in enumerate(masks)
                                    for i in range(b_size) if mask >> i & 1])
        for demand in demands:
            yield g, StarDemand(range(a_size), range(a_size, a_size + b_size), dict(zip(range(a_size), demand)))


def packing_agrees_with_hall(g: Graph, d: StarDemand) -> bool:
    hall = bool(check_hall_condition(g, d, HallMode.EXHAUSTIVE))
    try:
        packing = find_star_packing(g, d)
    except HallViolationError:
        return not hall
    return hall and validate_star_packing(g, d, packing)[0]


class TestHallOracle:
    @pytest.mark.parametrize("a_size,b_size", [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4)])
    def test_exhaustive_small(self, a_size, b_size):
        disagreements = [d.demand for g, d in all_instances(a_size, b_size) if not packing_agrees_with_hall(g, d)]
        assert disagreements == []

    @pytest.mark.slow
    @pytest.mark.parametrize("b_size", [3, 4])
    def test_exhaustive_three_centres(self, b_size):
        assert all(packing_agrees_with_hall(g, d) for g, d in all_instances(3, b_size))

    @pytest.mark.slow
    @pytest.mark.parametrize("b_size", [4, 5])
    def test_exhaustive_four_centres(self, b_size):
        disagreements = [d.demand for g, d in neighbourhood_instances(4, b_size)
                         if not packing_agrees_with_hall(g, d)]
        assert disagreements == []

    def test_sampled_four_centres(self):
        rng = np.random.default_rng(2024)
        slots = [(a, b) for a in range(4) for b in range(4, 10)]
        for _ in range(2000):
            demand = {0: 2, 1: 2, 2: 1, 3: 1}
            keep = rng.random(len(slots)) < rng.uniform(0.3, 0.9)
            g = Graph(10, [slot for slot, flag in zip(slots, keep) if flag])
            assert packing_agrees_with_hall(g, StarDemand(range(4), range(4, 10), demand))


def test_bare_path_bound_on_random_trees():
    rng = np.random.default_rng(7)
    shapes = [TreeShape.UNIFORM_ATTACHMENT, TreeShape.CATERPILLAR, TreeShape.BROOM, TreeShape.PATH]
    for i in range(500):
        n = int(rng.integers(2, 201))
        delta_max = int(rng.integers(3, 6))
        k = int(rng.choice([3, 5, 7]))
        tree = generate_bounded_tree(n, delta_max, shapes[i % len(shapes)], seed=i)
        assert nx.is_tree(nx.Graph(list(tree.edges())))
        decomposition = extract_bare_paths(tree, k)
        assert len(decomposition) >= bare_path_lower_bound(n, count_leaves(tree), k)
        assert decomposition.validate()


@pytest.mark.parametrize("alpha,spec", [
    (0.2, HostSpec(HostKind.BIPARTITE, a=1, b=2)),
    (0.34, HostSpec(HostKind.GNP, p=0.7)),
    (0.5, HostSpec(HostKind.GNP, p=0.85)),
])
def test_star_cover_on_dense_graphs(alpha, spec):
    rng = np.random.default_rng(int(alpha * 100))
    cap = star_capacity(alpha)
    for i in range(60):
        n = int(rng.integers(12, 201))
        g = generate_dense_host(spec, n, alpha, seed=i, max_attempts=200)
        assert min_degree(g) >= alpha * n
        stars = star_cover(g, alpha)
        assert validate_star_cover(g, stars, cap)
        assert sum(star.size for star in stars) == n


def test_sampled_certifier_counterexamples_recheck():
    rng = np.random.default_rng(11)
    failures = 0
    for i in range(1000):
        size = int(rng.integers(6, 30))
        eps = float(rng.uniform(0.1, 0.5))
        # 在随机二部图中挖掉一个 ε 大小的空块
        edges = [(x, size + y) for x in range(size) for y in range(size) if rng.random() < 0.8]
        hole = int(np.ceil(eps * size))
        edges = [(x, y) for x, y in edges if not (x < hole and y - size < hole)]
        g = Graph(2 * size, edges)
        verdict = certify_dense(g, range(size), range(size, 2 * size), eps, 0.3, budget=200, seed=i)
        if not verdict:
            failures += 1
            u1, u2 = verdict.counterexample
            assert len(u1) >= eps * size - 1e-9 and len(u2) >= eps * size - 1e-9
            assert density(g, u1, u2) == pytest.approx(verdict.min_density)
            assert density(g, u1, u2) < 0.3
    assert failures > 0


@pytest.mark.slow
def test_partition_on_dense_random_hosts():
    spec = HostSpec(HostKind.GNP, p=0.5)
    passed = 0
    for seed in range(50):
        g = generate_dense_host(spec, 400, 0.4, seed=seed)
        try:
            partition = build_partition(g, 0.4, 40, RegularityParams(0.25, 0.15), seed=seed)
        except PartitionError:
            continue
        assert partition.validate(400)
        passed += 1
    assert passed >= 48


@pytest.mark.slow
def test_forest_into_sparse_random_graph():
    n = 1000
    embedded = 0
    for seed in range(50):
        host = generate_gnp(n, 20 / n, seed=seed)
        tree = generate_bounded_tree(800, 3, TreeShape.UNIFORM_ATTACHMENT, seed=seed)
        try:
            embedding = embed_forest_greedy(tree, host, range(n), seed)
        except EmbeddingError:
            continue
        assert verify_embedding(tree, host, embedding).valid
        embedded += 1
    assert embedded >= 45

@pytest.mark.parametrize("delta,r,expected", [(0.3, 1, 0.3), (0.6, 2, 0.3), (0.9, 3, 0.3), (1.0, 4, 0.25)])
def test_combine_delta_table(delta, r, expected):
    assert combine_delta(delta, r) == pytest.approx(expected)


@pytest.mark.parametrize("eps,f,expected", [(0.1, 0.0, 0.1), (0.1, 1.0, 0.2), (0.05, 2.0, 0.2), (0.2, 0.25, 0.25)])
def test_robust_eps_table(eps, f, expected):
    assert robust_eps(eps, f) == pytest.approx(expected)


@pytest.mark.parametrize("delta,f,eps,expected", [
    (0.4, 0.0, 0.1, 0.1), (0.5, 2.0, 0.05, 0.125), (0.8, 100.0, 0.1, 0.8 / 11),
])
def test_robust_delta_table(delta, f, eps, expected):
    assert robust_delta(delta, f, eps) == pytest.approx(expected)


@pytest.mark.slow
class TestMonteCarlo:
    def test_successes_verify_and_reruns_match(self, tmp_path):
        contents = []
        for name in ('first', 'second'):
            cfg = ExperimentConfig(host='gnp:0.5', n=[120], alpha=0.35, tree_shape=TreeShape.UNIFORM_ATTACHMENT,
                                   c=[0.0, 60.0, 240.0], trials=10, seed=20240601, out=str(tmp_path / name),
                                   record_timing=False)
            paths = run_experiment(cfg, show_progress=False)
            with open(paths['results'], 'rb') as f:
                contents.append(f.read())
        assert contents[0] == contents[1]

    @pytest.mark.parametrize("shape", [TreeShape.UNIFORM_ATTACHMENT, TreeShape.CATERPILLAR])
    def test_calibrated_budget_reaches_target(self, tmp_path, shape):
        grid = [60.0, 150.0, 300.0, 600.0, 1200.0]
        calibrate_cfg = ExperimentConfig(host='gnp:0.5', n=[300], alpha=0.35, tree_shape=shape, c=grid, trials=20,
                                         seed=7, target=0.95, out=str(tmp_path / 'calibrate'), record_timing=False)
        threshold = calibrate(calibrate_cfg, show_progress=False).thresholds[300]
        assert threshold is not None
        cfg = ExperimentConfig(host='gnp:0.5', n=[300], alpha=0.35, tree_shape=shape, c=[threshold], trials=50,
                               seed=20240601, out=str(tmp_path / 'embed'), record_timing=False)
        cells = ExperimentRunner(cfg, show_progress=False).run()['cells']
        assert cells[ColumnName.RATE].iloc[0] >= 0.9

    def test_success_rate_grows_with_budget(self, tmp_path):
        cfg = ExperimentConfig(host='gnp:0.5', n=[300], alpha=0.35, tree_shape=TreeShape.UNIFORM_ATTACHMENT,
                               c=[0.0, 60.0, 150.0, 300.0, 600.0], trials=50, seed=20240601, out=str(tmp_path),
                               record_timing=False)
        results = ExperimentRunner(cfg, show_progress=False).run()
        assert results['cells'][ColumnName.TRIALS].tolist() == [50] * 5
        inversions = results['inversions']['300']
        assert inversions['inversions'] <= 1
        assert inversions['unexplained'] == 0

    def test_unbalanced_bipartite_host_needs_linear_budget(self, tmp_path):
        # K_{100,200}：c = 0 时没有生成路径，c = 4n 时每个阶段都是完全图。
        # 桥的第一步必须跨到另一侧，小的一侧空闲顶点约为 P(k − 8)/3，k = 17 时调整账本仍可行
        cfg = ExperimentConfig(host='bipartite:1:2', n=[300], alpha=0.3, tree_shape=TreeShape.PATH, k=17,
                               c=[0.0, 1200.0], trials=50, seed=3, out=str(tmp_path), record_timing=False)
        results = ExperimentRunner(cfg, show_progress=False).run()
        trials = results['trials']
        without = trials[trials[ColumnName.C] == 0.0]
        assert not without['success'].any()
        assert (without['failed_stage'] != Stage.PARTITION).all()
        rates = results['cells'].set_index(ColumnName.C)[ColumnName.RATE]
        assert rates[0.0] == 0.0
        assert rates[1200.0] >= 0.9

    def test_unbalanced_bipartite_host_never_holds_spanning_path(self, tmp_path):
        cfg = ExperimentConfig(host='bipartite:1:2', n=[150], alpha=0.3, tree_shape=TreeShape.PATH, c=[0.0],
                               trials=20, seed=3, out=str(tmp_path), record_timing=False)
        results = ExperimentRunner(cfg, show_progress=False).run()
        assert results['cells'][ColumnName.SUCCESSES].tolist() == [0]


@pytest.mark.parametrize("seed", range(5))
def test_certifier_ignores_vertex_labels(seed):
    g = generate_gnp(16, 0.5, seed=seed)
    perm = random_permutation(16, seed)
    h = relabel(g, perm)
    x, y = range(8), range(8, 16)
    before = certify_dense(g, x, y, 0.3, 0.4, CertifyMode.EXHAUSTIVE)
    after = certify_dense(h, [int(perm[v]) for v in x], [int(perm[v]) for v in y], 0.3, 0.4, CertifyMode.EXHAUSTIVE)
    assert before.passed == after.passed
    assert before.min_density == pytest.approx(after.min_density)
