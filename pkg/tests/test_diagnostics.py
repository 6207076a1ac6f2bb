import numpy as np
import pytest

from kurasim.diagnostics import (
    detect_frequency_sync,
    disagreement_norm,
    estimate_decay_rate,
    frequency_clusters,
    is_arc_cohesive,
    is_graph_cohesive,
    jacobian,
    jacobian_fd_check,
    kinetic_s,
    lyapunov_u1,
    lyapunov_u1_edges,
    lyapunov_u2,
    minimal_containing_arc,
    order_parameter,
    order_parameter_graph,
    sync_frequency,
    wrap_to_pi,
)
from kurasim.dynamics import SimulationTrace
from kurasim.graphs import laplacian, path_graph, from_adjacency


def synthetic_trace(times, theta_dots, thetas=None):
    times = np.asarray(times, dtype=float)
    theta_dots = np.asarray(theta_dots, dtype=float)
    if thetas is None:
        thetas = np.zeros_like(theta_dots)
    return SimulationTrace(times, thetas, theta_dots)


class TestOrderParameter:
    def test_coherent_and_splay(self):
        r, psi = order_parameter(np.full(5, 1.3))
        assert abs(r - 1.0) < 1e-15
        assert abs(psi - 1.3) < 1e-12
        for n in (2, 5, 32):
            r, psi = order_parameter(2 * np.pi * np.arange(n) / n)
            assert r < 1e-12
            assert psi == 0.0  # convention: undefined centroid angle reported as 0

    def test_antipodal_pair(self):
        r, _ = order_parameter(np.array([0.0, np.pi]))
        assert r < 1e-15

    def test_graph_route_matches_centroid(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(1, 50))
            theta = rng.uniform(-20, 20, n)
            r, _ = order_parameter(theta)
            assert abs(order_parameter_graph(theta) - r) <= 1e-10


class TestArcs:
    def test_hand_cases(self):
        assert abs(minimal_containing_arc(np.array([0.0, np.pi / 2])) - np.pi / 2) < 1e-12
        assert abs(minimal_containing_arc(np.array([0.0, np.pi / 2, np.pi])) - np.pi) < 1e-12
        # cluster straddling the branch cut
        assert abs(minimal_containing_arc(np.array([-0.1, 0.1])) - 0.2) < 1e-12
        assert minimal_containing_arc(np.array([2.0])) == 0.0

    def test_splay_arc(self):
        theta = 2 * np.pi * np.arange(3) / 3
        assert abs(minimal_containing_arc(theta) - 4 * np.pi / 3) < 1e-12

    def test_cohesive_predicates(self):
        theta = np.array([0.0, 0.3, 0.6])
        assert is_arc_cohesive(theta, 0.6)
        assert not is_arc_cohesive(theta, 0.59)
        # chain phases: every edge tight but the whole set spans > gamma
        chain = np.array([0.0, 1.0, 2.0, 3.0])
        g = path_graph(4)
        assert is_graph_cohesive(chain, g, 1.0)
        assert not is_arc_cohesive(chain, 1.0)

    def test_wrap_to_pi(self):
        np.testing.assert_allclose(wrap_to_pi(np.array([3 * np.pi / 2])), [-np.pi / 2], atol=1e-12)
        np.testing.assert_allclose(wrap_to_pi(np.array([np.pi])), [np.pi], atol=1e-12)
        np.testing.assert_allclose(wrap_to_pi(np.array([-np.pi])), [np.pi], atol=1e-12)
        np.testing.assert_allclose(wrap_to_pi(np.array([0.4])), [0.4], atol=1e-15)


class TestSyncDetection:
    def test_sync_frequency_is_mean(self):
        assert sync_frequency(np.array([1.0, 2.0, 6.0])) == 3.0

    def test_detects_locking_time(self):
        times = np.linspace(0, 10, 101)
        # spread decays through the tolerance at t = ln(100)/1 ~ 4.6
        spread = 1e-2 * np.exp(-times)
        dots = np.stack([5.0 + spread / 2, 5.0 - spread / 2], axis=1)
        report = detect_frequency_sync(synthetic_trace(times, dots), tol=1e-4)
        assert report.is_frequency_synced
        assert report.t_sync == pytest.approx(4.7, abs=0.2)
        assert report.omega_sync == pytest.approx(5.0, abs=1e-6)
        assert report.max_spread_end < 1e-4

    def test_short_dip_does_not_count(self):
        times = np.linspace(0, 10, 101)
        spread = np.full_like(times, 1.0)
        spread[40:45] = 0.0  # 0.5 time units < default hold of 1.0
        dots = np.stack([spread / 2, -spread / 2], axis=1)
        report = detect_frequency_sync(synthetic_trace(times, dots), tol=1e-4)
        assert not report.is_frequency_synced
        assert report.t_sync is None

    def test_delta_norm_decay_rate(self):
        times = np.linspace(0, 5, 201)
        delta = np.exp(-1.7 * times)
        dots = np.stack([delta, -delta], axis=1)  # mean is zero
        report = detect_frequency_sync(synthetic_trace(times, dots), tol=1e-12)
        np.testing.assert_allclose(report.delta_norms, np.sqrt(2) * delta, atol=1e-12)
        assert report.fitted_decay_rate == pytest.approx(1.7, rel=1e-6)


class TestDecayRate:
    def test_pure_exponential(self):
        t = np.linspace(0, 3, 50)
        assert estimate_decay_rate(t, 3.0 * np.exp(-2.2 * t)) == pytest.approx(2.2, rel=1e-9)

    def test_floor_truncates_fit(self):
        t = np.linspace(0, 40, 401)
        v = np.exp(-t)
        v[v < 1e-8] = 1e-16  # fake numerical floor
        assert estimate_decay_rate(t, v) == pytest.approx(1.0, rel=1e-6)

    def test_too_few_samples_raises(self):
        t = np.linspace(0, 1, 5)
        with pytest.raises(ValueError, match="at least"):
            estimate_decay_rate(t, np.exp(-t))


class TestClusters:
    def test_two_clusters_with_beating(self):
        times = np.linspace(0, 50, 501)
        beat = 0.05 * np.sin(1.25 * times)  # zero-mean wobble
        dots = np.stack(
            [1.0 + beat, 1.0005 - beat, 2.5 + beat],
            axis=1,
        )
        report = frequency_clusters(synthetic_trace(times, dots), window_frac=0.4, gap=0.1)
        assert report.clusters == ((0, 1), (2,))
        assert abs(report.frequencies[0] - 1.0) < 0.01
        assert report.window_start == pytest.approx(30.0)

    def test_single_cluster(self):
        times = np.linspace(0, 10, 101)
        dots = np.stack([np.full_like(times, 2.0)] * 4, axis=1)
        report = frequency_clusters(synthetic_trace(times, dots))
        assert report.clusters == ((0, 1, 2, 3),)

    def test_window_validation(self):
        times = np.linspace(0, 1, 11)
        trace = synthetic_trace(times, np.zeros((11, 2)))
        with pytest.raises(ValueError, match="window_frac"):
            frequency_clusters(trace, window_frac=0.0)


class TestLyapunov:
    def test_u1_routes_agree(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            theta = rng.uniform(-7, 7, int(rng.integers(2, 30)))
            assert abs(lyapunov_u1(theta) - lyapunov_u1_edges(theta)) <= 1e-10

    def test_u1_extremes(self):
        assert lyapunov_u1(np.full(6, 0.7)) < 1e-14
        assert lyapunov_u1(2 * np.pi * np.arange(4) / 4) == pytest.approx(1.0, abs=1e-12)

    def test_u2_brute_force(self):
        rng = np.random.default_rng(32)
        theta = rng.normal(0, 2, 7)
        brute = 0.5 * sum((a - b) ** 2 for a in theta for b in theta)
        assert lyapunov_u2(theta) == pytest.approx(brute, rel=1e-12)

    def test_kinetic(self):
        assert kinetic_s(np.array([3.0, 4.0])) == pytest.approx(12.5)

    def test_disagreement_norm(self):
        theta = np.array([1.0, 2.0, 3.0])
        assert disagreement_norm(theta) == pytest.approx(np.sqrt(2.0))


class TestJacobian:
    def test_zero_phase_gives_minus_laplacian(self):
        rng = np.random.default_rng(41)
        A = rng.uniform(0, 1, (5, 5))
        A = (A + A.T) / 2
        np.fill_diagonal(A, 0.0)
        info = jacobian(np.zeros(5), A)
        L = laplacian(from_adjacency(A))
        np.testing.assert_array_equal(info.matrix, -L)

    def test_rows_sum_to_zero(self):
        rng = np.random.default_rng(42)
        A = rng.uniform(0, 1, (6, 6))
        A = (A + A.T) / 2
        np.fill_diagonal(A, 0.0)
        info = jacobian(rng.uniform(-3, 3, 6), A)
        np.testing.assert_allclose(info.matrix.sum(axis=1), 0.0, atol=1e-12)
        np.testing.assert_allclose(info.matrix @ np.ones(6), 0.0, atol=1e-12)

    def test_finite_difference_agreement(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            A = rng.uniform(0, 2, (n, n))
            A = (A + A.T) / 2
            np.fill_diagonal(A, 0.0)
            theta = rng.uniform(-np.pi, np.pi, n)
            omega = rng.normal(0, 1, n)
            assert jacobian_fd_check(theta, omega, A) <= 1e-6

    def test_classification(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert jacobian(np.zeros(2), A).classification == "stable"
        # an edge stretched past pi/2 flips the effective weight sign
        assert jacobian(np.array([0.0, 2.5]), A).classification == "unstable"
        assert jacobian(np.array([0.0, np.pi / 2]), A).classification == "marginal"
