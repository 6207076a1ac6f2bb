import numpy as np
import pytest

from kurasim.diagnostics import order_parameter
from kurasim.dynamics import IntegratorConfig, OscillatorNetwork, integrate
from kurasim.fixed_point import empirical_critical_coupling, sinc_weights, solve_fixed_point
from kurasim.graphs import WeightedGraph, build_incidence, complete_graph
from kurasim.thresholds import k_unique


def two_node_network(K):
    g = WeightedGraph(n=2, edges=((0, 1, 1.0),))
    return OscillatorNetwork(omega=np.array([-0.5, 0.5]), K=K, coupling_mode="graph_incidence", graph=g)


class TestSincWeights:
    def test_special_values(self):
        w = sinc_weights(np.array([0.0, np.pi / 2, np.pi]))
        assert w[0] == pytest.approx(1.0, abs=1e-15)
        assert w[1] == pytest.approx(2 / np.pi, abs=1e-15)
        assert w[2] == pytest.approx(0.0, abs=1e-15)

    def test_linearizing_identity(self):
        # B (w(phi) * phi) must equal B sin(phi) for any phases
        rng = np.random.default_rng(61)
        g = complete_graph(6)
        B = build_incidence(g).matrix
        for _ in range(30):
            theta = rng.uniform(-4, 4, 6)
            phi = B.T @ theta
            np.testing.assert_allclose(B @ (sinc_weights(phi) * phi), B @ np.sin(phi), atol=1e-12)

    def test_minimum_on_half_pi_interval(self):
        phi = np.linspace(-np.pi / 2, np.pi / 2, 1001)
        assert sinc_weights(phi).min() == pytest.approx(2 / np.pi, abs=1e-6)


class TestSolveFixedPoint:
    def test_zero_frequencies_synchronize(self):
        result = solve_fixed_point(OscillatorNetwork(omega=np.zeros(4), K=1.0))
        assert result.converged
        np.testing.assert_allclose(result.theta_star, 0.0, atol=1e-12)
        assert result.stability == "stable"

    def test_two_node_closed_form(self):
        result = solve_fixed_point(two_node_network(K=2.0))
        assert result.converged
        gap = result.theta_star[0] - result.theta_star[1]
        assert gap == pytest.approx(-np.pi / 6, abs=1e-8)
        assert result.stability == "stable"
        assert abs(result.theta_star.mean()) < 1e-12

    def test_infeasible_coupling_reports_failure(self):
        # K = 0.5 asks for sin(gap) = 2: no real solution exists
        result = solve_fixed_point(two_node_network(K=0.5), max_iter=100)
        assert not result.converged
        assert result.residual > 0.05

    def test_converged_point_is_flow_equilibrium(self):
        rng = np.random.default_rng(62)
        net = OscillatorNetwork(omega=rng.normal(0, 0.3, 5) - rng.normal(0, 0.3, 5).mean(), K=4.0)
        omega = net.omega - net.omega.mean()
        net = OscillatorNetwork(omega=omega, K=4.0)
        result = solve_fixed_point(net)
        assert result.converged
        trace = integrate(net, result.theta_star, IntegratorConfig(h=0.01, t_end=10.0, sample_every=10))
        r_values = [order_parameter(th)[0] for th in trace.thetas]
        assert max(r_values) - min(r_values) < 1e-6

    def test_uniqueness_above_bound(self):
        rng = np.random.default_rng(63)
        for n in (3, 5):
            omega = rng.normal(0, 1, n)
            omega -= omega.mean()
            K = 1.05 * k_unique(n, omega, float(n), float(n))
            net = OscillatorNetwork(omega=omega, K=K)
            a = solve_fixed_point(net, theta0=rng.uniform(-np.pi / 4, np.pi / 4, n))
            b = solve_fixed_point(net, theta0=rng.uniform(-np.pi / 4, np.pi / 4, n))
            assert a.converged and b.converged
            np.testing.assert_allclose(a.theta_star, b.theta_star, atol=1e-6)

    def test_stable_when_edges_inside_quarter_circle(self):
        result = solve_fixed_point(two_node_network(K=2.0))
        assert result.max_edge_difference < np.pi / 2
        assert result.stability == "stable"

    def test_k_zero_rejected(self):
        with pytest.raises(ValueError, match="K > 0"):
            solve_fixed_point(OscillatorNetwork(omega=np.zeros(3), K=0.0))

    def test_disconnected_rejected(self):
        g = WeightedGraph(n=4, edges=((0, 1, 1.0), (2, 3, 1.0)))
        net = OscillatorNetwork(omega=np.zeros(4), K=1.0, coupling_mode="graph_incidence", graph=g)
        with pytest.raises(Exception, match="connected"):
            solve_fixed_point(net)

    def test_weighted_adjacency_mode(self):
        # same two-node physics expressed as a_12 = 1 with K scaling
        g = WeightedGraph(n=2, edges=((0, 1, 1.0),))
        net = OscillatorNetwork(omega=np.array([-0.5, 0.5]), K=1.0, coupling_mode="weighted_adjacency", graph=g)
        result = solve_fixed_point(net)
        assert result.converged
        assert result.theta_star[0] - result.theta_star[1] == pytest.approx(-np.arcsin(0.5), abs=1e-8)


class TestEmpiricalCritical:
    def test_two_oscillator_threshold(self):
        net = OscillatorNetwork(omega=np.array([-0.5, 0.5]), K=1.0)
        K_star = empirical_critical_coupling(net, "zeros", (0.5, 2.0), t_end=60.0)
        assert 0.9 <= K_star <= 1.1

    def test_identical_frequencies_return_lower_endpoint(self):
        net = OscillatorNetwork(omega=np.zeros(3), K=1.0)
        assert empirical_critical_coupling(net, "zeros", (0.05, 1.0), t_end=20.0) == 0.05

    def test_invalid_bracket_names_endpoint(self):
        net = OscillatorNetwork(omega=np.array([-0.5, 0.5]), K=1.0)
        with pytest.raises(ValueError, match="K_hi"):
            empirical_critical_coupling(net, "zeros", (0.05, 0.2), t_end=20.0)

    def test_theta0_policies(self):
        net = OscillatorNetwork(omega=np.array([-0.5, 0.5]), K=1.0)
        explicit = empirical_critical_coupling(net, np.array([0.1, -0.1]), (0.5, 2.0), t_end=40.0)
        seeded = empirical_critical_coupling(net, ("uniform_random", 9), (0.5, 2.0), t_end=40.0)
        assert 0.85 <= explicit <= 1.15
        assert 0.85 <= seeded <= 1.15
        # determinism under the same seed
        again = empirical_critical_coupling(net, ("uniform_random", 9), (0.5, 2.0), t_end=40.0)
        assert seeded == again

    def test_bad_policy_rejected(self):
        net = OscillatorNetwork(omega=np.zeros(2), K=1.0)
        with pytest.raises(ValueError, match="policy"):
            empirical_critical_coupling(net, "ones", (0.1, 1.0))
