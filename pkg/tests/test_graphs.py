import numpy as np
import pytest

from kurasim.graphs import (
    DisconnectedGraphError,
    WeightedGraph,
    build_incidence,
    complete_graph,
    cycle_graph,
    from_adjacency,
    laplacian,
    load_adjacency,
    path_graph,
    pseudoinverse,
    spectrum,
)


def random_connected_graph(rng, n):
    """Random spanning tree plus extra edges; connected by construction."""
    edges = {}
    order = rng.permutation(n)
    for idx in range(1, n):
        i, j = int(order[idx]), int(order[rng.integers(0, idx)])
        edges[(min(i, j), max(i, j))] = float(rng.uniform(0.2, 3.0))
    for _ in range(n):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            edges.setdefault((min(i, j), max(i, j)), float(rng.uniform(0.2, 3.0)))
    return WeightedGraph(n=n, edges=tuple((i, j, w) for (i, j), w in edges.items()))


class TestWeightedGraph:
    def test_validation_rejects_bad_edges(self):
        with pytest.raises(ValueError, match="self-loop"):
            WeightedGraph(n=3, edges=((0, 0, 1.0),))
        with pytest.raises(ValueError, match="duplicate"):
            WeightedGraph(n=3, edges=((0, 1, 1.0), (1, 0, 2.0)))
        with pytest.raises(ValueError, match="non-positive"):
            WeightedGraph(n=3, edges=((0, 1, 0.0),))
        with pytest.raises(ValueError, match="out of range"):
            WeightedGraph(n=3, edges=((0, 5, 1.0),))
        with pytest.raises(ValueError, match="node count"):
            WeightedGraph(n=0, edges=())

    def test_builders(self):
        k4 = complete_graph(4)
        assert k4.edge_count == 6
        c5 = cycle_graph(5, weight=3.0)
        assert c5.edge_count == 5
        assert np.all(c5.weights() == 3.0)
        p4 = path_graph(4)
        assert p4.edge_count == 3
        with pytest.raises(ValueError):
            cycle_graph(2)
        with pytest.raises(ValueError):
            path_graph(1)

    def test_adjacency_roundtrip(self):
        rng = np.random.default_rng(11)
        g = random_connected_graph(rng, 8)
        g2 = from_adjacency(g.adjacency())
        assert set(g2.edges) == set(g.edges)

    def test_union_find_components(self):
        g = WeightedGraph(n=5, edges=((0, 1, 1.0), (3, 4, 1.0)))
        assert g.connected_components() == 3
        assert not g.is_connected()
        assert complete_graph(6).is_connected()
        assert WeightedGraph(n=1, edges=()).is_connected()


class TestIncidence:
    def test_k3_matrix_explicit(self):
        B = build_incidence(complete_graph(3)).matrix
        expected = np.array([[-1.0, -1.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, 1.0]])
        np.testing.assert_array_equal(B, expected)

    def test_edge_differences_follow_orientation(self):
        # (B^T theta)_e = theta_j - theta_i for the low-to-high edge (i, j)
        g = path_graph(4)
        theta = np.array([0.1, 0.5, -0.2, 2.0])
        diffs = build_incidence(g).matrix.T @ theta
        np.testing.assert_allclose(diffs, [0.4, -0.7, 2.2], atol=1e-15)

    def test_laplacian_equals_degree_minus_adjacency(self):
        rng = np.random.default_rng(7)
        for n in (2, 5, 9):
            g = random_connected_graph(rng, n)
            oracle = np.diag(g.degree()) - g.adjacency()
            np.testing.assert_allclose(laplacian(g), oracle, atol=1e-12)


class TestSpectrum:
    def test_k3_and_p3_eigenvalues(self):
        np.testing.assert_allclose(spectrum(laplacian(complete_graph(3))).eigenvalues, [0.0, 3.0, 3.0], atol=1e-9)
        np.testing.assert_allclose(spectrum(laplacian(path_graph(3))).eigenvalues, [0.0, 1.0, 3.0], atol=1e-9)

    def test_c4_eigenvalues(self):
        # hand derivation: 2 - 2 cos(2 pi k / 4) for k = 0..3
        np.testing.assert_allclose(spectrum(laplacian(cycle_graph(4))).eigenvalues, [0.0, 2.0, 2.0, 4.0], atol=1e-9)

    def test_weighted_path_closed_form(self):
        # weights (2, 3) on a 3-path: nonzero eigenvalues are 5 -/+ sqrt(7)
        g = WeightedGraph(n=3, edges=((0, 1, 2.0), (1, 2, 3.0)))
        eigs = spectrum(laplacian(g)).eigenvalues
        np.testing.assert_allclose(eigs, [0.0, 5.0 - np.sqrt(7.0), 5.0 + np.sqrt(7.0)], atol=1e-9)

    def test_zero_multiplicity_matches_union_find(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            n = int(rng.integers(2, 12))
            g = random_connected_graph(rng, n)
            # knock out a random subset of edges to fragment some graphs
            keep = [e for e in g.edges if rng.random() > 0.35]
            frag = WeightedGraph(n=n, edges=tuple(keep))
            spec = spectrum(laplacian(frag))
            assert spec.zero_multiplicity == frag.connected_components()
            assert spec.is_connected == frag.is_connected()

    def test_lambda2_positive_iff_connected(self):
        connected = spectrum(laplacian(cycle_graph(6)))
        assert connected.lambda2 > 0
        split = WeightedGraph(n=4, edges=((0, 1, 1.0), (2, 3, 1.0)))
        assert spectrum(laplacian(split)).lambda2 < 1e-10

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            spectrum(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestPseudoinverse:
    def test_penrose_conditions(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(2, 12))
            L = laplacian(random_connected_graph(rng, n))
            P = pseudoinverse(L)
            np.testing.assert_allclose(L @ P @ L, L, atol=1e-9)
            np.testing.assert_allclose(P @ L @ P, P, atol=1e-9)
            np.testing.assert_allclose(L @ P, (L @ P).T, atol=1e-9)
            np.testing.assert_allclose(P @ L, (P @ L).T, atol=1e-9)

    def test_matches_numpy_pinv(self):
        L = laplacian(cycle_graph(7))
        np.testing.assert_allclose(pseudoinverse(L), np.linalg.pinv(L), atol=1e-10)

    def test_disconnected_raises(self):
        L = laplacian(WeightedGraph(n=4, edges=((0, 1, 1.0), (2, 3, 1.0))))
        with pytest.raises(DisconnectedGraphError, match="zero eigenvalues"):
            pseudoinverse(L)

    def test_single_node(self):
        np.testing.assert_array_equal(pseudoinverse(np.zeros((1, 1))), np.zeros((1, 1)))


class TestAdjacencyFile:
    def test_roundtrip(self, tmp_path):
        g = WeightedGraph(n=3, edges=((0, 1, 2.0), (1, 2, 0.5)))
        A = g.adjacency()
        path = tmp_path / "graph.txt"
        lines = ["3"] + [" ".join(repr(float(x)) for x in row) for row in A]
        path.write_text("\n".join(lines) + "\n")
        assert load_adjacency(path).edges == g.edges

    def test_errors(self, tmp_path):
        bad_count = tmp_path / "a.txt"
        bad_count.write_text("2\n0 1\n")
        with pytest.raises(ValueError, match="matrix rows"):
            load_adjacency(bad_count)
        bad_row = tmp_path / "b.txt"
        bad_row.write_text("2\n0 1\n1\n")
        with pytest.raises(ValueError, match="entries"):
            load_adjacency(bad_row)
        asym = tmp_path / "c.txt"
        asym.write_text("2\n0 1\n2 0\n")
        with pytest.raises(ValueError, match="symmetric"):
            load_adjacency(asym)

    def test_zero_matrix_gives_edgeless_graph(self, tmp_path):
        path = tmp_path / "z.txt"
        path.write_text("3\n0 0 0\n0 0 0\n0 0 0\n")
        g = load_adjacency(path)
        assert g.n == 3 and g.edge_count == 0
