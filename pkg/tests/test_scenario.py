import json

import numpy as np
import pytest

from kurasim.scenario import (
    ConfigError,
    build_graph,
    build_scenario,
    draw_omega,
    draw_theta0,
    load_config,
    parse_config,
    run_scenario,
    summarize,
    sweep,
    trace_to_csv,
)
from kurasim.dynamics import IntegratorConfig, integrate
from kurasim.rng import make_rng, normal_box_muller

MINIMAL = """
[network]
topology = "complete"
n = 4

[omega]
seed = 1

[theta0]
seed = 2
"""

TWO_NODE = """
[network]
topology = "complete"
n = 2
K = 2.0

[omega]
kind = "explicit"
values = [-0.5, 0.5]

[theta0]
kind = "explicit"
values = [0.0, 0.0]

[integrator]
t_end = 10.0
sample_every = 5
"""


class TestParse:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.topology == "complete" and cfg.n == 4
        assert cfg.coupling_mode == "mean_field_complete"
        assert cfg.K == 1.0 and cfg.weight == 1.0
        assert cfg.omega.kind == "normal" and cfg.omega.mu == 0.0 and cfg.omega.sigma == 1.0
        assert cfg.omega.mean_center is True
        assert cfg.theta0.kind == "uniform_random" and cfg.theta0.seed == 2
        assert cfg.integrator.h == 0.01 and cfg.integrator.t_end == 50.0 and cfg.integrator.sample_every == 10
        assert cfg.trace_csv is None and cfg.summary_json is None
        assert cfg.epsilon is None and cfg.fixed_point is False

    def test_echo_round_trips_defaults(self):
        echo = parse_config(MINIMAL).echo()
        assert echo["network"]["coupling_mode"] == "mean_field_complete"
        assert echo["omega"]["sigma"] == 1.0
        assert echo["integrator"]["sample_every"] == 10
        assert echo["rng"] == "pcg64+box-muller"
        json.dumps(echo)  # must be serializable as-is

    def test_explicit_values(self):
        cfg = parse_config(TWO_NODE)
        assert cfg.omega.values == (-0.5, 0.5)
        assert cfg.omega.mean_center is False  # explicit default
        assert cfg.theta0.values == (0.0, 0.0)

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("[grid]\nn = 2", "top-level"),
            ("[network]\ntopology = \"complete\"\nn = 2\ncolor = 1\n[omega]\nseed=1\n[theta0]\nseed=2", "unknown keys"),
            ("[network]\ntopology = \"torus\"\nn = 2", "topology"),
            ("[network]\ntopology = \"complete\"\nn = 0", "positive integer"),
            ("[network]\ntopology = \"complete\"\nn = 2\nK = -1.0", "K"),
            ("[network]\ntopology = \"complete\"\nn = 2\n[omega]\nkind = \"normal\"", "seed is required"),
            ("[network]\ntopology = \"complete\"\nn = 3\n[omega]\nkind = \"explicit\"\nvalues = [1.0]", "entries"),
            ("[network]\ntopology = \"complete\"\nn = 2\n[omega]\nkind = \"explicit\"\nvalues = [1.0, 2.0]\nseed = 4", "seed only applies"),
            ("[network]\ntopology = \"complete\"\nn = 2\n[omega]\nkind = \"uniform\"\nseed = 1\nlo = 2.0\nhi = 1.0", "lo < hi"),
            ("[network]\ntopology = \"complete\"\nn = 2\nadjacency_file = \"x.txt\"\n[omega]\nseed=1\n[theta0]\nseed=2", "custom"),
            ("[network]\ntopology = \"custom\"\nn = 2\n[omega]\nseed=1\n[theta0]\nseed=2", "adjacency_file"),
            ("[network]\ntopology = \"cycle\"\nn = 4\n[omega]\nseed=1\n[theta0]\nseed=2", "complete topology"),
            ("[network]\ntopology = \"complete\"\nn = 2\n[omega]\nseed=1\n[theta0]\nseed=2\n[analysis]\nepsilon = 1.0", "epsilon"),
            ("[network]\ntopology = \"complete\"\nn = 2\n[omega]\nseed=1\n[theta0]\nkind = \"explicit\"\nvalues = [0.0, 0.0]\nseed = 3", "seed only applies"),
            ("not toml [", "not valid TOML"),
        ],
    )
    def test_rejections(self, text, fragment):
        with pytest.raises(ConfigError, match=fragment):
            parse_config(text)

    def test_load_config(self, tmp_path):
        path = tmp_path / "case.toml"
        path.write_text(MINIMAL)
        assert load_config(path).n == 4


class TestDraws:
    def test_explicit_passthrough(self):
        cfg = parse_config(TWO_NODE)
        np.testing.assert_array_equal(draw_omega(cfg), [-0.5, 0.5])
        np.testing.assert_array_equal(draw_theta0(cfg), [0.0, 0.0])

    def test_normal_draw_matches_rng_module(self):
        cfg = parse_config(MINIMAL)
        expected = normal_box_muller(make_rng(1), 0.0, 1.0, 4)
        expected = expected - expected.mean()
        np.testing.assert_array_equal(draw_omega(cfg), expected)

    def test_mean_center_applied(self):
        cfg = parse_config(MINIMAL)
        assert abs(draw_omega(cfg).mean()) < 1e-15

    def test_uniform_bounds_and_determinism(self):
        text = MINIMAL.replace('seed = 1', 'kind = "uniform"\nseed = 9\nlo = 2.0\nhi = 3.0\nmean_center = false')
        cfg = parse_config(text)
        draw = draw_omega(cfg)
        assert np.all((draw >= 2.0) & (draw < 3.0))
        np.testing.assert_array_equal(draw, draw_omega(cfg))

    def test_theta0_range(self):
        cfg = parse_config(MINIMAL)
        th = draw_theta0(cfg)
        assert np.all((th >= 0.0) & (th < 2 * np.pi))


class TestGraphBuild:
    def test_mean_field_has_no_graph(self):
        assert build_graph(parse_config(MINIMAL)) is None

    def test_builders_respect_weight(self):
        text = MINIMAL.replace('topology = "complete"', 'topology = "cycle"').replace(
            "n = 4", 'n = 4\ncoupling_mode = "graph_incidence"\nweight = 2.5'
        )
        g = build_graph(parse_config(text))
        assert g.edge_count == 4 and all(w == 2.5 for _, _, w in g.edges)

    def test_custom_adjacency(self, tmp_path):
        adj = tmp_path / "adj.txt"
        adj.write_text("3\n0 1 0\n1 0 2\n0 2 0\n")
        text = (
            "[network]\ntopology = \"custom\"\nn = 3\ncoupling_mode = \"graph_incidence\"\n"
            f"adjacency_file = {str(adj)!r}\n[omega]\nseed = 1\n[theta0]\nseed = 2\n"
        )
        g = build_graph(parse_config(text))
        assert g.edges == ((0, 1, 1.0), (1, 2, 2.0))

    def test_custom_n_mismatch(self, tmp_path):
        adj = tmp_path / "adj.txt"
        adj.write_text("2\n0 1\n1 0\n")
        text = (
            "[network]\ntopology = \"custom\"\nn = 3\ncoupling_mode = \"graph_incidence\"\n"
            f"adjacency_file = {str(adj)!r}\n[omega]\nseed = 1\n[theta0]\nseed = 2\n"
        )
        with pytest.raises(ConfigError, match="2 nodes"):
            build_graph(parse_config(text))


class TestCsv:
    def test_header_and_exact_round_trip(self):
        cfg = parse_config(TWO_NODE)
        network, theta0 = build_scenario(cfg)
        trace = integrate(network, theta0, IntegratorConfig(h=0.01, t_end=0.1, sample_every=5))
        text = trace_to_csv(trace)
        lines = text.strip().split("\n")
        assert lines[0] == "t,theta_0,theta_1,thetadot_0,thetadot_1,r,psi"
        assert len(lines) == 1 + len(trace)
        for k, line in enumerate(lines[1:]):
            cells = [float(c) for c in line.split(",")]
            assert cells[0] == trace.times[k]
            assert cells[1:3] == list(trace.thetas[k])
            assert cells[3:5] == list(trace.theta_dots[k])


class TestRun:
    def test_two_node_summary(self):
        cfg = parse_config(TWO_NODE)
        _, summary = run_scenario(cfg)
        assert summary.is_frequency_synced
        assert summary.omega_sync == pytest.approx(0.0, abs=1e-8)
        assert summary.final_r > 0.95
        assert 0.0 <= summary.mean_r_last20 <= 1.0
        assert summary.thresholds is not None
        assert summary.thresholds["k_c_onset"] == pytest.approx(1.0)
        assert summary.fixed_point is None  # not requested
        assert summary.config["network"]["K"] == 2.0

    def test_fixed_point_included_when_requested(self):
        cfg = parse_config(TWO_NODE + "\n[analysis]\nfixed_point = true\n")
        _, summary = run_scenario(cfg)
        assert summary.fixed_point is not None and summary.fixed_point["converged"]

    def test_outputs_written_and_byte_identical(self, tmp_path):
        text = TWO_NODE + "\n[outputs]\ntrace_csv = \"trace.csv\"\nsummary_json = \"summary.json\"\n"
        cfg = parse_config(text)
        a, b = tmp_path / "a", tmp_path / "b"
        run_scenario(cfg, out_dir=a)
        run_scenario(cfg, out_dir=b)
        assert (a / "trace.csv").read_bytes() == (b / "trace.csv").read_bytes()
        assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()
        parsed = json.loads((a / "summary.json").read_text())
        assert set(parsed) == {
            "final_r", "final_psi", "mean_r_last20", "is_frequency_synced",
            "t_sync", "omega_sync", "thresholds", "fixed_point", "config",
        }

    def test_no_outputs_when_omitted(self, tmp_path):
        run_scenario(parse_config(TWO_NODE), out_dir=tmp_path)
        assert list(tmp_path.iterdir()) == []

    def test_random_runs_are_deterministic(self, tmp_path):
        text = MINIMAL + "\n[integrator]\nt_end = 2.0\n[outputs]\ntrace_csv = \"t.csv\"\n"
        cfg = parse_config(text)
        a, b = tmp_path / "a", tmp_path / "b"
        run_scenario(cfg, out_dir=a)
        run_scenario(cfg, out_dir=b)
        assert (a / "t.csv").read_bytes() == (b / "t.csv").read_bytes()


class TestSweep:
    def base(self):
        return parse_config(MINIMAL + "\n[integrator]\nt_end = 2.0\n")

    def test_k_sweep_rows(self):
        rows = sweep(self.base(), "K", [0.5, 3.0])
        assert [row["value"] for row in rows] == [0.5, 3.0]
        for row in rows:
            assert row["parameter"] == "K"
            assert "summary" in row and "error" not in row
        assert rows[0]["summary"]["config"]["network"]["K"] == 0.5
        assert rows[1]["summary"]["config"]["network"]["K"] == 3.0

    def test_k_sweep_reuses_draws(self):
        rows = sweep(self.base(), "K", [0.5, 3.0])
        # same omega seed in both rows: identical spectral thresholds scale-free fields
        a = rows[0]["summary"]["thresholds"]["k_c_onset"]
        b = rows[1]["summary"]["thresholds"]["k_c_onset"]
        assert a == b

    def test_error_row_isolated(self):
        cfg = parse_config(TWO_NODE)  # explicit omega cannot resize
        rows = sweep(cfg, "n", [2, 5])
        assert "summary" in rows[0]
        assert rows[1]["error"].startswith("ConfigError")

    def test_workers_match_serial(self):
        serial = sweep(self.base(), "K", [0.5, 1.0, 3.0], workers=1)
        parallel = sweep(self.base(), "K", [0.5, 1.0, 3.0], workers=3)
        assert json.dumps(serial) == json.dumps(parallel)

    def test_bad_parameter(self):
        with pytest.raises(ValueError, match="'K' or 'n'"):
            sweep(self.base(), "weight", [1.0])

    def test_empty_values(self):
        with pytest.raises(ValueError, match="at least one"):
            sweep(self.base(), "K", [])
