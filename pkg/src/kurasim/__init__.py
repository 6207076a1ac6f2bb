"""Kuramoto oscillators on weighted graphs: simulation, synchronization
diagnostics, analytic coupling thresholds, phase-locked fixed points, and
the power/spring/flocking instantiations of the same dynamics."""

from .applications import (
    ParticleSwarm,
    PowerNetwork,
    SpringRing,
    SwarmTrace,
    admittance_to_coupling,
    heading_dispersion_run,
    load_power_network,
    power_rhs,
    spring_energy,
    spring_reduce_overdamped,
    spring_torque,
    vicsek_run,
    vicsek_step,
)
from .diagnostics import (
    ClusterReport,
    JacobianInfo,
    SyncReport,
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
from .dynamics import (
    COUPLING_MODES,
    IntegrationDivergedError,
    IntegratorConfig,
    OscillatorNetwork,
    SimulationTrace,
    integrate,
    integrate_second_order,
    make_rhs,
    rhs_classic,
    rhs_graph,
    rhs_meanfield_order,
    rhs_weighted,
    rk4_step,
    rotating_frame,
)
from .fixed_point import FixedPointResult, empirical_critical_coupling, sinc_weights, solve_fixed_point
from .rng import make_rng, normal_box_muller, uniform
from .graphs import (
    DisconnectedGraphError,
    LaplacianSpectrum,
    OrientedIncidence,
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
from .scenario import (
    ConfigError,
    ScenarioConfig,
    SummaryReport,
    load_config,
    parse_config,
    run_scenario,
    sweep,
    trace_to_csv,
)
from .service import PROTOCOL_VERSION, SimulationSession, serve
from .thresholds import (
    ThresholdReport,
    e_max,
    k_c_onset,
    k_inv,
    k_l_classical,
    k_lower_spectral,
    k_unique,
    rate_identical,
    rate_nonidentical,
    threshold_report,
)

__version__ = "0.1.0"
