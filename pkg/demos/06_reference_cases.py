"""Three small networks with three different fates.

Same five oscillators, three coupling matrices: no coupling (everyone
keeps their own rhythm), a strong cycle (everyone locks to the common
frequency in a near-splay pattern), and a lopsided line graph (the
population splits into two internally locked clusters that never merge).
"""

import numpy as np

from kurasim import (
    IntegratorConfig,
    OscillatorNetwork,
    WeightedGraph,
    cycle_graph,
    detect_frequency_sync,
    frequency_clusters,
    integrate,
)

config = IntegratorConfig(h=0.01, t_end=50.0, sample_every=10)
x0 = np.array([0.0, 0.4, 0.8, 1.2, 1.6])

# no edges: pure drift at the natural frequencies
uncoupled = OscillatorNetwork(
    omega=np.array([1.0, 2.0, 3.0, 4.0, 5.0]),
    K=1.0,
    coupling_mode="weighted_adjacency",
    graph=WeightedGraph(5, ()),
)
trace = integrate(uncoupled, x0, config)
drift_error = np.max(np.abs(trace.thetas - x0 - np.outer(trace.times, uncoupled.omega)))
print(f"uncoupled: each phase advances at its own rate, deviation {drift_error:.1e}")

# identical frequencies on a cycle of weight 3: lock at the shared frequency
ring = OscillatorNetwork(
    omega=np.full(5, 5.0),
    K=1.0,
    coupling_mode="weighted_adjacency",
    graph=cycle_graph(5, weight=3.0),
)
x0_ring = np.array([0.0, 2 * np.pi / 5 + 0.5, 4 * np.pi / 5, 6 * np.pi / 5 + 0.1, 8 * np.pi / 5])
trace = integrate(ring, x0_ring, config)
sync = detect_frequency_sync(trace)
final = np.sort(np.mod(trace.thetas[-1], 2 * np.pi))
gaps = np.diff(np.append(final, final[0] + 2 * np.pi))
print(f"\ncycle: locked = {sync.is_frequency_synced}, common frequency = {sync.omega_sync:.6f}")
print(f"       circular gaps = {np.array2string(gaps, precision=4)} (splay would be {2*np.pi/5:.4f})")

# line graph, strong within groups and weak across: two-cluster partial sync
line = OscillatorNetwork(
    omega=np.array([1.0, 1.0, 1.0, 2.5, 2.5]),
    K=1.0,
    coupling_mode="weighted_adjacency",
    graph=WeightedGraph(n=5, edges=((0, 1, 10.0), (1, 2, 10.0), (2, 3, 1.0), (3, 4, 10.0))),
)
trace = integrate(line, x0, config)
report = frequency_clusters(trace)
print(f"\nline graph: clusters = {report.clusters}")
for cluster in report.clusters:
    freqs = [report.frequencies[i] for i in cluster]
    print(f"  members {cluster}: long-run frequencies {np.array2string(np.array(freqs), precision=4)}")
