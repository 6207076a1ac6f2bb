"""Coupling graphs, their Laplacian spectra, and what they predict.

Algebraic connectivity lambda_2 is the structural number behind every
synchronization bound in this library: it is positive exactly when the
graph is connected, and larger values buy synchronization at weaker
coupling. This script builds the standard topologies and prints the
analytic coupling thresholds for a fixed frequency profile.
"""

import numpy as np

from kurasim import (
    OscillatorNetwork,
    complete_graph,
    cycle_graph,
    laplacian,
    path_graph,
    spectrum,
    threshold_report,
)

n = 8
omega = np.linspace(-1.0, 1.0, n)  # evenly detuned frequencies, mean zero

for builder in (complete_graph, cycle_graph, path_graph):
    graph = builder(n)
    spec = spectrum(laplacian(graph))
    network = OscillatorNetwork(omega=omega, K=1.0, coupling_mode="graph_incidence", graph=graph)
    report = threshold_report(network, epsilon=np.pi / 8)
    print(f"{builder.__name__:15s} lambda_2 = {spec.lambda2:7.4f}  lambda_max = {spec.lambda_max:7.4f}")
    print(f"{'':15s} K_L (spectral) = {report.k_lower_spectral:8.3f}   K needed for a unique lock = {report.k_unique:9.3f}")
    print(f"{'':15s} K_c (onset)    = {report.k_c_onset:8.3f}   classical lower bound       = {report.k_l_classical:9.3f}")
    print()

# the ordering K_c >= K_L_classical holds for every n; the gap narrows as n grows
from kurasim import e_max

print("onset vs classical bound, ratio E_max(n) / (2(n-1)):")
for n_probe in (2, 4, 10, 40, 100):
    _, value = e_max(n_probe)
    print(f"  n = {n_probe:3d}: {value / (2 * (n_probe - 1)):.6f}")
print("equal at n = 2, minimum at n = 4, then climbing back toward 1")
