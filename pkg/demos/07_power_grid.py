"""A lossless two-bus power system is a Kuramoto pair in disguise.

One generator injects power, one load draws it; the line can carry at
most |V_1||V_2||Y_12|. The bus voltage angles settle where the line
transfer balances the injection, and past the line limit there is no
equilibrium at all: the angle difference slips without end.
"""

import numpy as np

from kurasim import IntegratorConfig, PowerNetwork, integrate, power_rhs

line = np.array([[0.0, 1.0], [1.0, 0.0]])

# injection well inside the line limit: settles at arcsin(P / a) = pi/6
grid = PowerNetwork(P=np.array([0.5, -0.5]), V=np.ones(2), Y_mag=line)
config = IntegratorConfig(h=0.01, t_end=40.0, sample_every=100)
trace = integrate(lambda th: power_rhs(th, grid), np.zeros(2), config)
angle = trace.thetas[-1, 0] - trace.thetas[-1, 1]
print(f"P = 0.5, line limit 1.0: settled angle = {angle:.8f} rad (pi/6 = {np.pi/6:.8f})")

# overload the line: angles never settle
overloaded = PowerNetwork(P=np.array([1.5, -1.5]), V=np.ones(2), Y_mag=line)
trace = integrate(lambda th: power_rhs(th, overloaded), np.zeros(2), config)
gap = trace.thetas[:, 0] - trace.thetas[:, 1]
print(f"P = 1.5 (overload): angle gap went {gap[0]:.1f} -> {gap[-1]:.1f} rad, still slipping")

# a graph check catches buses with no lines before any simulation runs
island = PowerNetwork(
    P=np.array([0.3, -0.3, 0.0]),
    V=np.ones(3),
    Y_mag=np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
)
print(f"\nbus 2 has no lines: isolated_nodes = {island.isolated_nodes}")
try:
    island.coupling_graph()
except Exception as exc:
    print(f"coupling_graph() refuses: {exc}")
