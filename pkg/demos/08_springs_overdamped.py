"""Heavy rotors, light rotors: when inertia stops mattering.

A ring of rotors joined by torsion springs obeys a second-order law
m theta'' + d theta' = tau - k sin coupling. When m/d is small the
velocity relaxes almost instantly and the trajectory collapses onto the
first-order phase dynamics with omega = tau/d and coupling k/d. The two
integrations below differ by less than 0.03 rad everywhere.
"""

import numpy as np

from kurasim import (
    IntegratorConfig,
    SpringRing,
    integrate,
    integrate_second_order,
    rhs_weighted,
    spring_reduce_overdamped,
)

n = 4
stiffness = np.zeros((n, n))
for i in range(n):
    j = (i + 1) % n
    stiffness[i, j] = stiffness[j, i] = 1.0

ring = SpringRing(
    m=np.full(n, 0.01),  # light rotors: m/d = 0.01
    d=np.ones(n),
    tau=np.array([0.2, -0.1, 0.05, -0.15]),
    k=stiffness,
)
theta0 = np.array([0.1, -0.2, 0.3, 0.0])
config = IntegratorConfig(h=0.001, t_end=20.0, sample_every=100)

full = integrate_second_order(theta0, np.zeros(n), ring.tau, ring.m, ring.d, ring.k, config)

omega, coupling = spring_reduce_overdamped(ring)
reduced = integrate(lambda th: rhs_weighted(th, omega, coupling, check=False), theta0, config)

gap = np.max(np.abs(full.thetas - reduced.thetas), axis=1)
print(f"max |second order - first order| over the run: {gap.max():.4f} rad")
for t_probe in (0.0, 1.0, 5.0, 20.0):
    k = int(np.argmin(np.abs(full.times - t_probe)))
    print(f"  t = {full.times[k]:5.1f}: gap = {gap[k]:.5f}")

heavy = SpringRing(m=np.full(n, 2.0), d=np.ones(n), tau=ring.tau, k=stiffness)
full_heavy = integrate_second_order(theta0, np.zeros(n), heavy.tau, heavy.m, heavy.d, heavy.k, config)
gap_heavy = np.max(np.abs(full_heavy.thetas - reduced.thetas))
print(f"\nsame springs with m/d = 2.0: max gap {gap_heavy:.3f} rad, the reduction no longer applies")
