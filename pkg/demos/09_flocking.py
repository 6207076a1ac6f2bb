"""Steering by consensus: unit-speed particles aligning (or refusing to).

Each particle moves at unit speed in the direction of its heading, and
headings follow the same sine-coupled law as oscillator phases. With
positive gain the flock aligns and travels together; with negative gain
the headings spread out and the group mills in place. With no coupling
at all, a lone turner traces an exact circle of radius 1/|omega0|.
"""

import numpy as np

from kurasim import ParticleSwarm, heading_dispersion_run, make_rng, uniform, vicsek_run

all_to_all = lambda n: np.ones((n, n)) - np.eye(n)

# a single particle with constant turn rate: circle of radius 1/omega0
omega0 = 2.0
lone = ParticleSwarm(positions=np.zeros((1, 2)), headings=np.zeros(1), omega0=omega0, K=0.0, A=np.zeros((1, 1)))
orbit = vicsek_run(lone, t_end=2 * np.pi / omega0, h=0.001, sample_every=100)
center = np.array([0.0, 1.0 / omega0])
radii = np.linalg.norm(orbit.positions[:, 0, :] - center, axis=1)
print(f"turn rate {omega0}: radius = {radii.mean():.6f} (expected {1/omega0:.6f}), spread {np.ptp(radii):.1e}")

# positive gain: two very different headings fold together
pair = ParticleSwarm(
    positions=np.zeros((2, 2)),
    headings=np.array([0.0, np.pi - 0.1]),
    omega0=0.0,
    K=1.0,
    A=all_to_all(2),
)
aligned = vicsek_run(pair, t_end=30.0, h=0.01, sample_every=100)
print(f"\nK = +1: heading r went {aligned.heading_r[0]:.3f} -> {aligned.heading_r[-1]:.6f}")

# negative gain: a clustered flock disperses
rng = make_rng(5)
flock = ParticleSwarm(
    positions=uniform(rng, -1.0, 1.0, 12).reshape(6, 2),
    headings=uniform(rng, -0.2, 0.2, 6),
    omega0=0.0,
    K=-1.0,
    A=all_to_all(6),
)
trace, final_r = heading_dispersion_run(flock, t_end=20.0)
print(f"K = -1: heading r went {trace.heading_r[0]:.3f} -> {final_r:.6f} (headings repel)")
