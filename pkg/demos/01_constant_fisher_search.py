"""Amplitude amplification as a constant-Fisher path.

Runs the search on a few problem sizes, checks that the statevector
simulation, the two-amplitude recursion, and the closed-form path all tell
the same story, and estimates the Fisher information function along the
way: it sits at 4, independent of N and of where you look.

Run:  python demos/01_constant_fisher_search.py
"""

import numpy as np

from qgeodesic import (
    GroverInstance,
    RecursionState,
    analytic_trajectory,
    fisher_discrete,
    input_information,
    optimal_iterations,
    phi_of_step,
    recursion_step,
    run_grover,
)

print("=== search trajectories ===")
for n in (4, 64, 1024):
    inst = GroverInstance(n, frozenset({0}))
    steps = optimal_iterations(inst)
    path = run_grover(inst, steps)
    state = RecursionState(1 / np.sqrt(n), 1 / np.sqrt(n))
    for _ in range(steps):
        state = recursion_step(state, n)
    print(f"N={n:5d}  theta={inst.theta:.5f}  optimal steps={steps:4d}  "
          f"final p_marked={path.probs[-1, 0]:.6f}  recursion k^2={state.k**2:.6f}")

print()
print("=== the discrete path rides a continuous one ===")
inst = GroverInstance(64, frozenset({0}))
path = run_grover(inst, optimal_iterations(inst))
for j in range(path.n_samples):
    phi = phi_of_step(inst, j)
    print(f"step {j}:  phi={phi:.4f}  p_marked={path.probs[j, 0]:.6f}  "
          f"sin^2(phi)={np.sin(phi) ** 2:.6f}")

print()
print("=== Fisher information along the path ===")
for n in (4, 64, 1024):
    inst = GroverInstance(n, frozenset({0}))
    phis = np.linspace(inst.theta, np.pi / 2, 400)
    samples = fisher_discrete(analytic_trajectory(inst, phis))
    values = np.array([s.fisher for s in samples[1:-1]])
    print(f"N={n:5d}  fisher min={values.min():.6f}  max={values.max():.6f}  "
          f"(target: 4)")

print()
print("=== the information budget is fixed at the start ===")
inst = GroverInstance(256, frozenset({0}))
phis = np.linspace(inst.theta, np.pi / 2, 500)
path = analytic_trajectory(inst, phis)
for phi0 in (inst.theta, 0.5, 1.0, 1.5):
    print(f"input information at phi0={phi0:.4f}: "
          f"{input_information(path, phi0):.6f}")
