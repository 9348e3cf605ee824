"""Noise robustness of the maximal violation.

Mixing the GHZ state with other states of the degenerate subspace -- or
superposing them coherently with arbitrary phases -- leaves the operator's
expectation pinned at 2*sqrt(2). Mixing with a state outside the subspace
destroys the maximal violation, which is what makes the degeneracy the
exact budget for harmless noise.
"""

import numpy as np

from ghzbell import (
    TSIRELSON,
    DensityMatrix,
    bell_operator,
    degenerate_basis_axis,
    expectation,
    robustness_experiment,
)

report = degenerate_basis_axis(6)
m = report.multiplicity
print(f"axis-family operator on 6 qubits: degeneracy {m}")

print("\nmixtures inside the degenerate subspace:")
rng = np.random.default_rng(123)
for trial in range(3):
    weights = rng.uniform(size=m)
    weights /= weights.sum()
    value = robustness_experiment(report, weights)
    print(f"  random mixture  #{trial}: value = {value:.12f}")
for trial in range(3):
    weights = rng.uniform(size=m)
    weights /= weights.sum()
    value = robustness_experiment(report, weights, superpose=True, seed=trial)
    print(f"  random superpos #{trial}: value = {value:.12f}")
print(f"  reference 2*sqrt(2)  : {TSIRELSON:.12f}")

print("\nmixing with a state outside the subspace (|000001> branch):")
op = bell_operator(report.config)
outside = np.zeros(2**6, dtype=complex)
outside[1] = 1.0
ghz_proj = np.outer(report.basis[0].amplitudes, report.basis[0].amplitudes.conj())
out_proj = np.outer(outside, outside.conj())
for p in (0.0, 0.1, 0.3):
    rho = DensityMatrix((1 - p) * ghz_proj + p * out_proj)
    print(f"  p_outside = {p:.1f}: value = {expectation(rho, op):.6f}")
