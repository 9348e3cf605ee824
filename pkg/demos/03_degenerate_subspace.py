"""Degeneracy of the maximal eigenvalue: counting and cross-checking.

For the canonical bound-saturating configurations the top eigenvalue
2*sqrt(2) is 2^(n-2)-fold degenerate, with an explicit basis of
qubit-flip states. The planar family admits smaller degeneracies when the
azimuths are incommensurate. Everything is cross-checked against a dense
eigensolver. The script ends with the four-qubit example whose degenerate
states have closed forms.
"""

import math

import numpy as np

from ghzbell import (
    classify_saturating_config,
    degenerate_basis_axis,
    degenerate_basis_planar,
    four_qubit_example,
)

print("axis-family operators (sigma_z products vs sigma_x products)")
print(f"{'n':>4} {'spectral':>9} {'2^(n-2)':>8}")
for n in (4, 6, 8, 10):
    report = degenerate_basis_axis(n)
    print(f"{n:>4} {report.multiplicity:>9} {2 ** (n - 2):>8}")

print("\nplanar-family operators, various azimuth lists (n = 4)")
for phis in ([0.0, 0.0, math.pi / 2], [math.pi / 2] * 3, [0.3, 0.7, math.pi / 2 - 1.0]):
    report = degenerate_basis_planar(4, phis)
    cls = classify_saturating_config(report.config)
    print(
        f"  phi' = {np.round(phis, 4).tolist()}: multiplicity {report.multiplicity}, "
        f"flip subsets {[list(k) for k in report.subsets]} ({cls.family.value})"
    )

print("\nfour-qubit reference example: degenerate states of the original operator")
example = four_qubit_example()
print(f"  value on GHZ state: {example.i_value:.12f}; multiplicity {example.report.multiplicity}")
labels = ["|0000>+|1111>", "|1100>+|0011>", "phase(|1010>,|0101>)", "phase(|0110>,|1001>)"]
for label, subset, fid in zip(labels, example.report.subsets, example.fidelities):
    print(f"  flips {str(list(subset)):<8} -> {label:<22} overlap with closed form {fid:.12f}")
