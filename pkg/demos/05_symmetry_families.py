"""Local-unitary families behind the degeneracy, and an honest caveat.

The degenerate subspace is generated by per-qubit unitaries u_j whose
conjugation leaves the operator's GHZ expectation unchanged. For the
bit-flip families (labels 1, 2 of the axis case and both planar labels)
the repeated factor is a monomial matrix and the construction also fixes
the GHZ state itself up to phase. The Hadamard-type families (axis labels
3..6) do NOT fix the GHZ state -- no tensor power of a non-monomial 2x2
unitary can, for n > 2; their overlap modulus is exactly 2^(1-n/2) -- yet
their transformed states still land inside the degenerate subspace, which
is all the degeneracy count needs.
"""

from ghzbell import ghz_symmetry_overlap, symmetry_family_check

print("overlap modulus |<G| v^(x(n-1)) x conj(u) |G>| per family")
print(f"{'case':>5} {'label':>6} " + " ".join(f"{f'n={n}':>8}" for n in (4, 6, 8)))
for label in (1, 2, 3, 4, 5, 6):
    row = [f"{ghz_symmetry_overlap(1, label, n).modulus:8.4f}" for n in (4, 6, 8)]
    print(f"{'axis':>5} {label:>6} " + " ".join(row))
for label in (5, 6):
    row = [f"{ghz_symmetry_overlap(5, label, n).modulus:8.4f}" for n in (4, 6, 8)]
    print(f"{'plan':>5} {label:>6} " + " ".join(row))

print("\nfamily members still map the GHZ state into the degenerate subspace:")
for label in (1, 2, 3, 4, 5, 6):
    check = symmetry_family_check(1, label, 4, [0.2, -0.4, 0.9], [1, 3])
    print(
        f"  axis label {label}: eigenstate residual {check.eigenstate_residual:.2e}, "
        f"equals bare flip state: {check.matches_flip_state}"
    )
print("\n(labels 1 and 2 reproduce the flip state exactly; the rotated labels")
print("produce superpositions within the same degenerate subspace)")
