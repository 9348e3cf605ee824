"""Classification and degeneracy of bound-saturating configurations.

When the n-qubit CHSH combination on the GHZ state reaches the quantum
maximum 2*sqrt(2), the per-qubit Bloch vectors of the two product
observables are forced into one of three geometric families (axis-aligned
vs. equatorial). The top eigenvalue of the operator is then degenerate:
flipping an admissible subset of the first n-1 qubits maps the GHZ state
to another maximal eigenstate. This module builds the canonical
configurations, enumerates the flip subsets, cross-checks multiplicities
against a dense eigensolver, and runs the noise experiments showing the
maximal value survives mixing within the degenerate subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .bell import (
    BellConfig,
    MeasurementDirection,
    bell_operator,
    chsh_value,
    equatorial,
    four_qubit_reference_config,
    ghz_state,
    polar,
)
from .qops import (
    IDENTITY2,
    MAX_QUBITS,
    PAULI_X,
    PAULI_Z,
    DensityMatrix,
    StateVector,
    Unitary2,
    eigvals_hermitian,
    expectation,
    kron_all,
    multiplicity_of_max,
    phase_rotation_z,
    rotation,
)

TSIRELSON = 2.0 * math.sqrt(2.0)
TWO_PI = 2.0 * math.pi

# congruence tolerance after reduction to a fundamental domain
MOD_TOL = 1e-9


class NotSaturatingError(ValueError):
    """Configuration does not reach +-2*sqrt(2) on the GHZ state."""


class InconsistentConfigError(ValueError):
    """Saturating configuration outside the three admissible families."""


class ParityError(ValueError):
    """Construction requires an even qubit count."""


class PhaseSumError(ValueError):
    """Azimuth sum of the second product observable is not +-pi/2 mod 2*pi."""


class DegeneracyMismatchError(RuntimeError):
    """Spectral and combinatorial multiplicities disagree (ground truth: spectral)."""


class SaturationFamily(Enum):
    POLAR_EQUATORIAL = "polar_equatorial"  # first family along z, second in-plane
    EQUATORIAL_POLAR = "equatorial_polar"
    FULLY_EQUATORIAL = "fully_equatorial"


class Orientation(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class SaturationClass:
    family: SaturationFamily
    orientation: Orientation


class BasisConstruction(Enum):
    PAIR_FLIPS = "pair_flips"  # even-size flip subsets (axis-family operator)
    PHASE_SUBSETS = "phase_subsets"  # azimuth-sum-selected subsets (planar family)
    SPECTRAL_ONLY = "spectral_only"


@dataclass(frozen=True)
class DegeneracyReport:
    max_eigenvalue: float
    multiplicity: int
    basis: tuple[StateVector, ...]
    construction: BasisConstruction
    subsets: tuple[tuple[int, ...], ...] | None
    config: BellConfig


@dataclass(frozen=True)
class SymmetryTriple:
    """Unitaries (u, v, w) of one symmetry family.

    u re-frames the reduced single-qubit observables, v is repeated on the
    first n-1 qubits, and w = (sigma_x or sigma_z) v marks flip positions.
    """

    u: Unitary2
    v: Unitary2
    w: Unitary2
    case: int
    label: int


@dataclass(frozen=True)
class SymmetryCheck:
    case: int
    label: int
    n: int
    modulus: float
    passed: bool


@dataclass(frozen=True)
class FamilyCheck:
    ghz_value: float
    transformed_value: float
    expectation_preserved: bool
    eigenstate_residual: float
    is_eigenstate: bool
    flip_subset: tuple[int, ...]
    flip_fidelity: float
    matches_flip_state: bool


def _mod_distance(x: float, period: float) -> float:
    """Distance from x to the nearest multiple of period."""
    r = x % period
    return min(r, period - r)


def _direction_family(d: MeasurementDirection, tol: float) -> str:
    if abs(math.sin(d.alpha)) <= tol:
        return "polar"
    if abs(math.cos(d.alpha)) <= tol:
        return "equatorial"
    return "tilted"


def classify_saturating_config(
    cfg: BellConfig, tol: float = 1e-9, direction_tol: float = 1e-6
) -> SaturationClass:
    """Classify a bound-saturating configuration into its geometric family.

    Raises NotSaturatingError when |value| differs from 2*sqrt(2) by more
    than tol, and InconsistentConfigError when the per-qubit directions do
    not fit any admissible family (a bug or a tolerance breach).
    """
    value = chsh_value(cfg)
    if abs(abs(value) - TSIRELSON) > tol:
        raise NotSaturatingError(f"value {value!r} does not saturate +-2*sqrt(2)")

    fam0 = {_direction_family(d, direction_tol) for d in cfg.a0_dirs}
    fam1 = {_direction_family(d, direction_tol) for d in cfg.a1_dirs}
    if fam0 == {"polar"} and fam1 == {"equatorial"}:
        if cfg.n % 2 == 1:
            raise InconsistentConfigError("axis-aligned family cannot occur for odd n")
        prod_cos = math.prod(math.cos(d.alpha) for d in cfg.a0_dirs)
        orientation = Orientation.PLUS if prod_cos > 0 else Orientation.MINUS
        return SaturationClass(SaturationFamily.POLAR_EQUATORIAL, orientation)
    if fam0 == {"equatorial"} and fam1 == {"polar"}:
        if cfg.n % 2 == 1:
            raise InconsistentConfigError("axis-aligned family cannot occur for odd n")
        prod_cos = math.prod(math.cos(d.alpha) for d in cfg.a1_dirs)
        orientation = Orientation.PLUS if prod_cos > 0 else Orientation.MINUS
        return SaturationClass(SaturationFamily.EQUATORIAL_POLAR, orientation)
    if fam0 == {"equatorial"} and fam1 == {"equatorial"}:
        beta0 = sum(d.phi for d in cfg.a0_dirs)
        beta1 = sum(d.phi for d in cfg.a1_dirs)
        handedness = math.sin(beta1 - beta0)
        if abs(handedness) < direction_tol:
            raise InconsistentConfigError("equatorial families are not perpendicular")
        orientation = Orientation.PLUS if handedness > 0 else Orientation.MINUS
        return SaturationClass(SaturationFamily.FULLY_EQUATORIAL, orientation)
    raise InconsistentConfigError(
        f"direction families {sorted(fam0)} / {sorted(fam1)} fit no admissible case"
    )


def canonical_axis_config(n: int) -> BellConfig:
    """Canonical axis-family configuration: sigma_z products vs sigma_x products.

    The last qubit's directions are the unique optimizers, the two bisectors
    at +-pi/4 between the z and x axes. Only defined for even n.
    """
    if n % 2 == 1:
        raise ParityError("axis-family configurations require even n")
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [2, {MAX_QUBITS}], got {n}")
    return BellConfig(
        a0_dirs=tuple(polar() for _ in range(n - 1)),
        a1_dirs=tuple(equatorial(0.0) for _ in range(n - 1)),
        b0_dir=MeasurementDirection(math.pi / 4, 0.0),
        b1_dir=MeasurementDirection(math.pi / 4, math.pi),
    )


def _planar_orientation(phi_primes) -> int:
    """+1 when sum(phi') = pi/2 mod 2*pi, -1 when 3*pi/2; error otherwise."""
    total = math.fsum(phi_primes)
    if _mod_distance(total - math.pi / 2, TWO_PI) <= MOD_TOL:
        return 1
    if _mod_distance(total + math.pi / 2, TWO_PI) <= MOD_TOL:
        return -1
    raise PhaseSumError(
        f"azimuth sum {total!r} of the second observable family is not +-pi/2 mod 2*pi"
    )


def canonical_planar_config(n: int, phi_primes=None) -> BellConfig:
    """Canonical planar configuration: every direction on the Bloch equator.

    The first product observable has all azimuths zero, the second uses
    ``phi_primes`` (default 0,...,0,pi/2), whose sum must be +-pi/2 mod 2*pi.
    The last qubit's two azimuths are the unique optimizers -+pi/4 for the
    +pi/2 orientation (mirrored for -pi/2).
    """
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [2, {MAX_QUBITS}], got {n}")
    if phi_primes is None:
        phi_primes = [0.0] * (n - 2) + [math.pi / 2]
    phi_primes = [float(p) for p in phi_primes]
    if len(phi_primes) != n - 1:
        raise ValueError(f"phi_primes must have length {n - 1}")
    sign = _planar_orientation(phi_primes)
    return BellConfig(
        a0_dirs=tuple(equatorial(0.0) for _ in range(n - 1)),
        a1_dirs=tuple(equatorial(p) for p in phi_primes),
        b0_dir=equatorial(-sign * math.pi / 4),
        b1_dir=equatorial(sign * math.pi / 4),
    )


def canonical_config(case: int, n: int, phi_primes=None) -> BellConfig:
    """Dispatch on the two canonical families: case 1 (axis) or case 5 (planar)."""
    if case == 1:
        if phi_primes is not None:
            raise ValueError("case 1 takes no phi_primes")
        return canonical_axis_config(n)
    if case == 5:
        return canonical_planar_config(n, phi_primes)
    raise ValueError(f"case must be 1 or 5, got {case}")


def _flip_state(n: int, subset) -> StateVector:
    """State obtained from the GHZ state by flipping the qubits in ``subset``."""
    idx = 0
    for k in subset:
        if not 1 <= k <= n - 1:
            raise ValueError(f"flip position {k} outside 1..{n - 1}")
        idx |= 1 << (n - k)  # qubit k is bit n-k (qubit 1 most significant)
    amp = np.zeros(2**n, dtype=complex)
    amp[idx] = 1.0 / math.sqrt(2.0)
    amp[(2**n - 1) ^ idx] = 1.0 / math.sqrt(2.0)
    return StateVector(amp)


def _spectral_report(
    cfg: BellConfig, subsets, construction: BasisConstruction
) -> DegeneracyReport:
    """Assemble a report: flip basis + residual check + spectral cross-check."""
    n = cfg.n
    op = bell_operator(cfg)
    basis = tuple(_flip_state(n, k) for k in subsets)
    stacked = np.stack([s.amplitudes for s in basis], axis=1)
    residuals = np.linalg.norm(op.entries @ stacked - TSIRELSON * stacked, axis=0)
    worst = float(residuals.max())
    if worst >= 1e-8:
        raise DegeneracyMismatchError(
            f"flip state residual {worst:.3e} >= 1e-8: constructed basis is wrong"
        )
    evals = eigvals_hermitian(op)
    spectral = multiplicity_of_max(evals)
    if spectral != len(basis):
        raise DegeneracyMismatchError(
            f"spectral multiplicity {spectral} != enumerated basis size {len(basis)}"
        )
    return DegeneracyReport(
        max_eigenvalue=float(evals[-1]),
        multiplicity=spectral,
        basis=basis,
        construction=construction,
        subsets=tuple(tuple(k) for k in subsets),
        config=cfg,
    )


def degenerate_basis_axis(n: int) -> DegeneracyReport:
    """Degenerate top eigenspace of the canonical axis-family operator.

    The basis is {flips on K applied to the GHZ state : K within the first
    n-1 qubits, |K| even}, of size 2^(n-2), verified against the dense
    spectrum.
    """
    if n % 2 == 1:
        raise ParityError("axis-family degeneracy requires even n")
    if not 4 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [4, {MAX_QUBITS}], got {n}")
    subsets = sorted(
        combo for size in range(0, n, 2) for combo in combinations(range(1, n), size)
    )
    return _spectral_report(canonical_axis_config(n), subsets, BasisConstruction.PAIR_FLIPS)


def planar_subsets(phi_primes) -> list[tuple[int, ...]]:
    """Flip subsets K with sum_{k in K} phi'_k = 0 mod pi, in lexicographic order."""
    m = len(phi_primes)
    found = []
    for size in range(0, m + 1):
        for combo in combinations(range(1, m + 1), size):
            total = math.fsum(phi_primes[k - 1] for k in combo)
            if _mod_distance(total, math.pi) <= MOD_TOL:
                found.append(combo)
    return sorted(found)


def degenerate_basis_planar(n: int, phi_primes=None) -> DegeneracyReport:
    """Degenerate top eigenspace of a canonical planar-family operator.

    Flip subsets are selected by the azimuth-sum rule; the count never
    exceeds 2^(n-2) because a subset and its complement cannot both qualify.
    """
    cfg = canonical_planar_config(n, phi_primes)
    if phi_primes is None:
        phi_primes = [0.0] * (n - 2) + [math.pi / 2]
    subsets = planar_subsets([float(p) for p in phi_primes])
    return _spectral_report(cfg, subsets, BasisConstruction.PHASE_SUBSETS)


def complement_exclusion_holds(phi_primes) -> bool:
    """No qualifying flip subset may have a qualifying complement."""
    qualifying = set(planar_subsets(phi_primes))
    full = set(range(1, len(phi_primes) + 1))
    return not any(tuple(sorted(full - set(k))) in qualifying for k in qualifying)


# Unitary families for the axis case. exp(i*sigma_y*pi/4) rotates observables
# (X -> dagger(u) X u) taking z to x; exp(-i*sigma_x*pi/4) takes z to y.
_U3 = rotation([0.0, 1.0, 0.0], -math.pi / 2)  # exp(i sigma_y pi / 4)
_U5 = rotation([1.0, 0.0, 0.0], math.pi / 2)  # exp(-i sigma_x pi / 4)


def symmetry_triple(case: int, label: int, n: int | None = None) -> SymmetryTriple:
    """The (u, v, w) unitaries of one symmetry family.

    Axis case (1) has labels 1..6; labels 5 and 6 depend on whether n/2 is
    even, so n is required there. Planar case (5) has labels 5 and 6 only.
    """
    sx = Unitary2(PAULI_X)
    sz = Unitary2(PAULI_Z)
    ident = Unitary2(IDENTITY2)
    if case == 1:
        if label not in (1, 2, 3, 4, 5, 6):
            raise ValueError(f"axis-case label must be 1..6, got {label}")
        u_map = {1: ident, 2: sx, 3: _U3, 4: sz @ _U3, 5: _U5, 6: sx @ _U5}
        u = u_map[label]
        if label in (1, 2, 3, 4):
            v = u
        else:
            if n is None:
                raise ValueError("labels 5 and 6 of the axis case require n")
            if n % 2 == 1:
                raise ParityError("axis-case triples require even n")
            # the swap with n/2 parity keeps the repeated factor compatible
            # with the reduced single-qubit frame change (checked spectrally)
            half_even = (n // 2) % 2 == 0
            if label == 5:
                v = u_map[6] if half_even else u_map[5]
            else:
                v = u_map[5] if half_even else u_map[6]
        w = (sz if label in (3, 4) else sx) @ v
        return SymmetryTriple(u=u, v=v, w=w, case=1, label=label)
    if case == 5:
        if label not in (5, 6):
            raise ValueError(f"planar-case label must be 5 or 6, got {label}")
        u = ident if label == 5 else sx
        return SymmetryTriple(u=u, v=u, w=sx @ u, case=5, label=label)
    raise ValueError(f"case must be 1 or 5, got {case}")


def ghz_symmetry_overlap(case: int, label: int, n: int, tol: float = 1e-12) -> SymmetryCheck:
    """Overlap modulus |<G| v^(x(n-1)) x conj(u) |G>| for one symmetry family.

    A modulus of 1 certifies that the family fixes the GHZ state up to a
    global phase. The check reports the computed modulus; it never raises on
    a failed comparison.
    """
    triple = symmetry_triple(case, label, n)
    op = kron_all([triple.v.entries] * (n - 1) + [triple.u.entries.conj()])
    g = ghz_state(n).amplitudes
    modulus = float(abs(np.vdot(g, op @ g)))
    return SymmetryCheck(case=case, label=label, n=n, modulus=modulus, passed=abs(modulus - 1.0) <= tol)


def symmetry_family_check(
    case: int,
    label: int,
    n: int,
    deltas,
    w_positions,
    phi_primes=None,
) -> FamilyCheck:
    """Check one member of the local-unitary family generating flip states.

    Builds u_j = (v or w) exp(i sigma_z delta_j / 2) on the first n-1 qubits
    (w at ``w_positions``) and conj(u) with u = u_label exp(i sigma_z delta/2),
    delta = sum(deltas), on the last. Verifies that conjugation preserves the
    GHZ expectation, that the transformed GHZ state is a maximal eigenstate,
    and whether it coincides with the predicted flip state (up to phase).

    The axis case refuses odd w-counts; the planar case refuses w-position
    sets whose azimuth sum is not 0 mod pi.
    """
    deltas = [float(d) for d in deltas]
    if len(deltas) != n - 1:
        raise ValueError(f"deltas must have length {n - 1}")
    w_set = tuple(sorted(set(int(k) for k in w_positions)))
    if any(not 1 <= k <= n - 1 for k in w_set):
        raise ValueError(f"w positions must lie in 1..{n - 1}")

    if case == 1:
        if len(w_set) % 2 == 1:
            raise ValueError(
                "axis case requires an even number of w factors; an odd count breaks "
                "the product-to-single-qubit compatibility"
            )
        cfg = canonical_axis_config(n)
    elif case == 5:
        cfg = canonical_planar_config(n, phi_primes)
        if phi_primes is None:
            phi_primes = [0.0] * (n - 2) + [math.pi / 2]
        w_sum = math.fsum(float(phi_primes[k - 1]) for k in w_set)
        if _mod_distance(w_sum, math.pi) > MOD_TOL:
            raise PhaseSumError(
                f"azimuth sum {w_sum!r} over w positions is not 0 mod pi"
            )
    else:
        raise ValueError(f"case must be 1 or 5, got {case}")

    triple = symmetry_triple(case, label, n)
    delta = math.fsum(deltas)
    factors = []
    for j in range(1, n):
        base = triple.w if j in w_set else triple.v
        factors.append((base @ phase_rotation_z(deltas[j - 1])).entries)
    u_last = (triple.u @ phase_rotation_z(delta)).entries.conj()
    big = kron_all(factors + [u_last])

    op = bell_operator(cfg)
    g = ghz_state(n)
    state = big @ g.amplitudes
    ghz_value = expectation(g, op)
    transformed_value = float(np.vdot(state, op.entries @ state).real)
    residual = float(np.linalg.norm(op.entries @ state - TSIRELSON * state))
    flip = _flip_state(n, w_set)
    fidelity = float(abs(np.vdot(flip.amplitudes, state)))
    return FamilyCheck(
        ghz_value=ghz_value,
        transformed_value=transformed_value,
        expectation_preserved=abs(transformed_value - ghz_value) <= 1e-10,
        eigenstate_residual=residual,
        is_eigenstate=residual < 1e-8,
        flip_subset=w_set,
        flip_fidelity=fidelity,
        matches_flip_state=fidelity >= 1.0 - 1e-10,
    )


def _reference_four_qubit_states() -> tuple[StateVector, ...]:
    """The four known degenerate states of the reference configuration."""
    rt2 = 1.0 / math.sqrt(2.0)
    phase = np.exp(1j * math.pi / 4)

    def state(entries) -> StateVector:
        amp = np.zeros(16, dtype=complex)
        for idx, val in entries:
            amp[idx] = val
        return StateVector(amp)

    return (
        state([(0b0000, rt2), (0b1111, rt2)]),
        state([(0b1100, rt2), (0b0011, rt2)]),
        state([(0b1010, rt2 / phase), (0b0101, rt2 * phase)]),
        state([(0b0110, rt2 / phase), (0b1001, rt2 * phase)]),
    )


@dataclass(frozen=True)
class FourQubitExample:
    report: DegeneracyReport
    fidelities: tuple[float, ...]
    i_value: float


def four_qubit_example() -> FourQubitExample:
    """Degenerate subspace of the reference four-qubit configuration.

    The configuration is rotated about z on its last two qubits into
    canonical planar form (azimuths phi' = (pi/2, pi/2, pi/2)), the
    qualifying flip subsets are enumerated there, and the resulting states
    are rotated back. Each returned state is a maximal eigenstate of the
    original operator and matches the known closed-form state up to a
    global phase.
    """
    cfg = four_qubit_reference_config()
    op = bell_operator(cfg)
    g = ghz_state(4)
    i_value = expectation(g, op)

    # undo the third/fourth qubit azimuth offsets: +pi/4 and -pi/4
    tau3 = phase_rotation_z(math.pi / 4)
    tau4 = phase_rotation_z(-math.pi / 4)
    back = kron_all([IDENTITY2, IDENTITY2, tau3.entries, tau4.entries])

    rotated_phi_primes = [d.phi + inc for d, inc in zip(cfg.a1_dirs, (0.0, 0.0, math.pi / 4))]
    subsets = planar_subsets(rotated_phi_primes)

    basis = []
    for k in subsets:
        flipped = _flip_state(4, k)
        basis.append(StateVector(back @ flipped.amplitudes))

    stacked = np.stack([s.amplitudes for s in basis], axis=1)
    residuals = np.linalg.norm(op.entries @ stacked - TSIRELSON * stacked, axis=0)
    if residuals.max() >= 1e-8:
        raise DegeneracyMismatchError(
            f"mapped-back state residual {residuals.max():.3e} >= 1e-8"
        )
    evals = eigvals_hermitian(op)
    spectral = multiplicity_of_max(evals)
    if spectral != len(basis):
        raise DegeneracyMismatchError(
            f"spectral multiplicity {spectral} != enumerated basis size {len(basis)}"
        )
    report = DegeneracyReport(
        max_eigenvalue=float(evals[-1]),
        multiplicity=spectral,
        basis=tuple(basis),
        construction=BasisConstruction.PHASE_SUBSETS,
        subsets=tuple(subsets),
        config=cfg,
    )
    fidelities = tuple(
        float(abs(np.vdot(ref.amplitudes, got.amplitudes)))
        for ref, got in zip(_reference_four_qubit_states(), basis)
    )
    return FourQubitExample(report=report, fidelities=fidelities, i_value=i_value)


def robustness_experiment(
    report: DegeneracyReport,
    weights,
    superpose: bool = False,
    seed: int = 0,
) -> float:
    """Mix or superpose the degenerate basis and re-evaluate the operator.

    With superpose=False the state is the mixture sum_i p_i |psi_i><psi_i|;
    otherwise it is the unit superposition sum_i sqrt(p_i) e^(i theta_i)
    |psi_i> with seeded uniform phases. Either way the value must equal the
    maximal eigenvalue within 1e-10 (raises DegeneracyMismatchError if not).
    """
    p = np.asarray(list(weights), dtype=float)
    if p.ndim != 1 or p.size != report.multiplicity:
        raise ValueError(f"weights must have length {report.multiplicity}")
    if np.any(p < 0.0):
        raise ValueError("weights must be nonnegative")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"weights sum to {p.sum()!r}, expected 1")
    op = bell_operator(report.config)
    stacked = np.stack([s.amplitudes for s in report.basis], axis=1)
    if superpose:
        rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
        phases = np.exp(1j * rng.uniform(0.0, TWO_PI, size=p.size))
        psi = stacked @ (np.sqrt(p) * phases)
        psi = psi / np.linalg.norm(psi)
        value = expectation(StateVector(psi), op)
    else:
        rho = (stacked * p) @ stacked.conj().T
        value = expectation(DensityMatrix(rho), op)
    if abs(value - report.max_eigenvalue) > 1e-10:
        raise DegeneracyMismatchError(
            f"value {value!r} drifted from the maximal eigenvalue {report.max_eigenvalue!r}"
        )
    return value
