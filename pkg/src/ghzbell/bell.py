"""Generalized CHSH functions on GHZ states and their two-qubit reduction.

An n-qubit measurement configuration consists of two product observables on
the first n-1 qubits (one per input of the first party) and two single-qubit
observables on the last qubit. The resulting four-correlator combination has
a closed-form expectation on the GHZ state, and every configuration collapses
to an ordinary two-qubit CHSH configuration on the Bell state |psi+> whose
value bounds the n-qubit one whenever the latter exceeds the classical limit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .qops import (
    MAX_QUBITS,
    CapacityError,
    HermitianOperator,
    StateVector,
    kron_all,
    pauli_observable,
)

TWO_PI = 2.0 * math.pi

# squared-norm threshold below which a product observable has no component in
# the span of |0...0>, |1...1> and the single-qubit reduction is undefined
DEGENERATE_TOL = 1e-9


class DegenerateDirectionError(ValueError):
    """The product observable reduces to the zero vector (excluded set)."""


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch direction (alpha, phi) of a +-1 observable n.sigma.

    alpha is normalized into [0, pi] and phi into [0, 2*pi) on construction;
    (alpha, phi) and (-alpha, phi + pi) describe the same direction.
    """

    alpha: float
    phi: float

    def __post_init__(self):
        a = float(self.alpha) % TWO_PI
        p = float(self.phi)
        if a > math.pi:
            a = TWO_PI - a
            p += math.pi
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "phi", p % TWO_PI)

    @property
    def bloch(self) -> tuple[float, float, float]:
        sa, ca = math.sin(self.alpha), math.cos(self.alpha)
        return (sa * math.cos(self.phi), sa * math.sin(self.phi), ca)


def equatorial(phi: float) -> MeasurementDirection:
    return MeasurementDirection(math.pi / 2, phi)


def polar(up: bool = True) -> MeasurementDirection:
    return MeasurementDirection(0.0 if up else math.pi, 0.0)


@dataclass(frozen=True)
class BellConfig:
    """Full n-qubit measurement configuration.

    a0_dirs/a1_dirs hold the n-1 per-qubit directions of the two product
    observables; b0_dir/b1_dir are the last qubit's two directions.
    """

    a0_dirs: tuple[MeasurementDirection, ...]
    a1_dirs: tuple[MeasurementDirection, ...]
    b0_dir: MeasurementDirection
    b1_dir: MeasurementDirection

    def __post_init__(self):
        object.__setattr__(self, "a0_dirs", tuple(self.a0_dirs))
        object.__setattr__(self, "a1_dirs", tuple(self.a1_dirs))
        if len(self.a0_dirs) != len(self.a1_dirs):
            raise ValueError("a0_dirs and a1_dirs must have equal length")
        if not self.a0_dirs:
            raise ValueError("need at least one direction per product observable")
        if self.n > MAX_QUBITS:
            raise CapacityError(f"configuration has {self.n} qubits; cap is {MAX_QUBITS}")

    @property
    def n(self) -> int:
        return len(self.a0_dirs) + 1


@dataclass(frozen=True)
class TwoQubitConfig:
    """Two-qubit CHSH configuration given by four unit Bloch vectors."""

    a0: tuple[float, float, float]
    a1: tuple[float, float, float]
    b0: tuple[float, float, float]
    b1: tuple[float, float, float]

    def __post_init__(self):
        for name in ("a0", "a1", "b0", "b1"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} is not unit length within 1e-12")
            object.__setattr__(self, name, tuple(float(x) for x in v))


@dataclass(frozen=True)
class ReductionReport:
    """Result of collapsing an n-qubit configuration to two qubits."""

    two_qubit: TwoQubitConfig
    eps: float
    eps_prime: float
    i_n: float
    i_2: float


def ghz_state(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits (|psi+> for n=2, |+> for n=1)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
    amp = np.zeros(2**n, dtype=complex)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(amp)


def ghz_product_expectation(dirs) -> float:
    """Closed-form GHZ expectation of the product observable over ``dirs``.

    For directions (alpha_j, phi_j), j = 1..n:
        (1/2)[1 + (-1)^n] prod_j cos(alpha_j)
        + cos(sum_j phi_j) prod_j sin(alpha_j)
    """
    ds = list(dirs)
    n = len(ds)
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"need between 1 and {MAX_QUBITS} directions, got {n}")
    prod_cos = math.prod(math.cos(d.alpha) for d in ds)
    prod_sin = math.prod(math.sin(d.alpha) for d in ds)
    phi_sum = sum(d.phi for d in ds)
    parity = 0.5 * (1.0 + (-1.0) ** n)
    return parity * prod_cos + math.cos(phi_sum) * prod_sin


def chsh_value(cfg: BellConfig) -> float:
    """Closed-form value of the four-correlator combination on the GHZ state."""
    t00 = ghz_product_expectation(cfg.a0_dirs + (cfg.b0_dir,))
    t01 = ghz_product_expectation(cfg.a0_dirs + (cfg.b1_dir,))
    t10 = ghz_product_expectation(cfg.a1_dirs + (cfg.b0_dir,))
    t11 = ghz_product_expectation(cfg.a1_dirs + (cfg.b1_dir,))
    return t00 + t01 + t10 - t11


def bell_operator(cfg: BellConfig) -> HermitianOperator:
    """Dense 2^n x 2^n operator A0 x (B0 + B1) + A1 x (B0 - B1)."""
    a0 = kron_all([pauli_observable(d).entries for d in cfg.a0_dirs])
    a1 = kron_all([pauli_observable(d).entries for d in cfg.a1_dirs])
    b0 = pauli_observable(cfg.b0_dir).entries
    b1 = pauli_observable(cfg.b1_dir).entries
    return HermitianOperator(np.kron(a0, b0 + b1) + np.kron(a1, b0 - b1))


def product_direction(dirs) -> tuple[np.ndarray, float]:
    """Collapse a product observable to a unit Bloch vector and its normalizer.

    Returns (n, eps) with
        n = eps * (prod_sin * cos(beta), prod_sin * sin(beta), prod_cos),
        beta = sum_j phi_j,
        eps  = 1 / sqrt(prod_cos^2 + prod_sin^2) >= 1.

    Raises DegenerateDirectionError when prod_cos^2 + prod_sin^2 <= 1e-9:
    such configurations have no GHZ-subspace component and cannot violate
    the classical bound.
    """
    ds = list(dirs)
    prod_cos = math.prod(math.cos(d.alpha) for d in ds)
    prod_sin = math.prod(math.sin(d.alpha) for d in ds)
    beta = sum(d.phi for d in ds)
    norm_sq = prod_cos * prod_cos + prod_sin * prod_sin
    if norm_sq <= DEGENERATE_TOL:
        raise DegenerateDirectionError(
            f"product observable collapses to norm^2 {norm_sq:.3e} <= {DEGENERATE_TOL}"
        )
    eps = 1.0 / math.sqrt(norm_sq)
    vec = np.array(
        [
            eps * prod_sin * math.cos(beta),
            eps * prod_sin * math.sin(beta),
            eps * prod_cos,
        ]
    )
    return vec, eps


def equatorial_projection(d: MeasurementDirection) -> np.ndarray:
    """Project a direction onto the Bloch equator: (cos phi, sin phi, 0)."""
    return np.array([math.cos(d.phi), math.sin(d.phi), 0.0])


def psi_plus_correlation(u, v) -> float:
    """<psi+| (u.sigma) x (v.sigma) |psi+> = ux*vx - uy*vy + uz*vz."""
    return float(u[0] * v[0] - u[1] * v[1] + u[2] * v[2])


def two_qubit_chsh_value(cfg: TwoQubitConfig) -> float:
    """CHSH value of a two-qubit configuration on the Bell state |psi+>."""
    return (
        psi_plus_correlation(cfg.a0, cfg.b0)
        + psi_plus_correlation(cfg.a0, cfg.b1)
        + psi_plus_correlation(cfg.a1, cfg.b0)
        - psi_plus_correlation(cfg.a1, cfg.b1)
    )


def reduce_to_two_qubit(cfg: BellConfig) -> ReductionReport:
    """Collapse an n-qubit configuration onto the Bell state |psi+>.

    The two product observables map to unit Bloch vectors with normalizers
    eps, eps'. For even n the last qubit's directions carry over unchanged;
    for odd n they are projected onto the equator.
    """
    a0_vec, eps = product_direction(cfg.a0_dirs)
    a1_vec, eps_prime = product_direction(cfg.a1_dirs)
    if cfg.n % 2 == 0:
        b0_vec = np.asarray(cfg.b0_dir.bloch)
        b1_vec = np.asarray(cfg.b1_dir.bloch)
    else:
        b0_vec = equatorial_projection(cfg.b0_dir)
        b1_vec = equatorial_projection(cfg.b1_dir)
    two = TwoQubitConfig(tuple(a0_vec), tuple(a1_vec), tuple(b0_vec), tuple(b1_vec))
    return ReductionReport(
        two_qubit=two,
        eps=eps,
        eps_prime=eps_prime,
        i_n=chsh_value(cfg),
        i_2=two_qubit_chsh_value(two),
    )


def random_direction(rng: np.random.Generator) -> MeasurementDirection:
    """Direction uniform on the sphere: cos(alpha) uniform, phi uniform."""
    alpha = math.acos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(0.0, TWO_PI)
    return MeasurementDirection(alpha, phi)


def random_config(n: int, rng: np.random.Generator) -> BellConfig:
    if n < 2:
        raise ValueError("configurations need n >= 2")
    return BellConfig(
        a0_dirs=tuple(random_direction(rng) for _ in range(n - 1)),
        a1_dirs=tuple(random_direction(rng) for _ in range(n - 1)),
        b0_dir=random_direction(rng),
        b1_dir=random_direction(rng),
    )


@dataclass(frozen=True)
class ScanResult:
    """Per-qubit-count outcome of a reduction-dominance scan."""

    n: int
    samples: int
    positive_violations: int
    negative_violations: int
    skipped_degenerate: int
    counterexamples: int
    max_gap_violation: float | None

    @property
    def violations(self) -> int:
        return self.positive_violations + self.negative_violations


@dataclass(frozen=True)
class ScanSummary:
    seed: int
    samples_per_n: int
    results: tuple[ScanResult, ...] = field(default_factory=tuple)

    @property
    def total_counterexamples(self) -> int:
        return sum(r.counterexamples for r in self.results)

    @property
    def max_gap_violation(self) -> float | None:
        gaps = [r.max_gap_violation for r in self.results if r.max_gap_violation is not None]
        return max(gaps) if gaps else None


def _scan_block(n, alpha0, phi0, alpha1, phi1, alpha_b, phi_b, alpha_bp, phi_bp):
    """Vectorized closed-form i_n and i_2 for a block of sampled angle sets."""
    parity = 0.5 * (1.0 + (-1.0) ** n)
    pc0 = np.prod(np.cos(alpha0), axis=1)
    ps0 = np.prod(np.sin(alpha0), axis=1)
    b0 = np.sum(phi0, axis=1)
    pc1 = np.prod(np.cos(alpha1), axis=1)
    ps1 = np.prod(np.sin(alpha1), axis=1)
    b1 = np.sum(phi1, axis=1)

    def term(pc, ps, beta, ab, pb):
        return parity * pc * np.cos(ab) + np.cos(beta + pb) * ps * np.sin(ab)

    i_n = (
        term(pc0, ps0, b0, alpha_b, phi_b)
        + term(pc0, ps0, b0, alpha_bp, phi_bp)
        + term(pc1, ps1, b1, alpha_b, phi_b)
        - term(pc1, ps1, b1, alpha_bp, phi_bp)
    )

    norm0 = pc0 * pc0 + ps0 * ps0
    norm1 = pc1 * pc1 + ps1 * ps1
    degenerate = (norm0 <= DEGENERATE_TOL) | (norm1 <= DEGENERATE_TOL)
    eps0 = 1.0 / np.sqrt(np.where(degenerate, 1.0, norm0))
    eps1 = 1.0 / np.sqrt(np.where(degenerate, 1.0, norm1))

    a0_vec = np.stack([eps0 * ps0 * np.cos(b0), eps0 * ps0 * np.sin(b0), eps0 * pc0], axis=1)
    a1_vec = np.stack([eps1 * ps1 * np.cos(b1), eps1 * ps1 * np.sin(b1), eps1 * pc1], axis=1)
    if n % 2 == 0:
        bv0 = np.stack(
            [np.sin(alpha_b) * np.cos(phi_b), np.sin(alpha_b) * np.sin(phi_b), np.cos(alpha_b)],
            axis=1,
        )
        bv1 = np.stack(
            [
                np.sin(alpha_bp) * np.cos(phi_bp),
                np.sin(alpha_bp) * np.sin(phi_bp),
                np.cos(alpha_bp),
            ],
            axis=1,
        )
    else:
        zeros = np.zeros_like(phi_b)
        bv0 = np.stack([np.cos(phi_b), np.sin(phi_b), zeros], axis=1)
        bv1 = np.stack([np.cos(phi_bp), np.sin(phi_bp), zeros], axis=1)

    def corr(u, v):
        return u[:, 0] * v[:, 0] - u[:, 1] * v[:, 1] + u[:, 2] * v[:, 2]

    i_2 = corr(a0_vec, bv0) + corr(a0_vec, bv1) + corr(a1_vec, bv0) - corr(a1_vec, bv1)
    return i_n, i_2, degenerate


def reduction_dominance_scan(
    n_values,
    samples: int,
    seed: int,
    threads: int = 1,
    gap_tol: float = 1e-9,
) -> ScanSummary:
    """Random-configuration check that the reduced two-qubit value dominates.

    For every sampled configuration with i_n > 2 the reduced configuration
    must satisfy i_2 >= i_n - gap_tol, and for i_n < -2 mirrored. Angles are
    drawn with cos(alpha) uniform and phi uniform, from one seeded stream per
    qubit count, so results do not depend on the thread count. Samples in the
    excluded zero-measure set are skipped (they cannot violate the classical
    bound). Failures are counted in the summary, not raised.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    results = []
    for n in n_values:
        if not 2 <= n <= MAX_QUBITS:
            raise ValueError(f"scan requires 2 <= n <= {MAX_QUBITS}, got {n}")
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(n)]))
        alpha0 = np.arccos(rng.uniform(-1.0, 1.0, size=(samples, n - 1)))
        phi0 = rng.uniform(0.0, TWO_PI, size=(samples, n - 1))
        alpha1 = np.arccos(rng.uniform(-1.0, 1.0, size=(samples, n - 1)))
        phi1 = rng.uniform(0.0, TWO_PI, size=(samples, n - 1))
        alpha_b = np.arccos(rng.uniform(-1.0, 1.0, size=samples))
        phi_b = rng.uniform(0.0, TWO_PI, size=samples)
        alpha_bp = np.arccos(rng.uniform(-1.0, 1.0, size=samples))
        phi_bp = rng.uniform(0.0, TWO_PI, size=samples)

        if threads == 1 or samples < 2 * threads:
            i_n, i_2, degenerate = _scan_block(
                n, alpha0, phi0, alpha1, phi1, alpha_b, phi_b, alpha_bp, phi_bp
            )
        else:
            idx = np.array_split(np.arange(samples), threads)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(
                    pool.map(
                        lambda ix: _scan_block(
                            n,
                            alpha0[ix],
                            phi0[ix],
                            alpha1[ix],
                            phi1[ix],
                            alpha_b[ix],
                            phi_b[ix],
                            alpha_bp[ix],
                            phi_bp[ix],
                        ),
                        idx,
                    )
                )
            i_n = np.concatenate([p[0] for p in parts])
            i_2 = np.concatenate([p[1] for p in parts])
            degenerate = np.concatenate([p[2] for p in parts])

        ok = ~degenerate
        pos = ok & (i_n > 2.0)
        neg = ok & (i_n < -2.0)
        gaps = np.concatenate([(i_n - i_2)[pos], (i_2 - i_n)[neg]])
        results.append(
            ScanResult(
                n=n,
                samples=samples,
                positive_violations=int(np.count_nonzero(pos)),
                negative_violations=int(np.count_nonzero(neg)),
                skipped_degenerate=int(np.count_nonzero(degenerate)),
                counterexamples=int(np.count_nonzero(gaps > gap_tol)),
                max_gap_violation=float(gaps.max()) if gaps.size else None,
            )
        )
    return ScanSummary(seed=seed, samples_per_n=samples, results=tuple(results))


def four_qubit_reference_config() -> BellConfig:
    """The equatorial four-qubit configuration saturating the quantum bound.

    All eight directions lie on the equator; the azimuths are
    phi = (0, 0, -pi/4 | pi/2) and phi' = (pi/2, pi/2, pi/4 | 0).
    Its value on the GHZ state equals 2*sqrt(2).
    """
    phis = (0.0, 0.0, -math.pi / 4)
    phi_primes = (math.pi / 2, math.pi / 2, math.pi / 4)
    return BellConfig(
        a0_dirs=tuple(equatorial(p) for p in phis),
        a1_dirs=tuple(equatorial(p) for p in phi_primes),
        b0_dir=equatorial(math.pi / 2),
        b1_dir=equatorial(0.0),
    )
