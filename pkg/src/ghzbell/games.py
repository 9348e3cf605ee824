"""The two-player CHSH game and its single-qubit counterpart.

In the two-player game Alice and Bob share |psi+>, apply local unitaries
chosen by their input bits and measure sigma_x; they win on inputs (a, b)
when the XOR of their outcome bits equals a*b. The single-player variant
gives Carol one qubit in |+>; she applies both unitaries in sequence,
measures sigma_x, and wins when her outcome bit equals a*b. For any choice
of the four unitaries the two games have identical per-input win
probabilities, so a single qubit reproduces the full CHSH statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qops import IDENTITY2, PAULI_X, HermitianOperator, Unitary2, rotation

X_AXIS = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class ChshStrategy:
    """Four local unitaries: Alice's pair (a0, a1) and Bob's pair (b0, b1)."""

    a0: Unitary2
    a1: Unitary2
    b0: Unitary2
    b1: Unitary2

    def alice(self, a: int) -> Unitary2:
        return self.a0 if a == 0 else self.a1

    def bob(self, b: int) -> Unitary2:
        return self.b0 if b == 0 else self.b1


@dataclass(frozen=True)
class GameOutcomeTable:
    """Exact per-input win probabilities and the derived figures of merit."""

    per_input_win_prob: tuple[tuple[float, float], tuple[float, float]]
    success_probability: float
    i_value: float


@dataclass(frozen=True)
class MonteCarloResult:
    game: str
    shots: int
    seed: int
    wins: int
    estimate: float
    std_error: float


def alice_observable(u: Unitary2) -> HermitianOperator:
    """conj(u) sigma_x transpose(u): Alice's effective +-1 observable."""
    m = u.entries
    return HermitianOperator(m.conj() @ PAULI_X @ m.T)


def bob_observable(u: Unitary2) -> HermitianOperator:
    """dagger(u) sigma_x u: Bob's effective +-1 observable."""
    m = u.entries
    return HermitianOperator(m.conj().T @ PAULI_X @ m)


def observable_bloch(op: HermitianOperator) -> np.ndarray:
    """Bloch vector of a 2x2 +-1 observable n.sigma."""
    m = op.entries
    return np.array([m[1, 0].real, m[1, 0].imag, m[0, 0].real])


def unitary_from_observable(target) -> Unitary2:
    """A unitary V with dagger(V) sigma_x V = target.sigma (Bob's form).

    V is the minimal rotation taking the x axis onto ``target``: rotate about
    the axis x cross target by the angle between them; for target = -x rotate
    by pi about z. Alice's form for the same observable is transpose(V).
    """
    v = np.asarray(target, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("target must be a unit 3-vector")
    cross = np.cross(X_AXIS, v)
    sin_angle = float(np.linalg.norm(cross))
    cos_angle = float(np.dot(X_AXIS, v))
    if sin_angle < 1e-15:
        if cos_angle > 0:
            return Unitary2(IDENTITY2)
        return rotation([0.0, 0.0, 1.0], math.pi).dagger()
    angle = math.atan2(sin_angle, cos_angle)
    # dagger(V) (x.sigma) V must rotate x by +angle about the cross axis
    return rotation(cross / sin_angle, angle).dagger()


def strategy_from_bloch(a0, a1, b0, b1) -> ChshStrategy:
    """Strategy whose effective observables have the given Bloch vectors."""
    return ChshStrategy(
        a0=unitary_from_observable(a0).transpose(),
        a1=unitary_from_observable(a1).transpose(),
        b0=unitary_from_observable(b0),
        b1=unitary_from_observable(b1),
    )


def identity_strategy() -> ChshStrategy:
    ident = Unitary2(IDENTITY2)
    return ChshStrategy(ident, ident, ident, ident)


def optimal_strategy() -> ChshStrategy:
    """A strategy reaching the quantum optimum (2 + sqrt(2))/4."""
    s = 1.0 / math.sqrt(2.0)
    return strategy_from_bloch(
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [s, -s, 0.0],
        [s, s, 0.0],
    )


def random_strategy(rng: np.random.Generator) -> ChshStrategy:
    """Haar-random strategy via the polar factor of complex Gaussian matrices."""

    def haar() -> Unitary2:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u_svd, _, vh = np.linalg.svd(m)
        return Unitary2(u_svd @ vh)

    return ChshStrategy(haar(), haar(), haar(), haar())


def _win_table(correlations) -> GameOutcomeTable:
    """Win probabilities (1 + (-1)^(a*b) E_ab)/2 from the four correlators."""
    probs = []
    i_value = 0.0
    for a in (0, 1):
        row = []
        for b in (0, 1):
            sign = -1.0 if a * b == 1 else 1.0
            e = correlations[a][b]
            i_value += sign * e
            row.append(0.5 * (1.0 + sign * e))
        probs.append(tuple(row))
    success = 0.25 * sum(sum(row) for row in probs)
    return GameOutcomeTable(
        per_input_win_prob=tuple(probs), success_probability=success, i_value=i_value
    )


def _psi_plus() -> np.ndarray:
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / math.sqrt(2.0)
    return psi


_PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def chsh_game_value(strategy: ChshStrategy) -> GameOutcomeTable:
    """Exact two-player game statistics on |psi+>."""
    psi = _psi_plus()
    correlations = [[0.0, 0.0], [0.0, 0.0]]
    for a in (0, 1):
        obs_a = alice_observable(strategy.alice(a)).entries
        for b in (0, 1):
            obs_b = bob_observable(strategy.bob(b)).entries
            joint = np.kron(obs_a, obs_b)
            correlations[a][b] = float(np.vdot(psi, joint @ psi).real)
    return _win_table(correlations)


def chsh_star_value(strategy: ChshStrategy) -> GameOutcomeTable:
    """Exact single-player game statistics on |+>."""
    correlations = [[0.0, 0.0], [0.0, 0.0]]
    for a in (0, 1):
        ua = strategy.alice(a).entries
        for b in (0, 1):
            ub = strategy.bob(b).entries
            c_ab = ua.conj().T @ ub.conj().T @ PAULI_X @ ub @ ua
            correlations[a][b] = float(np.vdot(_PLUS, c_ab @ _PLUS).real)
    return _win_table(correlations)


def _joint_outcome_tables(strategy: ChshStrategy) -> np.ndarray:
    """P(x, y | a, b) for the two-player game, Born rule on |psi+>."""
    psi = _psi_plus()
    tables = np.zeros((2, 2, 2, 2))
    for a in (0, 1):
        obs_a = alice_observable(strategy.alice(a)).entries
        proj_a = [(IDENTITY2 + obs_a) / 2.0, (IDENTITY2 - obs_a) / 2.0]
        for b in (0, 1):
            obs_b = bob_observable(strategy.bob(b)).entries
            proj_b = [(IDENTITY2 + obs_b) / 2.0, (IDENTITY2 - obs_b) / 2.0]
            for x in (0, 1):
                for y in (0, 1):
                    joint = np.kron(proj_a[x], proj_b[y])
                    tables[a, b, x, y] = float(np.vdot(psi, joint @ psi).real)
    return tables


def _single_outcome_tables(strategy: ChshStrategy) -> np.ndarray:
    """P(c | a, b) for the single-player game, Born rule on |+>."""
    tables = np.zeros((2, 2, 2))
    for a in (0, 1):
        ua = strategy.alice(a).entries
        for b in (0, 1):
            ub = strategy.bob(b).entries
            c_ab = ua.conj().T @ ub.conj().T @ PAULI_X @ ub @ ua
            for c in (0, 1):
                proj = (IDENTITY2 + (1 if c == 0 else -1) * c_ab) / 2.0
                tables[a, b, c] = float(np.vdot(_PLUS, proj @ _PLUS).real)
    return tables


def play_monte_carlo(
    strategy: ChshStrategy, game: str, shots: int, seed: int
) -> MonteCarloResult:
    """Seeded simulation of repeated rounds with uniformly random inputs.

    All randomness comes from one PCG64 stream: results are bit-identical for
    a fixed (strategy, game, shots, seed). The reported standard error is
    sqrt(p(1-p)/shots) for the estimated win probability p.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if game not in ("chsh", "chsh_star"):
        raise ValueError("game must be 'chsh' or 'chsh_star'")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    a = rng.integers(0, 2, size=shots)
    b = rng.integers(0, 2, size=shots)
    u = rng.uniform(0.0, 1.0, size=shots)
    if game == "chsh":
        tables = _joint_outcome_tables(strategy)
        flat = tables.reshape(2, 2, 4)  # outcome index 2x + y
        cum = np.cumsum(flat[a, b], axis=1)
        outcome = np.clip((u[:, None] >= cum).sum(axis=1), 0, 3)
        x = outcome // 2
        y = outcome % 2
        wins = int(np.count_nonzero((x ^ y) == (a & b)))
    else:
        tables = _single_outcome_tables(strategy)
        p0 = tables[a, b, 0]
        c = (u >= p0).astype(int)
        wins = int(np.count_nonzero(c == (a & b)))
    estimate = wins / shots
    std_error = math.sqrt(max(estimate * (1.0 - estimate), 0.0) / shots)
    return MonteCarloResult(
        game=game, shots=shots, seed=int(seed), wins=wins, estimate=estimate, std_error=std_error
    )
