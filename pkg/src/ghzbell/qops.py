"""Dense complex linear algebra for few-qubit states and observables.

Everything here is plain numpy on 2^n-dimensional arrays. Qubit 1 is the
leftmost tensor factor, i.e. the most significant bit of a basis index, so
|11...1> sits at the last index. Dense matrices cap out at 14 qubits
(16384 x 16384 complex ~ 4 GiB).
"""

from __future__ import annotations

import numpy as np

MAX_QUBITS = 14

# tolerance for algebraic identities (hermiticity, normalization, unitarity)
ATOL = 1e-12
# tolerance for grouping eigenvalues
SPECTRAL_TOL = 1e-9

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class CapacityError(ValueError):
    """Requested object would exceed the dense-matrix qubit cap."""


class DimensionMismatchError(ValueError):
    """Operands act on different numbers of qubits."""


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{what} contains NaN or Inf entries")


def _qubits_from_dim(dim: int, what: str) -> int:
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"{what} dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise CapacityError(f"{what} needs {n} qubits; cap is {MAX_QUBITS}")
    return n


class StateVector:
    """Normalized pure state on ``n_qubits`` qubits."""

    __slots__ = ("amplitudes", "n_qubits")

    def __init__(self, amplitudes, *, normalize: bool = False):
        arr = np.asarray(amplitudes, dtype=complex).reshape(-1).copy()
        _check_finite(arr, "state vector")
        self.n_qubits = _qubits_from_dim(arr.size, "state vector")
        norm = np.linalg.norm(arr)
        if normalize:
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            arr = arr / norm
        elif abs(norm - 1.0) > ATOL:
            raise ValueError(f"state vector norm {norm!r} is not 1 within {ATOL}")
        arr.setflags(write=False)
        self.amplitudes = arr

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def overlap(self, other: "StateVector") -> complex:
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatchError("overlap of states with different qubit counts")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.overlap(other))

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on ``n_qubits``."""

    __slots__ = ("entries", "n_qubits")

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=complex).copy()
        _check_finite(arr, "density matrix")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("density matrix must be square")
        self.n_qubits = _qubits_from_dim(arr.shape[0], "density matrix")
        if np.max(np.abs(arr - arr.conj().T)) > ATOL:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        tr = np.trace(arr)
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace {tr!r} is not 1 within {ATOL}")
        if np.min(np.linalg.eigvalsh(arr)) < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self) -> str:
        return f"DensityMatrix(n_qubits={self.n_qubits})"


class HermitianOperator:
    """Dense Hermitian matrix on ``n_qubits`` qubits."""

    __slots__ = ("entries", "n_qubits")

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=complex).copy()
        _check_finite(arr, "operator")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("operator must be square")
        self.n_qubits = _qubits_from_dim(arr.shape[0], "operator")
        if np.max(np.abs(arr - arr.conj().T)) > ATOL:
            raise ValueError("operator is not Hermitian within 1e-12")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, state: StateVector) -> np.ndarray:
        if state.n_qubits != self.n_qubits:
            raise DimensionMismatchError("operator and state qubit counts differ")
        return self.entries @ state.amplitudes

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatchError("operator qubit counts differ")
        return HermitianOperator(self.entries + other.entries)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatchError("operator qubit counts differ")
        return HermitianOperator(self.entries - other.entries)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        return HermitianOperator(self.entries * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"HermitianOperator(n_qubits={self.n_qubits})"


class Unitary2:
    """2x2 unitary matrix."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=complex).copy()
        _check_finite(arr, "unitary")
        if arr.shape != (2, 2):
            raise ValueError("Unitary2 must be 2x2")
        if np.max(np.abs(arr.conj().T @ arr - IDENTITY2)) > ATOL:
            raise ValueError("matrix is not unitary within 1e-12")
        arr.setflags(write=False)
        self.entries = arr

    def dagger(self) -> "Unitary2":
        return Unitary2(self.entries.conj().T)

    def transpose(self) -> "Unitary2":
        return Unitary2(self.entries.T)

    def conj(self) -> "Unitary2":
        return Unitary2(self.entries.conj())

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(self.entries @ other.entries)

    def __repr__(self) -> str:
        return f"Unitary2({self.entries.tolist()!r})"


def kron_all(matrices) -> np.ndarray:
    """Kronecker product of raw arrays, left factor most significant."""
    mats = list(matrices)
    if not mats:
        raise ValueError("kron_all of an empty list")
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def tensor(ops):
    """Tensor product of StateVectors or of HermitianOperators, in order.

    Qubit 1 of the result is the first factor. Raises CapacityError when the
    combined register would exceed MAX_QUBITS qubits.
    """
    items = list(ops)
    if not items:
        raise ValueError("tensor of an empty list")
    total = sum(item.n_qubits for item in items)
    if total > MAX_QUBITS:
        raise CapacityError(f"tensor product needs {total} qubits; cap is {MAX_QUBITS}")
    if all(isinstance(item, StateVector) for item in items):
        return StateVector(kron_all([item.amplitudes for item in items]))
    if all(isinstance(item, HermitianOperator) for item in items):
        return HermitianOperator(kron_all([item.entries for item in items]))
    raise TypeError("tensor requires all StateVectors or all HermitianOperators")


def pauli_observable(direction) -> HermitianOperator:
    """+-1 observable n.sigma for a Bloch direction (alpha, phi)."""
    nx, ny, nz = direction.bloch
    return HermitianOperator(nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z)


def bloch_observable(vec) -> HermitianOperator:
    """+-1 observable n.sigma for a unit 3-vector n."""
    v = np.asarray(vec, dtype=float)
    if v.shape != (3,):
        raise ValueError("Bloch vector must have 3 components")
    if abs(np.linalg.norm(v) - 1.0) > ATOL:
        raise ValueError("Bloch vector is not unit length within 1e-12")
    return HermitianOperator(v[0] * PAULI_X + v[1] * PAULI_Y + v[2] * PAULI_Z)


def expectation(state, op: HermitianOperator) -> float:
    """<psi|O|psi> or Tr(rho O); the tiny imaginary residue is checked then dropped."""
    if isinstance(state, StateVector):
        if state.n_qubits != op.n_qubits:
            raise DimensionMismatchError("state and operator qubit counts differ")
        value = complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))
    elif isinstance(state, DensityMatrix):
        if state.n_qubits != op.n_qubits:
            raise DimensionMismatchError("state and operator qubit counts differ")
        value = complex(np.sum(state.entries.T * op.entries))
    else:
        raise TypeError("state must be a StateVector or DensityMatrix")
    if abs(value.imag) >= 1e-10:
        raise ValueError(f"expectation has imaginary residue {value.imag!r}")
    return value.real


def eig_hermitian(op: HermitianOperator):
    """Full eigendecomposition; eigenvalues ascending, eigenvectors as columns."""
    evals, evecs = np.linalg.eigh(op.entries)
    return evals, evecs


def eigvals_hermitian(op: HermitianOperator) -> np.ndarray:
    """Eigenvalues only (ascending); cheaper than eig_hermitian for large n."""
    return np.linalg.eigvalsh(op.entries)


def multiplicity_of_max(eigenvalues, tol: float = SPECTRAL_TOL) -> int:
    """Number of eigenvalues within tol of the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    evals = np.asarray(eigenvalues, dtype=float)
    if evals.size == 0:
        raise ValueError("empty eigenvalue list")
    return int(np.count_nonzero(evals >= evals.max() - tol))


def rotation(axis, angle: float) -> Unitary2:
    """exp(-i angle/2 axis.sigma): rotates Bloch vectors by angle about axis."""
    ax = np.asarray(axis, dtype=float)
    ax = ax / np.linalg.norm(ax)
    sigma = ax[0] * PAULI_X + ax[1] * PAULI_Y + ax[2] * PAULI_Z
    half = 0.5 * angle
    return Unitary2(np.cos(half) * IDENTITY2 - 1j * np.sin(half) * sigma)


def phase_rotation_z(delta: float) -> Unitary2:
    """exp(i sigma_z delta / 2)."""
    return Unitary2(np.diag([np.exp(1j * delta / 2), np.exp(-1j * delta / 2)]))
