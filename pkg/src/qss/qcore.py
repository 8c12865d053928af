"""Dense n-qubit pure-state simulation.

Basis index convention: qubit 1 is the most significant bit, so the ket
``|q1 q2 ... qn>`` lives at index ``int("q1q2...qn", 2)``. Qubit indices in
the public API are 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-9
MAX_QUBITS = 16

RandomSource = np.random.Generator


class DimensionError(ValueError):
    """Operands disagree on qubit count."""


class PauliAxis(str, enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"

    def __str__(self) -> str:
        return self.value


_AXIS_MATRICES = {
    PauliAxis.I: np.eye(2, dtype=complex),
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def axis_matrix(axis: PauliAxis) -> np.ndarray:
    return _AXIS_MATRICES[PauliAxis(axis)].copy()


@dataclass(frozen=True)
class PureState:
    """Normalized state vector of ``num_qubits`` qubits.

    The amplitude array is copied and frozen on construction.
    """

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = int(self.num_qubits)
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {n}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**n:
            raise DimensionError(f"expected {2**n} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> PureState:
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = amps.size.bit_length() - 1
        if amps.size != 2**n:
            raise DimensionError(f"length {amps.size} is not a power of two")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    @classmethod
    def basis(cls, bits: str | Sequence[int]) -> PureState:
        """Computational basis state, e.g. ``PureState.basis("010")``."""
        bits = [int(b) for b in bits]
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int("".join(map(str, bits)), 2)] = 1.0
        return cls(len(bits), amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return self.num_qubits == other.num_qubits and np.array_equal(
            self.amplitudes, other.amplitudes
        )

    def __hash__(self):
        return hash((self.num_qubits, self.amplitudes.tobytes()))

    def allclose(self, other: PureState, atol: float = TOL) -> bool:
        _check_same_size(self, other)
        return bool(np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0))

    def equal_up_to_phase(self, other: PureState, atol: float = TOL) -> bool:
        return abs(abs(inner_product(self, other)) - 1.0) < atol

    def ket(self, atol: float = 1e-12) -> str:
        """Human-readable ket expansion, mostly for reprs and demos."""
        terms = []
        for idx in np.flatnonzero(np.abs(self.amplitudes) > atol):
            amp = complex(self.amplitudes[idx])
            terms.append(f"({amp.real:+.4f}{amp.imag:+.4f}j)|{idx:0{self.num_qubits}b}>")
        return " ".join(terms)


@dataclass(frozen=True)
class PauliString:
    axes: tuple[PauliAxis, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(PauliAxis(a) for a in self.axes))

    @classmethod
    def parse(cls, text: str) -> PauliString:
        return cls(tuple(PauliAxis(c) for c in text.upper()))

    @classmethod
    def uniform(cls, axis: PauliAxis | str, n: int) -> PauliString:
        return cls((PauliAxis(axis),) * n)

    def __len__(self) -> int:
        return len(self.axes)

    def __str__(self) -> str:
        return "".join(a.value for a in self.axes)

    def masks(self) -> tuple[int, int, int]:
        """Return ``(x_mask, z_mask, n_y)`` in the MSB-first index convention."""
        n = len(self.axes)
        x_mask = z_mask = n_y = 0
        for q, axis in enumerate(self.axes):
            bit = 1 << (n - 1 - q)
            if axis in (PauliAxis.X, PauliAxis.Y):
                x_mask |= bit
            if axis in (PauliAxis.Z, PauliAxis.Y):
                z_mask |= bit
            n_y += axis is PauliAxis.Y
        return x_mask, z_mask, n_y

    def matrix(self) -> np.ndarray:
        out = np.ones((1, 1), dtype=complex)
        for axis in self.axes:
            out = np.kron(out, _AXIS_MATRICES[axis])
        return out


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced state of the qubits listed in ``qubits`` (in basis order)."""

    matrix: np.ndarray
    qubits: tuple[int, ...] = ()

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError("density matrix must be square")
        dim = mat.shape[0]
        if dim & (dim - 1):
            raise DimensionError(f"dimension {dim} is not a power of two")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_valid(self, tol: float = TOL) -> bool:
        m = self.matrix
        if not np.allclose(m, m.conj().T, atol=tol, rtol=0):
            return False
        if abs(np.trace(m) - 1.0) > tol:
            return False
        return bool(np.linalg.eigvalsh(m).min() >= -tol)


@dataclass(frozen=True)
class MeasurementRecord:
    qubit_index: int
    axis: PauliAxis
    outcome: int

    def __post_init__(self):
        if PauliAxis(self.axis) is PauliAxis.I:
            raise ValueError("measurement axis cannot be I")
        if self.outcome not in (1, -1):
            raise ValueError("outcome must be +1 or -1")
        if self.qubit_index < 1:
            raise ValueError("qubit_index is 1-based")


def _check_same_size(a: PureState, b: PureState) -> None:
    if a.num_qubits != b.num_qubits:
        raise DimensionError(f"{a.num_qubits}-qubit vs {b.num_qubits}-qubit state")


def _check_pauli(state: PureState, p: PauliString) -> None:
    if len(p) != state.num_qubits:
        raise DimensionError(
            f"Pauli string of length {len(p)} on {state.num_qubits}-qubit state"
        )


def _popcount_parity(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values).astype(np.int64) & 1


def _apply_pauli_array(amps: np.ndarray, n: int, p: PauliString) -> np.ndarray:
    # P = i^{#Y} X^x Z^z  since Y = iXZ; out[b ^ x] = phase * (-1)^{|b & z|} in[b]
    x_mask, z_mask, n_y = p.masks()
    idx = np.arange(2**n, dtype=np.uint64)
    signs = 1 - 2 * _popcount_parity(idx & np.uint64(z_mask))
    out = np.empty_like(amps)
    out[(idx ^ np.uint64(x_mask)).astype(np.intp)] = (1j**n_y) * signs * amps
    return out


def apply_pauli_string(state: PureState, p: PauliString) -> PureState:
    _check_pauli(state, p)
    return PureState(state.num_qubits, _apply_pauli_array(state.amplitudes, state.num_qubits, p))


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    _check_same_size(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expectation(state: PureState, p: PauliString) -> float:
    _check_pauli(state, p)
    moved = _apply_pauli_array(state.amplitudes, state.num_qubits, p)
    return float(np.vdot(state.amplitudes, moved).real)


def stabilizer_eigenvalue(state: PureState, p: PauliString, tol: float = TOL) -> int | None:
    """Return +1 or -1 if ``state`` is an eigenstate of ``p``, else ``None``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    _check_pauli(state, p)
    moved = _apply_pauli_array(state.amplitudes, state.num_qubits, p)
    for lam in (1, -1):
        if np.linalg.norm(moved - lam * state.amplitudes) < tol:
            return lam
    return None


def _check_qubit(state: PureState, qubit: int) -> None:
    if not 1 <= qubit <= state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range 1..{state.num_qubits}")


def projector_branches(state: PureState, qubit: int, axis: PauliAxis) -> dict[int, np.ndarray]:
    """Unnormalized projections ``(1 ± sigma_q)/2 |psi>`` keyed by outcome."""
    axis = PauliAxis(axis)
    if axis is PauliAxis.I:
        raise ValueError("cannot measure in the I basis")
    _check_qubit(state, qubit)
    axes = [PauliAxis.I] * state.num_qubits
    axes[qubit - 1] = axis
    moved = _apply_pauli_array(state.amplitudes, state.num_qubits, PauliString(tuple(axes)))
    return {
        1: (state.amplitudes + moved) / 2,
        -1: (state.amplitudes - moved) / 2,
    }


def outcome_probability(state: PureState, qubit: int, axis: PauliAxis, outcome: int) -> float:
    branch = projector_branches(state, qubit, axis)[outcome]
    return float(np.vdot(branch, branch).real)


def measure_qubit(
    state: PureState, qubit: int, axis: PauliAxis, rng: RandomSource
) -> tuple[int, PureState]:
    """Projective single-qubit measurement sampled by the Born rule.

    Returns
    -------
    outcome : int
        Eigenvalue +1 or -1 of the measured Pauli operator.
    collapsed : PureState
        Normalized post-measurement state.
    """
    branches = projector_branches(state, qubit, axis)
    p_plus = float(np.vdot(branches[1], branches[1]).real)
    outcome = 1 if rng.random() < p_plus else -1
    vec = branches[outcome]
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        raise RuntimeError("sampled a zero-probability measurement branch")
    return outcome, PureState(state.num_qubits, vec / norm)


def _validate_qubit_list(qubits: Iterable[int], n: int) -> tuple[int, ...]:
    qubits = tuple(int(q) for q in qubits)
    if not qubits:
        raise ValueError("qubit list must be non-empty")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit indices in {qubits}")
    bad = [q for q in qubits if not 1 <= q <= n]
    if bad:
        raise ValueError(f"qubit indices {bad} out of range 1..{n}")
    return qubits


def reduced_factor(state: PureState, keep: Sequence[int]) -> np.ndarray:
    """Matrix ``A`` with ``A @ A.conj().T`` equal to the reduced density matrix.

    Rows index the kept qubits (in the given order), columns the traced ones.
    """
    n = state.num_qubits
    keep = _validate_qubit_list(keep, n)
    rest = [q for q in range(1, n + 1) if q not in keep]
    tensor = state.amplitudes.reshape((2,) * n)
    order = [q - 1 for q in keep] + [q - 1 for q in rest]
    return tensor.transpose(order).reshape(2 ** len(keep), 2 ** len(rest))


def partial_trace(state: PureState, keep: Sequence[int]) -> DensityMatrix:
    keep = _validate_qubit_list(keep, state.num_qubits)
    a = reduced_factor(state, keep)
    return DensityMatrix(a @ a.conj().T, keep)


def permute_qubits(state: PureState, perm: Sequence[int]) -> PureState:
    """Relabel qubits: qubit ``i`` of the input becomes qubit ``perm[i-1]``.

    ``perm`` is a 1-based bijection on ``1..n``.
    """
    n = state.num_qubits
    perm = tuple(int(p) for p in perm)
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    tensor = state.amplitudes.reshape((2,) * n)
    moved = np.moveaxis(tensor, list(range(n)), [p - 1 for p in perm])
    return PureState(n, moved.reshape(-1))


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return tuple(inv)
