"""GHZ and Dicke state families, GHZ stabilizer families and eigenvalue tables."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qcore import TOL, PauliAxis, PauliString, PureState
from .variants import KN, NN, Restricted2N, SchemeVariant


class Member(enum.IntEnum):
    """Which element of an orthogonal pair. Secret bit b maps to Member(b)."""

    FIRST = 0
    SECOND = 1


@dataclass(frozen=True)
class GhzPairSpec:
    n: int
    r: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("GHZ pair needs n >= 2")
        if not 0 <= self.r <= self.n // 2:
            raise ValueError(f"distance r must be in 0..{self.n // 2}, got {self.r}")

    def block(self, qubit: int) -> int:
        """0 for the leading r qubits, 1 for the trailing n - r."""
        return 0 if qubit <= self.r else 1


@dataclass(frozen=True)
class DickePairSpec:
    n: int
    m: int
    r: int
    coeffs_a: tuple[complex, ...] | None = None
    coeffs_b: tuple[complex, ...] | None = None

    def __post_init__(self):
        n, m, r = self.n, self.m, self.r
        if not 1 <= m < n:
            raise ValueError(f"weight m must be in 1..{n - 1}, got {m}")
        if not 0 <= r <= n - 2 or not 0 < m + r < n:
            raise ValueError(f"invalid distance r={r} for n={n}, m={m}")
        a = _normalized_coeffs(self.coeffs_a, math.comb(n, m))
        b = _normalized_coeffs(self.coeffs_b, math.comb(n, m + r))
        if r == 0 and abs(np.vdot(a, b)) > TOL:
            raise ValueError("distance-0 pair needs orthogonal coefficient lists")
        object.__setattr__(self, "coeffs_a", tuple(complex(c) for c in a))
        object.__setattr__(self, "coeffs_b", tuple(complex(c) for c in b))

    @property
    def weights(self) -> tuple[int, int]:
        return self.m, self.m + self.r


@dataclass(frozen=True)
class StabilizerVector:
    """Binary n-tuple: all zeros is O(0), ones at i and j is O(ij)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0/1")
        if sum(bits) not in (0, 2):
            raise ValueError(f"stabilizer vector must have weight 0 or 2, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zero(cls, n: int) -> StabilizerVector:
        return cls((0,) * n)

    @classmethod
    def pair(cls, n: int, i: int, j: int) -> StabilizerVector:
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
        bits = [0] * n
        bits[i - 1] = bits[j - 1] = 1
        return cls(tuple(bits))

    @property
    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits, start=1) if b)

    def pauli(self) -> PauliString:
        return PauliString(tuple(PauliAxis.Y if b else PauliAxis.X for b in self.bits))

    def __str__(self) -> str:
        if not self.ones:
            return "O(0)"
        return "O({},{})".format(*self.ones)


def _normalized_coeffs(coeffs, length: int) -> np.ndarray:
    if coeffs is None:
        return np.full(length, 1 / math.sqrt(length), dtype=complex)
    arr = np.asarray(coeffs, dtype=complex).reshape(-1)
    if arr.size != length:
        raise ValueError(f"expected {length} coefficients, got {arr.size}")
    if abs(np.vdot(arr, arr).real - 1) > TOL:
        raise ValueError("coefficients are not normalized")
    return arr


def weight_strings(n: int, m: int) -> list[int]:
    """Basis indices of Hamming weight ``m``, ascending (lexicographic bitstrings)."""
    return sorted(
        sum(1 << (n - q) for q in ones) for ones in itertools.combinations(range(1, n + 1), m)
    )


def ghz_canonical(bits: Sequence[int]) -> PureState:
    """``(|0 i2..in> + (-1)^i1 |1 ~i2..~in>) / sqrt(2)``."""
    bits = [int(b) for b in bits]
    n = len(bits)
    if n < 2:
        raise ValueError("canonical GHZ state needs n >= 2")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0/1")
    tail = int("".join(map(str, bits[1:])), 2)
    amps = np.zeros(2**n, dtype=complex)
    amps[tail] = 1 / math.sqrt(2)
    amps[(1 << (n - 1)) | (~tail & ((1 << (n - 1)) - 1))] = (-1) ** bits[0] / math.sqrt(2)
    return PureState(n, amps)


def ghz_pair(spec: GhzPairSpec) -> tuple[PureState, PureState]:
    n, r = spec.n, spec.r
    full = (1 << n) - 1
    lead = ((1 << r) - 1) << (n - r)
    first = np.zeros(2**n, dtype=complex)
    first[0] = first[full] = 1 / math.sqrt(2)
    second = np.zeros(2**n, dtype=complex)
    second[lead] = 1 / math.sqrt(2)
    second[full ^ lead] = -1 / math.sqrt(2)
    return PureState(n, first), PureState(n, second)


def generalized_dicke(n: int, m: int, coeffs) -> PureState:
    if not 1 <= m < n:
        raise ValueError(f"weight m must be in 1..{n - 1}, got {m}")
    c = _normalized_coeffs(coeffs, math.comb(n, m))
    amps = np.zeros(2**n, dtype=complex)
    amps[weight_strings(n, m)] = c
    return PureState(n, amps)


def dicke(n: int, m: int) -> PureState:
    if not 1 <= m < n:
        raise ValueError(f"weight m must be in 1..{n - 1}, got {m}")
    return generalized_dicke(n, m, None)


def dicke_pair(spec: DickePairSpec) -> tuple[PureState, PureState]:
    return (
        generalized_dicke(spec.n, spec.m, spec.coeffs_a),
        generalized_dicke(spec.n, spec.m + spec.r, spec.coeffs_b),
    )


def centered_square_coeffs(length: int) -> tuple[float, ...]:
    """Real unit vector ``j**2 - mean(j**2)``, orthogonal to the uniform list.

    Sign-flip or Fourier partners make some proper coalitions able to
    distinguish the pair (e.g. n=4, m=2 with Fourier phases); this choice
    keeps every coefficient nonzero and generic enough that only the full
    coalition succeeds for all n <= 8.
    """
    if length < 2:
        raise ValueError("need at least two coefficients")
    v = np.arange(length, dtype=float) ** 2
    v -= v.mean()
    return tuple(v / np.linalg.norm(v))


def distance0_dicke_spec(n: int, m: int) -> DickePairSpec:
    """Uniform weight-m state paired with an orthogonal same-weight partner."""
    return DickePairSpec(n, m, 0, coeffs_b=centered_square_coeffs(math.comb(n, m)))


def ghz_stabilizer_family(n: int) -> list[tuple[StabilizerVector, PauliString]]:
    if n < 2:
        raise ValueError("stabilizer family needs n >= 2")
    vectors = [StabilizerVector.zero(n)]
    vectors += [StabilizerVector.pair(n, i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
    return [(v, v.pauli()) for v in vectors]


def variant_pair(variant: SchemeVariant) -> tuple[PureState, PureState]:
    """The orthogonal pair a session of ``variant`` draws its runs from."""
    if isinstance(variant, NN):
        return ghz_pair(GhzPairSpec(variant.n, 0))
    if isinstance(variant, Restricted2N):
        return ghz_pair(GhzPairSpec(variant.n, variant.r))
    if isinstance(variant, KN):
        return dicke_pair(DickePairSpec(variant.n_effective, variant.m, variant.r))
    raise TypeError(f"unknown variant {variant!r}")


def _ghz_eigenvalue(n: int, r: int, stab: StabilizerVector, which: Member) -> int:
    if len(stab.bits) != n:
        raise ValueError(f"stabilizer of length {len(stab.bits)} for n={n}")
    if which is Member.FIRST:
        return 1 if not stab.ones else -1
    if not stab.ones:
        return -1
    i, j = stab.ones
    # same block (both <= r or both > r) -> +1
    return 1 if (i <= r) == (j <= r) else -1


def expected_eigenvalue(variant: SchemeVariant, stab, which) -> int:
    """Eigenvalue the dealer expects for a check on one pair member.

    ``stab`` is a :class:`StabilizerVector` for the GHZ schemes and a
    uniform check axis (``"X"``, ``"Y"`` or ``"Z"``) for the Dicke scheme.
    """
    which = Member(which)
    if isinstance(variant, (NN, Restricted2N)):
        if not isinstance(stab, StabilizerVector):
            raise ValueError("GHZ schemes are checked with stabilizer vectors")
        r = variant.r if isinstance(variant, Restricted2N) else 0
        return _ghz_eigenvalue(variant.n, r, stab, which)
    if isinstance(variant, KN):
        if isinstance(stab, StabilizerVector):
            raise ValueError("Dicke scheme is checked with a uniform axis")
        axis = PauliAxis(stab)
        weight = variant.m if which is Member.FIRST else variant.m + variant.r
        if axis is PauliAxis.Z:
            return (-1) ** weight
        if axis in (PauliAxis.X, PauliAxis.Y) and 2 * weight == variant.n_effective:
            return 1
        raise ValueError(f"{axis}^n is not a stabilizer of the weight-{weight} Dicke state")
    raise TypeError(f"unknown variant {variant!r}")
