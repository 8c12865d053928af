"""Coalition distinguishability: a reduced-state oracle and executable protocols.

The oracle says a coalition S can perfectly tell the two states apart iff the
reduced density matrices on S have orthogonal supports. The protocols are the
concrete local-measurement procedures that realize the positive cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .qcore import (
    TOL,
    DensityMatrix,
    DimensionError,
    PauliAxis,
    PureState,
    RandomSource,
    inner_product,
    measure_qubit,
    reduced_factor,
)
from .states import (
    DickePairSpec,
    GhzPairSpec,
    Member,
    dicke_pair,
    distance0_dicke_spec,
    ghz_pair,
)

MAX_ORACLE_QUBITS = 12
MAX_SWEEP_QUBITS = 8

WITNESS_IDENTICAL = "reduced states identical"
WITNESS_OVERLAP = "supports overlap"
WITNESS_ORTHOGONAL = "supports orthogonal"


@dataclass(frozen=True)
class DistinguishVerdict:
    distinguishable: bool
    witness: str

    def __bool__(self) -> bool:
        return self.distinguishable


def _validate_subset(subset: Sequence[int], n: int) -> tuple[int, ...]:
    subset = tuple(int(i) for i in subset)
    if not subset:
        raise ValueError("coalition must be non-empty")
    if len(set(subset)) != len(subset):
        raise ValueError(f"duplicate parties in {subset}")
    if not all(1 <= i <= n for i in subset):
        raise ValueError(f"coalition {subset} out of range 1..{n}")
    return subset


def support_orthogonal(rho0: DensityMatrix, rho1: DensityMatrix, tol: float = TOL) -> bool:
    if rho0.dim != rho1.dim:
        raise DimensionError(f"dimension {rho0.dim} vs {rho1.dim}")
    return bool(np.abs(rho0.matrix @ rho1.matrix).max() < tol)


def oracle_distinguishable(
    pair: tuple[PureState, PureState], subset: Sequence[int], tol: float = TOL
) -> DistinguishVerdict:
    psi0, psi1 = pair
    if psi0.num_qubits != psi1.num_qubits:
        raise DimensionError("pair members differ in qubit count")
    subset = _validate_subset(subset, psi0.num_qubits)
    a0 = reduced_factor(psi0, subset)
    a1 = reduced_factor(psi1, subset)
    # rho0 rho1 = A0 (A0^† A1) A1^†
    product = a0 @ (a0.conj().T @ a1) @ a1.conj().T
    if np.abs(product).max() < tol:
        return DistinguishVerdict(True, WITNESS_ORTHOGONAL)
    rho0 = a0 @ a0.conj().T
    rho1 = a1 @ a1.conj().T
    if np.allclose(rho0, rho1, atol=tol, rtol=0):
        return DistinguishVerdict(False, WITNESS_IDENTICAL)
    return DistinguishVerdict(False, WITNESS_OVERLAP)


def minimal_coalition_size(pair: tuple[PureState, PureState], tol: float = TOL) -> int:
    """Smallest k such that some k-party coalition passes the oracle."""
    n = pair[0].num_qubits
    if n > MAX_ORACLE_QUBITS:
        raise ValueError(f"exhaustive enumeration limited to n <= {MAX_ORACLE_QUBITS}")
    if abs(inner_product(*pair)) > tol:
        raise ValueError("pair is not orthogonal")
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            if oracle_distinguishable(pair, subset, tol):
                return size
    raise AssertionError("orthogonal pair not distinguishable by the full coalition")


def _z_outcomes(
    state: PureState, qubits: Sequence[int], rng: RandomSource
) -> tuple[list[int], PureState]:
    outcomes = []
    for q in qubits:
        v, state = measure_qubit(state, q, PauliAxis.Z, rng)
        outcomes.append(v)
    return outcomes, state


def two_party_measure(
    state: PureState, spec: GhzPairSpec, i: int, j: int, rng: RandomSource
) -> tuple[Member, PureState]:
    if state.num_qubits != spec.n:
        raise DimensionError(f"{state.num_qubits}-qubit state for n={spec.n}")
    if spec.r < 1:
        raise ValueError("two-party protocol needs r >= 1")
    if not (1 <= i <= spec.r < j <= spec.n):
        raise ValueError(f"need 1 <= i <= r < j <= n, got i={i}, j={j}, r={spec.r}")
    (vi, vj), post = _z_outcomes(state, (i, j), rng)
    return (Member.FIRST if vi == vj else Member.SECOND), post


def distinguish_ghz_two_party(
    state: PureState, spec: GhzPairSpec, i: int, j: int, rng: RandomSource
) -> Member:
    """Z-measure one qubit from each block; equal outcomes mean the first member."""
    return two_party_measure(state, spec, i, j, rng)[0]


def counting_measure(
    state: PureState, spec: DickePairSpec, subset: Sequence[int], rng: RandomSource
) -> tuple[Member, PureState]:
    if state.num_qubits != spec.n:
        raise DimensionError(f"{state.num_qubits}-qubit state for n={spec.n}")
    if spec.r < 1:
        raise ValueError("counting protocol needs r >= 1")
    subset = _validate_subset(subset, spec.n)
    if len(subset) != spec.n - spec.r + 1:
        raise ValueError(f"coalition must have exactly n - r + 1 = {spec.n - spec.r + 1} parties")
    outcomes, post = _z_outcomes(state, subset, rng)
    ones = sum(v == -1 for v in outcomes)
    # weight m gives at most m ones; weight m + r leaves at most r - 1 ones outside
    return (Member.FIRST if ones <= spec.m else Member.SECOND), post


def distinguish_dicke_counting(
    state: PureState, spec: DickePairSpec, subset: Sequence[int], rng: RandomSource
) -> Member:
    """Count |1> outcomes on n - r + 1 qubits; at most m means the first member."""
    return counting_measure(state, spec, subset, rng)[0]


def global_measure(
    pair: tuple[PureState, PureState], state: PureState, rng: RandomSource, tol: float = TOL
) -> tuple[Member, PureState]:
    psi0, psi1 = pair
    if abs(inner_product(psi0, psi1)) > tol:
        raise ValueError("pair is not orthogonal")
    overlap = inner_product(psi0, state)
    p_first = min(1.0, abs(overlap) ** 2)
    if rng.random() < p_first:
        return Member.FIRST, psi0
    rest = state.amplitudes - overlap * psi0.amplitudes
    return Member.SECOND, PureState(state.num_qubits, rest / np.linalg.norm(rest))


def distinguish_global(
    pair: tuple[PureState, PureState], state: PureState, rng: RandomSource
) -> Member:
    """Two-outcome projective measurement ``{|psi0><psi0|, 1 - |psi0><psi0|}``."""
    return global_measure(pair, state, rng)[0]


@dataclass
class TheoremReport:
    n_max: int
    rows: list[dict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "ok": self.ok, "rows": self.rows, "violations": self.violations}


def _check_ghz_blocks(report: TheoremReport, n: int, r: int, tol: float) -> None:
    pair = ghz_pair(GhzPairSpec(n, r))
    bad = 0
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            crosses = min(subset) <= r < max(subset)
            verdict = oracle_distinguishable(pair, subset, tol)
            if verdict.distinguishable != crosses:
                bad += 1
                report.violations.append(
                    f"GHZ n={n} r={r} subset={subset}: oracle={verdict.distinguishable}, "
                    f"expected {crosses}"
                )
            elif not crosses and verdict.witness != WITNESS_IDENTICAL:
                bad += 1
                report.violations.append(
                    f"GHZ n={n} r={r} subset={subset}: single-block reductions differ"
                )
    found = minimal_coalition_size(pair, tol)
    report.rows.append(
        {"family": "GHZ", "n": n, "m": None, "r": r, "min_coalition": found,
         "predicted": 2, "check": "block-crossing", "ok": bad == 0 and found == 2}
    )
    if found != 2:
        report.violations.append(f"GHZ n={n} r={r}: minimal coalition {found}, predicted 2")


def _check_min_size(report, family, n, m, r, pair, predicted, tol) -> None:
    found = minimal_coalition_size(pair, tol)
    ok = found == predicted
    report.rows.append(
        {"family": family, "n": n, "m": m, "r": r, "min_coalition": found,
         "predicted": predicted, "check": "min-coalition", "ok": ok}
    )
    if not ok:
        report.violations.append(
            f"{family} n={n} m={m} r={r}: minimal coalition {found}, predicted {predicted}"
        )


def _check_dicke_threshold(report: TheoremReport, n: int, m: int, r: int, tol: float) -> None:
    pair = dicke_pair(DickePairSpec(n, m, r))
    _check_min_size(report, "Dicke", n, m, r, pair, n - r + 1, tol)
    # every coalition of size n - r + 1 succeeds, none of size n - r does
    for size, expected in ((n - r, False), (n - r + 1, True)):
        for subset in itertools.combinations(range(1, n + 1), size):
            if oracle_distinguishable(pair, subset, tol).distinguishable != expected:
                report.violations.append(
                    f"Dicke n={n} m={m} r={r} subset={subset}: expected {expected}"
                )


def verify_threshold_theorems(n_max: int, tol: float = TOL) -> TheoremReport:
    """Exhaustive oracle sweep of every GHZ and Dicke pair with ``n <= n_max``."""
    if n_max > MAX_SWEEP_QUBITS:
        raise ValueError(f"n_max must be <= {MAX_SWEEP_QUBITS}")
    report = TheoremReport(n_max)
    for n in range(2, n_max + 1):
        _check_min_size(report, "GHZ", n, None, 0, ghz_pair(GhzPairSpec(n, 0)), n, tol)
        for r in range(1, n // 2 + 1):
            _check_ghz_blocks(report, n, r, tol)
        for m in range(1, n):
            _check_min_size(report, "Dicke", n, m, 0, dicke_pair(distance0_dicke_spec(n, m)), n, tol)
            for r in range(1, n - m):
                _check_dicke_threshold(report, n, m, r, tol)
    return report


def predicted_threshold(family: str, n: int, r: int) -> int:
    """Coalition size the theorems predict for a pair of the given family."""
    if family == "GHZ":
        return n if r == 0 else 2
    if family == "Dicke":
        return n if r == 0 else n - r + 1
    raise ValueError(family)


__all__ = [
    "DistinguishVerdict",
    "TheoremReport",
    "support_orthogonal",
    "oracle_distinguishable",
    "minimal_coalition_size",
    "distinguish_ghz_two_party",
    "distinguish_dicke_counting",
    "distinguish_global",
    "verify_threshold_theorems",
    "predicted_threshold",
]
