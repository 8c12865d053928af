import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qss.locc import (
    WITNESS_IDENTICAL,
    WITNESS_ORTHOGONAL,
    distinguish_dicke_counting,
    distinguish_ghz_two_party,
    distinguish_global,
    minimal_coalition_size,
    oracle_distinguishable,
    support_orthogonal,
    verify_threshold_theorems,
)
from qss.qcore import DensityMatrix, DimensionError, partial_trace
from qss.states import (
    DickePairSpec,
    GhzPairSpec,
    Member,
    dicke_pair,
    distance0_dicke_spec,
    ghz_pair,
)


def z_outcome_support(psi, subset):
    """All bitstrings on ``subset`` that a joint Z measurement can return."""
    n = psi.num_qubits
    seen = set()
    for idx in np.flatnonzero(np.abs(psi.amplitudes) > 1e-12):
        bits = format(idx, f"0{n}b")
        seen.add("".join(bits[q - 1] for q in subset))
    return seen


# --- support_orthogonal ------------------------------------------------------


def test_identical_supports_not_orthogonal():
    rho = DensityMatrix(np.diag([0.5, 0.5]))
    assert not support_orthogonal(rho, rho)


def test_orthogonal_projectors():
    assert support_orthogonal(DensityMatrix(np.diag([1, 0])), DensityMatrix(np.diag([0, 1])))


def test_support_orthogonal_dimension_mismatch():
    with pytest.raises(DimensionError):
        support_orthogonal(DensityMatrix(np.eye(2) / 2), DensityMatrix(np.eye(4) / 4))


def test_dicke_1_3_of_4_reductions_on_three_qubits():
    a, b = dicke_pair(DickePairSpec(4, 1, 2))
    for subset in itertools.combinations(range(1, 5), 3):
        assert support_orthogonal(partial_trace(a, subset), partial_trace(b, subset))


# --- oracle ------------------------------------------------------------------


def test_oracle_ghz0_two_of_three():
    v = oracle_distinguishable(ghz_pair(GhzPairSpec(3, 0)), [1, 2])
    assert not v.distinguishable and v.witness == WITNESS_IDENTICAL


def test_oracle_ghz0_all_three():
    v = oracle_distinguishable(ghz_pair(GhzPairSpec(3, 0)), [1, 2, 3])
    assert v.distinguishable and v.witness == WITNESS_ORTHOGONAL


def test_oracle_ghz1_cross_block_pair():
    assert oracle_distinguishable(ghz_pair(GhzPairSpec(3, 1)), [1, 2])


def test_oracle_ghz2_same_block():
    assert not oracle_distinguishable(ghz_pair(GhzPairSpec(5, 2)), [1, 2])


@pytest.mark.parametrize("subset", [[], [0], [1, 1], [5]])
def test_oracle_invalid_subset(subset):
    with pytest.raises(ValueError):
        oracle_distinguishable(ghz_pair(GhzPairSpec(4, 0)), subset)


@pytest.mark.parametrize(
    "pair,expected",
    [
        (dicke_pair(DickePairSpec(4, 1, 2)), 3),
        (ghz_pair(GhzPairSpec(4, 0)), 4),
        (ghz_pair(GhzPairSpec(4, 1)), 2),
        (dicke_pair(DickePairSpec(5, 1, 1)), 5),
        (dicke_pair(DickePairSpec(5, 1, 2)), 4),
    ],
)
def test_minimal_coalition_size(pair, expected):
    assert minimal_coalition_size(pair) == expected


def test_minimal_coalition_rejects_non_orthogonal():
    a, _ = ghz_pair(GhzPairSpec(3, 0))
    with pytest.raises(ValueError):
        minimal_coalition_size((a, a))


def test_sparse_distance0_pair_opens_early():
    # Product-like coefficients make a single qubit enough; the default
    # distance-0 coefficients are chosen to avoid this.
    pair = dicke_pair(DickePairSpec(3, 1, 0, (1, 0, 0), (0, 1, 0)))
    assert minimal_coalition_size(pair) == 1
    assert minimal_coalition_size(dicke_pair(distance0_dicke_spec(3, 1))) == 3


# --- executable protocols ----------------------------------------------------


def test_two_party_deterministic_examples(rng):
    spec = GhzPairSpec(4, 1)
    first, second = ghz_pair(spec)
    for _ in range(50):
        assert distinguish_ghz_two_party(first, spec, 1, 3, rng) is Member.FIRST
        assert distinguish_ghz_two_party(second, spec, 1, 3, rng) is Member.SECOND


def test_two_party_mixed_trials(rng):
    spec = GhzPairSpec(6, 2)
    pair = ghz_pair(spec)
    labels = rng.integers(0, 2, size=1000)
    guesses = [distinguish_ghz_two_party(pair[a], spec, 2, 5, rng) for a in labels]
    assert all(g == a for g, a in zip(guesses, labels))


@pytest.mark.parametrize("i,j,r", [(2, 1, 1), (1, 1, 1), (3, 4, 2), (1, 2, 0)])
def test_two_party_index_constraints(i, j, r, rng):
    spec = GhzPairSpec(4, r)
    with pytest.raises(ValueError):
        distinguish_ghz_two_party(ghz_pair(spec)[0], spec, i, j, rng)


def test_counting_outcome_enumeration():
    spec = DickePairSpec(4, 1, 2)
    first, second = dicke_pair(spec)
    counts = lambda psi: {s.count("1") for s in z_outcome_support(psi, (1, 2, 3))}
    assert counts(first) == {0, 1}
    assert counts(second) == {2, 3}


@pytest.mark.parametrize("n", range(3, 8))
def test_counting_separation_brute_force(n):
    # weight m never shows more than m ones; weight m + r never fewer than m + 1
    for m in range(1, n - 1):
        for r in range(1, n - m):
            a, b = dicke_pair(DickePairSpec(n, m, r))
            for subset in itertools.combinations(range(1, n + 1), n - r + 1):
                assert max(s.count("1") for s in z_outcome_support(a, subset)) <= m
                assert min(s.count("1") for s in z_outcome_support(b, subset)) >= m + 1


def test_counting_examples(rng):
    spec = DickePairSpec(4, 1, 2)
    first, second = dicke_pair(spec)
    for _ in range(50):
        assert distinguish_dicke_counting(first, spec, [1, 2, 3], rng) is Member.FIRST
        assert distinguish_dicke_counting(second, spec, [1, 2, 3], rng) is Member.SECOND


def test_counting_mixed_trials(rng):
    spec = DickePairSpec(6, 2, 2)
    pair = dicke_pair(spec)
    for _ in range(1000):
        a = int(rng.integers(2))
        subset = sorted(rng.choice(np.arange(1, 7), size=5, replace=False))
        assert distinguish_dicke_counting(pair[a], spec, subset, rng) == a


def test_counting_rejects_wrong_subset(rng):
    spec = DickePairSpec(4, 1, 2)
    with pytest.raises(ValueError):
        distinguish_dicke_counting(dicke_pair(spec)[0], spec, [1, 2], rng)
    spec0 = distance0_dicke_spec(4, 1)
    with pytest.raises(ValueError):
        distinguish_dicke_counting(dicke_pair(spec0)[0], spec0, [1, 2, 3, 4], rng)


@pytest.mark.parametrize(
    "pair",
    [ghz_pair(GhzPairSpec(5, 0)), dicke_pair(distance0_dicke_spec(3, 1)), dicke_pair(DickePairSpec(5, 2, 1))],
)
def test_global_measurement(pair, rng):
    for _ in range(100):
        assert distinguish_global(pair, pair[0], rng) is Member.FIRST
        assert distinguish_global(pair, pair[1], rng) is Member.SECOND


def test_global_rejects_non_orthogonal(rng):
    a, _ = ghz_pair(GhzPairSpec(3, 0))
    with pytest.raises(ValueError):
        distinguish_global((a, a), a, rng)


# --- theorem sweep -----------------------------------------------------------


def test_verify_threshold_theorems_n6():
    report = verify_threshold_theorems(6)
    assert report.ok, report.violations
    row = next(r for r in report.rows if r["family"] == "Dicke" and (r["n"], r["m"], r["r"]) == (5, 1, 1))
    assert row["min_coalition"] == 5


def test_verify_threshold_theorems_rejects_large_n():
    with pytest.raises(ValueError):
        verify_threshold_theorems(9)


# --- properties --------------------------------------------------------------


def _pairs_up_to(n_max):
    for n in range(2, n_max + 1):
        for r in range(n // 2 + 1):
            yield ghz_pair(GhzPairSpec(n, r))
        for m in range(1, n):
            yield dicke_pair(distance0_dicke_spec(n, m))
            for r in range(1, n - m):
                yield dicke_pair(DickePairSpec(n, m, r))


PAIRS_6 = list(_pairs_up_to(6))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(PAIRS_6), st.data())
def test_monotone_under_supersets(pair, data):
    n = pair[0].num_qubits
    subset = data.draw(st.lists(st.integers(1, n), min_size=1, unique=True))
    extra = data.draw(st.lists(st.integers(1, n), unique=True))
    superset = sorted(set(subset) | set(extra))
    if oracle_distinguishable(pair, subset):
        assert oracle_distinguishable(pair, superset)


@pytest.mark.parametrize("n", range(3, 7))
def test_dicke_verdict_depends_only_on_size(n):
    for m in range(1, n):
        for r in range(1, n - m):
            pair = dicke_pair(DickePairSpec(n, m, r))
            for size in range(1, n + 1):
                verdicts = {
                    oracle_distinguishable(pair, s).distinguishable
                    for s in itertools.combinations(range(1, n + 1), size)
                }
                assert len(verdicts) == 1


@pytest.mark.parametrize("n", range(2, 8))
def test_ghz0_proper_reductions_identical(n):
    a, b = ghz_pair(GhzPairSpec(n, 0))
    for size in range(1, n):
        for s in itertools.combinations(range(1, n + 1), size):
            assert np.allclose(partial_trace(a, s).matrix, partial_trace(b, s).matrix, atol=1e-9, rtol=0)


@pytest.mark.parametrize("n", range(3, 9))
def test_converse_at_threshold(n):
    for m in range(1, n - 1):
        for r in range(1, n - m):
            pair = dicke_pair(DickePairSpec(n, m, r))
            for s in itertools.combinations(range(1, n + 1), n - r):
                assert not oracle_distinguishable(pair, s)
