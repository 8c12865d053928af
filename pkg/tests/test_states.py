import itertools
import math

import numpy as np
import pytest

from qss.qcore import PauliAxis, PauliString, PureState, inner_product, stabilizer_eigenvalue
from qss.states import (
    DickePairSpec,
    GhzPairSpec,
    Member,
    StabilizerVector,
    centered_square_coeffs,
    dicke,
    dicke_pair,
    distance0_dicke_spec,
    expected_eigenvalue,
    generalized_dicke,
    ghz_canonical,
    ghz_pair,
    ghz_stabilizer_family,
    variant_pair,
    weight_strings,
)
from qss.variants import KN, NN, Restricted2N

S2 = 1 / math.sqrt(2)


def amps(psi: PureState) -> dict:
    return {
        format(i, f"0{psi.num_qubits}b"): complex(a)
        for i, a in enumerate(psi.amplitudes)
        if abs(a) > 1e-12
    }


def approx_dict(d: dict):
    return {k: pytest.approx(v) for k, v in d.items()}


# --- GHZ ---------------------------------------------------------------------


def test_canonical_bell_state():
    assert amps(ghz_canonical([0, 0])) == approx_dict({"00": S2, "11": S2})


def test_canonical_minus_ghz():
    assert amps(ghz_canonical([1, 0, 0])) == approx_dict({"000": S2, "111": -S2})


def test_canonical_negates_tail():
    assert amps(ghz_canonical([0, 1, 0])) == approx_dict({"010": S2, "101": S2})


def test_canonical_n3_gram_matrix_is_identity():
    states = [ghz_canonical(bits) for bits in itertools.product((0, 1), repeat=3)]
    gram = np.array([[inner_product(a, b) for b in states] for a in states])
    assert np.allclose(gram, np.eye(8), atol=1e-12)


def test_canonical_requires_two_qubits():
    with pytest.raises(ValueError):
        ghz_canonical([0])


def test_ghz_pair_distance_zero():
    first, second = ghz_pair(GhzPairSpec(3, 0))
    assert amps(first) == approx_dict({"000": S2, "111": S2})
    assert amps(second) == approx_dict({"000": S2, "111": -S2})


def test_ghz_pair_distance_one():
    _, second = ghz_pair(GhzPairSpec(4, 1))
    assert amps(second) == approx_dict({"1000": S2, "0111": -S2})


@pytest.mark.parametrize("n", range(2, 9))
def test_ghz_pairs_orthonormal(n):
    for r in range(n // 2 + 1):
        a, b = ghz_pair(GhzPairSpec(n, r))
        assert abs(inner_product(a, b)) < 1e-12


@pytest.mark.parametrize("n,r", [(1, 0), (4, 3), (5, -1)])
def test_ghz_pair_spec_bounds(n, r):
    with pytest.raises(ValueError):
        GhzPairSpec(n, r)


# --- Dicke -------------------------------------------------------------------


def test_w_state():
    c = 1 / math.sqrt(3)
    assert amps(dicke(3, 1)) == approx_dict({"001": c, "010": c, "100": c})


def test_dicke_4_2_has_six_terms():
    d = amps(dicke(4, 2))
    assert len(d) == 6
    assert all(v == pytest.approx(1 / math.sqrt(6)) for v in d.values())


def test_weight_strings_are_lexicographic():
    assert [format(i, "04b") for i in weight_strings(4, 2)] == [
        "0011", "0101", "0110", "1001", "1010", "1100"
    ]


def test_generalized_uniform_equals_dicke():
    c = [1 / math.sqrt(10)] * 10
    assert generalized_dicke(5, 2, c).allclose(dicke(5, 2))


def test_generalized_two_term_singlet():
    psi = generalized_dicke(2, 1, [S2, -S2])
    assert amps(psi) == approx_dict({"01": S2, "10": -S2})


def test_generalized_support_is_weight_m():
    g = np.random.default_rng(3)
    c = g.normal(size=10) + 1j * g.normal(size=10)
    psi = generalized_dicke(5, 3, c / np.linalg.norm(c))
    assert all(k.count("1") == 3 for k in amps(psi))


@pytest.mark.parametrize("coeffs", [[1, 0], [0.5] * 3, [0.5] * 5])
def test_generalized_rejects_bad_coeffs(coeffs):
    with pytest.raises(ValueError):
        generalized_dicke(3, 1, coeffs)


@pytest.mark.parametrize("m", [0, 3])
def test_dicke_weight_bounds(m):
    with pytest.raises(ValueError):
        dicke(3, m)


def test_dicke_pair_uniform():
    a, b = dicke_pair(DickePairSpec(4, 1, 2))
    assert a.allclose(dicke(4, 1)) and b.allclose(dicke(4, 3))


def test_dicke_pair_distance_zero_disjoint_supports():
    a, b = dicke_pair(DickePairSpec(3, 1, 0, (1, 0, 0), (0, 1, 0)))
    assert abs(inner_product(a, b)) < 1e-12
    assert amps(a) == approx_dict({"001": 1}) and amps(b) == approx_dict({"010": 1})


def test_dicke_pair_distance_zero_needs_orthogonality():
    with pytest.raises(ValueError):
        DickePairSpec(3, 1, 0)


@pytest.mark.parametrize("n,m,r", [(4, 1, 3), (4, 0, 1), (4, 2, 2), (3, 1, 2)])
def test_dicke_pair_spec_bounds(n, m, r):
    with pytest.raises(ValueError):
        DickePairSpec(n, m, r)


@pytest.mark.parametrize("n", range(2, 9))
def test_dicke_pairs_orthonormal(n):
    for m in range(1, n):
        a, b = dicke_pair(distance0_dicke_spec(n, m))
        assert abs(inner_product(a, b)) < 1e-9
        for r in range(1, n - m):
            a, b = dicke_pair(DickePairSpec(n, m, r))
            assert abs(inner_product(a, b)) < 1e-12


def test_centered_square_coeffs():
    lengths = {math.comb(n, m) for n in range(2, 9) for m in range(1, n)}
    for length in sorted(lengths):
        c = np.array(centered_square_coeffs(length))
        assert abs(c.sum()) < 1e-12 and abs(np.linalg.norm(c) - 1) < 1e-12
        assert np.all(np.abs(c) > 1e-6)
    assert centered_square_coeffs(2) == pytest.approx((-S2, S2))


# --- stabilizer family -------------------------------------------------------


def test_family_n3():
    family = ghz_stabilizer_family(3)
    assert [str(p) for _, p in family] == ["XXX", "YYX", "YXY", "XYY"]
    assert str(family[0][0]) == "O(0)" and str(family[2][0]) == "O(1,3)"


@pytest.mark.parametrize("n", range(2, 9))
def test_family_size_and_y_count(n):
    family = ghz_stabilizer_family(n)
    assert len(family) == 1 + math.comb(n, 2)
    assert all(str(p).count("Y") in (0, 2) for _, p in family)


def test_stabilizer_vector_weight():
    with pytest.raises(ValueError):
        StabilizerVector((1, 0, 0))
    with pytest.raises(ValueError):
        StabilizerVector.pair(3, 2, 2)


# --- eigenvalue tables -------------------------------------------------------


def test_expected_eigenvalue_examples():
    assert expected_eigenvalue(NN(3), StabilizerVector.zero(3), Member.FIRST) == 1
    assert expected_eigenvalue(Restricted2N(4, 2), StabilizerVector.pair(4, 1, 2), Member.SECOND) == 1
    assert expected_eigenvalue(KN(6, 5, 2), "Z", Member.FIRST) == 1


def test_expected_eigenvalue_rejects_mismatch():
    with pytest.raises(ValueError):
        expected_eigenvalue(KN(4, 3, 1), "X", Member.FIRST)
    with pytest.raises(ValueError):
        expected_eigenvalue(NN(3), "Z", Member.FIRST)
    with pytest.raises(ValueError):
        expected_eigenvalue(KN(4, 3, 1), StabilizerVector.zero(4), Member.FIRST)


def _ghz_variants(n_max=8):
    for n in range(2, n_max + 1):
        yield NN(n)
        for r in range(1, n // 2 + 1):
            yield Restricted2N(n, r)


@pytest.mark.parametrize("variant", list(_ghz_variants()), ids=str)
def test_ghz_table_matches_simulation(variant):
    pair = variant_pair(variant)
    for stab, pauli in ghz_stabilizer_family(variant.n):
        for which in Member:
            got = stabilizer_eigenvalue(pair[which], pauli)
            assert got is not None
            assert got == expected_eigenvalue(variant, stab, which)


def test_ghz_r_boundary_same_block_rule():
    # n=4, r=2: O(2,3) straddles the boundary -> -1; O(3,4) same block -> +1
    _, second = ghz_pair(GhzPairSpec(4, 2))
    assert stabilizer_eigenvalue(second, PauliString.parse("XYYX")) == -1
    assert stabilizer_eigenvalue(second, PauliString.parse("XXYY")) == 1


def _kn_variants(n_max=8):
    for n in range(2, n_max + 1):
        for k in range(math.ceil(n / 2), n):
            for m in range(1, n + 2):
                try:
                    yield KN(n, k, m)
                except ValueError:
                    pass


@pytest.mark.parametrize("variant", list(_kn_variants()), ids=str)
def test_dicke_table_matches_simulation(variant):
    pair = variant_pair(variant)
    nq = variant.num_qubits
    for which in Member:
        for axis in "XYZ":
            try:
                expected = expected_eigenvalue(variant, axis, which)
            except ValueError:
                continue
            assert stabilizer_eigenvalue(pair[which], PauliString.uniform(axis, nq)) == expected


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_half_dicke_is_xy_stabilized(n):
    d = dicke(n, n // 2)
    assert stabilizer_eigenvalue(d, PauliString.uniform(PauliAxis.X, n)) == 1
    assert stabilizer_eigenvalue(d, PauliString.uniform(PauliAxis.Y, n)) == 1
