import sys
from pathlib import Path

src = str((Path(__file__).parent / "../src").resolve())
sys.path.insert(0, src)

from unittest import TestCase

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pytest import fixture, raises

from mubs.classes import Basis, MubSet, PreconditionError, ReducibleModulus
from mubs.constructions import (
    PRINTED_ORDER,
    W_PAIRING,
    construct,
    diagonalization_holds,
    eigenvalue_exponent,
    master_formula,
    matrix_Ha,
    mub_alternative,
    mub_gf,
    mub_gr,
    mub_master,
    mub_w4,
    printed,
)
from mubs.verify import bases_equivalent, hadamard_check

# exponents over zeta_4, printed order, |00> amplitude first
PRINTED_D4 = {
    0: [(0, 0, 0, 0), (0, 2, 0, 2), (0, 0, 2, 2), (0, 2, 2, 0)],
    1: [(0, 3, 0, 1), (0, 1, 2, 1), (0, 1, 0, 3), (0, 3, 2, 3)],
    2: [(0, 0, 3, 1), (0, 2, 1, 1), (0, 2, 3, 3), (0, 0, 1, 3)],
    3: [(0, 1, 1, 2), (0, 3, 1, 0), (0, 1, 3, 0), (0, 3, 3, 2)],
}

# exponents over omega = zeta_3, vectors |a 0>, |a 1>, |a 2>
PRINTED_D3 = {
    0: [(0, 0, 0), (2, 1, 0), (1, 2, 0)],
    1: [(1, 1, 0), (0, 2, 0), (2, 0, 0)],
    2: [(2, 2, 0), (1, 0, 0), (0, 1, 0)],
}


@fixture
def gr2():
    return mub_gr(2)


def exponents(basis):
    return [v.exponents for v in basis]


class Test_Master(TestCase):
    def test_qubit(self):
        S = mub_master(2)
        assert S.labels == ["B_0", "B_1", "B_2"]
        assert exponents(S[0]) == [(0, 0), (2, 0)]
        assert exponents(S[1]) == [(1, 0), (3, 0)]
        assert S[2].kind == "computational"
        assert S.completeness_claimed

    def test_qutrit(self):
        S = mub_master(3)
        assert S.conductor == 6
        for a, rows in PRINTED_D3.items():
            assert exponents(S[a]) == [tuple(2 * e for e in row) for row in rows]

    def test_composite_claims(self):
        S = mub_master(6)
        assert len(S) == 7
        assert not S.completeness_claimed
        assert S.claimed == (0, 1, 6)

    def test_small_dimension(self):
        with raises(PreconditionError):
            mub_master(1)

    @settings(deadline=None, suppress_health_check=HealthCheck.all())
    @given(st.integers(2, 30), st.data())
    def test_formula_closure(self, d, data):
        a = data.draw(st.integers(0, d - 1))
        alpha = data.draw(st.integers(0, d - 1))
        row = master_formula(d, a)(alpha)
        assert row.shape == (d,)
        assert ((0 <= row) & (row < 2 * d)).all()
        # last component is always zeta^0
        assert row[-1] == 0


class Test_Alternative(TestCase):
    def test_odd_prime_rows(self):
        S = mub_alternative(3)
        assert exponents(S[1])[0] == (0, 1, 1)
        assert S.completeness_claimed

    def test_qubit_bases_coincide(self):
        S = mub_alternative(2)
        assert not S.completeness_claimed
        assert set(exponents(S[0])) == set(exponents(S[1]))

    def test_matches_prime_field(self):
        for p in (3, 5, 7):
            assert mub_alternative(p).same_bases(mub_gf(p))

    def test_not_prime(self):
        with raises(PreconditionError):
            mub_alternative(9)


class Test_GaloisField(TestCase):
    def test_sizes(self):
        for (p, m), n in {(3, 2): 10, (3, 3): 28, (5, 2): 26, (7, 2): 50}.items():
            S = mub_gf(p, m)
            assert len(S) == n
            assert S.dimension == p**m and S.conductor == p
            assert S.field["p"] == p and S.field["m"] == m

    def test_second_modulus(self):
        S = mub_gf(3, 2, (2, 1, 1))
        assert S.field["modulus"] == [2, 1, 1]
        assert not S.same_bases(mub_gf(3, 2))

    def test_elements_are_labels(self):
        assert mub_gf(3, 2).field["elements"][:3] == ["00", "01", "02"]

    def test_even_characteristic_refused(self):
        with raises(PreconditionError, match="odd prime"):
            mub_gf(2, 3)

    def test_reducible_modulus(self):
        with raises(ReducibleModulus):
            mub_gf(3, 2, (2, 0, 1))


class Test_GaloisRing(TestCase):
    def test_one_qubit(self):
        S = mub_gr(1)
        assert exponents(S[0]) == [(0, 0), (0, 2)]
        assert exponents(S[1]) == [(0, 1), (0, 3)]
        assert S.ring["basic_irreducible"] == [3, 1]

    def test_two_qubits_printed(self):
        S = mub_gr(2)
        assert S.ring["teichmuller"] == ["0", "ξ", "3+3ξ", "1"]
        for b, rows in PRINTED_D4.items():
            assert [v.exponents for v in printed(S[b], b)] == rows

    def test_sizes(self):
        for m, n in {1: 3, 2: 5, 3: 9, 4: 17}.items():
            S = mub_gr(m)
            assert len(S) == n and S.conductor == 4


class Test_TensorBases(TestCase):
    def test_labels(self):
        assert mub_w4().labels == ["W_00", "W_11", "W_01", "W_10", "B_4"]

    def test_normalised_phase(self):
        for basis in mub_w4().bases[:4]:
            assert all(v.exponents[0] == 0 for v in basis)

    def test_matches_printed_vectors(self):
        W = mub_w4()
        for b, rows in PRINTED_D4.items():
            assert [v.exponents for v in printed(W[W_PAIRING[b]], b)] == rows, b

    def test_galois_ring_pairing(self):
        W, R = mub_w4(), mub_gr(2)
        for b, label in W_PAIRING.items():
            eq = bases_equivalent(R[b], W[label])
            assert eq is not None
            assert eq.permutation == (0, 1, 2, 3), label
            assert eq.phases == (0, 0, 0, 0), label


def test_printed_order_is_a_permutation():
    for order in PRINTED_ORDER.values():
        assert sorted(order) == [0, 1, 2, 3]


def test_hadamard_matrices():
    for d in range(2, 14):
        for a in range(d):
            assert hadamard_check(matrix_Ha(d, a), d), (d, a)


def test_diagonalization():
    for d in range(2, 8):
        for a in range(d):
            assert diagonalization_holds(d, a), (d, a)


def test_eigenvalue_exponent():
    assert eigenvalue_exponent(3, 0, 1) == 4
    assert eigenvalue_exponent(2, 1, 0) == 1


def test_construct_dispatch(gr2):
    assert construct("master", 3).same_bases(mub_master(3))
    assert construct("gf", 3, 2).same_bases(mub_gf(3, 2))
    assert construct("gf", 5).same_bases(mub_gf(5))
    assert construct("gr", 2).same_bases(gr2)
    assert construct("w4").method == "w4"
    with raises(PreconditionError):
        construct("master")
    with raises(PreconditionError):
        construct("hadamard", 3)


def test_set_metadata_defaults():
    S = MubSet(2, 1, "computational", (Basis.computational("B_0", 2),), False, (0,))
    assert S.field is None and S.ring is None
    assert S.params == {}
    other = MubSet(2, 1, "computational", (Basis.computational("B_0", 2),), False, (0,))
    assert other.params is not S.params
    assert mub_gf(3).field["p"] == 3 and mub_gf(3).params == {"p": 3, "m": 1}
