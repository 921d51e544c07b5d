import sys
from pathlib import Path

src = str((Path(__file__).parent / "../src").resolve())
sys.path.insert(0, src)

from itertools import product
from unittest import TestCase

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pytest import raises

from mubs.classes import PreconditionError
from mubs.constructions import matrix_Ha, mub_alternative, mub_gf, mub_gr, mub_master, mub_w4
from mubs.fields import gf_create
from mubs.rings import gr_create
from mubs.verify import (
    Equivalence,
    VerifyOptions,
    bases_equivalent,
    check_mub_set,
    check_unbiased,
    gauss_sum,
    hadamard_check,
    is_prime_power,
    mub_bounds,
    mub_gauss_parameters,
    ring_character_sum,
    unitary_invariance,
    weil_sum,
)


class Test_CompleteSets(TestCase):
    def test_master_primes(self):
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            report = check_mub_set(mub_master(p))
            assert report.complete, p
            assert report.unbiased_count == report.pair_count == (p + 1) * p // 2
            assert report.claims_verified

    def test_alternative_odd_primes(self):
        for p in (3, 5, 7, 11):
            assert check_mub_set(mub_alternative(p)).complete

    def test_galois_fields(self):
        for p, m in ((3, 2), (3, 3), (5, 2), (7, 2)):
            report = check_mub_set(mub_gf(p, m))
            assert report.complete and report.claims_verified, (p, m)
        report = check_mub_set(mub_gf(3, 2))
        assert report.unbiased_count == report.pair_count == 45

    def test_second_modulus_same_verdict(self):
        assert check_mub_set(mub_gf(3, 2, (2, 1, 1))).complete

    def test_galois_rings(self):
        for m in (1, 2, 3, 4):
            assert check_mub_set(mub_gr(m)).complete, m

    def test_tensor_bases(self):
        assert check_mub_set(mub_w4()).complete


class Test_Violations(TestCase):
    def test_alternative_qubit_witness(self):
        S = mub_alternative(2)
        report = check_mub_set(S)
        assert not report.claims_verified
        status = report.status("B_0", "B_1")
        assert status.status == "violation"
        w = status.witness
        assert (w.alpha, w.beta) == (0, 1)
        assert abs(w.modulus - 1) < 1e-12
        # the shared vector
        assert S[0][w.alpha] == S[1][w.beta]
        assert report.all_orthonormal

    def test_composite_master_keeps_its_claims(self):
        report = check_mub_set(mub_master(6))
        assert not report.complete
        assert report.claims_verified
        assert report.status(0, 1).status == "unbiased"
        assert report.status("B_1", "B_6").status == "unbiased"
        assert report.violations

    def test_float_agrees_with_exact(self):
        for S in (mub_gf(3, 2), mub_alternative(2), mub_master(6)):
            exact = check_mub_set(S)
            numeric = check_mub_set(S, VerifyOptions(mode="float"))
            assert [s.status for s in exact.pairs] == [s.status for s in numeric.pairs]

    def test_workers_keep_order(self):
        S = mub_gf(5, 1)
        one = check_mub_set(S)
        many = check_mub_set(S, VerifyOptions(workers=4))
        assert one.pairs == many.pairs and one.orthonormal == many.orthonormal

    def test_report_views(self):
        report = check_mub_set(mub_alternative(2))
        frame = report.to_frame()
        assert frame.shape == (3, 3)
        assert list(frame.loc["B_0"]) == ["O", "X", "U"]
        d = report.to_dict()
        assert d["pairs_unbiased"] == 2 and d["pairs_total"] == 3
        assert d["violations"][0]["witness"]["alpha"] == 0


class Test_Options(TestCase):
    def test_bad_options(self):
        with raises(PreconditionError):
            VerifyOptions(mode="symbolic")
        with raises(PreconditionError):
            VerifyOptions(workers=0)

    def test_conductor_cap(self):
        with raises(PreconditionError):
            check_mub_set(mub_master(3), VerifyOptions(conductor_cap=5))

    def test_dimension_mismatch(self):
        with raises(PreconditionError):
            check_unbiased(mub_master(2)[0], mub_master(3)[0])


def random_unitary(rng, d: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q


def test_unitary_invariance():
    rng = np.random.default_rng(7)
    assert unitary_invariance(mub_w4(), random_unitary(rng, 4))
    assert unitary_invariance(mub_alternative(2), random_unitary(rng, 2))
    assert unitary_invariance(mub_master(5), random_unitary(rng, 5))


def test_unitary_invariance_shape():
    with raises(PreconditionError):
        unitary_invariance(mub_alternative(2), np.eye(4))
    with raises(PreconditionError):
        unitary_invariance(mub_w4(), np.eye(4)[:, :2])


class Test_GaussSums(TestCase):
    def test_mub_parameters(self):
        for p in (3, 5, 7, 11, 13):
            for a, b in product(range(p), repeat=2):
                if a == b:
                    continue
                for alpha, beta in product(range(p), repeat=2):
                    g = gauss_sum(*mub_gauss_parameters(p, a, b, alpha, beta))
                    assert g.certified and g.abs2 == p

    def test_value_is_the_inner_product(self):
        p = 5
        S = mub_master(p)
        for a, b, alpha, beta in ((0, 1, 2, 3), (4, 2, 0, 1), (3, 1, 4, 4)):
            expected = np.vdot(S[a][alpha].amplitudes(), S[b][beta].amplitudes())
            g = gauss_sum(*mub_gauss_parameters(p, a, b, alpha, beta))
            assert abs(g.value / p - expected) < 1e-12
            assert abs(complex(g.exact) - g.value) < 1e-9

    @settings(deadline=None, suppress_health_check=HealthCheck.all())
    @given(st.integers(-15, 15), st.integers(-30, 30), st.integers(-15, 15))
    def test_modulus_when_defined(self, u, v, w):
        try:
            g = gauss_sum(u, v, w)
        except PreconditionError:
            return
        assert g.abs2 == abs(w)

    def test_preconditions(self):
        with raises(PreconditionError):
            gauss_sum(0, 1, 3)
        with raises(PreconditionError):
            gauss_sum(2, 0, 4)
        with raises(PreconditionError):
            gauss_sum(1, 0, 3)


def test_hadamard_products():
    for d in (2, 3, 5, 7, 11, 13):
        for a, b in product(range(d), repeat=2):
            if a != b:
                assert hadamard_check(matrix_Ha(d, a).dagger() @ matrix_Ha(d, b), d), (d, a, b)


def test_equivalence_of_qubit_constructions():
    # master B_1 = {(i, 1), (-i, 1)}, ring B_1 = {(1, i), (1, -i)}
    eq = bases_equivalent(mub_master(2)[1], mub_gr(1)[1])
    assert eq == Equivalence(permutation=(1, 0), phases=(1, 3), conductor=4)
    assert bases_equivalent(mub_master(2)[0], mub_master(2)[1]) is None
    assert bases_equivalent(mub_master(2)[2], mub_master(2)[0]) is None


def test_bounds():
    assert mub_bounds(6) == (3, 7)
    assert mub_bounds(15) == (4, 16)
    assert mub_bounds(9) == (10, 10)
    assert is_prime_power(9) and is_prime_power(7)
    assert not is_prime_power(6)
    with raises(PreconditionError):
        mub_bounds(1)


def test_weil_sums():
    for p, m in ((3, 1), (3, 2), (5, 1), (5, 2)):
        F = gf_create(p, m)
        q = F.order
        for u in F.elements()[1:]:
            for v in F.elements():
                W = weil_sum(F, u, v)
                assert W * W.conj() == q
        assert weil_sum(F, F.zero, F.zero) == q
        assert weil_sum(F, F.zero, F.one).is_zero()


def test_ring_character_sums():
    for m in (1, 2, 3, 4):
        R = gr_create(m)
        cases = set()
        for u in R.elements():
            s = ring_character_sum(R, u)
            assert s.consistent, (m, u)
            cases.add(s.case)
        assert cases == {"zero", "even", "unit"}
