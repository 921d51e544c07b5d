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

from mubs.classes import ContextMismatch, PreconditionError
from mubs.constructions import eigenvalue_exponent, matrix_Va, mub_master
from mubs.cyclo import CycloMatrix
from mubs.pauli import (
    PauliLabel,
    class_basis_match,
    class_operator,
    commutator,
    commutator_subgroup,
    commuting_classes,
    eigen_certificate,
    gen_pauli,
    group_check,
    lower_central_series,
    pauli_group,
    pauli_table,
    structure_constants,
    structure_identity_holds,
    weyl_pair,
)


def labels(d: int):
    return st.tuples(*[st.integers(0, d - 1)] * 3).map(lambda t: PauliLabel(*t, d))


class Test_Weyl(TestCase):
    def test_weyl_relation(self):
        for d in range(2, 13):
            X, Z = weyl_pair(d)
            assert X @ Z == (Z @ X).times_root(1)
            assert X**d == CycloMatrix.identity(d)
            assert Z**d == CycloMatrix.identity(d)

    def test_trace_orthogonality(self):
        for d in range(2, 8):
            table = pauli_table(d)
            for (ab, U), (ef, V) in product(table, repeat=2):
                t = (U.dagger() @ V).trace()
                assert t == (d if ab == ef else 0), (d, ab, ef)

    def test_shift_with_phase_is_a_pauli_matrix(self):
        for d in (2, 3, 5):
            for a in range(d):
                assert matrix_Va(d, a) == gen_pauli(d, 1, a)

    def test_qubit_table(self):
        table = dict(pauli_table(2))
        assert len(table) == 4
        X, Z = table["10"], table["01"]
        assert table["11"] == X @ Z
        np.testing.assert_allclose(table["11"].to_complex(), [[0, -1], [1, 0]], atol=1e-12)


class Test_Group(TestCase):
    def test_law_matches_matrices(self):
        for d in (2, 3, 4):
            G = pauli_group(d)
            assert len(G) == d**3
            matrices = {u: u.matrix() for u in G}
            for u, v in product(G, repeat=2):
                assert (u * v).matrix() == matrices[u] @ matrices[v], (u, v)

    @settings(deadline=None, max_examples=300, suppress_health_check=HealthCheck.all())
    @given(labels(5), labels(5))
    def test_law_matches_matrices_d5(self, u, v):
        assert (u * v).matrix() == u.matrix() @ v.matrix()

    @settings(deadline=None, suppress_health_check=HealthCheck.all())
    @given(st.sampled_from([2, 3, 5, 6]).flatmap(lambda d: st.tuples(labels(d), labels(d), labels(d))))
    def test_label_axioms(self, uvw):
        u, v, w = uvw
        d = u.d
        e = PauliLabel(0, 0, 0, d)
        assert (u * v) * w == u * (v * w)
        assert u * u.inverse() == e == u.inverse() * u
        c = commutator(u, v)
        assert c.b == 0 and c.c == 0

    def test_group_check(self):
        for d in (2, 3):
            check = group_check(d)
            assert check.ok
            assert check.order == d**3
        assert group_check(2).series_lengths == (8, 2, 1)
        assert group_check(3).series_lengths == (27, 3, 1)

    def test_commutator_subgroup_is_central(self):
        for d in (2, 3):
            scalars = {PauliLabel(a, 0, 0, d) for a in range(d)}
            assert commutator_subgroup(d) == frozenset(scalars)
            assert len(lower_central_series(d)[-1]) == 1

    def test_mixed_dimensions(self):
        with raises(ContextMismatch):
            PauliLabel(0, 1, 0, 2) * PauliLabel(0, 1, 0, 3)
        with raises(PreconditionError):
            PauliLabel(0, 3, 0, 3)


class Test_StructureConstants(TestCase):
    def test_identity_on_all_pairs(self):
        for d in (2, 3, 5):
            for ab, ef in product(product(range(d), repeat=2), repeat=2):
                for sign in "-+":
                    assert structure_identity_holds(d, ab, ef, sign), (d, ab, ef, sign)

    def test_values(self):
        (s,) = structure_constants(3, (1, 0), (0, 1))
        assert (s.i, s.j, s.first, s.second) == (1, 1, 0, 2)
        # X and Z anticommute for qubits
        assert structure_constants(2, (1, 0), (0, 1), "+") == []


class Test_Classes(TestCase):
    def test_partition(self):
        for p in (2, 3, 5, 7):
            classes = commuting_classes(p)
            assert len(classes) == p + 1
            seen = [(u.b, u.c) for c in classes for u in c.members]
            assert all(len(c.members) == p - 1 for c in classes)
            assert sorted(seen) == sorted(set(product(range(p), repeat=2)) - {(0, 0)})
            for c in classes:
                for u, v in product(c.members, repeat=2):
                    assert u * v == v * u

    def test_d5_table(self):
        assert [str(c) for c in commuting_classes(5)] == [
            "𝒱_0 = {01, 02, 03, 04}",
            "𝒱_1 = {10, 20, 30, 40}",
            "𝒱_2 = {11, 22, 33, 44}",
            "𝒱_3 = {12, 24, 31, 43}",
            "𝒱_4 = {13, 21, 34, 42}",
            "𝒱_5 = {14, 23, 32, 41}",
        ]

    def test_composite_rejected(self):
        with raises(PreconditionError):
            commuting_classes(6)
        with raises(PreconditionError):
            class_basis_match(4)

    def test_class_to_basis_bijection(self):
        for p in (2, 3, 5):
            report = class_basis_match(p)
            assert report.bijective
            expected = {0: f"B_{p}"} | {j: f"B_{j - 1}" for j in range(1, p + 1)}
            assert report.mapping() == expected

    def test_eigenvalues_of_shift_with_phase(self):
        # V_a |a alpha> = zeta_2d^((d - 1) a - 2 alpha) |a alpha>
        for d in range(2, 13):
            S = mub_master(d)
            for a in range(d):
                exps, n = eigen_certificate(matrix_Va(d, a), S[a])
                assert (2 * d) % n == 0, (d, a)
                lifted = [e * (2 * d // n) for e in exps]
                assert lifted == [eigenvalue_exponent(d, a, al) for al in range(d)], (d, a)

    def test_no_certificate_for_unbiased_basis(self):
        S = mub_master(3)
        assert eigen_certificate(class_operator(3, 0), S[0]) is None
