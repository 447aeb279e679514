from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherespec import lie, spectra
from spherespec.lie import (
    Weight,
    canonical_variation,
    casimir_scalar,
    circle,
    is_dominant,
    oracle_eigenvalue,
    oracle_multiplicity,
    sp1,
    spherical_weights,
    spin8,
    spin9,
    symplectic,
    unitary,
    weyl_dimension,
    with_gram,
)
from spherespec.spectra import DivisionAlgebra, DomainError, SphereModel

C1 = SphereModel(DivisionAlgebra.COMPLEX, 1)
H1 = SphereModel(DivisionAlgebra.QUATERNION, 1)
O1 = SphereModel(DivisionAlgebra.OCTONION, 1)


def unitary_dim_closed_form(n: int, k: int, l: int) -> int:
    """Independent closed form for the u(n+1) spherical representations."""
    num = (k + l + n) * spectra.binom(k + n - 1, k) * spectra.binom(l + n - 1, l)
    assert num % n == 0
    return num // n


class TestRho:
    def test_spin9_half_sum(self):
        assert spin9().two_rho == (7, 5, 3, 1)

    def test_spin8_half_sum(self):
        assert spin8().two_rho == (6, 4, 2, 0)

    def test_unitary_half_sum(self):
        # coefficient of eps_i in 2*rho is n + 2 - 2i (i starting at 1)
        for n in range(1, 5):
            rs = unitary(n + 1)
            assert rs.two_rho == tuple(n + 2 - 2 * i for i in range(1, n + 2))

    def test_symplectic_half_sum(self):
        assert symplectic(2).two_rho == (4, 2)
        assert sp1().two_rho == (2,)

    def test_circle_is_rootless(self):
        assert circle().positive_roots == ()
        assert circle().two_rho == (0,)


class TestDominance:
    def test_unitary_requires_nonincreasing_integers(self):
        rs = unitary(3)
        assert is_dominant(rs, Weight.of(3, 0, -2))
        assert not is_dominant(rs, Weight.of(0, 1, 0))
        assert not is_dominant(rs, Weight.of(Fraction(1, 2), 0, 0))

    def test_symplectic_requires_nonnegative_tail(self):
        rs = symplectic(2)
        assert is_dominant(rs, Weight.of(2, 1))
        assert not is_dominant(rs, Weight.of(2, -1))

    def test_spin_allows_half_integers_of_equal_parity(self):
        rs = spin9()
        assert is_dominant(rs, Weight.of(Fraction(3, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
        assert not is_dominant(rs, Weight.of(1, Fraction(1, 2), 0, 0))  # mixed parity
        assert not is_dominant(rs, Weight.of(1, 1, 1, -1))  # negative tail

    def test_spin8_allows_negative_last(self):
        assert is_dominant(spin8(), Weight.of(1, 1, 1, -1))
        assert not is_dominant(spin8(), Weight.of(1, 1, -2, 0))

    def test_weyl_dimension_rejects_non_dominant(self):
        with pytest.raises(DomainError):
            weyl_dimension(unitary(2), Weight.of(-1, 1))
        with pytest.raises(DomainError):
            casimir_scalar(spin9(), Weight.of(0, 1, 0, 0))


class TestWeylDimension:
    def test_u2_adjoint_like(self):
        # (k, l) = (1, 1): matches the closed form (k+l+n)/n C(k+n-1,k) C(l+n-1,l) = 3
        assert weyl_dimension(unitary(2), Weight.of(1, -1)) == 3

    def test_spin9_vector(self):
        assert weyl_dimension(spin9(), Weight.of(1, 0, 0, 0)) == 9

    def test_spin9_spinor(self):
        assert weyl_dimension(spin9(), Weight.of(*([Fraction(1, 2)] * 4))) == 16

    def test_spin9_level_two(self):
        assert weyl_dimension(spin9(), Weight.of(1, 1, 1, 1)) == 126

    def test_sp2_basic(self):
        assert weyl_dimension(symplectic(2), Weight.of(1, 1)) == 5
        assert weyl_dimension(symplectic(2), Weight.of(1, 0)) == 4

    def test_closed_form_on_grid(self):
        # full contract grid: k, l <= 60 for every n <= 4
        for n in range(1, 5):
            rs = unitary(n + 1)
            for k in range(61):
                for l in range(61):
                    w = Weight.of(l, *([0] * (n - 1)), -k)
                    assert weyl_dimension(rs, w) == unitary_dim_closed_form(n, k, l)

    def test_gram_scale_independence(self):
        w = Weight.of(2, 1, 1, 0)
        base = weyl_dimension(spin9(), w)
        for scale in (1, 2, 7):
            assert weyl_dimension(with_gram(spin9(), scale), w) == base


class TestCasimir:
    def test_unitary_closed_form(self):
        for n in range(1, 5):
            rs = unitary(n + 1)
            for k in range(0, 61, 6):
                for l in range(0, 61, 6):
                    w = Weight.of(l, *([0] * (n - 1)), -k)
                    assert casimir_scalar(rs, w) == 2 * l * (n + l) + 2 * k * (n + k)

    def test_spin9_closed_form(self):
        rs = spin9()
        for p in range(0, 61, 5):
            for q in range(0, 61, 5):
                w = Weight(doubled=(2 * p + q, q, q, q))
                assert casimir_scalar(rs, w) == p * p + p * (q + 7) + q * q + 8 * q

    def test_spin8_fiber_value(self):
        for q in range(0, 61, 5):
            assert casimir_scalar(spin8(), lie.fiber_weight_spin8(q)) == q * (q + 6)

    def test_circle_fiber_value(self):
        for m in range(-10, 11):
            assert casimir_scalar(circle(), Weight.of(m)) == 2 * m * m

    def test_sp1_fiber_value(self):
        for q in range(0, 40):
            assert casimir_scalar(sp1(), Weight.of(q)) == q * (q + 2)

    def test_casimir_scales_with_gram(self):
        w = Weight.of(3, 1, 0, 0)
        assert casimir_scalar(with_gram(spin9(), 2), w) == 2 * casimir_scalar(spin9(), w)


class TestCanonicalVariation:
    def test_round_point(self):
        assert canonical_variation(17, 5, Fraction(9, 4), Fraction(9, 4)) == Fraction(45, 4)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            canonical_variation(1, 1, 0, 1)


class TestSphericalWeights:
    def test_complex_pair(self):
        sws = spherical_weights(SphereModel(DivisionAlgebra.COMPLEX, 2), 1, 2)
        weights = {sw.weight.coords for sw in sws}
        assert weights == {(3, 0, -1), (1, 0, -3)}
        assert all(sw.fiber_casimir == 8 for sw in sws)
        assert all(sw.fiber_degeneracy == 1 for sw in sws)

    def test_complex_basic_is_single(self):
        sws = spherical_weights(C1, 3, 0)
        assert len(sws) == 1 and sws[0].weight.coords == (3, -3)
        assert sws[0].fiber_casimir == 0

    def test_quaternion_degeneracy(self):
        (sw,) = spherical_weights(H1, 0, 1)
        assert sw.weight.coords == (1, 0)
        assert sw.fiber_degeneracy == 2
        assert 2 * weyl_dimension(symplectic(2), sw.weight) == 8 == H1.N

    def test_octonion_spinor(self):
        (sw,) = spherical_weights(O1, 0, 1)
        assert weyl_dimension(spin9(), sw.weight) == 16 == O1.N
        assert sw.fiber_casimir == 7

    def test_conjugate_weights_share_casimir(self):
        rs = unitary(3)
        for p in range(5):
            for q in range(1, 5):
                a, b = spherical_weights(SphereModel(DivisionAlgebra.COMPLEX, 2), p, q)
                assert casimir_scalar(rs, a.weight) == casimir_scalar(rs, b.weight)


class TestOracleMultiplicity:
    def test_complex_small(self):
        # two conjugate weights, each of dimension 4
        assert oracle_multiplicity(C1, 1, 1) == 8 == spectra.multiplicity(C1, 1, 1)

    def test_quaternion_small(self):
        assert oracle_multiplicity(H1, 1, 1) == 32 == spectra.multiplicity(H1, 1, 1)

    def test_octonion_level_two(self):
        assert oracle_multiplicity(O1, 0, 2) == 126

    def test_spin9_basic_anchor(self):
        assert oracle_multiplicity(O1, 1, 0) == 9

    def test_equivalence_grid(self):
        for model in spectra.all_models(3):
            for p in range(0, 25):
                for q in range(0, 25):
                    assert oracle_multiplicity(model, p, q) == spectra.multiplicity(model, p, q)


class TestOracleEigenvalue:
    def test_complex_sample(self):
        assert oracle_eigenvalue(C1, 0, 1, Fraction(1, 4)) == 6

    def test_octonion_basic_t_independent(self):
        for t2 in (Fraction(1, 3), 1, Fraction(7, 2)):
            assert oracle_eigenvalue(O1, 1, 0, t2) == 32

    def test_quaternion_round(self):
        assert oracle_eigenvalue(H1, 0, 1, 1) == 7

    def test_quaternion_calibration_identity(self):
        # the symplectic route must reproduce the closed-form coefficients
        # (a, b) exactly, for all n, p, q up to 20: validated before use
        for n in range(1, 21):
            model = SphereModel(DivisionAlgebra.QUATERNION, n)
            rs = symplectic(n + 1)
            for p in range(0, 21, 2):
                for q in range(0, 21, 2):
                    (sw,) = spherical_weights(model, p, q)
                    cas = casimir_scalar(rs, sw.weight)
                    a, b = spectra.eigen_coefficients(model, p, q)
                    assert 2 * cas - 2 * q * (q + 2) == a
                    assert q * (q + 2) == b

    def test_equivalence_grid(self):
        samples = (1, Fraction(1, 2), 2)
        for model in spectra.all_models(3):
            for p in range(0, 20):
                for q in range(0, 20):
                    a, b = spectra.eigen_coefficients(model, p, q)
                    for t2 in samples:
                        assert oracle_eigenvalue(model, p, q, t2) == spectra.eigenvalue_at(a, b, t2)

    def test_rejects_nonpositive_t2(self):
        with pytest.raises(DomainError):
            oracle_eigenvalue(C1, 0, 1, 0)


@settings(deadline=None, max_examples=60)
@given(
    st.sampled_from(list(DivisionAlgebra)),
    st.integers(1, 4),
    st.integers(0, 40),
    st.integers(0, 40),
)
def test_oracle_matches_closed_form_everywhere(algebra, n, p, q):
    model = SphereModel(algebra, 1 if algebra is DivisionAlgebra.OCTONION else n)
    assert oracle_multiplicity(model, p, q) == spectra.multiplicity(model, p, q)
