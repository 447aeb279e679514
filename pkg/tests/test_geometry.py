import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherespec import geometry, spectra
from spherespec.geometry import (
    AmbientSpace,
    CurvatureSign,
    RadiusSpec,
    brute_force_kernel_dimension,
    brute_force_morse_index,
    classify,
    jacobi_term,
    kernel_dimension,
    lowest_jacobi_terms,
    mean_curvature,
    morse_index,
    potential,
    radius_params,
    resonant_slope,
    resonant_slopes,
    ricci_constant,
    scaled_potential,
    second_fundamental_norm_sq,
    shape_eigenvalues,
    slope_squared_from_radius,
)
from spherespec.spectra import DivisionAlgebra, DomainError, SphereModel

CP2 = AmbientSpace(SphereModel(DivisionAlgebra.COMPLEX, 1), CurvatureSign.PROJECTIVE)
CH2 = AmbientSpace(SphereModel(DivisionAlgebra.COMPLEX, 1), CurvatureSign.HYPERBOLIC)
HP2 = AmbientSpace(SphereModel(DivisionAlgebra.QUATERNION, 1), CurvatureSign.PROJECTIVE)
HH2 = AmbientSpace(SphereModel(DivisionAlgebra.QUATERNION, 1), CurvatureSign.HYPERBOLIC)
CaP2 = AmbientSpace(SphereModel(DivisionAlgebra.OCTONION, 1), CurvatureSign.PROJECTIVE)
CaH2 = AmbientSpace(SphereModel(DivisionAlgebra.OCTONION, 1), CurvatureSign.HYPERBOLIC)

ALL_AMBIENTS = [
    AmbientSpace(model, sign)
    for model in spectra.all_models(4)
    for sign in CurvatureSign
]


class TestRadiusParams:
    def test_projective_quarter_pi(self):
        assert radius_params(CP2, 1) == (Fraction(1, 2), Fraction(1, 2), Fraction(2))

    def test_hyperbolic_identities(self):
        t2, alpha2, inv_t2 = radius_params(CH2, Fraction(1, 2))
        assert (t2, alpha2, inv_t2) == (Fraction(2), Fraction(1), Fraction(1, 2))
        assert t2 - alpha2 == 1  # cosh^2 - sinh^2

    def test_asymptotically_round(self):
        t2, _, _ = radius_params(CP2, Fraction(1, 10**9))
        assert abs(t2 - 1) < Fraction(1, 10**8)

    def test_rejects_illegal_slopes(self):
        with pytest.raises(DomainError):
            radius_params(CP2, 0)
        with pytest.raises(DomainError):
            radius_params(CP2, Fraction(-1, 2))
        with pytest.raises(DomainError):
            radius_params(CH2, 1)
        with pytest.raises(DomainError):
            radius_params(CH2, Fraction(3, 2))

    def test_radius_spec_passthrough(self):
        spec = RadiusSpec(slope_squared=Fraction(1), float_radius=math.pi / 4)
        assert radius_params(CP2, spec)[0] == Fraction(1, 2)


class TestShapeOperator:
    def test_quarter_pi_values(self):
        values = shape_eigenvalues(CP2, math.pi / 4)
        assert values[0][0] == pytest.approx(0.0, abs=1e-15)  # 2 cot(pi/2)
        assert values[0][1] == 1
        assert values[1][0] == pytest.approx(1.0)
        assert values[1][1] == 2

    def test_hyperbolic_asymptotics(self):
        values = shape_eigenvalues(CH2, 40.0)
        assert values[0][0] == pytest.approx(2.0)
        assert values[1][0] == pytest.approx(1.0)

    def test_multiplicities_fill_sphere(self):
        for ambient in ALL_AMBIENTS:
            values = shape_eigenvalues(ambient, 0.7)
            assert sum(m for _v, m in values) == ambient.model.sphere_dim

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            shape_eigenvalues(CP2, math.pi / 2)
        with pytest.raises(DomainError):
            shape_eigenvalues(CH2, 0.0)


class TestMeanCurvature:
    def test_quarter_pi(self):
        assert mean_curvature(CP2, math.pi / 4) == pytest.approx(2.0)

    def test_minimal_radius(self):
        # the zero of H sits at tan^2 r = (N-1)/(2d-1)
        for ambient in (CP2, HP2, CaP2):
            N, d = ambient.model.N, ambient.model.d
            r = math.atan(math.sqrt((N - 1) / (2 * d - 1)))
            assert mean_curvature(ambient, r) == pytest.approx(0.0, abs=1e-12)

    def test_hyperbolic_limit(self):
        assert mean_curvature(CH2, 40.0) == pytest.approx(4.0)

    def test_strictly_decreasing_on_grid(self):
        for ambient in ALL_AMBIENTS:
            top = math.pi / 2 if ambient.projective else 3.0
            radii = [top * (i + 1) / 1001 for i in range(1000)]
            values = [mean_curvature(ambient, r) for r in radii]
            assert all(a > b for a, b in zip(values, values[1:]))


class TestSecondFundamentalForm:
    def test_quarter_pi(self):
        assert second_fundamental_norm_sq(CP2, math.pi / 4) == pytest.approx(2.0)

    def test_hyperbolic_limit(self):
        assert second_fundamental_norm_sq(HH2, 40.0) == pytest.approx(16.0)

    def test_matches_weighted_shape_sum(self):
        for ambient in ALL_AMBIENTS:
            for r in (0.3, 0.7, 1.2):
                direct = second_fundamental_norm_sq(ambient, r)
                summed = sum(m * v * v for v, m in shape_eigenvalues(ambient, r))
                assert abs(direct - summed) <= 1e-12 * max(direct, 1.0)


class TestRicci:
    def test_values(self):
        assert ricci_constant(CP2) == 6
        assert ricci_constant(HP2) == 16
        assert ricci_constant(AmbientSpace(CaP2.model, CurvatureSign.HYPERBOLIC)) == -36


class TestPotential:
    def test_scaled_projective(self):
        assert scaled_potential(CP2, 5) == 8

    def test_scaled_hyperbolic_small_slope(self):
        for ambient in (CH2, HH2, CaH2):
            N = ambient.model.N
            value = scaled_potential(ambient, Fraction(1, 10**6))
            assert abs(value - (N - 1)) < Fraction(1, 10**4)

    def test_scaled_matches_float(self):
        for ambient in ALL_AMBIENTS:
            for r in (0.4, 0.9, 1.3):
                s2 = Fraction(slope_squared_from_radius(ambient, r))
                alpha2 = math.sin(r) ** 2 if ambient.projective else math.sinh(r) ** 2
                exact = float(scaled_potential(ambient, s2))
                floating = alpha2 * potential(ambient, r)
                assert abs(exact - floating) <= 1e-12 * max(abs(exact), 1.0)


class TestJacobiTerm:
    def test_kernel_branch_everywhere(self):
        for ambient in ALL_AMBIENTS:
            term = jacobi_term(ambient, 0, 1)
            assert (term.A, term.B) == (0, 0)
            assert term.multiplicity == ambient.model.N

    def test_first_basic_branch_projective(self):
        term = jacobi_term(CP2, 1, 0)
        assert (term.A, term.B) == (5, -1)
        assert term.value(5) == 0

    def test_first_basic_branch_hyperbolic(self):
        term = jacobi_term(CH2, 1, 0)
        assert (term.A, term.B) == (5, 1)

    def test_rejects_constant_branch(self):
        with pytest.raises(DomainError):
            jacobi_term(CP2, 0, 0)

    def test_slope_coefficient_factors(self):
        # B = +-((q-1)(q+2d-1)): zero at q = 1, negative only for basic branches
        for ambient in ALL_AMBIENTS:
            d = ambient.model.d
            sign = 1 if ambient.projective else -1
            for p in range(4):
                for q in range(6):
                    if (p, q) == (0, 0):
                        continue
                    term = jacobi_term(ambient, p, q)
                    assert term.B == sign * (q - 1) * (q + 2 * d - 1)


class TestResonantSlopes:
    def test_cp2(self):
        assert resonant_slopes(CP2, 2) == [5, 21]

    def test_cap2(self):
        assert resonant_slopes(CaP2, 1) == [Fraction(17, 7)]

    def test_first_slope_closed_form(self):
        for ambient in (CP2, HP2, CaP2, AmbientSpace(SphereModel(DivisionAlgebra.COMPLEX, 3), CurvatureSign.PROJECTIVE)):
            N, d = ambient.model.N, ambient.model.d
            assert resonant_slope(ambient, 1) == Fraction(N + 1, 2 * d - 1)

    def test_hyperbolic_empty(self):
        assert resonant_slopes(CH2, 5) == []
        assert resonant_slopes(CaH2, 1) == []

    def test_strictly_increasing_and_roots(self):
        for ambient in (CP2, HP2, CaP2):
            slopes = resonant_slopes(ambient, 10)
            assert all(a < b for a, b in zip(slopes, slopes[1:]))
            for p, s2 in enumerate(slopes, start=1):
                assert jacobi_term(ambient, p, 0).value(s2) == 0


class TestMorseIndex:
    def test_cp2_past_first_resonance(self):
        assert morse_index(CP2, 6) == 3

    def test_cp2_below_first_resonance(self):
        assert morse_index(CP2, 4) == 0

    def test_hyperbolic_always_zero(self):
        for s2 in (Fraction(1, 100), Fraction(1, 2), Fraction(99, 100)):
            for ambient in (CH2, HH2, CaH2):
                assert morse_index(ambient, s2) == 0

    def test_hp2_just_past_first_resonance(self):
        # first crossing of HP^2 sits at (N+1)/(2d-1) = 3 and jumps by 5
        assert resonant_slope(HP2, 1) == 3
        assert morse_index(HP2, Fraction(31, 10)) == 5 == spectra.multiplicity(HP2.model, 1, 0)

    def test_matches_brute_force_around_crossings(self):
        for ambient in (CP2, HP2, CaP2):
            for p in range(1, 4):
                sp = resonant_slope(ambient, p)
                for s2 in (sp - Fraction(1, 3), sp, sp + Fraction(1, 3)):
                    assert morse_index(ambient, s2) == brute_force_morse_index(ambient, s2)

    def test_brute_force_hyperbolic(self):
        assert brute_force_morse_index(HH2, Fraction(3, 5)) == 0


class TestCrossingIndex:
    def test_exact_hits(self):
        assert geometry.crossing_index(CP2, 5) == 1
        assert geometry.crossing_index(CP2, 21) == 2
        assert geometry.crossing_index(CP2, 45) == 3
        assert geometry.crossing_index(CaP2, Fraction(17, 7)) == 1

    def test_misses(self):
        assert geometry.crossing_index(CP2, 7) is None
        assert geometry.crossing_index(CP2, Fraction(21, 2)) is None
        assert geometry.crossing_index(CH2, Fraction(1, 2)) is None

    def test_closed_form_handles_huge_slopes(self):
        # quadratic solve, not a linear scan: instant even at p ~ 10^6
        p = 10**6
        assert geometry.crossing_index(CP2, resonant_slope(CP2, p)) == p
        assert geometry.crossing_index(CP2, Fraction(10**40) + Fraction(1, 3)) is None
        assert kernel_dimension(CP2, Fraction(10**40)) == 4


class TestKernel:
    def test_off_resonance(self):
        assert kernel_dimension(CP2, 7) == 4

    def test_at_first_resonance(self):
        assert kernel_dimension(CP2, 5) == 7

    def test_hyperbolic(self):
        assert kernel_dimension(HH2, Fraction(2, 5)) == 8

    def test_matches_brute_force(self):
        assert brute_force_kernel_dimension(CP2, 5) == 7
        assert brute_force_kernel_dimension(CP2, 7) == 4
        assert brute_force_kernel_dimension(CaP2, Fraction(17, 7)) == 16 + 9


class TestClassify:
    def test_cp2_at_first_resonance(self):
        report = classify(CP2, 5)
        assert report.resonant and report.degenerate_beyond_killing
        assert report.morse_index == 0  # strict negativity: the crossing counts as zero
        assert report.stable
        assert "boundary" in report.verdict

    def test_hh2_stable(self):
        report = classify(HH2, Fraction(1, 3))
        assert report.stable and not report.resonant
        assert report.kernel_dimension == 8
        assert report.negative_terms == ()

    def test_cap2_resonant(self):
        report = classify(CaP2, Fraction(17, 7))
        assert report.resonant

    def test_unstable_with_negative_branches(self):
        report = classify(CP2, 6)
        assert not report.stable
        assert report.morse_index == 3
        assert [(t.p, t.q) for t, _v in report.negative_terms] == [(1, 0)]
        (term, value), = report.negative_terms
        assert value == term.A + term.B * 6 < 0

    def test_rejects_illegal_slope(self):
        with pytest.raises(DomainError):
            classify(CH2, Fraction(7, 5))


class TestLowestBranches:
    def test_kernel_branch_is_lowest_when_stable(self):
        pairs = lowest_jacobi_terms(HH2, Fraction(1, 2), 3)
        assert pairs[0][0].p == 0 and pairs[0][0].q == 1
        assert pairs[0][1] == 0
        assert all(v >= 0 for _t, v in pairs)

    def test_negative_branch_first_when_unstable(self):
        pairs = lowest_jacobi_terms(CP2, 6, 3)
        assert (pairs[0][0].p, pairs[0][0].q) == (1, 0)
        assert pairs[0][1] == -1


class TestFloatCrossChecks:
    def test_jacobi_affine_form_matches_float_assembly(self):
        # lambda(t) - alpha^2 V(r) computed with floats agrees with A + B s^2
        rng = random.Random(99)
        for ambient in ALL_AMBIENTS:
            model = ambient.model
            for _ in range(20):
                r = rng.uniform(0.2, 1.4 if ambient.projective else 3.0)
                s2 = slope_squared_from_radius(ambient, r)
                inv_t2 = 1 + s2 if ambient.projective else 1 - s2
                alpha2 = math.sin(r) ** 2 if ambient.projective else math.sinh(r) ** 2
                for p, q in ((1, 0), (0, 2), (2, 1)):
                    a, b = spectra.eigen_coefficients(model, p, q)
                    floating = a + b * inv_t2 - alpha2 * potential(ambient, r)
                    term = jacobi_term(ambient, p, q)
                    exact = term.A + term.B * s2
                    assert abs(floating - exact) <= 1e-12 * max(1.0, abs(exact))


hyperbolic_slopes = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50))


@settings(deadline=None, max_examples=30)
@given(hyperbolic_slopes)
def test_hyperbolic_reports_are_uniformly_stable(s2):
    for ambient in (CH2, HH2, CaH2):
        report = classify(ambient, s2)
        assert report.stable
        assert report.morse_index == 0
        assert report.kernel_dimension == ambient.model.N
        assert not report.resonant


@settings(deadline=None, max_examples=30)
@given(st.fractions(min_value=Fraction(1, 20), max_value=Fraction(60)))
def test_projective_kernel_at_least_killing(s2):
    for ambient in (CP2, HP2, CaP2):
        assert kernel_dimension(ambient, s2) >= ambient.model.N
