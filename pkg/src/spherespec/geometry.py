"""Distance-sphere geometry: radius maps, curvature data, stability verdicts.

A geodesic sphere S(r) in a projective space KP^{n+1} (sectional curvature in
[1, 4]) or its hyperbolic dual KH^{n+1} (curvature in [-4, -1]) is homothetic
to the fibered sphere (S^{N-1}, g(t)) with t = cos r resp. cosh r, globally
scaled by alpha = sin r resp. sinh r.

Everything stability-related is exact in the slope coordinate

    s^2 = tan^2 r   (projective)    or    s^2 = tanh^2 r   (hyperbolic),

because the scaled second-variation operator alpha^2 * J_r has eigenvalues
that are affine in s^2 with integer coefficients.  Sign tests, resonance
detection, Morse index, and kernel dimensions therefore never touch floats;
the trigonometric helpers below are display-only and cross-checked against
the exact forms in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .spectra import (
    DomainError,
    Rational,
    SphereModel,
    eigen_coefficients,
    enumerate_spectrum,
    multiplicity,
)


class CurvatureSign(Enum):
    PROJECTIVE = "proj"
    HYPERBOLIC = "hyp"


@dataclass(frozen=True)
class AmbientSpace:
    """A rank-one symmetric space KP^{n+1} or KH^{n+1} hosting distance spheres."""

    model: SphereModel
    sign: CurvatureSign

    @property
    def name(self) -> str:
        letter = self.model.algebra.letter
        kind = "P" if self.sign is CurvatureSign.PROJECTIVE else "H"
        return f"{letter}{kind}^{self.model.n + 1}"

    @property
    def projective(self) -> bool:
        return self.sign is CurvatureSign.PROJECTIVE


@dataclass(frozen=True)
class RadiusSpec:
    """Radius of a distance sphere, held as the exact slope parameter s^2.

    ``slope_squared`` is tan^2 r (projective, any positive rational) or
    tanh^2 r (hyperbolic, in (0, 1)).  ``float_radius`` is an optional
    display-only annotation and never enters exact computations.
    """

    slope_squared: Fraction
    float_radius: Optional[float] = None


def check_slope(ambient: AmbientSpace, slope_squared: Rational) -> Fraction:
    """Validate and normalize a slope parameter for the ambient's sign."""
    s2 = Fraction(slope_squared)
    if ambient.projective:
        if s2 <= 0:
            raise DomainError(f"projective slope tan^2 r must be positive, got {s2}")
    else:
        if not (0 < s2 < 1):
            raise DomainError(f"hyperbolic slope tanh^2 r must lie in (0, 1), got {s2}")
    return s2


def check_radius(ambient: AmbientSpace, radius: float) -> float:
    if ambient.projective:
        if not (0.0 < radius < math.pi / 2):
            raise DomainError(f"projective radius must lie in (0, pi/2), got {radius}")
    else:
        if not (radius > 0.0) or math.isinf(radius):
            raise DomainError(f"hyperbolic radius must be positive and finite, got {radius}")
    return radius


def slope_squared_from_radius(ambient: AmbientSpace, radius: float) -> float:
    """tan^2 r or tanh^2 r, for converting float radii to display-mode slopes."""
    check_radius(ambient, radius)
    if ambient.projective:
        return math.tan(radius) ** 2
    return math.tanh(radius) ** 2


def radius_params(
    ambient: AmbientSpace, radius: RadiusSpec | Rational
) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (t^2, alpha^2, 1/t^2) of the sphere at the given slope.

    Projective: 1/t^2 = 1 + s^2, alpha^2 = s^2/(1 + s^2);
    hyperbolic:  1/t^2 = 1 - s^2, alpha^2 = s^2/(1 - s^2).
    """
    s2 = radius.slope_squared if isinstance(radius, RadiusSpec) else Fraction(radius)
    s2 = check_slope(ambient, s2)
    if ambient.projective:
        inv_t2 = 1 + s2
    else:
        inv_t2 = 1 - s2
    t2 = 1 / inv_t2
    alpha2 = s2 * t2
    return t2, alpha2, inv_t2


def shape_eigenvalues(ambient: AmbientSpace, radius: float) -> list[tuple[float, int]]:
    """Principal curvatures of S(r) with multiplicities (fiber and base blocks).

    Projective: 2*cot(2r) on the 2d-1 fiber directions and cot(r) on the 2dn
    base directions; hyperbolic replaces cot by coth.
    """
    check_radius(ambient, radius)
    d, n = ambient.model.d, ambient.model.n
    if ambient.projective:
        fiber = 2 * math.cos(2 * radius) / math.sin(2 * radius)
        base = math.cos(radius) / math.sin(radius)
    else:
        fiber = 2 * math.cosh(2 * radius) / math.sinh(2 * radius)
        base = math.cosh(radius) / math.sinh(radius)
    return [(fiber, 2 * d - 1), (base, 2 * d * n)]


def mean_curvature(ambient: AmbientSpace, radius: float) -> float:
    """Mean curvature of S(r): strictly decreasing in r for both signs."""
    check_radius(ambient, radius)
    N, d = ambient.model.N, ambient.model.d
    if ambient.projective:
        return (N - 1) / math.tan(radius) - (2 * d - 1) * math.tan(radius)
    return (N - 1) / math.tanh(radius) + (2 * d - 1) * math.tanh(radius)


def second_fundamental_norm_sq(ambient: AmbientSpace, radius: float) -> float:
    """Squared Hilbert-Schmidt norm of the shape operator of S(r)."""
    check_radius(ambient, radius)
    d, n = ambient.model.d, ambient.model.n
    if ambient.projective:
        cot_r = 1 / math.tan(radius)
        cot_2r = math.cos(2 * radius) / math.sin(2 * radius)
        return 2 * d * n * cot_r**2 + 4 * (2 * d - 1) * cot_2r**2
    coth_r = 1 / math.tanh(radius)
    coth_2r = math.cosh(2 * radius) / math.sinh(2 * radius)
    return 2 * d * n * coth_r**2 + 4 * (2 * d - 1) * coth_2r**2


def ricci_constant(ambient: AmbientSpace) -> int:
    """Einstein constant of the ambient space: +-(2dn + 4(2d-1))."""
    d, n = ambient.model.d, ambient.model.n
    value = 2 * d * n + 4 * (2 * d - 1)
    return value if ambient.projective else -value


def potential(ambient: AmbientSpace, radius: float) -> float:
    """Zeroth-order coefficient V(r) = Ric(normal) + |A_r|^2 of the Jacobi operator."""
    check_radius(ambient, radius)
    N, d = ambient.model.N, ambient.model.d
    if ambient.projective:
        return (N - 1) / math.sin(radius) ** 2 + (2 * d - 1) / math.cos(radius) ** 2
    return (N - 1) / math.sinh(radius) ** 2 - (2 * d - 1) / math.cosh(radius) ** 2


def scaled_potential(ambient: AmbientSpace, slope_squared: Rational) -> Fraction:
    """Exact alpha^2 * V(r): (N-1) + (2d-1)s^2 projective, (N-1) - (2d-1)s^2 hyperbolic."""
    s2 = check_slope(ambient, slope_squared)
    N, d = ambient.model.N, ambient.model.d
    if ambient.projective:
        return Fraction(N - 1) + (2 * d - 1) * s2
    return Fraction(N - 1) - (2 * d - 1) * s2


@dataclass(frozen=True)
class JacobiTerm:
    """One branch of the scaled second-variation operator alpha^2 * J_r.

    Its eigenvalue is the affine function A + B * s^2 of the slope, with
    A = a + b - (N-1) and B = +-(b - (2d-1)) by curvature sign.  The (0, 1)
    branch has A = B = 0 identically: the Killing-field kernel.
    """

    p: int
    q: int
    A: int
    B: int
    multiplicity: int

    def value(self, slope_squared: Rational) -> Fraction:
        return self.A + self.B * Fraction(slope_squared)


def jacobi_term(ambient: AmbientSpace, p: int, q: int) -> JacobiTerm:
    """Affine form of the (p, q) branch of alpha^2 * J_r.

    (0, 0) is rejected: the second variation acts on mean-zero functions,
    so the constant branch is outside the variational problem.
    """
    if (p, q) == (0, 0):
        raise DomainError("the constant branch (0, 0) is excluded (mean-zero constraint)")
    model = ambient.model
    a, b = eigen_coefficients(model, p, q)
    A = a + b - (model.N - 1)
    fiber = 2 * model.d - 1
    B = b - fiber if ambient.projective else fiber - b
    return JacobiTerm(p=p, q=q, A=A, B=B, multiplicity=multiplicity(model, p, q))


def resonant_slope(ambient: AmbientSpace, p: int) -> Fraction:
    """Exact slope s^2_p where the basic (p, 0) branch crosses zero (projective)."""
    if not ambient.projective:
        raise DomainError("hyperbolic distance spheres have no resonant radii")
    if p < 1:
        raise DomainError(f"resonance index p must be >= 1, got {p}")
    N, d = ambient.model.N, ambient.model.d
    return Fraction(4 * p * (p - 1) + N * (2 * p - 1) + 1, 2 * d - 1)


def resonant_slopes(ambient: AmbientSpace, count: int) -> list[Fraction]:
    """The first ``count`` resonant slopes, strictly increasing; [] for hyperbolic."""
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    if not ambient.projective:
        return []
    return [resonant_slope(ambient, p) for p in range(1, count + 1)]


def morse_index(ambient: AmbientSpace, slope_squared: Rational) -> int:
    """Number of negative second-variation branches, counted with multiplicity.

    Projective: the sum of the (p, 0) multiplicities over every resonance
    strictly below the given slope; hyperbolic: always 0.  A branch sitting
    exactly at zero does not count.
    """
    s2 = check_slope(ambient, slope_squared)
    if not ambient.projective:
        return 0
    total = 0
    p = 1
    while resonant_slope(ambient, p) < s2:
        total += multiplicity(ambient.model, p, 0)
        p += 1
    return total


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    root_num = math.isqrt(x.numerator)
    root_den = math.isqrt(x.denominator)
    if root_num * root_num == x.numerator and root_den * root_den == x.denominator:
        return Fraction(root_num, root_den)
    return None


def crossing_index(ambient: AmbientSpace, slope_squared: Rational) -> Optional[int]:
    """The p with s^2 = s^2_p exactly, if the slope sits on a resonance.

    Solved in closed form: s^2 = s^2_p is the quadratic
    4p^2 + (2N-4)p + (1 - N - (2d-1)s^2) = 0, whose discriminant reduces to
    N^2 + 4(2d-1)s^2; the slope is resonant iff that is a rational square
    giving a positive integer root.
    """
    s2 = check_slope(ambient, slope_squared)
    if not ambient.projective:
        return None
    N, d = ambient.model.N, ambient.model.d
    root = _exact_sqrt(N * N + 4 * (2 * d - 1) * s2)
    if root is None:
        return None
    four_p = root - (N - 2)
    if four_p <= 0 or four_p.denominator != 1 or four_p.numerator % 4 != 0:
        return None
    return four_p.numerator // 4


def kernel_dimension(ambient: AmbientSpace, slope_squared: Rational) -> int:
    """Dimension of the kernel of the second variation.

    Always at least N (Killing fields of the ambient space); exactly at a
    resonant slope the crossing basic branch adds its multiplicity.
    """
    s2 = check_slope(ambient, slope_squared)
    base = ambient.model.N
    p = crossing_index(ambient, s2)
    if p is None:
        return base
    return base + multiplicity(ambient.model, p, 0)


def brute_force_morse_index(
    ambient: AmbientSpace, slope_squared: Rational, workers: int = 1
) -> int:
    """Morse index by enumerating every branch below the potential level.

    Enumerates the g(t)-spectrum up to alpha^2 V(r) and counts multiplicities
    of values strictly below it, excluding the constant branch.  Independent
    of the closed form above; used to cross-check it.
    """
    s2 = check_slope(ambient, slope_squared)
    t2, _alpha2, _inv = radius_params(ambient, s2)
    level = scaled_potential(ambient, s2)
    spec = enumerate_spectrum(ambient.model, t2, level, workers=workers)
    total = sum(e.multiplicity for e in spec.entries if e.value < level)
    return total - 1  # remove the excluded (0, 0) branch at value 0


def brute_force_kernel_dimension(ambient: AmbientSpace, slope_squared: Rational) -> int:
    """Kernel dimension by exact eigenvalue-equals-potential matching."""
    s2 = check_slope(ambient, slope_squared)
    t2, _alpha2, _inv = radius_params(ambient, s2)
    level = scaled_potential(ambient, s2)
    spec = enumerate_spectrum(ambient.model, t2, level)
    return sum(e.multiplicity for e in spec.entries if e.value == level)


@dataclass(frozen=True)
class JacobiReport:
    """Stability verdict for one distance sphere at an exact slope."""

    ambient: AmbientSpace
    radius: RadiusSpec
    negative_terms: tuple[tuple[JacobiTerm, Fraction], ...]
    morse_index: int
    kernel_dimension: int
    stable: bool
    degenerate_beyond_killing: bool
    resonant: bool
    verdict: str


def classify(ambient: AmbientSpace, slope_squared: Rational) -> JacobiReport:
    """Full stability/resonance classification at an exact slope.

    Verdict rules: away from the crossing slopes the kernel is exactly the
    N Killing-field directions, which certifies local rigidity; at a crossing
    slope the Morse index jumps by the crossing multiplicity while both sides
    stay rigid, which certifies bifurcation of noncongruent CMC spheres.
    """
    s2 = check_slope(ambient, slope_squared)
    index = morse_index(ambient, s2)
    kernel = kernel_dimension(ambient, s2)
    crossing = crossing_index(ambient, s2)
    resonant = crossing is not None
    negatives: list[tuple[JacobiTerm, Fraction]] = []
    if ambient.projective:
        p = 1
        while resonant_slope(ambient, p) < s2:
            term = jacobi_term(ambient, p, 0)
            negatives.append((term, term.value(s2)))
            p += 1
    stable = index == 0
    if not ambient.projective:
        verdict = (
            "stable and locally rigid: no negative branches, kernel is exactly "
            "the Killing directions at every radius"
        )
    elif resonant:
        boundary = " (stability boundary)" if index == 0 else ""
        verdict = (
            f"resonant: the basic branch p={crossing} crosses zero here; the index "
            f"jump across this radius certifies bifurcation of noncongruent CMC "
            f"spheres{boundary}"
        )
    elif stable:
        verdict = "stable and locally rigid below the first resonant radius"
    else:
        verdict = (
            f"unstable with Morse index {index}; locally rigid "
            "(kernel is exactly the Killing directions)"
        )
    return JacobiReport(
        ambient=ambient,
        radius=RadiusSpec(slope_squared=s2),
        negative_terms=tuple(negatives),
        morse_index=index,
        kernel_dimension=kernel,
        stable=stable,
        degenerate_beyond_killing=kernel > ambient.model.N,
        resonant=resonant,
        verdict=verdict,
    )


def lowest_jacobi_terms(
    ambient: AmbientSpace, slope_squared: Rational, count: int
) -> list[tuple[JacobiTerm, Fraction]]:
    """The ``count`` branches of alpha^2 J_r with the smallest values at s^2.

    The shift by the constant potential preserves order, so these are just
    the lowest Laplace branches with (0, 0) removed.
    """
    s2 = check_slope(ambient, slope_squared)
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    t2, _alpha2, _inv = radius_params(ambient, s2)
    level = scaled_potential(ambient, s2)
    cutoff = level + 1
    while True:
        spec = enumerate_spectrum(ambient.model, t2, cutoff)
        n_terms = sum(len(e.contributors) for e in spec.entries) - 1
        if n_terms >= count:
            break
        cutoff *= 2
    pairs = [
        (p, q)
        for entry in spec.entries
        for (p, q) in entry.contributors
        if (p, q) != (0, 0)
    ]
    terms = [jacobi_term(ambient, p, q) for p, q in pairs]
    valued = sorted(
        ((t, t.value(s2)) for t in terms), key=lambda tv: (tv[1], tv[0].p, tv[0].q)
    )
    return valued[:count]
