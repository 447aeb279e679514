"""Root-system oracle: Weyl dimensions and Casimir scalars from first principles.

The eigenvalue/multiplicity formulas in ``spectra`` are closed-form; this
module re-derives them independently.  Laplace eigenspaces of the fibered
spheres are indexed by the irreducible representations of the transitive
group that contain an isotropy-fixed vector; their dimensions come from the
Weyl dimension formula over positive-root data, and the eigenvalues from
Casimir scalars <L, L + 2 rho> via the two-parameter canonical-variation
rule.  Nothing here imports a formula from ``spectra``: agreement of the two
pipelines is checked on large grids by the verification suite.

Weight coordinates are kept doubled (2x the eps-basis coordinates) so
half-integer spin weights stay exact integers.  Root systems derive rho as
the half-sum of their positive roots; no rho is ever hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .spectra import (
    DivisionAlgebra,
    DomainError,
    Rational,
    SphereModel,
)


@dataclass(frozen=True)
class Weight:
    """A weight in the eps-coordinate basis, stored as doubled integers."""

    doubled: tuple[int, ...]

    @classmethod
    def of(cls, *coords: Rational) -> "Weight":
        return cls.from_coords(coords)

    @classmethod
    def from_coords(cls, coords: Iterable[Rational]) -> "Weight":
        doubled = []
        for c in coords:
            twice = 2 * Fraction(c)
            if twice.denominator != 1:
                raise DomainError(f"weight coordinate {c} is not a half-integer")
            doubled.append(int(twice))
        return cls(doubled=tuple(doubled))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    @property
    def rank(self) -> int:
        return len(self.doubled)


@dataclass(frozen=True)
class RootSystem:
    """Positive-root data of one of the compact groups entering the fibrations.

    ``kind`` fixes the dominance rules: "A" (unitary), "C" (symplectic),
    "B" (odd spin), "D" (even spin).  ``gram`` is the diagonal value g of the
    invariant inner product <eps_i, eps_j> = g * delta_ij; it scales Casimir
    values but cancels in Weyl dimensions.  ``two_rho`` is the sum of the
    positive roots, computed by the factory functions.
    """

    name: str
    kind: str
    rank: int
    gram: Fraction
    positive_roots: tuple[tuple[int, ...], ...]
    two_rho: tuple[int, ...]


def _system(name: str, kind: str, rank: int, gram: Rational, roots: list[tuple[int, ...]]) -> RootSystem:
    two_rho = tuple(sum(root[i] for root in roots) for i in range(rank))
    return RootSystem(
        name=name,
        kind=kind,
        rank=rank,
        gram=Fraction(gram),
        positive_roots=tuple(roots),
        two_rho=two_rho,
    )


def _basis(rank: int, entries: dict[int, int]) -> tuple[int, ...]:
    return tuple(entries.get(i, 0) for i in range(rank))


def unitary(m: int) -> RootSystem:
    """u(m): roots eps_i - eps_j (i < j); gram 2 from the trace-form convention."""
    if m < 1:
        raise DomainError(f"unitary rank must be >= 1, got {m}")
    roots = [_basis(m, {i: 1, j: -1}) for i in range(m) for j in range(i + 1, m)]
    return _system(f"u({m})", "A", m, 2, roots)


def symplectic(m: int) -> RootSystem:
    """sp(m): roots eps_i +- eps_j (i < j) and 2 eps_i; gram 1."""
    if m < 1:
        raise DomainError(f"symplectic rank must be >= 1, got {m}")
    roots = [_basis(m, {i: 1, j: s}) for i in range(m) for j in range(i + 1, m) for s in (-1, 1)]
    roots += [_basis(m, {i: 2}) for i in range(m)]
    return _system(f"sp({m})", "C", m, 1, roots)


def spin9() -> RootSystem:
    """spin(9) = B4: roots eps_i and eps_i +- eps_j (i < j); gram 1."""
    roots = [_basis(4, {i: 1}) for i in range(4)]
    roots += [_basis(4, {i: 1, j: s}) for i in range(4) for j in range(i + 1, 4) for s in (-1, 1)]
    return _system("spin(9)", "B", 4, 1, roots)


def spin8() -> RootSystem:
    """spin(8) = D4, the subsystem fixing the fiber data of the octonionic case."""
    roots = [_basis(4, {i: 1, j: s}) for i in range(4) for j in range(i + 1, 4) for s in (-1, 1)]
    return _system("spin(8)", "D", 4, 1, roots)


def circle() -> RootSystem:
    """u(1): the circle fiber group; empty root system, gram 2."""
    return _system("u(1)", "A", 1, 2, [])


def sp1() -> RootSystem:
    """sp(1): the 3-sphere fiber group; single root 2 eps_1, gram 1."""
    return symplectic(1)


def with_gram(rs: RootSystem, gram: Rational) -> RootSystem:
    """Copy of a root system with a rescaled inner product (for invariance tests)."""
    return RootSystem(
        name=rs.name,
        kind=rs.kind,
        rank=rs.rank,
        gram=Fraction(gram),
        positive_roots=rs.positive_roots,
        two_rho=rs.two_rho,
    )


def is_dominant(rs: RootSystem, w: Weight) -> bool:
    """Dominance and integrality of a weight for the system's family rules."""
    if w.rank != rs.rank:
        return False
    x = w.doubled
    if rs.kind == "A":
        return all(c % 2 == 0 for c in x) and all(x[i] >= x[i + 1] for i in range(len(x) - 1))
    if rs.kind == "C":
        return (
            all(c % 2 == 0 for c in x)
            and all(x[i] >= x[i + 1] for i in range(len(x) - 1))
            and x[-1] >= 0
        )
    same_parity = all((c - x[0]) % 2 == 0 for c in x)
    if rs.kind == "B":
        return (
            same_parity
            and all(x[i] >= x[i + 1] for i in range(len(x) - 1))
            and x[-1] >= 0
        )
    if rs.kind == "D":
        return (
            same_parity
            and all(x[i] >= x[i + 1] for i in range(len(x) - 2))
            and x[-2] >= abs(x[-1])
        )
    raise DomainError(f"unknown root-system kind {rs.kind!r}")


def _require_dominant(rs: RootSystem, w: Weight) -> None:
    if not is_dominant(rs, w):
        raise DomainError(f"weight {w.coords} is not dominant/integral for {rs.name}")


def _dot(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    return sum(a * b for a, b in zip(u, v))


def weyl_dimension(rs: RootSystem, highest: Weight) -> int:
    """dim of the irreducible representation with the given highest weight.

    Product over positive roots of <L + rho, alpha> / <rho, alpha>.  The
    inner-product scale cancels between numerator and denominator, so the
    result is gram-independent; it is computed exactly and must be a positive
    integer.
    """
    _require_dominant(rs, highest)
    shifted = tuple(c + r for c, r in zip(highest.doubled, rs.two_rho))
    dim = Fraction(1)
    for alpha in rs.positive_roots:
        dim *= Fraction(_dot(shifted, alpha), _dot(rs.two_rho, alpha))
    assert dim.denominator == 1 and dim > 0, (
        f"Weyl dimension for {highest.coords} over {rs.name} is not a positive integer"
    )
    return int(dim)


def casimir_scalar(rs: RootSystem, highest: Weight) -> Fraction:
    """Casimir eigenvalue <L, L + 2 rho> on the irreducible with highest weight L."""
    _require_dominant(rs, highest)
    x = highest.doubled
    total = sum(c * (c + 2 * r) for c, r in zip(x, rs.two_rho))
    return rs.gram * Fraction(total, 4)


def canonical_variation(
    lambda_tau: Rational, lambda_pi: Rational, r_squared: Rational, s_squared: Rational
) -> Fraction:
    """Eigenvalue (r^2 - s^2) * lambda_tau + s^2 * lambda_pi of the rescaled metric.

    r and s rescale the fiber and base directions of the underlying
    submersion; lambda_tau is the fiber-group Casimir and lambda_pi the full
    Casimir of the representation.
    """
    r2, s2 = Fraction(r_squared), Fraction(s_squared)
    if r2 <= 0 or s2 <= 0:
        raise DomainError(f"scaling parameters must be positive, got r^2={r2}, s^2={s2}")
    return (r2 - s2) * Fraction(lambda_tau) + s2 * Fraction(lambda_pi)


@dataclass(frozen=True)
class SphericalWeight:
    """One highest weight contributing to the (p, q) eigenspace.

    ``fiber_casimir`` is the Casimir of the fiber-group representation the
    eigenfunctions transform by; ``fiber_degeneracy`` counts how many times
    that fiber Casimir value occurs.  ``rule`` records, in words, which
    classification of isotropy-spherical representations produced the entry.
    """

    weight: Weight
    fiber_casimir: Fraction
    fiber_degeneracy: int
    rule: str


def base_root_system(model: SphereModel) -> RootSystem:
    """Root system of the group acting transitively on the fibered sphere."""
    if model.algebra is DivisionAlgebra.COMPLEX:
        return unitary(model.n + 1)
    if model.algebra is DivisionAlgebra.QUATERNION:
        return symplectic(model.n + 1)
    return spin9()


def spherical_weights(model: SphereModel, p: int, q: int) -> tuple[SphericalWeight, ...]:
    """Highest weights of the representations spanning the (p, q) eigenspace."""
    if p < 0 or q < 0:
        raise DomainError(f"indices must be nonnegative, got ({p}, {q})")
    d = model.d
    if d == 1:
        m = model.n + 1
        rule = (
            "unitary family: weights l*e1 - k*e_last with {k, l} = {p, p+q}; "
            "circle charge l - k, fiber Casimir 2q^2"
        )
        fiber = Fraction(2 * q * q)
        if q == 0:
            weights = [Weight.from_coords(_basis(m, {0: p, m - 1: -p}))]
        else:
            weights = [
                Weight.from_coords(_basis(m, {0: p + q, m - 1: -p})),
                Weight.from_coords(_basis(m, {0: p, m - 1: -(p + q)})),
            ]
        return tuple(SphericalWeight(w, fiber, 1, rule) for w in weights)
    if d == 2:
        m = model.n + 1
        rule = (
            "symplectic family: weight (p+q)*e1 + p*e2; the 3-sphere fiber "
            "contributes spin q/2 with Casimir q(q+2), occurring q+1 times"
        )
        w = Weight.from_coords(_basis(m, {0: p + q, 1: p}))
        return (SphericalWeight(w, Fraction(q * (q + 2)), q + 1, rule),)
    rule = (
        "octonionic case: weight p*w1 + q*w4 of spin(9); the unique "
        "spin(7)-fixed line sits over the spin(8) weight (q/2)(e1+e2+e3-e4) "
        "with Casimir q(q+6)"
    )
    w = Weight(doubled=(2 * p + q, q, q, q))
    return (SphericalWeight(w, Fraction(q * (q + 6)), 1, rule),)


def fiber_weight_spin8(q: int) -> Weight:
    """The spin(8) weight carrying the octonionic fiber data: (q/2)(e1+e2+e3-e4)."""
    if q < 0:
        raise DomainError(f"q must be nonnegative, got {q}")
    return Weight(doubled=(q, q, q, -q))


def oracle_multiplicity(model: SphereModel, p: int, q: int) -> int:
    """Multiplicity of the (p, q) branch from Weyl dimensions alone."""
    rs = base_root_system(model)
    return sum(
        sw.fiber_degeneracy * weyl_dimension(rs, sw.weight)
        for sw in spherical_weights(model, p, q)
    )


def oracle_eigenvalue(model: SphereModel, p: int, q: int, t_squared: Rational) -> Fraction:
    """Eigenvalue of the (p, q) branch from Casimir scalars alone.

    Complex case: canonical variation with (r^2, s^2) = (1/(2t^2), 1) and
    fiber Casimir 2q^2.  Octonionic case: (r^2, s^2) = (1/t^2, 4) with fiber
    Casimir q(q+6).  Quaternionic case: the calibrated identity
    2 * <L, L + 2 rho> + q(q+2) (1/t^2 - 2), validated coefficient-by-
    coefficient against the closed form in the test suite.
    """
    t2 = Fraction(t_squared)
    if t2 <= 0:
        raise DomainError(f"t^2 must be positive, got {t2}")
    rs = base_root_system(model)
    sws = spherical_weights(model, p, q)
    cas = casimir_scalar(rs, sws[0].weight)
    d = model.d
    if d == 1:
        return canonical_variation(sws[0].fiber_casimir, cas, Fraction(1, 2) / t2, 1)
    if d == 2:
        return 2 * cas + Fraction(q * (q + 2)) * (1 / t2 - 2)
    return canonical_variation(sws[0].fiber_casimir, cas, 1 / t2, 4)
