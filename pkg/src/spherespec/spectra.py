"""Exact Laplace spectra of homogeneous spheres fibered over projective spaces.

The spheres S^{N-1} carrying a Hopf-type fibration with fiber S^{2d-1} over
KP^n (K the complexes, quaternions, or octonions) admit a one-parameter
family of homogeneous metrics g(t) that rescales the fiber directions.
Every Laplace eigenvalue of (S^{N-1}, g(t)) is an affine function of 1/t^2
with nonnegative integer coefficients,

    lambda(p, q; t) = a(p, q) + b(q) / t^2,

indexed by two nonnegative integers (p, q), and carries an exactly computable
integer multiplicity.  This module stores eigenvalue branches symbolically as
the integer pair (a, b), evaluates them at exact rational t^2, and enumerates
the merged spectrum below a cutoff with exact collision detection.

All arithmetic is exact: integers for coefficients and multiplicities,
``fractions.Fraction`` for eigenvalues.  Floats appear only in display
helpers and never feed a comparison.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

Rational = Union[int, Fraction]

DEFAULT_TERM_LIMIT = 10**6


class DomainError(ValueError):
    """An argument lies outside its legal geometric range."""


class EnumerationLimit(DomainError):
    """A cutoff would enumerate more eigenvalue branches than the guard allows."""


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) with the convention C(a, b) = 0 if a < b.

    The zero convention (also for b < 0) is relied on throughout the
    multiplicity formulas and must live in this single routine.
    """
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


class DivisionAlgebra(Enum):
    """Normed division algebra over which the fibration is built."""

    COMPLEX = "c"
    QUATERNION = "h"
    OCTONION = "o"

    @property
    def d(self) -> int:
        """Complex dimension: 1, 2, or 4."""
        return _ALGEBRA_DIM[self]

    @property
    def letter(self) -> str:
        """Ambient-space letter used in names like CP^2, HH^3, CaP^2."""
        return {"c": "C", "h": "H", "o": "Ca"}[self.value]


_ALGEBRA_DIM = {
    DivisionAlgebra.COMPLEX: 1,
    DivisionAlgebra.QUATERNION: 2,
    DivisionAlgebra.OCTONION: 4,
}


@dataclass(frozen=True)
class SphereModel:
    """Discrete data of one fibered sphere S^{N-1} -> KP^n with fiber S^{2d-1}.

    n is the projective index of the base (n >= 1); the ambient rank-one
    space KP^{n+1} or KH^{n+1} has real dimension N = 2d(n+1).  The
    octonionic case exists only for n = 1 (non-associativity).
    """

    algebra: DivisionAlgebra
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"base index n must be >= 1, got {self.n}")
        if self.algebra is DivisionAlgebra.OCTONION and self.n != 1:
            raise DomainError("the octonionic fibration exists only for n = 1")

    @property
    def d(self) -> int:
        return self.algebra.d

    @property
    def N(self) -> int:
        """Real dimension of the ambient space, 2d(n+1)."""
        return 2 * self.d * (self.n + 1)

    @property
    def fiber_dim(self) -> int:
        return 2 * self.d - 1

    @property
    def sphere_dim(self) -> int:
        return self.N - 1

    @property
    def label(self) -> str:
        return f"S^{self.sphere_dim}->{self.algebra.letter}P^{self.n}"


@dataclass(frozen=True)
class SpectralTerm:
    """One (p, q) eigenvalue branch, stored as lambda(t) = a + b/t^2."""

    p: int
    q: int
    a: int
    b: int
    multiplicity: int
    basic: bool

    def value(self, t_squared: Rational) -> Fraction:
        return eigenvalue_at(self.a, self.b, t_squared)


@dataclass(frozen=True)
class SpectrumEntry:
    """A merged eigenvalue: exact value, total multiplicity, contributing (p, q)."""

    value: Fraction
    multiplicity: int
    contributors: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MergedSpectrum:
    """Sorted, collision-merged spectrum of (S^{N-1}, g(t)) below a cutoff."""

    model: SphereModel
    t_squared: Fraction
    cutoff: Fraction
    entries: tuple[SpectrumEntry, ...]

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)


def eigen_coefficients(model: SphereModel, p: int, q: int) -> tuple[int, int]:
    """Integer coefficients (a, b) of the branch lambda(t) = a + b/t^2.

    a = 4p(p + q + d(n+1) - 1) + 2dnq and b = q(q + 2d - 2); the branch is
    basic (fiber-constant eigenfunctions, t-independent) exactly when q = 0.
    """
    _check_indices(p, q)
    d, n = model.d, model.n
    a = 4 * p * (p + q + d * (n + 1) - 1) + 2 * d * n * q
    b = q * (q + 2 * d - 2)
    return a, b


def chi(d: int, q: int) -> int:
    """Fiber-degeneracy factor of the unified multiplicity formula.

    For d = 1 it is 1 when q = 0 and 2 when q >= 1 (the continuous limit at
    the removable singularity); for d in {2, 4} it equals
    (1 + q/(d-1)) * C(q + 2d - 3, q), always an integer.
    """
    if d not in (1, 2, 4):
        raise DomainError(f"d must be 1, 2 or 4, got {d}")
    if q < 0:
        raise DomainError(f"q must be nonnegative, got {q}")
    if d == 1:
        return 1 if q == 0 else 2
    num = (d - 1 + q) * binom(q + 2 * d - 3, q)
    quotient, remainder = divmod(num, d - 1)
    assert remainder == 0, f"chi({d}, {q}) is not an integer"
    return quotient


def multiplicity(model: SphereModel, p: int, q: int) -> int:
    """Exact multiplicity of the (p, q) branch.

    The rational expression
        (2p+q+D-1)/(D-1) * C(p+q+D-2, p+q) * C(p+dn-1, p) / C(p+q+d-1, p+q)
        * chi(d, q),
    with D = d(n+1), always reduces to a positive integer; the division is
    checked, never truncated.
    """
    _check_indices(p, q)
    d, n = model.d, model.n
    D = d * (n + 1)
    num = (
        (2 * p + q + D - 1)
        * binom(p + q + D - 2, p + q)
        * binom(p + d * n - 1, p)
        * chi(d, q)
    )
    den = (D - 1) * binom(p + q + d - 1, p + q)
    quotient, remainder = divmod(num, den)
    assert remainder == 0, f"multiplicity({model.label}, {p}, {q}) is not an integer"
    assert quotient > 0, f"multiplicity({model.label}, {p}, {q}) is not positive"
    return quotient


def spectral_term(model: SphereModel, p: int, q: int) -> SpectralTerm:
    a, b = eigen_coefficients(model, p, q)
    return SpectralTerm(p=p, q=q, a=a, b=b, multiplicity=multiplicity(model, p, q), basic=q == 0)


def table_formulas(model: SphereModel, p: int, q: int) -> tuple[int, int, int]:
    """Per-case (a, b, multiplicity), written independently of the unified path.

    The three cases carry their own shapes: the doubling factor 2 - delta_{q0}
    for d = 1, the (q+1)^2 factor for d = 2, and the binomial-ratio form for
    d = 4.  Kept as a separate code path so the two derivations can be checked
    against each other on large grids.
    """
    _check_indices(p, q)
    d, n = model.d, model.n
    if d == 1:
        a = 4 * p * (p + q + n) + 2 * n * q
        b = q * q
        num = (2 if q > 0 else 1) * (2 * p + q + n) * binom(p + q + n - 1, p + q) * binom(p + n - 1, p)
        den = n
    elif d == 2:
        a = 4 * p * (p + q + 2 * n + 1) + 4 * n * q
        b = q * (q + 2)
        num = (
            (2 * p + q + 2 * n + 1)
            * (q + 1) ** 2
            * binom(p + q + 2 * n, p + q)
            * binom(p + 2 * n - 1, p)
        )
        den = (2 * n + 1) * (p + q + 1)
    else:
        a = 4 * p * (p + q + 7) + 8 * q
        b = q * (q + 6)
        num = (2 * p + q + 7) * (3 + q) * binom(p + q + 6, p + q) * binom(p + 3, p) * binom(q + 5, q)
        den = 7 * 3 * binom(p + q + 3, p + q)
    quotient, remainder = divmod(num, den)
    assert remainder == 0, f"table multiplicity({model.label}, {p}, {q}) is not an integer"
    return a, b, quotient


def eigenvalue_at(a: int, b: int, t_squared: Rational) -> Fraction:
    """Exact value a + b/t^2 at a positive rational t^2."""
    t2 = Fraction(t_squared)
    if t2 <= 0:
        raise DomainError(f"t^2 must be positive, got {t2}")
    return Fraction(a) + Fraction(b) / t2


def evaluate_term(term: SpectralTerm, t_squared: Rational) -> Fraction:
    return eigenvalue_at(term.a, term.b, t_squared)


def round_multiplicity(sphere_dim: int, k: int) -> int:
    """Eigenvalue multiplicity of the unit round sphere S^L at level k.

    Equals C(k+L, L) - C(k+L-2, L), the dimension of degree-k spherical
    harmonics in L+1 variables.
    """
    if sphere_dim < 1:
        raise DomainError(f"sphere dimension must be >= 1, got {sphere_dim}")
    if k < 0:
        raise DomainError(f"harmonic level must be nonnegative, got {k}")
    L = sphere_dim
    return binom(k + L, L) - binom(k + L - 2, L)


def enumerate_terms(
    model: SphereModel,
    inv_t_squared: Fraction,
    cutoff: Fraction,
    max_terms: int = DEFAULT_TERM_LIMIT,
    workers: int = 1,
) -> list[tuple[Fraction, int, int, int, int]]:
    """All (value, p, q, a, b) with a + b * (1/t^2) <= cutoff, unsorted.

    Termination: a(p, 0) = 4p(p+D-1) is strictly increasing in p, and for
    fixed p the value increases by at least 2dn per unit of q, so both loops
    hit their bounds in exact arithmetic.  Hard-capped at ``max_terms``.
    """
    if inv_t_squared <= 0:
        raise DomainError(f"1/t^2 must be positive, got {inv_t_squared}")
    if cutoff < 0:
        raise DomainError(f"cutoff must be nonnegative, got {cutoff}")
    d, n = model.d, model.n
    D = d * (n + 1)

    def stripe(p_values: list[int]) -> list[tuple[Fraction, int, int, int, int]]:
        found: list[tuple[Fraction, int, int, int, int]] = []
        for p in p_values:
            q = 0
            while True:
                a = 4 * p * (p + q + D - 1) + 2 * d * n * q
                b = q * (q + 2 * d - 2)
                value = a + b * inv_t_squared
                if value > cutoff:
                    break
                found.append((value, p, q, a, b))
                if len(found) > max_terms:
                    raise EnumerationLimit(
                        f"cutoff {cutoff} enumerates more than {max_terms} branches"
                    )
                q += 1
        return found

    # 4p^2 <= a(p, 0) <= cutoff bounds p; computed exactly.
    p_limit = math.isqrt(math.floor(cutoff) // 4) + 1
    all_p = [p for p in range(p_limit + 1) if 4 * p * (p + D - 1) <= cutoff]

    if workers <= 1 or len(all_p) < 2:
        terms = stripe(all_p)
    else:
        chunk = max(1, -(-len(all_p) // workers))
        parts = [all_p[i : i + chunk] for i in range(0, len(all_p), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = [t for part in pool.map(stripe, parts) for t in part]
    if len(terms) > max_terms:
        raise EnumerationLimit(f"cutoff {cutoff} enumerates more than {max_terms} branches")
    return terms


def enumerate_spectrum(
    model: SphereModel,
    t_squared: Rational,
    cutoff: Rational,
    max_terms: int = DEFAULT_TERM_LIMIT,
    workers: int = 1,
) -> MergedSpectrum:
    """Merged spectrum of (S^{N-1}, g(t)) up to the cutoff, at exact rational t^2.

    Branches whose exact rational values coincide are merged; the entry
    multiplicity is the sum over contributors.  Entries are sorted strictly
    increasing.  Results are independent of ``workers``.
    """
    t2 = Fraction(t_squared)
    if t2 <= 0:
        raise DomainError(f"t^2 must be positive, got {t2}")
    cut = Fraction(cutoff)
    terms = enumerate_terms(model, 1 / t2, cut, max_terms=max_terms, workers=workers)
    merged: dict[Fraction, list[tuple[int, int]]] = {}
    for value, p, q, _a, _b in terms:
        merged.setdefault(value, []).append((p, q))
    entries = []
    for value in sorted(merged):
        contributors = tuple(sorted(merged[value]))
        total = sum(multiplicity(model, p, q) for p, q in contributors)
        entries.append(SpectrumEntry(value=value, multiplicity=total, contributors=contributors))
    return MergedSpectrum(model=model, t_squared=t2, cutoff=cut, entries=tuple(entries))


@dataclass(frozen=True)
class FloatEntry:
    """Display-mode spectrum row at an inexact metric parameter (never merged)."""

    value: float
    p: int
    q: int
    a: int
    b: int
    multiplicity: int
    basic: bool


def enumerate_spectrum_float(
    model: SphereModel,
    inv_t_squared: float,
    cutoff: Rational,
    max_terms: int = DEFAULT_TERM_LIMIT,
) -> tuple[list[FloatEntry], list[str]]:
    """Display-mode enumeration at a floating 1/t^2 (e.g. from a float radius).

    Distinct branches are never merged at float precision: each (p, q) keeps
    its own row, and pairs of rows closer than 1e-12 in relative gap are
    reported as near-collision warnings instead.
    """
    if not (inv_t_squared > 0) or math.isinf(inv_t_squared):
        raise DomainError(f"1/t^2 must be positive and finite, got {inv_t_squared}")
    terms = enumerate_terms(model, Fraction(inv_t_squared), Fraction(cutoff), max_terms=max_terms)
    rows = [
        FloatEntry(
            value=a + b * inv_t_squared,
            p=p,
            q=q,
            a=a,
            b=b,
            multiplicity=multiplicity(model, p, q),
            basic=q == 0,
        )
        for _value, p, q, a, b in terms
    ]
    rows.sort(key=lambda r: (r.value, r.p, r.q))
    warnings = []
    for prev, cur in zip(rows, rows[1:]):
        if (prev.a, prev.b) == (cur.a, cur.b):
            continue
        gap = abs(cur.value - prev.value)
        scale = max(abs(prev.value), abs(cur.value), 1.0)
        if gap < 1e-12 * scale:
            warnings.append(
                f"near-collision at float precision: (p,q)=({prev.p},{prev.q}) and "
                f"({cur.p},{cur.q}) differ by {gap:.3e}; not merged"
            )
    return rows, warnings


def _check_indices(p: int, q: int) -> None:
    if p < 0 or q < 0:
        raise DomainError(f"branch indices must be nonnegative, got (p, q) = ({p}, {q})")


def all_models(max_n: int, *, max_n_quaternion: Optional[int] = None) -> Iterator[SphereModel]:
    """The standard model sweep: complex and quaternionic up to max_n, octonionic n=1."""
    for n in range(1, max_n + 1):
        yield SphereModel(DivisionAlgebra.COMPLEX, n)
    for n in range(1, (max_n_quaternion or max_n) + 1):
        yield SphereModel(DivisionAlgebra.QUATERNION, n)
    yield SphereModel(DivisionAlgebra.OCTONION, 1)
