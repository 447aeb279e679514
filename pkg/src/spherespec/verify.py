"""Executable verification suites binding the three computation pipelines.

Each check runs an exact identity over a finite grid and returns a
``CheckReport``; a failing report always carries the first counterexample
with both computed values.  Exactness failures inside the libraries
(non-integral multiplicity, non-dominant weight) surface as failed reports,
never as silent coercion.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import geometry, lie, spectra
from .geometry import AmbientSpace, CurvatureSign
from .spectra import DomainError, Rational, SphereModel


@dataclass
class CheckReport:
    name: str
    grid: str
    passed: bool
    counterexample: Optional[dict]
    elapsed_s: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "grid": self.grid,
            "passed": self.passed,
            "counterexample": jsonable(self.counterexample),
            "elapsed_s": self.elapsed_s,
        }


def jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def _run(name: str, grid: str, body: Callable[[], Optional[dict]]) -> CheckReport:
    start = time.perf_counter()
    try:
        counterexample = body()
    except (AssertionError, ValueError, ArithmeticError) as exc:
        counterexample = {"exception": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - start
    return CheckReport(
        name=name,
        grid=grid,
        passed=counterexample is None,
        counterexample=counterexample,
        elapsed_s=elapsed,
    )


def check_round_sphere(model: SphereModel, k_max: int) -> CheckReport:
    """At t^2 = 1: level-k eigenvalue k(k+N-2) and round harmonic dimensions.

    Verifies that every branch with 2p + q = k takes the round value exactly
    and that the branch multiplicities sum to C(k+L, L) - C(k+L-2, L) with
    L = N - 1.
    """

    def body() -> Optional[dict]:
        N = model.N
        for k in range(k_max + 1):
            expected_value = k * (k + N - 2)
            expected_total = spectra.round_multiplicity(N - 1, k)
            total = 0
            for p in range(k // 2 + 1):
                q = k - 2 * p
                a, b = spectra.eigen_coefficients(model, p, q)
                if a + b != expected_value:
                    return {
                        "k": k, "p": p, "q": q,
                        "eigenvalue_at_round_point": a + b,
                        "expected": expected_value,
                    }
                total += spectra.multiplicity(model, p, q)
            if total != expected_total:
                return {
                    "k": k,
                    "sum_of_branch_multiplicities": total,
                    "round_harmonic_dimension": expected_total,
                }
        return None

    return _run(f"round_sphere:{model.label}", f"k <= {k_max}", body)


def check_unified_vs_table(model: SphereModel, p_max: int, q_max: int) -> CheckReport:
    """The unified (a, b, multiplicity) path equals the per-case path, exactly."""

    def body() -> Optional[dict]:
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                unified = (*spectra.eigen_coefficients(model, p, q), spectra.multiplicity(model, p, q))
                table = spectra.table_formulas(model, p, q)
                if unified != table:
                    return {"p": p, "q": q, "unified": list(unified), "per_case": list(table)}
        return None

    return _run(
        f"unified_vs_table:{model.label}", f"(p, q) in {p_max + 1}x{q_max + 1} grid", body
    )


def check_parametrized_identity(model: SphereModel, p_max: int, q_max: int) -> CheckReport:
    """Coefficient identity a = (2p+q)(2p+q+N-2) - q(q+2d-2) on the whole grid.

    This is the exact content of the two-sphere-spectra inclusion: with
    k = 2p + q the eigenvalue rewrites as k(k+N-2) + b(1/t^2 - 1).
    """

    def body() -> Optional[dict]:
        N = model.N
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                a, b = spectra.eigen_coefficients(model, p, q)
                k = 2 * p + q
                if a != k * (k + N - 2) - b:
                    return {"p": p, "q": q, "a": a, "reparametrized": k * (k + N - 2) - b}
        return None

    return _run(
        f"parametrized_identity:{model.label}", f"(p, q) in {p_max + 1}x{q_max + 1} grid", body
    )


def _integer_level(x: Fraction, N: int) -> Optional[int]:
    """Solve k(k + N - 2) = x for a nonnegative integer k, exactly."""
    if x < 0 or x.denominator != 1:
        return None
    disc = (N - 2) ** 2 + 4 * x.numerator
    root = math.isqrt(disc)
    if root * root != disc:
        return None
    k2 = root - (N - 2)
    if k2 < 0 or k2 % 2 != 0:
        return None
    return k2 // 2


def check_minkowski_inclusions(
    model: SphereModel, t_squared: Rational, cutoff: Rational
) -> CheckReport:
    """Spectrum inclusions of the distance sphere at exact rational t^2.

    (a) Every basic branch value below the cutoff appears in the enumerated
    spectrum (base-spectrum inclusion).  (b) Every enumerated value v admits
    integers k, j >= 0 with v = k(k+N-2) +- j(j+2d-2) s^2 (+ for t^2 < 1,
    - for t^2 > 1): the product-of-spheres certificate, found by bounded
    exhaustive search, so absence within the window is a proof.
    """
    t2 = Fraction(t_squared)
    cut = Fraction(cutoff)

    def body() -> Optional[dict]:
        if t2 <= 0 or t2 == 1:
            raise DomainError(f"t^2 must be a legal distance-sphere value, got {t2}")
        projective = t2 < 1
        s2 = 1 / t2 - 1 if projective else 1 - 1 / t2
        N, d, n = model.N, model.d, model.n
        spec = spectra.enumerate_spectrum(model, t2, cut)
        values = {e.value: e.contributors for e in spec.entries}

        p = 0
        while True:
            a, _ = spectra.eigen_coefficients(model, p, 0)
            if a > cut:
                break
            if Fraction(a) not in values or (p, 0) not in values[Fraction(a)]:
                return {"part": "basic-inclusion", "p": p, "basic_value": a}
            p += 1

        # Any witness pair has j equal to some enumerated q, so j is bounded
        # by q's enumeration bound 2dnq <= cutoff; the window is exhaustive.
        j_max_hyperbolic = math.floor(cut / (2 * d * n))
        for value in values:
            found = False
            j = 0
            while True:
                fiber_part = j * (j + 2 * d - 2) * s2
                if projective:
                    if fiber_part > value:
                        break
                    rest = value - fiber_part
                else:
                    if j > j_max_hyperbolic:
                        break
                    rest = value + fiber_part
                if _integer_level(rest, N) is not None:
                    found = True
                    break
                j += 1
            if not found:
                return {
                    "part": "two-sphere certificate",
                    "value": value,
                    "contributors": list(values[value]),
                }
        return None

    return _run(
        f"minkowski_inclusions:{model.label}:t2={t2}",
        f"t^2 = {t2}, cutoff {cut}",
        body,
    )


def check_oracles(
    model: SphereModel, p_max: int, q_max: int, t_samples: Sequence[Rational]
) -> CheckReport:
    """Root-system pipeline equals the closed forms: multiplicities and eigenvalues."""

    def body() -> Optional[dict]:
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                closed = spectra.multiplicity(model, p, q)
                oracle = lie.oracle_multiplicity(model, p, q)
                if closed != oracle:
                    return {
                        "kind": "multiplicity", "p": p, "q": q,
                        "closed_form": closed, "weyl_dimension_oracle": oracle,
                    }
                for t2 in t_samples:
                    closed_v = spectra.eigenvalue_at(*spectra.eigen_coefficients(model, p, q), t2)
                    oracle_v = lie.oracle_eigenvalue(model, p, q, t2)
                    if closed_v != oracle_v:
                        return {
                            "kind": "eigenvalue", "p": p, "q": q, "t2": Fraction(t2),
                            "closed_form": closed_v, "casimir_oracle": oracle_v,
                        }
        return None

    samples = ", ".join(str(Fraction(t)) for t in t_samples)
    return _run(
        f"oracles:{model.label}",
        f"(p, q) in {p_max + 1}x{q_max + 1} grid, t^2 in {{{samples}}}",
        body,
    )


def check_jacobi(
    ambient: AmbientSpace,
    slope_grid: Sequence[Rational],
    bound_grid: int = 100,
    jump_count: int = 10,
) -> CheckReport:
    """Second-variation suite: kernel identity, sign bounds, index equivalences.

    Verifies the (0, 1) kernel branch, the exact positivity bounds on a
    (p, q) grid via the affine form's endpoint values, closed-form vs
    brute-force Morse index and kernel dimension at every grid slope, and
    (projective) the index jump by exactly the crossing multiplicity across
    each of the first ``jump_count`` resonant slopes.
    """
    model = ambient.model

    def body() -> Optional[dict]:
        N, d, n = model.N, model.d, model.n
        kernel_term = geometry.jacobi_term(ambient, 0, 1)
        if (kernel_term.A, kernel_term.B) != (0, 0) or kernel_term.multiplicity != N:
            return {"part": "kernel-branch", "A": kernel_term.A, "B": kernel_term.B,
                    "multiplicity": kernel_term.multiplicity, "N": N}

        # Positivity of all non-basic, non-kernel branches: an affine function
        # of s^2 is bounded below on an interval by its endpoint values.
        for p in range(bound_grid + 1):
            for q in range(bound_grid + 1):
                if (p, q) == (0, 0) or (p, q) == (0, 1):
                    continue
                if ambient.projective and q == 0:
                    continue  # basic branches do cross zero; handled by jumps
                term = geometry.jacobi_term(ambient, p, q)
                if ambient.projective:
                    bound = (N + 1) if p == 0 else (2 * N + 4)
                    ok = term.B >= 0 and term.A >= bound
                else:
                    if p == 0 and q < 2:
                        continue
                    bound = (2 * d * n) if p == 0 else (N + 1)
                    ok = min(term.A, term.A + term.B) >= bound
                if not ok:
                    return {"part": "positivity", "p": p, "q": q,
                            "A": term.A, "B": term.B, "required_lower_bound": bound}

        for s2 in slope_grid:
            s2 = Fraction(s2)
            closed = geometry.morse_index(ambient, s2)
            brute = geometry.brute_force_morse_index(ambient, s2)
            if closed != brute:
                return {"part": "morse-index", "slope2": s2,
                        "closed_form": closed, "brute_force": brute}
            kernel = geometry.kernel_dimension(ambient, s2)
            brute_kernel = geometry.brute_force_kernel_dimension(ambient, s2)
            if kernel != brute_kernel:
                return {"part": "kernel", "slope2": s2,
                        "closed_form": kernel, "brute_force": brute_kernel}
            crossing = geometry.crossing_index(ambient, s2)
            expected_kernel = N + (
                spectra.multiplicity(model, crossing, 0) if crossing is not None else 0
            )
            if kernel != expected_kernel:
                return {"part": "kernel-size", "slope2": s2,
                        "kernel": kernel, "expected": expected_kernel}

        if ambient.projective:
            cumulative = 0
            for p in range(1, jump_count + 1):
                sp = geometry.resonant_slope(ambient, p)
                prev = geometry.resonant_slope(ambient, p - 1) if p > 1 else Fraction(0)
                nxt = geometry.resonant_slope(ambient, p + 1)
                eps = min(sp - prev, nxt - sp) / 4
                below, above = sp - eps, sp + eps
                jump = geometry.morse_index(ambient, above) - geometry.morse_index(ambient, below)
                expected_jump = spectra.multiplicity(model, p, 0)
                if jump != expected_jump:
                    return {"part": "index-jump", "p": p, "slope2": sp,
                            "jump": jump, "crossing_multiplicity": expected_jump}
                if geometry.morse_index(ambient, below) != cumulative:
                    return {"part": "cumulative-index", "p": p,
                            "below": geometry.morse_index(ambient, below),
                            "expected": cumulative}
                cumulative += expected_jump
                report = geometry.classify(ambient, sp)
                if not (report.resonant and report.degenerate_beyond_killing
                        and report.kernel_dimension == N + expected_jump):
                    return {"part": "resonance-verdict", "p": p, "slope2": sp,
                            "kernel": report.kernel_dimension}
                for side in (below, above):
                    side_report = geometry.classify(ambient, side)
                    if side_report.resonant or side_report.kernel_dimension != N:
                        return {"part": "off-resonance-rigidity", "slope2": side,
                                "kernel": side_report.kernel_dimension}
        else:
            for s2 in slope_grid:
                report = geometry.classify(ambient, Fraction(s2))
                if not (report.stable and not report.resonant
                        and report.kernel_dimension == N and report.morse_index == 0):
                    return {"part": "hyperbolic-stability", "slope2": Fraction(s2),
                            "morse_index": report.morse_index,
                            "kernel": report.kernel_dimension}
        return None

    return _run(
        f"jacobi:{ambient.name}",
        f"{len(slope_grid)} slopes, bounds grid {bound_grid}, {jump_count} crossings",
        body,
    )


CHECK_NAMES = (
    "round_sphere",
    "unified_vs_table",
    "parametrized_identity",
    "minkowski_inclusions",
    "oracles",
    "jacobi",
)

_FULL = {
    "k_max": 60,
    "formula_grid": 100,
    "oracle_grid": 60,
    "oracle_t2": (1, Fraction(1, 2), Fraction(1, 4), 2, Fraction(9, 4)),
    "minkowski_cutoff": 200,
    "jacobi_bound_grid": 100,
    "jump_count": 10,
    "random_slopes": 50,
}

_QUICK = {
    "k_max": 30,
    "formula_grid": 30,
    "oracle_grid": 20,
    "oracle_t2": (1, Fraction(1, 2), 2),
    "minkowski_cutoff": 60,
    "jacobi_bound_grid": 30,
    "jump_count": 3,
    "random_slopes": 10,
}


def standard_models() -> list[SphereModel]:
    return list(spectra.all_models(4))


def _hyperbolic_slopes(count: int, seed: int = 2718) -> list[Fraction]:
    rng = random.Random(seed)
    return [Fraction(rng.randint(1, 999), 1000) for _ in range(count)]


def _projective_probe_slopes(ambient: AmbientSpace, crossings: int) -> list[Fraction]:
    slopes = [Fraction(1, 2), Fraction(1)]
    for p in range(1, crossings + 1):
        sp = geometry.resonant_slope(ambient, p)
        prev = geometry.resonant_slope(ambient, p - 1) if p > 1 else Fraction(0)
        nxt = geometry.resonant_slope(ambient, p + 1)
        eps = min(sp - prev, nxt - sp) / 4
        slopes += [sp - eps, sp, sp + eps]
    return slopes


def run_all(profile: str = "full", only: Optional[str] = None) -> list[CheckReport]:
    """Run every check over the standard model sweep; reports sorted by name.

    ``profile`` is "quick" (grids capped at 30) or "full" (the contract
    grids).  ``only`` restricts to one base check name.
    """
    if profile not in ("quick", "full"):
        raise DomainError(f"unknown profile {profile!r}")
    if only is not None and only not in CHECK_NAMES:
        raise DomainError(f"unknown check name {only!r}; known: {', '.join(CHECK_NAMES)}")
    cfg = _FULL if profile == "full" else _QUICK
    models = standard_models()
    reports: list[CheckReport] = []

    def wanted(name: str) -> bool:
        return only is None or only == name

    for model in models:
        if wanted("round_sphere"):
            reports.append(check_round_sphere(model, cfg["k_max"]))
        if wanted("unified_vs_table"):
            reports.append(check_unified_vs_table(model, cfg["formula_grid"], cfg["formula_grid"]))
        if wanted("parametrized_identity"):
            reports.append(
                check_parametrized_identity(model, cfg["formula_grid"], cfg["formula_grid"])
            )
        if wanted("minkowski_inclusions"):
            for t2 in (Fraction(1, 2), Fraction(2)):
                reports.append(check_minkowski_inclusions(model, t2, cfg["minkowski_cutoff"]))
        if wanted("oracles"):
            reports.append(
                check_oracles(model, cfg["oracle_grid"], cfg["oracle_grid"], cfg["oracle_t2"])
            )
        if wanted("jacobi"):
            proj = AmbientSpace(model, CurvatureSign.PROJECTIVE)
            hyp = AmbientSpace(model, CurvatureSign.HYPERBOLIC)
            reports.append(
                check_jacobi(
                    proj,
                    _projective_probe_slopes(proj, cfg["jump_count"]),
                    bound_grid=cfg["jacobi_bound_grid"],
                    jump_count=cfg["jump_count"],
                )
            )
            reports.append(
                check_jacobi(
                    hyp,
                    _hyperbolic_slopes(cfg["random_slopes"]),
                    bound_grid=cfg["jacobi_bound_grid"],
                    jump_count=cfg["jump_count"],
                )
            )
    reports.sort(key=lambda r: r.name)
    return reports
