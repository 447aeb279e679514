"""Command-line front end: spectra, stability reports, resonant radii, checks.

Subcommands
    spectrum   merged Laplace spectrum of a fibered/distance sphere
    jacobi     second-variation report at one radius (index, kernel, verdict)
    resonant   table of resonant radii with index jumps
    verify     run the exact verification suites

Exit codes: 0 success, 1 usage error, 2 domain error (illegal radius, t^2,
or model), 3 verification failure.

Exact rationals are written as "a/b" on input and output; floats appear only
as display annotations, and any float-radius request is marked "mode": "float"
and never feeds exact verdicts.  A key=value config file (path in --config or
the SPHERESPEC_CONFIG environment variable) may set ``format``, ``max_terms``,
and ``parallelism``; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import geometry, spectra
from . import verify as verify_mod
from .geometry import AmbientSpace, CurvatureSign
from .spectra import DivisionAlgebra, DomainError, SphereModel

SCHEMA_VERSION = "1.0"
CONFIG_ENV = "SPHERESPEC_CONFIG"
INDETERMINATE = "indeterminate at float precision"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """Exact rational "a/b" or bare integer; decimals are refused, not coerced."""
    t = text.strip()
    try:
        if "/" in t:
            num, den = t.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(t))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational like 7/2 or 3 (no decimals), got {text!r}"
        ) from None


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 1."""

    def error(self, message: str):  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="spherespec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p: _Parser, formats: Sequence[str]) -> None:
        p.add_argument("--config", help="key=value config file (also SPHERESPEC_CONFIG)")
        p.add_argument("--format", choices=formats, default=None)
        p.add_argument("--output", help="write the result to this path instead of stdout")

    def add_model(p: _Parser) -> None:
        p.add_argument("--field", choices=["c", "h", "o"], required=True,
                       help="division algebra of the fibration: c, h, or o")
        p.add_argument("--n", type=int, required=True, help="base projective index (>= 1)")

    p_spec = sub.add_parser("spectrum", help="merged Laplace spectrum below a cutoff")
    add_model(p_spec)
    p_spec.add_argument("--t2", type=parse_rational, help="exact fiber-scale parameter t^2")
    p_spec.add_argument("--sign", choices=["proj", "hyp"],
                        help="ambient curvature sign (required with --slope2/--radius)")
    p_spec.add_argument("--slope2", type=parse_rational,
                        help="exact tan^2 r (proj) or tanh^2 r (hyp)")
    p_spec.add_argument("--radius", type=float, help="float geodesic radius (display mode)")
    p_spec.add_argument("--cutoff", type=parse_rational, required=True)
    p_spec.add_argument("--max-terms", type=int, default=None, dest="max_terms")
    add_common(p_spec, ["table", "json", "csv"])
    p_spec.set_defaults(handler=cmd_spectrum)

    p_jac = sub.add_parser("jacobi", help="second-variation report at one radius")
    add_model(p_jac)
    p_jac.add_argument("--sign", choices=["proj", "hyp"], required=True)
    p_jac.add_argument("--slope2", type=parse_rational,
                       help="exact tan^2 r (proj) or tanh^2 r (hyp)")
    p_jac.add_argument("--radius", type=float, help="float geodesic radius (display mode)")
    p_jac.add_argument("--count", type=int, default=8,
                       help="number of lowest branches to display")
    add_common(p_jac, ["table", "json"])
    p_jac.set_defaults(handler=cmd_jacobi)

    p_res = sub.add_parser("resonant", help="table of resonant radii")
    add_model(p_res)
    p_res.add_argument("--sign", choices=["proj", "hyp"], default="proj")
    p_res.add_argument("--count", type=int, required=True)
    add_common(p_res, ["table", "json"])
    p_res.set_defaults(handler=cmd_resonant)

    p_ver = sub.add_parser("verify", help="run the exact verification suites")
    p_ver.add_argument("--profile", choices=["quick", "full"], default="full")
    p_ver.add_argument("--only", default=None, help="run a single check by base name")
    add_common(p_ver, ["text", "json"])
    p_ver.set_defaults(handler=cmd_verify)

    return parser


def load_config(path_flag: Optional[str]) -> dict:
    path = path_flag or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    cfg: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "format":
            cfg["format"] = value
        elif key in ("max_terms", "parallelism"):
            try:
                cfg[key] = int(value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: {key} must be an integer") from None
            if cfg[key] < 1:
                raise UsageError(f"{path}:{lineno}: {key} must be positive")
        else:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
    return cfg


def _resolve_format(args, cfg: dict, default: str, allowed: Sequence[str]) -> str:
    if args.format is not None:
        return args.format
    fmt = cfg.get("format")
    if fmt is not None:
        if fmt not in allowed:
            raise UsageError(f"config format {fmt!r} is not valid here (allowed: {', '.join(allowed)})")
        return fmt
    return default


def _model(args) -> SphereModel:
    return SphereModel(DivisionAlgebra(args.field), args.n)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_record(request: dict, payload: dict) -> str:
    record = {"schema_version": SCHEMA_VERSION, "request": request, "payload": payload}
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def _request_echo(model: SphereModel, sign: Optional[str], **extra) -> dict:
    request = {
        "field": model.algebra.value,
        "d": model.d,
        "n": model.n,
        "N": model.N,
        "sign": sign,
        "space": (
            AmbientSpace(model, CurvatureSign(sign)).name
            if sign is not None
            else f"S^{model.sphere_dim}"
        ),
    }
    request.update(extra)
    return request


def cmd_spectrum(args, cfg: dict) -> int:
    fmt = _resolve_format(args, cfg, "table", ["table", "json", "csv"])
    model = _model(args)
    max_terms = args.max_terms or cfg.get("max_terms") or spectra.DEFAULT_TERM_LIMIT
    workers = cfg.get("parallelism", 1)
    cutoff = args.cutoff

    given = [name for name in ("t2", "slope2", "radius") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --t2, --slope2, --radius")
    if given[0] in ("slope2", "radius") and args.sign is None:
        raise UsageError(f"--{given[0]} requires --sign to fix the ambient curvature")

    if args.radius is not None:
        ambient = AmbientSpace(model, CurvatureSign(args.sign))
        geometry.check_radius(ambient, args.radius)
        s2f = geometry.slope_squared_from_radius(ambient, args.radius)
        inv_t2 = 1 + s2f if ambient.projective else 1 - s2f
        if inv_t2 <= 0:
            raise DomainError(f"radius {args.radius} degenerates at float precision")
        rows, warnings = spectra.enumerate_spectrum_float(model, inv_t2, cutoff, max_terms=max_terms)
        request = _request_echo(
            model, args.sign, mode="float", radius=args.radius,
            t2=None, slope2=None, cutoff=_rat(cutoff),
        )
        if fmt == "json":
            payload = {
                "entries": [
                    {"p": r.p, "q": r.q, "a": r.a, "b": r.b, "value_float": r.value,
                     "multiplicity": r.multiplicity, "basic": r.basic}
                    for r in rows
                ],
                "warnings": warnings,
            }
            _emit(_json_record(request, payload), args.output)
        elif fmt == "csv":
            lines = ["p,q,a,b,value_exact,value_float,multiplicity,basic"]
            lines += [
                f"{r.p},{r.q},{r.a},{r.b},,{r.value!r},{r.multiplicity},{str(r.basic).lower()}"
                for r in rows
            ]
            _emit("\n".join(lines) + "\n", args.output)
        else:
            head = (f"# {request['space']}  field={model.algebra.value} n={model.n} "
                    f"N={model.N}  radius={args.radius}  mode=float\n")
            body = [f"{'value_float':>18}  {'mult':>6}  basic  (p,q)"]
            body += [
                f"{r.value:>18.12g}  {r.multiplicity:>6}  {str(r.basic).lower():5}  ({r.p},{r.q})"
                for r in rows
            ]
            tail = "".join(f"# warning: {w}\n" for w in warnings)
            _emit(head + "\n".join(body) + "\n" + tail, args.output)
        return EXIT_OK

    if args.t2 is not None:
        t2 = args.t2
        if t2 <= 0:
            raise DomainError(f"t^2 must be positive, got {t2}")
        sign = args.sign
        slope2 = None
    else:
        ambient = AmbientSpace(model, CurvatureSign(args.sign))
        slope2 = geometry.check_slope(ambient, args.slope2)
        t2, _alpha2, _inv = geometry.radius_params(ambient, slope2)
        sign = args.sign

    spectrum = spectra.enumerate_spectrum(model, t2, cutoff, max_terms=max_terms, workers=workers)
    request = _request_echo(
        model, sign, mode="exact", radius=None, t2=_rat(t2),
        slope2=None if slope2 is None else _rat(slope2), cutoff=_rat(cutoff),
    )

    if fmt == "json":
        payload = {
            "entries": [
                {
                    "value": _rat(e.value),
                    "value_float": float(e.value),
                    "multiplicity": e.multiplicity,
                    "basic": all(q == 0 for _p, q in e.contributors),
                    "contributors": [
                        {
                            "p": term.p, "q": term.q, "a": term.a, "b": term.b,
                            "multiplicity": term.multiplicity, "basic": term.basic,
                        }
                        for term in (
                            spectra.spectral_term(model, p, q) for p, q in e.contributors
                        )
                    ],
                }
                for e in spectrum.entries
            ],
            "warnings": [],
        }
        _emit(_json_record(request, payload), args.output)
    elif fmt == "csv":
        lines = ["p,q,a,b,value_exact,value_float,multiplicity,basic"]
        for e in spectrum.entries:
            for p, q in e.contributors:
                a, b = spectra.eigen_coefficients(model, p, q)
                m = spectra.multiplicity(model, p, q)
                lines.append(
                    f"{p},{q},{a},{b},{_rat(e.value)},{float(e.value)!r},{m},"
                    f"{str(q == 0).lower()}"
                )
        _emit("\n".join(lines) + "\n", args.output)
    else:
        head = (f"# {request['space']}  field={model.algebra.value} n={model.n} N={model.N}"
                f"  t2={_rat(t2)}"
                + (f"  slope2={_rat(slope2)}" if slope2 is not None else "")
                + f"  cutoff={_rat(cutoff)}  mode=exact\n")
        body = [f"{'value':>14}  {'float':>16}  {'mult':>8}  basic  contributors"]
        for e in spectrum.entries:
            basic = all(q == 0 for _p, q in e.contributors)
            contrib = " ".join(
                f"({p},{q})x{spectra.multiplicity(model, p, q)}" for p, q in e.contributors
            )
            body.append(
                f"{_rat(e.value):>14}  {float(e.value):>16.10g}  {e.multiplicity:>8}  "
                f"{str(basic).lower():5}  {contrib}"
            )
        _emit(head + "\n".join(body) + "\n", args.output)
    return EXIT_OK


def _near_resonance_float(ambient: AmbientSpace, s2f: float, tol: float = 1e-9) -> bool:
    if not ambient.projective:
        return False
    N, d = ambient.model.N, ambient.model.d
    # invert the resonance quadratic to locate the nearest crossing index
    p_star = (math.sqrt(N * N + 4 * (2 * d - 1) * s2f) - (N - 2)) / 4
    for p in {max(1, math.floor(p_star)), max(1, math.ceil(p_star))}:
        sp = float(geometry.resonant_slope(ambient, p))
        if abs(sp - s2f) <= tol * max(1.0, sp, s2f):
            return True
    return False


def cmd_jacobi(args, cfg: dict) -> int:
    fmt = _resolve_format(args, cfg, "table", ["table", "json"])
    model = _model(args)
    ambient = AmbientSpace(model, CurvatureSign(args.sign))
    if args.count < 1:
        raise UsageError("--count must be positive")
    given = [name for name in ("slope2", "radius") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --slope2 (exact) or --radius (float)")

    if args.radius is not None:
        geometry.check_radius(ambient, args.radius)
        s2f = geometry.slope_squared_from_radius(ambient, args.radius)
        s2 = Fraction(s2f)
        geometry.check_slope(ambient, s2)
        indeterminate = _near_resonance_float(ambient, s2f)
        branches = geometry.lowest_jacobi_terms(ambient, s2, args.count)
        if indeterminate:
            morse = INDETERMINATE
            kernel = INDETERMINATE
            stable = INDETERMINATE
            degenerate = INDETERMINATE
            resonant = INDETERMINATE
            verdict = (
                "radius at float precision is within 1e-9 of a resonant radius; "
                "exact verdicts need an exact --slope2"
            )
        else:
            index = geometry.morse_index(ambient, s2)
            morse = index
            kernel = model.N
            stable = index == 0
            degenerate = False
            resonant = False
            verdict = "verdicts computed away from resonance; input was float precision"
        request = _request_echo(
            model, args.sign, mode="float", radius=args.radius, slope2=None, count=args.count,
        )
        payload = {
            "branches": [
                {"p": t.p, "q": t.q, "A": t.A, "B": t.B, "multiplicity": t.multiplicity,
                 "value_float": float(v)}
                for t, v in branches
            ],
            "morse_index": morse,
            "kernel_dimension": kernel,
            "stable": stable,
            "degenerate_beyond_killing": degenerate,
            "resonant": resonant,
            "verdict": verdict,
        }
        if fmt == "json":
            _emit(_json_record(request, payload), args.output)
        else:
            head = (f"# {ambient.name}  radius={args.radius}  mode=float\n")
            body = [f"{'p':>4} {'q':>4} {'A':>10} {'B':>8} {'mult':>8}  {'value_float':>16}"]
            body += [
                f"{t.p:>4} {t.q:>4} {t.A:>10} {t.B:>8} {t.multiplicity:>8}  {float(v):>16.10g}"
                for t, v in branches
            ]
            tail = (f"morse_index={morse}  kernel={kernel}  stable={stable}  "
                    f"resonant={resonant}\n# {verdict}\n")
            _emit(head + "\n".join(body) + "\n" + tail, args.output)
        return EXIT_OK

    s2 = geometry.check_slope(ambient, args.slope2)
    report = geometry.classify(ambient, s2)
    branches = geometry.lowest_jacobi_terms(ambient, s2, args.count)
    request = _request_echo(
        model, args.sign, mode="exact", radius=None, slope2=_rat(s2), count=args.count,
    )
    payload = {
        "branches": [
            {"p": t.p, "q": t.q, "A": t.A, "B": t.B, "multiplicity": t.multiplicity,
             "value": _rat(v), "value_float": float(v)}
            for t, v in branches
        ],
        "morse_index": report.morse_index,
        "kernel_dimension": report.kernel_dimension,
        "stable": report.stable,
        "degenerate_beyond_killing": report.degenerate_beyond_killing,
        "resonant": report.resonant,
        "verdict": report.verdict,
    }
    if fmt == "json":
        _emit(_json_record(request, payload), args.output)
    else:
        head = f"# {ambient.name}  slope2={_rat(s2)}  mode=exact\n"
        body = [f"{'p':>4} {'q':>4} {'A':>10} {'B':>8} {'mult':>8}  {'value':>14}  {'float':>14}"]
        body += [
            f"{t.p:>4} {t.q:>4} {t.A:>10} {t.B:>8} {t.multiplicity:>8}  "
            f"{_rat(v):>14}  {float(v):>14.8g}"
            for t, v in branches
        ]
        tail = (
            f"morse_index={report.morse_index}  kernel={report.kernel_dimension}  "
            f"stable={str(report.stable).lower()}  "
            f"degenerate_beyond_killing={str(report.degenerate_beyond_killing).lower()}  "
            f"resonant={str(report.resonant).lower()}\n# {report.verdict}\n"
        )
        _emit(head + "\n".join(body) + "\n" + tail, args.output)
    return EXIT_OK


def cmd_resonant(args, cfg: dict) -> int:
    fmt = _resolve_format(args, cfg, "table", ["table", "json"])
    model = _model(args)
    if args.count < 1:
        raise UsageError("--count must be positive")
    ambient = AmbientSpace(model, CurvatureSign(args.sign))
    request = _request_echo(model, args.sign, mode="exact", count=args.count)

    if not ambient.projective:
        notice = ("hyperbolic distance spheres are stable and non-resonant at "
                  "every radius; there are no resonant radii")
        if fmt == "json":
            _emit(_json_record(request, {"slopes": [], "notice": notice}), args.output)
        else:
            _emit(f"# {ambient.name}\n# {notice}\n", args.output)
        return EXIT_OK

    rows = []
    cumulative = 0
    for p in range(1, args.count + 1):
        s2 = geometry.resonant_slope(ambient, p)
        jump = spectra.multiplicity(model, p, 0)
        cumulative += jump
        rows.append(
            {
                "p": p,
                "slope2": _rat(s2),
                "radius_float": math.atan(math.sqrt(float(s2))),
                "jump_multiplicity": jump,
                "cumulative_index": cumulative,
            }
        )
    if fmt == "json":
        _emit(_json_record(request, {"slopes": rows, "notice": None}), args.output)
    else:
        head = f"# {ambient.name}  resonant radii (tan^2 r exact)\n"
        body = [f"{'p':>4}  {'slope2':>14}  {'radius':>12}  {'jump':>8}  {'cum_index':>9}"]
        body += [
            f"{r['p']:>4}  {r['slope2']:>14}  {r['radius_float']:>12.8f}  "
            f"{r['jump_multiplicity']:>8}  {r['cumulative_index']:>9}"
            for r in rows
        ]
        _emit(head + "\n".join(body) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args, cfg: dict) -> int:
    fmt = _resolve_format(args, cfg, "text", ["text", "json"])
    if args.only is not None and args.only not in verify_mod.CHECK_NAMES:
        raise UsageError(
            f"unknown check name {args.only!r}; known: {', '.join(verify_mod.CHECK_NAMES)}"
        )
    reports = verify_mod.run_all(args.profile, only=args.only)
    failed = [r for r in reports if not r.passed]
    if fmt == "json":
        request = {"profile": args.profile, "only": args.only}
        payload = {"reports": [r.to_dict() for r in reports], "failed": len(failed)}
        _emit(_json_record(request, payload), args.output)
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.name}  ({r.grid})  [{r.elapsed_s:.2f}s]"
            if not r.passed:
                line += f"\n      counterexample: {json.dumps(verify_mod.jsonable(r.counterexample), sort_keys=True)}"
            lines.append(line)
        lines.append(f"# {len(reports) - len(failed)}/{len(reports)} checks passed")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_VERIFY if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(getattr(args, "config", None))
        return args.handler(args, cfg)
    except UsageError as exc:
        print(f"spherespec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"spherespec: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
