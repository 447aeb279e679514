#!/usr/bin/env python3
"""Walk a family of distance spheres through its first resonant radii.

For a projective ambient space, prints the Morse-index staircase with the
exact crossing slopes and the bifurcation verdicts; for a hyperbolic one,
samples radii and confirms uniform stability.
"""

import argparse
import math
from fractions import Fraction

from spherespec import (
    AmbientSpace,
    CurvatureSign,
    DivisionAlgebra,
    SphereModel,
    classify,
    mean_curvature,
    resonant_slopes,
)


def scan_projective(ambient: AmbientSpace, crossings: int) -> None:
    slopes = resonant_slopes(ambient, crossings)
    probes: list[Fraction] = [slopes[0] / 2]
    for i, s2 in enumerate(slopes):
        nxt = slopes[i + 1] if i + 1 < len(slopes) else s2 + 2 * (s2 - slopes[i - 1] if i else s2)
        probes += [s2, s2 + (nxt - s2) / 2]
    print(f"{ambient.name}: first {crossings} resonant radii")
    print(f"{'slope2':>12}  {'radius':>9}  {'H':>9}  {'index':>6}  {'kernel':>6}  verdict")
    for s2 in probes:
        r = math.atan(math.sqrt(float(s2)))
        report = classify(ambient, s2)
        marker = "*" if report.resonant else " "
        print(
            f"{str(s2):>12}{marker} {r:>9.5f}  {mean_curvature(ambient, r):>9.4f}  "
            f"{report.morse_index:>6}  {report.kernel_dimension:>6}  {report.verdict[:60]}"
        )


def scan_hyperbolic(ambient: AmbientSpace, samples: int) -> None:
    print(f"{ambient.name}: {samples} radii, all stable and locally rigid")
    print(f"{'slope2':>12}  {'radius':>9}  {'H':>9}  {'index':>6}  {'kernel':>6}")
    for i in range(1, samples + 1):
        s2 = Fraction(i, samples + 1)
        r = math.atanh(math.sqrt(float(s2)))
        report = classify(ambient, s2)
        print(
            f"{str(s2):>12}  {r:>9.5f}  {mean_curvature(ambient, r):>9.4f}  "
            f"{report.morse_index:>6}  {report.kernel_dimension:>6}"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--field", choices=["c", "h", "o"], default="c")
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--sign", choices=["proj", "hyp"], default="proj")
    parser.add_argument("--count", type=int, default=4, help="crossings (proj) or samples (hyp)")
    args = parser.parse_args()

    model = SphereModel(DivisionAlgebra(args.field), args.n)
    ambient = AmbientSpace(model, CurvatureSign(args.sign))
    if ambient.projective:
        scan_projective(ambient, args.count)
    else:
        scan_hyperbolic(ambient, args.count)


if __name__ == "__main__":
    main()
