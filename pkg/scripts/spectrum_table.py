#!/usr/bin/env python3
"""Print the low Laplace spectrum of each fibered sphere family side by side.

Walks the squashing parameter t^2 from the round point down/up and shows how
the fiber branches move while the basic branches stay put.  Exact values;
floats only for display.
"""

import argparse
from fractions import Fraction

from spherespec import DivisionAlgebra, SphereModel, enumerate_spectrum


def show(model: SphereModel, t2: Fraction, cutoff: int) -> None:
    spec = enumerate_spectrum(model, t2, cutoff)
    print(f"\n{model.label}  (N-1 = {model.sphere_dim}, fiber S^{model.fiber_dim}), t^2 = {t2}")
    print(f"{'value':>12}  {'float':>12}  {'mult':>6}  contributors")
    for entry in spec.entries:
        contrib = " ".join(f"({p},{q})" for p, q in entry.contributors)
        print(f"{str(entry.value):>12}  {float(entry.value):>12.6g}  {entry.multiplicity:>6}  {contrib}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cutoff", type=int, default=30)
    parser.add_argument("--t2", type=Fraction, default=Fraction(1, 2),
                        help="exact squashing parameter, e.g. 1/2 (projective side) or 2 (hyperbolic side)")
    args = parser.parse_args()

    for algebra in DivisionAlgebra:
        show(SphereModel(algebra, 1), args.t2, args.cutoff)
    print("\nBasic branches (q = 0) are independent of t^2: rerun with another --t2 to see it.")


if __name__ == "__main__":
    main()
