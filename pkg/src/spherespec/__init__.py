"""Exact Laplace spectra of distance spheres in rank-one symmetric spaces.

Three independent computation pipelines, cross-checked on exact grids:

- ``spectra``: closed-form eigenvalue branches a + b/t^2 and multiplicities,
  with cutoff enumeration and exact merging;
- ``lie``: re-derivation from root-system data (Weyl dimension formula,
  Casimir scalars, canonical variation);
- ``geometry``: radius maps, curvature quantities, and the second-variation
  analysis (Morse index, kernel, resonant radii, stability verdicts).

``verify`` binds them into executable check suites and ``cli`` exposes
everything as the ``spherespec`` command.
"""

from .geometry import (
    AmbientSpace,
    CurvatureSign,
    JacobiReport,
    JacobiTerm,
    RadiusSpec,
    classify,
    jacobi_term,
    kernel_dimension,
    mean_curvature,
    morse_index,
    radius_params,
    resonant_slopes,
    scaled_potential,
    shape_eigenvalues,
)
from .spectra import (
    DivisionAlgebra,
    DomainError,
    EnumerationLimit,
    MergedSpectrum,
    SpectralTerm,
    SphereModel,
    chi,
    eigen_coefficients,
    enumerate_spectrum,
    evaluate_term,
    multiplicity,
    round_multiplicity,
    table_formulas,
)
from .lie import (
    RootSystem,
    Weight,
    canonical_variation,
    casimir_scalar,
    oracle_eigenvalue,
    oracle_multiplicity,
    spherical_weights,
    weyl_dimension,
)
from .verify import CheckReport, run_all

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "CheckReport",
    "CurvatureSign",
    "DivisionAlgebra",
    "DomainError",
    "EnumerationLimit",
    "JacobiReport",
    "JacobiTerm",
    "MergedSpectrum",
    "RadiusSpec",
    "RootSystem",
    "SpectralTerm",
    "SphereModel",
    "Weight",
    "canonical_variation",
    "casimir_scalar",
    "chi",
    "classify",
    "eigen_coefficients",
    "enumerate_spectrum",
    "evaluate_term",
    "jacobi_term",
    "kernel_dimension",
    "mean_curvature",
    "morse_index",
    "multiplicity",
    "oracle_eigenvalue",
    "oracle_multiplicity",
    "radius_params",
    "resonant_slopes",
    "round_multiplicity",
    "run_all",
    "scaled_potential",
    "shape_eigenvalues",
    "spherical_weights",
    "table_formulas",
    "weyl_dimension",
]
