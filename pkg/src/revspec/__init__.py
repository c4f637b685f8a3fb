"""Dirichlet Laplace-Beltrami spectra of surfaces of revolution.

Computes per-mode Sturm-Liouville eigenvalues and merged Dirichlet spectra
of surfaces of revolution spanning two coaxial circles, solves for the
catenoids spanning the circles, runs executable forms of the comparison
inequalities, and maximizes individual eigenvalues over meridian curves.
"""
from .bessel import bessel_j, bessel_zero
from .bounds import (BoundReport, check_annulus_comparison, check_confinement,
                     length_bound, rectangle_counting_check, weyl_report,
                     weyl_slope)
from .catenoid import (Branch, CatenoidSolution, MinimizerClass, MinimizerKind,
                       catenoid_area, classify_minimizer, critical_separation,
                       discs_area, solve_catenoids)
from .errors import (CoplanarError, InsufficientMeshError, NotApplicableError,
                     NumericalError, PreconditionError, ValidationError)
from .geometry import (BoundaryCircles, Meridian, area, hausdorff_distance,
                       length, load_curve, make_catenary, make_segment,
                       random_meridian, reparametrize_constant_speed,
                       save_curve)
from .optimizer import (OptimizerConfig, OptimizerResult,
                        convergence_experiment, maximize_eigenvalue)
from .spectrum import (SLProblem, Spectrum, SpectrumEntry, assemble_sl,
                       counting_function, cylinder_spectrum, disc_spectrum,
                       merged_spectrum, rectangle_spectrum, solve_sl,
                       union_spectrum)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
