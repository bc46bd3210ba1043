"""Composition semigroups on Hardy spaces of the upper half-plane.

Numerical toolkit for H^p norms, angular derivatives, boundedness and exact
norms of composition semigroups, their generators and point spectra.
"""
from .errors import (ConfigError, ConvergenceError, DivergentIntegral, DomainError, HardyLabError,
                     NotMember, ParamError, UnboundedOperator)
from .maps import AnalyticMap, Domain, catalog_lookup, derivative, eval_map
from .cayley import Sector, SectorKind, Target, conjugate_map, nt_path, sector_contains, to_disc, to_halfplane
from .hardy import (HardyFunction, Membership, NormEstimate, Verdict, growth_bound_ratio, hardy_norm,
                    line_mean, membership, reproducing_kernel, test_function)
from .semigroup import (GeneratorInfo, ModelFunction, SemigroupFamily, angular_derivative_at_infinity,
                        conjugate_generator_residual, delta_limit, dw_point, family_lookup, generator,
                        model_function, verify_semigroup_law)
from .operators import (Boundedness, BoundednessVerdict, classify_boundedness, compose_apply, domain_check,
                        empirical_norm_lower_bound, gamma_apply, generator_residual,
                        nonuniform_growth_probe, operator_norm, strong_continuity_probe)
from .spectrum import NuGrid, SpectrumReport, eigen_residual, point_spectrum

__version__ = "0.1.0"

__all__ = [
    "AnalyticMap", "Boundedness", "BoundednessVerdict", "ConfigError", "ConvergenceError",
    "DivergentIntegral", "Domain", "DomainError", "GeneratorInfo", "HardyFunction", "HardyLabError",
    "Membership", "ModelFunction", "NormEstimate", "NotMember", "NuGrid", "ParamError", "Sector",
    "SectorKind", "SemigroupFamily", "SpectrumReport", "Target", "UnboundedOperator", "Verdict",
    "angular_derivative_at_infinity", "catalog_lookup", "classify_boundedness", "compose_apply",
    "conjugate_generator_residual", "conjugate_map", "delta_limit", "derivative", "domain_check",
    "dw_point", "eigen_residual", "empirical_norm_lower_bound", "eval_map", "family_lookup",
    "gamma_apply", "generator", "generator_residual", "growth_bound_ratio", "hardy_norm", "line_mean",
    "membership", "model_function", "nonuniform_growth_probe", "nt_path", "operator_norm",
    "point_spectrum", "reproducing_kernel", "sector_contains", "strong_continuity_probe",
    "test_function", "to_disc", "to_halfplane", "verify_semigroup_law",
]
