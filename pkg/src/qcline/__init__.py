"""Numerical toolkit for circle and line homeomorphisms.

Diagnostics for quasisymmetric distortion, mean oscillation of log
derivatives, extension operators to the half-plane and disk, complex
dilatation fields, and Carleson-box measures of |mu|^2 dxdy / y.
"""

from .intervals import Interval
from .errors import (
    QclineError,
    BadParams,
    UnknownName,
    ParseError,
    ValidationError,
    SchemaMismatch,
    QuadratureFailure,
    TailDivergence,
    WindowExceeded,
)
from .funcs import RealFunction, Weight
from .profiles import Profile
from .homeo import (
    Homeo1D,
    CircleHomeo,
    invert,
    compose,
    qs_quotient,
    qs_constant,
    symmetric_profile,
    doubling_constant,
    modulus_of_continuity,
    log_deriv,
    catalog_names,
    make_catalog,
)
from .oscillation import (
    mean_oscillation,
    bmo_norm_estimate,
    vmo_profile,
    maximal_function,
    ainf_ratio_test,
    reverse_holder,
)
from .extension import (
    cayley,
    cayley_inv,
    hyperbolic_distance,
    ba_extend,
    de_extend_line,
    DiskDEMap,
    GridSpec,
    DilatationField,
    complex_dilatation,
    chain_dilatation_mag,
    asymptotic_profile,
)
from .carleson import (
    BoxDensity,
    BoxMass,
    DiskDensity,
    box_mass,
    carleson_norm,
    vanishing_profile,
    disk_box_mass,
    disk_vanishing_profile,
    pullback_cayley,
    embedding_check,
)
from .experiments import ScenarioReport, SCENARIOS, run_scenario

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "QclineError",
    "BadParams",
    "UnknownName",
    "ParseError",
    "ValidationError",
    "SchemaMismatch",
    "QuadratureFailure",
    "TailDivergence",
    "WindowExceeded",
    "RealFunction",
    "Weight",
    "Profile",
    "Homeo1D",
    "CircleHomeo",
    "invert",
    "compose",
    "qs_quotient",
    "qs_constant",
    "symmetric_profile",
    "doubling_constant",
    "modulus_of_continuity",
    "log_deriv",
    "catalog_names",
    "make_catalog",
    "mean_oscillation",
    "bmo_norm_estimate",
    "vmo_profile",
    "maximal_function",
    "ainf_ratio_test",
    "reverse_holder",
    "cayley",
    "cayley_inv",
    "hyperbolic_distance",
    "ba_extend",
    "de_extend_line",
    "DiskDEMap",
    "GridSpec",
    "DilatationField",
    "complex_dilatation",
    "chain_dilatation_mag",
    "asymptotic_profile",
    "BoxDensity",
    "BoxMass",
    "DiskDensity",
    "box_mass",
    "carleson_norm",
    "vanishing_profile",
    "disk_box_mass",
    "disk_vanishing_profile",
    "pullback_cayley",
    "embedding_check",
    "ScenarioReport",
    "SCENARIOS",
    "run_scenario",
    "__version__",
]
