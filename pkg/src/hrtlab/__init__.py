"""Numerical laboratory for linear independence of time-frequency shifts.

The package walks the same road twice wherever it can: exact symbolic
arithmetic against floats, Gram eigenvalues against synthesis singular
values, direct products against log-domain sums.  Nothing here proves
the HRT conjecture; everything here measures what it predicts.
"""

__version__ = "0.1.0"

from .accum import compensated_cumsum, compensated_sum
from .errors import (
    BadStep,
    Collinear,
    DuplicatePoints,
    GridMismatch,
    HrtlabError,
    NoDistinguishedPoint,
    OffGridShift,
    PrecisionExhausted,
    UnsupportedShift,
    ZeroDirection,
    ZeroFactor,
)
from .exactnum import SqrtExpr, parse_exact, parse_real, squarefree_split
from .flow import (
    DiagonalFlow,
    ProductTrace,
    SummabilityReport,
    fourier_relation_residual,
    matrix_coefficient,
    product_trace,
    summability_probe,
)
from .operators import (
    GramMatrix,
    IndependenceReport,
    apply_tf_shift,
    dependency_residual,
    gram_matrix,
    independence_margin,
    min_singular,
    shifted_family,
    synthesis_min_singular,
)
from .points import (
    AffineSymplecticMap,
    CoefficientVector,
    ConfigClass,
    ConfigLabel,
    Configuration,
    TFPoint,
    classify_configuration,
    configuration_to_jsonable,
    normalize_configuration,
    parse_configuration,
)
from .relations import (
    GroupClosureDescriptor,
    IndependenceCertificate,
    Relation,
    RelationBasis,
    detect_relations,
    group_closure,
    is_rationally_independent,
)
from .torus import (
    OrbitProductLedger,
    ToralLine,
    TorusPoint,
    TrigPolynomial2,
    discrepancy,
    eval_p2,
    orbit,
    orbit_log_product,
    p_constancy_on_line,
    propagate_F,
    recurrence_probe,
    sigma_step,
    toral_line,
)
from .windows import SampledWindow, custom_window, make_window
from .zak import (
    ZakImage,
    check_zak_identity,
    inverse_zak,
    zak_csv,
    zak_equation_residual,
    zak_pgm,
    zak_transform,
)

__all__ = [
    "__version__",
    # numerics
    "compensated_cumsum",
    "compensated_sum",
    "SqrtExpr",
    "parse_exact",
    "parse_real",
    "squarefree_split",
    # errors
    "HrtlabError",
    "DuplicatePoints",
    "Collinear",
    "BadStep",
    "OffGridShift",
    "GridMismatch",
    "NoDistinguishedPoint",
    "UnsupportedShift",
    "ZeroDirection",
    "PrecisionExhausted",
    "ZeroFactor",
    # configurations
    "TFPoint",
    "Configuration",
    "CoefficientVector",
    "ConfigClass",
    "ConfigLabel",
    "AffineSymplecticMap",
    "classify_configuration",
    "normalize_configuration",
    "parse_configuration",
    "configuration_to_jsonable",
    # windows and shift operators
    "SampledWindow",
    "make_window",
    "custom_window",
    "apply_tf_shift",
    "GramMatrix",
    "gram_matrix",
    "min_singular",
    "synthesis_min_singular",
    "IndependenceReport",
    "shifted_family",
    "independence_margin",
    "dependency_residual",
    # Zak layer
    "ZakImage",
    "zak_transform",
    "inverse_zak",
    "check_zak_identity",
    "zak_equation_residual",
    "zak_csv",
    "zak_pgm",
    # torus dynamics
    "TorusPoint",
    "TrigPolynomial2",
    "OrbitProductLedger",
    "ToralLine",
    "sigma_step",
    "orbit",
    "eval_p2",
    "orbit_log_product",
    "propagate_F",
    "recurrence_probe",
    "discrepancy",
    "toral_line",
    "p_constancy_on_line",
    # rational relations
    "Relation",
    "RelationBasis",
    "IndependenceCertificate",
    "GroupClosureDescriptor",
    "detect_relations",
    "is_rationally_independent",
    "group_closure",
    # diagonal flows
    "DiagonalFlow",
    "ProductTrace",
    "SummabilityReport",
    "matrix_coefficient",
    "product_trace",
    "summability_probe",
    "fourier_relation_residual",
]
