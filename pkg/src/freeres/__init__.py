"""Finite free resolutions over F_p[x_1..x_d]: Gröbner bases, syzygies,
exactness and torsionless certificates, and the rewriting of resolutions
into ones ending ``R^3 -> R``."""

from .construct import (
    BrunsResult,
    CertificationError,
    ConstructionError,
    NotTorsionlessError,
    PdModule,
    PreconditionError,
    RankReduction,
    SearchConfig,
    SearchExhaustedError,
    bourbaki_split,
    brunsify,
    build_pd_module,
    corollary1_chain,
    embed_in_free,
    find_basic_combination,
    realize_as_ideal,
    reduce_rank,
    transpose_module,
)
from .document import DocumentError, SessionDocument, emit_document, parse_document
from .free_linalg import (
    DimensionError,
    FreeModuleSpec,
    IdealData,
    PolyMatrix,
    bareiss_rank,
    compose,
    determinant,
    dual,
    evaluation_rank,
    matrix_rank,
    minor_ideal,
)
from .groebner import (
    GroebnerBasisData,
    ModuleElement,
    ResolutionData,
    buchberger,
    is_minimal,
    lift,
    normal_form,
    prune,
    prune_with_comparison,
    resolve,
    syzygies,
)
from .invariants import (
    INFINITY,
    ExactnessCertificate,
    PresentedModule,
    TorsionlessCertificate,
    be_ideal,
    check_exactness,
    check_torsionless,
    grade,
    minimal_generator_count,
    projective_dimension,
)
from .koszul import koszul_complex, koszul_differential, koszul_section
from .scalar_poly import (
    DEFAULT_PRIME,
    Polynomial,
    PolynomialSyntaxError,
    RingMismatchError,
    RingSpec,
    format_polynomial,
    parse_polynomial,
    random_form,
)
from .cli import run_command

__all__ = [
    "bareiss_rank",
    "be_ideal",
    "bourbaki_split",
    "brunsify",
    "BrunsResult",
    "buchberger",
    "build_pd_module",
    "CertificationError",
    "check_exactness",
    "check_torsionless",
    "compose",
    "ConstructionError",
    "corollary1_chain",
    "DEFAULT_PRIME",
    "determinant",
    "DimensionError",
    "DocumentError",
    "dual",
    "embed_in_free",
    "emit_document",
    "evaluation_rank",
    "ExactnessCertificate",
    "find_basic_combination",
    "format_polynomial",
    "FreeModuleSpec",
    "grade",
    "GroebnerBasisData",
    "IdealData",
    "INFINITY",
    "is_minimal",
    "koszul_complex",
    "koszul_differential",
    "koszul_section",
    "lift",
    "matrix_rank",
    "minimal_generator_count",
    "minor_ideal",
    "ModuleElement",
    "normal_form",
    "NotTorsionlessError",
    "parse_document",
    "parse_polynomial",
    "PdModule",
    "PolyMatrix",
    "Polynomial",
    "PolynomialSyntaxError",
    "PreconditionError",
    "PresentedModule",
    "projective_dimension",
    "prune",
    "prune_with_comparison",
    "random_form",
    "RankReduction",
    "realize_as_ideal",
    "reduce_rank",
    "ResolutionData",
    "resolve",
    "RingMismatchError",
    "RingSpec",
    "run_command",
    "SearchConfig",
    "SearchExhaustedError",
    "SessionDocument",
    "syzygies",
    "TorsionlessCertificate",
    "transpose_module",
]
