"""Exact computation of Terracini loci of projective varieties.

The locus Ter_r(X) collects the configurations of r smooth points of X
whose tangent spaces span less than the expected dimension.  This
package decides membership of explicit configurations by exact rank
computations, builds defining ideals of the loci by saturating
determinantal ideals of stacked Jacobians, and reads off dimensions as
Krull dimensions of those ideals.  Everything runs over Q or over a
prime field Z/p; nothing is ever rounded.

The classification results for rational curves, Veronese and
Segre-Veronese embeddings and del Pezzo surfaces are replayed by the
named suites in :mod:`terracini.suites`, also reachable through the
``terracini verify`` command.
"""

from .errors import (
    DefectiveCaseError,
    DegenerateVarietyError,
    DuplicatePointError,
    ExponentOverflowError,
    FieldMismatchError,
    InadmissibleRankError,
    InputError,
    LayoutError,
    MathError,
    NonInvertibleError,
    NotPrimeError,
    PointNotOnVarietyError,
    RingMismatchError,
    SingularPointError,
    TerraciniError,
    ZeroDenominatorError,
)
from .fields import (
    DEFAULT_PRIME,
    GF32003,
    QQ,
    field_from_tag,
    is_prime,
    prime_field,
)
from .multipoly import (
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    VariableLayout,
    parse_polynomial,
    polynomial_to_text,
)
from .linalg import PolyMatrix, ScalarMatrix
from .groebner import (
    Ideal,
    buchberger,
    is_groebner_basis,
    normal_form,
    spolynomial,
)
from .varieties import (
    DEL_PEZZO_BASE_POINTS,
    IdealVariety,
    ParamMap,
    del_pezzo,
    from_ideal,
    load_variety,
    rational_curve,
    rational_normal_curve,
    segre_veronese,
    variety_from_table,
    veronese,
)
from .loci import (
    LocusIdeal,
    PointConfig,
    TerraciniReport,
    admissible_r_range,
    curve_emptiness_bounds,
    first_nonempty_r,
    load_points,
    locus_dimension,
    membership_ideal,
    membership_param,
    oracle_config,
    stacked_jacobian,
    terracini_ideal,
)
from .suites import SUITE_NAMES, octic_curve, run_suite

__version__ = "0.1.0"

__all__ = [
    "TerraciniError",
    "MathError",
    "InputError",
    "ZeroDenominatorError",
    "NonInvertibleError",
    "NotPrimeError",
    "FieldMismatchError",
    "RingMismatchError",
    "LayoutError",
    "ExponentOverflowError",
    "InadmissibleRankError",
    "SingularPointError",
    "PointNotOnVarietyError",
    "DuplicatePointError",
    "DegenerateVarietyError",
    "DefectiveCaseError",
    "QQ",
    "GF32003",
    "DEFAULT_PRIME",
    "prime_field",
    "field_from_tag",
    "is_prime",
    "VariableLayout",
    "MonomialOrder",
    "PolynomialRing",
    "Polynomial",
    "parse_polynomial",
    "polynomial_to_text",
    "ScalarMatrix",
    "PolyMatrix",
    "Ideal",
    "buchberger",
    "normal_form",
    "spolynomial",
    "is_groebner_basis",
    "ParamMap",
    "IdealVariety",
    "veronese",
    "segre_veronese",
    "rational_curve",
    "rational_normal_curve",
    "del_pezzo",
    "DEL_PEZZO_BASE_POINTS",
    "from_ideal",
    "variety_from_table",
    "load_variety",
    "PointConfig",
    "TerraciniReport",
    "LocusIdeal",
    "load_points",
    "admissible_r_range",
    "stacked_jacobian",
    "membership_param",
    "membership_ideal",
    "terracini_ideal",
    "locus_dimension",
    "first_nonempty_r",
    "curve_emptiness_bounds",
    "oracle_config",
    "octic_curve",
    "run_suite",
    "SUITE_NAMES",
    "__version__",
]
