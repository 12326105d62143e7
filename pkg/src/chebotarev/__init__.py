"""Exact and Monte Carlo Chebotarev invariants of finite groups.

The invariant of a finite group is the expected number of uniform random
elements drawn until the drawn set invariably generates the group. This
package computes it exactly at desk scale by inclusion-exclusion over
conjugate-unions of maximal subgroups, estimates it by seeded
simulation, extracts the crown data of soluble groups (chief factor
classes with their endomorphism fields, multiplicities and fixed-vector
probabilities) and evaluates the published upper bounds that the crown
data feeds.
"""

from .bounds import (
    SIGMA,
    WaitingEstimate,
    BoundReport,
    RatioCheckResult,
    Verdict,
    waiting_estimate,
    binomial_tail_check,
    build_bound_report,
    min_generator_bound,
    five_thirds_check,
    waiting_ratio_check,
    sigma,
    crown_bound,
)
from .crowns import (
    ChiefFactorModule,
    ChiefSeries,
    CrownData,
    chief_series,
    crown_data,
    derivations,
    endo_field,
    factor_module,
    g_isomorphic,
    is_complemented,
    omega_membership,
)
from .errors import (
    BadProbabilityError,
    BadSectionError,
    ChebotarevError,
    DegreeMismatchError,
    NotAbelianFactorError,
    NotChiefFactorError,
    NotIrreducibleError,
    NotNormalError,
    NotPrimeError,
    OrderCapError,
    ParseError,
    SearchCapError,
    SingularMatrixError,
    TooManySievesError,
    TrialCapError,
    TrivialGroupError,
    UnclassifiedRatioError,
)
from .exact import (
    ChebValue,
    SieveSystem,
    build_sieves,
    chebotarev_exact,
    chebotarev_of_group,
    elementary_abelian_cheb,
    frattini_reduce,
    invariable_gen_prob,
    v_property_sum,
)
from .groupspec import (
    ParsedGroup,
    affine_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    parse_group,
    quaternion_group,
    symmetric_group,
)
from .mc import McReport, mc_estimate
from .perm import (
    ConjClassTable,
    PermGroup,
    Permutation,
    Subgroup,
    build_group,
    conjugacy_classes,
    is_soluble,
    quotient,
    section_centralizer,
)
from .subgroups import (
    MaximalClassData,
    all_subgroups,
    frattini,
    maximal_classes,
    min_generators,
    minimal_generating_tuple,
    minimal_normal_subgroups,
)

__version__ = "0.1.0"

__all__ = [
    "SIGMA",
    "WaitingEstimate",
    "BadProbabilityError",
    "BadSectionError",
    "BoundReport",
    "ChebValue",
    "ChebotarevError",
    "DegreeMismatchError",
    "NotAbelianFactorError",
    "NotChiefFactorError",
    "NotIrreducibleError",
    "NotNormalError",
    "NotPrimeError",
    "OrderCapError",
    "ParseError",
    "SearchCapError",
    "SingularMatrixError",
    "TooManySievesError",
    "TrialCapError",
    "TrivialGroupError",
    "UnclassifiedRatioError",
    "ChiefFactorModule",
    "ChiefSeries",
    "ConjClassTable",
    "CrownData",
    "RatioCheckResult",
    "MaximalClassData",
    "McReport",
    "ParsedGroup",
    "PermGroup",
    "Permutation",
    "SieveSystem",
    "Subgroup",
    "Verdict",
    "affine_group",
    "all_subgroups",
    "waiting_estimate",
    "alternating_group",
    "binomial_tail_check",
    "build_bound_report",
    "build_group",
    "build_sieves",
    "chebotarev_exact",
    "chebotarev_of_group",
    "chief_series",
    "conjugacy_classes",
    "min_generator_bound",
    "crown_data",
    "cyclic_group",
    "derivations",
    "dihedral_group",
    "direct_product",
    "elementary_abelian_cheb",
    "elementary_abelian_group",
    "endo_field",
    "factor_module",
    "five_thirds_check",
    "frattini",
    "frattini_reduce",
    "g_isomorphic",
    "invariable_gen_prob",
    "is_complemented",
    "is_soluble",
    "waiting_ratio_check",
    "maximal_classes",
    "mc_estimate",
    "min_generators",
    "minimal_generating_tuple",
    "minimal_normal_subgroups",
    "omega_membership",
    "parse_group",
    "quaternion_group",
    "quotient",
    "section_centralizer",
    "sigma",
    "symmetric_group",
    "crown_bound",
    "v_property_sum",
]
