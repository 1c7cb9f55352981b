"""Exact module calculus and 1-tilting class computations over commutative rings."""

from .errors import (
    FactorizationError,
    HypothesisViolated,
    InfiniteSpectrum,
    NonFaithfulWarning,
    OracleDisagreement,
    ParseError,
    RingMismatch,
    SemanticError,
    ShapeMismatch,
    SizeLimitExceeded,
    TiltlabError,
    UnitIdealWarning,
    UnsupportedRing,
    ZeroDivisor,
    ZeroInput,
)
from .fpmod import (
    CanonicalInvariants,
    FpModule,
    canonical_invariants,
    direct_sum,
    ext1,
    hom_module,
    is_isomorphic,
    is_projective,
    is_zero_module,
    module_order,
    tensor,
    tor1,
)
from .fuchs_salce import (
    TreeTruncation,
    build_truncation,
    delta_truncation,
    ext_vanishing_probe,
    filtration_quotient,
    verify_depth_divisibility,
)
from .ideals import (
    Ideal,
    annihilator,
    canonicalize,
    colon,
    contains,
    ideal_contains,
    ideal_product,
    ideal_sum,
    is_faithful,
)
from .localization import (
    LocalizationTower,
    compare_with_fuchs_salce,
    divisible_in_limit,
    quotient_stage,
)
from .matrix import RingMatrix
from .normal_forms import howell_form, kernel, smith_normal_form, solve
from .parsing import parse_element, parse_ideal, parse_matrix, parse_module, parse_ring
from .rings import (
    Integers,
    IntegersModN,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
    RingElement,
    RingSpec,
    arith,
    factor,
    is_unit,
    is_zero_divisor,
)
from .spectrum import (
    GabrielTopologyFG,
    PrimeIdeal,
    ThomasonSet,
    admissible,
    enumerate_tilting_classes,
    gabriel_contains,
    gabriel_contains_oracle,
    minimal_primes,
    supp_contains,
    theta_contains,
    thomason_contains,
    vass,
    xi,
)
from .tilting import (
    StableClass,
    cotilting_witness,
    ctr,
    dagger,
    in_cotilting_class,
    in_tilting_class,
    is_divisible,
    lemma_transpose_check,
    pd_at_most_1,
    stably_equivalent,
    transpose,
)

__version__ = "0.1.0"
