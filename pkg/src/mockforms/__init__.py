"""Exact and Rademacher-type computation of the massive N=4 multiplicities
in the K3 elliptic genus, with numerical verification of the supporting
mock-modular identities."""

from .analytic import (
    CharSpec,
    EllipticArg,
    FlowOffset,
    ModularPoint,
    WhittakerClosed,
    affine_su2_character,
    bessel_half,
    dedekind_eta,
    elliptic_genus,
    erf_pi,
    jacobi_theta,
    lerch_completion,
    lerch_difference,
    lerch_sum,
    level_theta,
    nonholomorphic_correction,
    spectral_flow_offset,
    superconformal_character,
    whittaker_closed,
)
from .characters import (
    CoeffTable,
    coeff_table,
    decomposition_residual,
    half_period_numerator,
    half_period_series,
    identity_check,
    multiplicity_series,
)
from .errors import (
    BeyondTruncation,
    CacheCorrupt,
    DenominatorVanishes,
    MockformsError,
    NonIntegralCoefficient,
    NonPositiveArgument,
    NotCoprime,
    ParityViolation,
    PoleAtArgument,
    QuadratureNonConvergence,
    UnknownName,
    UnsupportedSpec,
    ZeroLeadingCoefficient,
)
from .qseries import DEFAULT_TRUNCATION, FracExp, QSeries, named_series
from .rademacher import (
    DedekindSumValue,
    KloostermanCache,
    KloostermanKey,
    RademacherPartial,
    cardy_entropy,
    dedekind_sum,
    exact_coefficient,
    kloosterman_quadratic,
    kloosterman_sum,
    leading_asymptotic,
    rademacher_partition,
    sawtooth,
)
from .shadow import (
    ShadowCoeff,
    holomorphic_anomaly_residual,
    laplacian_residual,
    multiplicity_completion,
    multiplier_system,
    poincare_partial_sum,
    shadow_coefficient,
    shadow_reference_coefficients,
)

__version__ = "0.1.0"
