"""Kampé de Fériet double series, hypergeometric summation theorems and identity verification."""

__version__ = "0.1.0"

from .errors import (
    AccelerationFailure,
    DenominatorPoleError,
    KdfError,
    MissingParam,
    PoleError,
    RangeError,
    UncancelledPoleError,
    UnexpectedParam,
    UnknownIdentity,
)
from .gamma import (
    GammaRatioSpec,
    SignedLogValue,
    binomial,
    gamma_quotient,
    gamma_ratio,
    log_gamma_signed,
    pochhammer,
)
from .accel import CompensatedSum, wynn_epsilon
from .series import (
    EvalResult,
    KdFSpec,
    PFQSpec,
    Status,
    eval_2f1,
    eval_appell_f3,
    eval_kdf,
    eval_pfq,
    f3_precheck,
    kdf_precheck,
)
from .theorems import (
    Family,
    TheoremKind,
    bailey_gen,
    classical,
    gauss2_gen,
    kummer_gen,
    lavoie_coefficients,
    lavoie_compact,
)
from .catalog import (
    F3Args,
    IdentityInstance,
    SideSpec,
    corollary_instance,
    get_identity,
    lhs_spec,
    list_identities,
    rhs_value,
)
from .verify import SweepConfig, Verdict, VerificationRecord, run_sweep, verify_one

__all__ = [name for name in dir() if not name.startswith("_")]
