"""Exact-arithmetic toolkit for the harmonic analysis of little q-Legendre
polynomial hypergroups.

All core quantities are exact rationals; infinite sums and products are
certified interval enclosures.  See the README for the CLI entry points.
"""

from .scalar import Enclosure, QParam, enclosure_arith, q_pochhammer, q_pochhammer_inf
from .recurrence import (
    Chebyshev1,
    CoeffProvider,
    HaarWeights,
    Legendre,
    LittleQLegendre,
    UltrasphericalM14,
    chebyshev1,
    coeffs,
    eval_poly,
    eval_poly_phi,
    haar_weight,
    haar_weights,
    legendre,
    little_q_legendre,
    mu_mass,
    mu_moment,
    ultraspherical_m14,
)
from .hypergroup import (
    HSeq,
    Hypergroup,
    LinearizationTable,
    check_property_P,
    convolve,
    hypergroup,
    linearize,
    lql_hypergroup,
    norm_p,
    translate,
)
from .characters import (
    TruncatedCharacter,
    asymptote_check,
    character,
    k_threshold,
    l1_norm,
    l2_norm_sq,
    norm_ratio_bound,
    verify_decay,
    verify_norm_chain,
)
from .contfrac import (
    WorpitzkyResult,
    cf_coefficient,
    character_ratio,
    psi,
    verify_lemma22,
    worpitzky_eval,
)
# the transform itself stays on the submodule (qhyper.fourier.fourier) so the
# module name is not shadowed by the function
from .fourier import (
    SpectrumPoint,
    cesaro_Fn,
    cesaro_fn,
    inverse_plancherel_poly,
    kappa,
    kappa_conv_sup,
    p4_integral,
    plancherel_check,
    qlimit_identity,
)
from .idempotents import (
    IdempotentApprox,
    approx_epsilon,
    idempotent,
    idempotent_fourier,
    mvt_coeff_bound,
    orthogonality_check,
    residual_curve,
)

__version__ = "0.1.0"
