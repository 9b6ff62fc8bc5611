"""Phase-space calculus for photon-subtracted Gaussian states."""

__version__ = "0.1.0"

from .cat_fidelity import CatSpec, cat_char_fn, optimize_alpha, overlap_fidelity
from .conditioning import (
    ConditionedState,
    Detector,
    subtract_single_photon,
    subtract_threshold,
    trace_out_mode2,
)
from .errors import (
    DegenerateSplitter,
    DivergentIntegral,
    InvalidState,
    NoThresholdBelowOne,
    NotSqueezedInput,
    PSGError,
    UnderTruncated,
    ZeroProbabilityHerald,
)
from .gaussian_core import (
    GaussianDiagState,
    TwoModeCorrelation,
    beamsplit_with_vacuum,
    char_fn,
    from_exp2s,
    from_squeezed_thermal,
    from_squeezing,
)
from .imperfections import (
    LossConvention,
    apply_loss,
    efficiency_threshold,
    detected_wigner,
    modal_mixture,
)
from .quadgauss import GaussTerm, QuadGaussSum, integrate_full_plane
from .quasiprob import (
    ClassicalityVerdict,
    Verdict,
    classify,
    negativity_T_threshold_any,
    negativity_T_threshold_single,
    p_char,
    purity,
    wigner_eval,
    wigner_origin_single,
)
