"""Second-order discrete Riesz transforms on products of cyclic groups.

Functions take numpy arrays whose shape gives the cyclic orders (m_1, ..., m_N).
"""

from ._core import (
    BoundViolation,
    InvalidArgument,
    ParseError,
    QuadratureInfeasible,
    apply_second_riesz,
    ascend,
    bilinear_embedding_check,
    choi_c01_approx,
    choi_embedding_check,
    dft_forward,
    dft_inverse,
    heat_extend,
    heat_kernel,
    lp_norm,
    operator_two_norm,
    p_star_minus_one,
    ratio,
    refinement_study,
    representation_pairing,
    riesz2_symbol,
    spectral_gap,
    spectral_pairing,
)

__version__ = "0.1.0"
