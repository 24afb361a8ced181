"""Quadrilateral zeta toolkit.

Evaluators for the Hurwitz pair sum Z(s,a), the periodic pair sum P(s,a),
the quadrilateral zeta Q(s,a) = (Z+P)/2 and its completion xi(s,a), plus
real/complex zero machinery, Dirichlet-character decompositions and a CLI.
"""

from .sfcore import (
    AlphaParam,
    EvalResult,
    EvalSettings,
    Method,
    ZPQ,
    as_alpha,
    bernoulli_table,
    deriv_s,
    gamma,
    hurwitz_zeta,
    hurwitz_zeta_da,
    loggamma,
    periodic_pair_rational,
    periodic_pair_series,
    q_value,
    xi_q,
    zq_eval,
)
from .identities import (
    HadamardData,
    ResidualReport,
    SpecialAlpha,
    ZeroFreeBound,
    closed_form_residual,
    fe_residual,
    g_p_modulus,
    hadamard_b,
    positivity_sigma_gt1,
    q_partial_a,
    zero_free_abscissa,
)
from .realzeros import (
    RealClassification,
    RealZero,
    Verdict,
    classify_real,
    find_a0,
    find_beta_z,
    scan_real_zeros,
)
from .complexzeros import (
    Rectangle,
    RvmReport,
    WindingResult,
    ZeroRecord,
    count_nonreal,
    hardy_scan,
    locate_zeros,
    rvm_compare,
    winding_count,
)
from .dirichlet import (
    Character,
    DecompositionReport,
    dirichlet_l,
    enumerate_characters,
    gauss_sum,
    q_via_characters,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaParam",
    "Character",
    "DecompositionReport",
    "EvalResult",
    "EvalSettings",
    "HadamardData",
    "Method",
    "RealClassification",
    "RealZero",
    "Rectangle",
    "ResidualReport",
    "RvmReport",
    "SpecialAlpha",
    "Verdict",
    "WindingResult",
    "ZPQ",
    "ZeroFreeBound",
    "ZeroRecord",
    "__version__",
    "as_alpha",
    "bernoulli_table",
    "classify_real",
    "closed_form_residual",
    "count_nonreal",
    "deriv_s",
    "dirichlet_l",
    "enumerate_characters",
    "fe_residual",
    "find_a0",
    "find_beta_z",
    "g_p_modulus",
    "gamma",
    "gauss_sum",
    "hadamard_b",
    "hardy_scan",
    "hurwitz_zeta",
    "hurwitz_zeta_da",
    "locate_zeros",
    "loggamma",
    "periodic_pair_rational",
    "periodic_pair_series",
    "positivity_sigma_gt1",
    "q_partial_a",
    "q_value",
    "q_via_characters",
    "rvm_compare",
    "scan_real_zeros",
    "winding_count",
    "xi_q",
    "zero_free_abscissa",
    "zq_eval",
]
