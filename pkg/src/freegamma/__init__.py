"""Verification-grade toolkit for a free gamma-type distribution family.

Closed-form spectral measures, analytic transforms, exact combinatorial
moments/cumulants, a catalog of free-convolution identities, random-matrix
oracles, the classical Gibbs correspondence, equilibrium-measure checks and
finite free polynomial models.
"""

from .errors import (
    DomainError,
    InvalidParameterError,
    NonConvergenceError,
    NotUnimodalError,
    QuadratureError,
)
from .measures import (
    FreeMeixnerParams,
    GFGParams,
    MPParams,
    SpectralMeasure,
    SupportInterval,
    atom_mass,
    endpoint_sum_product,
    fbp_density,
    fbp_to_gfg_params,
    gfg_density,
    gfg_measure,
    inverse_mp_density,
    inverse_mp_measure,
    levy_gfg_density,
    mode,
    mp_density,
    mp_measure,
    structural_predicates,
    support,
)
from .transforms import (
    TransformGrid,
    cauchy_transform,
    functional_identity_rs,
    meixner_cauchy,
    numeric_s_transform,
    psi_transform,
    r_bdlp,
    r_free_beta,
    r_gfg,
    r_inverse_gfg,
    r_mp,
    s_fbp,
    s_free_beta,
    s_gfg,
    s_inverse_mp,
    s_mp,
    s_reversed,
    stieltjes_invert,
)
from .cumulants import (
    bdlp_cumulant,
    free_cumulant,
    gfg_r_radius,
    moment,
    mp_moment,
    process_correlation,
    series_oracle,
)
from .convolution import (
    CATALOG_IDS,
    FBPParams,
    IdentityReport,
    ScaledParams,
    default_identity_params,
    free_beta_fid_witness,
    map_params,
    verify_identity,
)
from .rmt import (
    MEASURE_LEVEL_IDS,
    EmpiricalDistribution,
    RngStream,
    compare,
    free_add_sample,
    free_mult_sample,
    gfg_matrix,
    haar_orthogonal,
    inverse_wishart_matrix,
    measure_level_check,
    sample_mp_esd,
    wishart_matrix,
)
from .gibbs import (
    CLASSICAL_IDS,
    ClassicalReport,
    GibbsMeasure,
    Potential,
    classical_sampler,
    gibbs_density,
    gibbs_measure,
    partition_function,
    partition_function_quadrature,
    pearson_residual,
    potential,
    verify_classical_identity,
)
from .equilibrium import (
    EntropyValue,
    effective_potential,
    el_residual,
    endpoint_equations,
    free_entropy,
    hilbert_pv_quadrature,
    hilbert_transform,
    log_potential,
    maximality_probe,
)
from .finite_free import (
    MonicPolynomial,
    RootSet,
    bessel_poly,
    build_p_d,
    convergence_study,
    finite_s_at,
    finite_s_ratio,
    jacobi_poly,
    roots,
    transform_poly,
)

__version__ = "0.1.0"
