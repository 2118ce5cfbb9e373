"""Covariation analysis of symmetric alpha-stable vectors and harmonisable processes."""

from .bimeasure import (
    DiscreteBimeasure,
    IncrementLaw,
    PDTypeReport,
    bilinear_form,
    bimeasure_from_increments,
    control_measure_nu,
    frechet_type_sup,
    increment_norm,
    mt_integral,
    mt_partial,
    pd_type_check,
    vitali_variation,
)
from .covariation import (
    CovariationEstimate,
    additivity_gap,
    covariation_estimate,
    covariation_exact,
    covariation_norm,
    default_moment_order,
)
from .errors import CapabilityError, IntegrityError, ValidationError
from .harmonisable import (
    ClassificationReport,
    CoefficientRecord,
    FejerRecord,
    HarmonisableModel,
    bohr_coefficient,
    classify,
    covariation_function,
    detect_period,
    fejer_average,
    fourier_coefficient,
    synthesize_paths,
)
from .spectral_measure import (
    AdditivityReport,
    DiscreteSpectralMeasure,
    GridSpec,
    check_additivity_condition,
    empirical_char_function,
    index_triples,
    make_axes_measure,
    model_char_function,
    phi,
    sample_vector,
    symmetrize,
    third_derivative,
)
from .stable_core import (
    Alpha,
    LemmaCheck,
    QuadratureError,
    SampleBatch,
    StableConstants,
    constants,
    lemma1_check,
    lemma2_c,
    lemma2_check,
    make_rng,
    s_alpha_iso,
    s_alpha_real,
    sample_isotropic_complex,
    sample_positive_stable,
    sample_sas_real,
    signed_power,
)

__version__ = "0.1.0"
