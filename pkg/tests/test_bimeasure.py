import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from corpus import SEED, axes_law, diagonal_pair, mixed_model
from stable_spectra import (
    DiscreteBimeasure,
    DiscreteSpectralMeasure,
    IncrementLaw,
    ValidationError,
    bilinear_form,
    bimeasure_from_increments,
    constants,
    control_measure_nu,
    covariation_exact,
    frechet_type_sup,
    increment_norm,
    mt_integral,
    mt_partial,
    pd_type_check,
    s_alpha_real,
    signed_power,
    vitali_variation,
)


def diagonal_pair_law():
    return IncrementLaw([0.0, 1.0], diagonal_pair(), 1.5)


def test_law_validation():
    with pytest.raises(ValidationError):
        IncrementLaw([1.0, 0.0], diagonal_pair(), 1.5)
    with pytest.raises(ValidationError):
        IncrementLaw([0.0, 1.0, 2.0], diagonal_pair(), 1.5)


def test_axes_law_gives_diagonal_bimeasure():
    law = axes_law([0.5, 1.0, 2.0], [0.0, 1.0, 2.0], 1.5)
    bim = bimeasure_from_increments(law)
    assert bim.additive
    assert_allclose(bim.F, np.diag([1.0, 2.0, 4.0]), atol=0)


def test_diagonal_pair_bimeasure():
    bim = bimeasure_from_increments(diagonal_pair_law())
    assert_allclose(bim.F, np.full((2, 2), 2 ** -0.75), rtol=1e-15)
    assert_allclose(vitali_variation(bim), 4 * 2 ** -0.75, rtol=1e-15)
    assert bim.additive is False


def test_block_is_biadditive():
    rng = np.random.default_rng(SEED)
    F = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    bim = DiscreteBimeasure(np.arange(5.0), F)
    A, A2, B = [0, 3], [1], [2, 4]
    assert bim.block(A + A2, B) == pytest.approx(bim.block(A, B) + bim.block(A2, B))
    assert bim.block(B, A + A2) == pytest.approx(bim.block(B, A) + bim.block(B, A2))
    assert bim.block([], B) == 0


def test_bimeasure_shape_check():
    with pytest.raises(ValidationError):
        DiscreteBimeasure([0.0, 1.0], np.eye(3))


def test_pd_check_accepts_independent_increments():
    law = axes_law([0.5, 1.0], [0.0, 1.0], 1.5, phases=[0.3, 1.2])
    assert pd_type_check(bimeasure_from_increments(law), 1.5, trials=300).passed


def test_pd_check_complex_field_rejects_off_diagonal_mass():
    # with complex coefficients the imaginary part only vanishes for diagonal F
    report = pd_type_check(mixed_model().bimeasure, 1.5, trials=300)
    assert not report.passed
    assert abs(report.worst_imag) > 1e-6


def test_pd_check_real_field_accepts_small_off_diagonal_mass():
    assert pd_type_check(mixed_model().bimeasure, 1.5, trials=300, field="real").passed


def test_pd_check_rejects_negative_diagonal():
    assert not pd_type_check(np.diag([1.0, -1.0]), 1.5, trials=10).passed


def test_bilinear_form_matches_covariation_under_condition_a():
    law = axes_law([0.5, 1.0], [0.0, 1.0], 1.5, phases=[0.3, 1.2])
    F = bimeasure_from_increments(law).F
    z = np.array([1.5, -0.4 + 0.2j])
    assert_allclose(bilinear_form(F, z, 1.5),
                    covariation_exact(law.joint_measure, 1.5, z, z), rtol=1e-14)


def test_frechet_bracket_on_identity():
    lower, upper = frechet_type_sup(np.eye(3), 1.5)
    assert lower == pytest.approx(3.0, abs=1e-12) and upper == 3.0


def test_frechet_bracket_is_ordered():
    rng = np.random.default_rng(SEED)
    F = rng.standard_normal((4, 4))
    lower, upper = frechet_type_sup(F, 1.5, search_budget=200)
    assert 0.0 <= lower <= upper


def test_control_measure_single_atom():
    law = IncrementLaw([0.0], DiscreteSpectralMeasure([[1.0], [-1.0]], [0.5, 0.5]), 1.5)
    assert_allclose(control_measure_nu(law, [0]), s_alpha_real(1.5, 1.0), rtol=1e-15)
    assert_allclose(control_measure_nu(law, [0]), 1.70547, atol=5e-6)
    assert control_measure_nu(law, []) == 0.0


def test_control_inequality_on_condition_a_suite():
    rng = np.random.default_rng(SEED)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        alpha = float(rng.uniform(1.05, 1.95))
        law = axes_law(rng.uniform(0.1, 2, n), np.arange(float(n)), alpha)
        psi = constants(alpha).psi_alpha
        for r in range(1, n + 1):
            for cells in itertools.combinations(range(n), r):
                assert increment_norm(law, cells) <= psi * control_measure_nu(law, cells) + 1e-10


def test_null_cell_has_no_mass():
    # the second increment is identically zero
    meas = DiscreteSpectralMeasure([[1.0, 0.0], [-1.0, 0.0]], [0.5, 0.5])
    law = IncrementLaw([0.0, 1.0], meas, 1.5)
    F = bimeasure_from_increments(law).F
    assert control_measure_nu(law, [1]) == 0.0
    assert np.all(F[1, :] == 0) and np.all(F[:, 1] == 0)
    assert mt_partial(np.array([2.0, -1.0]), [1], F) == 0


def test_mt_partial_is_linear_in_f():
    rng = np.random.default_rng(SEED)
    F = rng.standard_normal((3, 3))
    f, g = rng.standard_normal((2, 3))
    assert_allclose(mt_partial(f + 2 * g, [0, 2], F),
                    mt_partial(f, [0, 2], F) + 2 * mt_partial(g, [0, 2], F))


def test_mt_integral_indicators_recover_entries():
    rng = np.random.default_rng(SEED)
    F = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    eye = np.eye(3)
    for j, k in itertools.product(range(3), repeat=2):
        assert mt_integral(eye[j], eye[k], F, 1.5) == F[j, k]


@settings(max_examples=50)
@given(st.integers(0, 2 ** 32 - 1), st.floats(-4, 4).filter(lambda c: abs(c) > 1e-3))
def test_mt_integral_homogeneous_in_g(seed, c):
    rng = np.random.default_rng(seed)
    F = rng.standard_normal((3, 3))
    f, g = rng.standard_normal((2, 3))
    assert_allclose(mt_integral(f, c * g, F, 1.5),
                    signed_power(c, 0.5) * mt_integral(f, g, F, 1.5), rtol=1e-10, atol=1e-12)


def test_mt_integral_equals_covariation_for_condition_a_law():
    rng = np.random.default_rng(SEED)
    law = axes_law([0.3, 0.7, 1.1], [0.0, 1.0, 2.0], 1.7, phases=[0.0, 1.0, 2.5])
    F = bimeasure_from_increments(law).F
    for _ in range(100):
        f = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert_allclose(mt_integral(f, g, F, 1.7),
                        covariation_exact(law.joint_measure, 1.7, f, g), atol=1e-10)


def test_mt_integral_shape_check():
    with pytest.raises(ValidationError):
        mt_integral(np.ones(2), np.ones(3), np.eye(3), 1.5)
