import numpy as np
import pytest

import wavedet as wd
from wavedet import evans
from wavedet.errors import ConfigError


# ---------------------------------------------------------------------------
# Jost solutions against the reflectionless closed form
#
# For the single-well reflectionless potential the decaying solution at the
# left is e^{kx}(k - tanh x)/(k + 1) with k = sqrt(lambda), so its value and
# derivative at the origin are k/(k+1) and k-1.


def test_jost_minus_matches_closed_form(pt_system):
    k = 2.0
    jm = evans.jost_minus(pt_system, 4.0)
    got = jm.raw_at(0.0).ravel()
    assert np.allclose(got, [k / (k + 1.0), k - 1.0], atol=1e-9)


def test_jost_plus_is_the_reflection(pt_system):
    k = 2.0
    jp = evans.jost_plus(pt_system, 4.0)
    got = jp.raw_at(0.0).ravel()
    assert np.allclose(got, [k / (k + 1.0), -(k - 1.0)], atol=1e-9)


def test_jost_growth_accounting(pt_system):
    jm = evans.jost_minus(pt_system, 4.0)
    assert jm.xs[0] == -20.0 and jm.xs[-1] == 20.0
    # growth removed over the run is roughly rate x distance
    assert abs(jm.growth_log[0].real - 2.0 * 2.0 * 20.0) < 1.0


def test_jost_rejects_unsampled_point(pt_system):
    jm = evans.jost_minus(pt_system, 4.0)
    with pytest.raises(ConfigError):
        jm.raw_at(0.123456789)


# ---------------------------------------------------------------------------
# the Evans function and its normalizer


@pytest.mark.parametrize("lam,want", [(4.0, 1.0 / 3.0), (9.0, 0.5)])
def test_evans_ratio_closed_form(pt_system, lam, want):
    res = wd.evans_function(pt_system, lam)
    assert abs(res.ratio - want) < 1e-6
    assert abs(res.det_transmission - want) < 1e-6


def test_evans_ratio_vanishes_at_eigenvalue(pt_system):
    assert abs(wd.evans_function(pt_system, 1.0).ratio) < 1e-8


def test_evans_matching_point_invariance(pt_system):
    for lam in (4.0, 2.0 + 1.0j):
        a = wd.evans_function(pt_system, lam, matching_point=0.0).ratio
        b = wd.evans_function(pt_system, lam, matching_point=1.0).ratio
        assert abs(a - b) < 1e-8 * abs(a)


def test_abel_drift_cancels_in_ratio():
    # with a damping term the trace is nonzero, so E and c both pick up
    # the factor exp(trace * dx) between matching points while the ratio
    # stays put
    prof = wd.make_profile("sech2", amplitude=1.0)
    sysm = wd.to_system(wd.ScalarProblem(order=2, coeffs=(0.0, 0.5),
                                         profile=prof))
    a = wd.evans_function(sysm, 4.0, matching_point=0.0)
    b = wd.evans_function(sysm, 4.0, matching_point=1.0)
    drift = np.exp(-0.5)
    assert b.evans / a.evans == pytest.approx(drift, abs=1e-9)
    assert b.c_lambda / a.c_lambda == pytest.approx(drift, abs=1e-9)
    assert abs(a.ratio - b.ratio) < 1e-8 * abs(a.ratio)


def test_matching_point_outside_window(pt_system):
    with pytest.raises(ConfigError):
        wd.evans_function(pt_system, 4.0, matching_point=25.0)


def test_zero_perturbation_is_trivial():
    flat = wd.to_system(wd.builtin_problem("sech_pulse", amplitude=0.0))
    res = wd.evans_function(flat, 3.0)
    assert res.det_transmission == 1.0 + 0.0j
    assert abs(res.ratio - 1.0) < 1e-8


def test_truncation_error_reported(pt_system):
    res = wd.evans_function(pt_system, 4.0)
    assert 0.0 < res.truncation_error < 1e-10


# ---------------------------------------------------------------------------
# transmission routes


def test_swinton_matches_transmission(pt_system):
    sw = evans.swinton_matrix(pt_system, 4.0)
    tm = evans.transmission_matrix(pt_system, 4.0)
    assert sw.shape == tm.shape == (1, 1)
    assert abs(np.linalg.det(sw) - np.linalg.det(tm)) < 1e-8


def test_swinton_matching_point_invariance(pt_system):
    s0 = evans.swinton_matrix(pt_system, 4.0, matching_point=0.0)
    s1 = evans.swinton_matrix(pt_system, 4.0, matching_point=-2.0)
    assert abs(s0[0, 0] - s1[0, 0]) < 1e-8


def test_gram_determinant_limit(pt_system):
    gd = evans.gram_determinant(pt_system, 4.0)
    assert abs(gd - 1.0 / 3.0) < 1e-6


def test_born_transmission_is_second_order():
    gaps = []
    for amp in (0.01, 0.001):
        sysm = wd.to_system(wd.builtin_problem("sech_pulse", amplitude=amp))
        born = evans.born_transmission(sysm, 2.0)
        exact = evans.transmission_matrix(sysm, 2.0)
        gaps.append(abs(born[0, 0] - exact[0, 0]))
        # the first-order term itself is visible and larger than the error
        assert abs(born[0, 0] - 1.0) > 10 * gaps[-1]
    assert gaps[0] > 50 * gaps[1]  # quadratic in the coupling


# ---------------------------------------------------------------------------
# the cross-pipeline identity at a point


def test_identity_report_fields(pt):
    rep = evans.identity_report(pt, 4.0)
    assert set(rep) == {"d", "det_transmission", "evans_ratio",
                        "det2_product", "max_pairwise_gap"}
    assert rep["max_pairwise_gap"] < 1e-6
    for key in ("d", "det_transmission", "evans_ratio", "det2_product"):
        assert abs(rep[key] - 1.0 / 3.0) < 1e-6


def test_identity_report_rejects_fronts():
    front = wd.builtin_problem("tanh_front", amplitude=1.5, offset=-2.5,
                               well=8.0)
    with pytest.raises(ConfigError):
        evans.identity_report(front, 2.0)


def test_front_has_no_transmission():
    front = wd.to_system(wd.builtin_problem("tanh_front", amplitude=1.5,
                                            offset=-2.5, well=8.0))
    res = wd.evans_function(front, 2.0)
    assert res.transmission is None and res.det_transmission is None
    assert np.isfinite(res.ratio)


# ---------------------------------------------------------------------------
# higher order: fourth-order operator, two columns per side


def test_fourth_order_two_column_pipeline():
    bi = wd.builtin_problem("biharmonic_demo", amplitude=3.0)
    bs = wd.to_system(bi)
    lam = -16.0
    res = wd.evans_function(bs, lam)
    assert res.transmission.shape == (2, 2)
    d1 = wd.det1(bi, lam, wd.build_grid(20.0, 400)).value
    assert abs(res.ratio - d1) < 1e-6
    other = wd.evans_function(bs, lam, matching_point=1.0)
    assert abs(res.ratio - other.ratio) < 1e-8 * abs(res.ratio)


# ---------------------------------------------------------------------------
# parameter validation


@pytest.mark.parametrize("kwargs", [
    {"half_width": 0.0},
    {"half_width": float("inf")},
    {"rtol": 0.1},
    {"atol": -1e-9},
    {"renorm_threshold": 10.0},
    {"orthogonalize_interval": 0.0},
])
def test_integration_params_validation(kwargs):
    with pytest.raises(ConfigError):
        evans.IntegrationParams(**kwargs)


def test_params_thread_through(pt_system):
    tight = evans.IntegrationParams(half_width=15.0)
    res = wd.evans_function(pt_system, 4.0, params=tight)
    assert abs(res.ratio - 1.0 / 3.0) < 1e-6
    assert res.truncation_error > 0
