import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import wavedet as wd
from wavedet.errors import ConfigError, EssentialSpectrum
from wavedet import model


# ---------------------------------------------------------------------------
# profiles


def test_poschl_teller_profile_values(pt):
    assert pt.order == 2
    assert pt.coeffs == (0.0, 0.0)
    assert pt.potential(0.0) == pytest.approx(2.0)
    assert pt.potential(3.0) == pytest.approx(2.0 / np.cosh(3.0) ** 2)
    lo, hi = pt.potential_limits
    assert lo == 0 and hi == 0


@pytest.mark.parametrize("kind,params,integral", [
    ("sech2", {"amplitude": 2.0, "width": 1.0}, 4.0),
    ("sech", {"amplitude": 1.5, "width": 2.0}, 1.5 * math.pi * 2.0),
    ("gaussian", {"amplitude": 0.7, "width": 1.3}, 0.7 * 1.3 * math.sqrt(math.pi)),
])
def test_pulse_profile_exact_integrals(kind, params, integral):
    prof = wd.make_profile(kind, **params)
    assert prof.exact_integral == pytest.approx(integral)
    assert prof.limits == (0.0, 0.0)


@pytest.mark.parametrize("kind,params", [
    ("sech2", {"amplitude": 2.0, "width": 1.0}),
    ("sech", {"amplitude": -1.0, "width": 0.7}),
    ("gaussian", {"amplitude": 0.5, "width": 2.0}),
    ("tanh_front", {"amplitude": 1.5, "offset": -2.5, "well": 8.0, "width": 1.0}),
])
def test_profile_derivatives_match_finite_differences(kind, params):
    """Hand-coded first and second derivatives against central differences."""
    prof = wd.make_profile(kind, **params)
    xs = np.linspace(-3.0, 3.0, 11)
    h = 1e-5
    d1 = (prof(xs + h) - prof(xs - h)) / (2 * h)
    d2 = (prof(xs + h) - 2 * prof(xs) + prof(xs - h)) / h**2
    assert np.allclose(prof.derivative(xs, 1), d1, atol=1e-8)
    assert np.allclose(prof.derivative(xs, 2), d2, atol=1e-4)


def test_tanh_front_limits():
    prof = wd.make_profile("tanh_front", amplitude=1.5, offset=-2.5, well=8.0)
    assert prof.limits == (-4.0, -1.0)
    assert prof(-40.0) == pytest.approx(-4.0, abs=1e-12)
    assert prof(40.0) == pytest.approx(-1.0, abs=1e-12)
    assert prof.l1_norm == math.inf


def test_make_profile_rejects_unknown():
    with pytest.raises(ConfigError):
        wd.make_profile("bump")
    with pytest.raises(ConfigError):
        wd.make_profile("sech2", amplitude=1.0, radius=2.0)
    with pytest.raises(ConfigError):
        wd.make_profile("sech2", width=-1.0)


def test_tabulated_profile_interpolates():
    xs = np.linspace(-10, 10, 401)
    prof = wd.make_profile("sech2", amplitude=2.0, width=1.0)
    tab = wd.tabulated_profile(xs, prof(xs))
    mid = np.linspace(-5, 5, 57)
    assert np.allclose(tab(mid), prof(mid), atol=1e-6)
    # tails keep decaying instead of extrapolating wildly
    assert abs(tab(14.0)) < abs(tab(10.0))


# ---------------------------------------------------------------------------
# builtin catalog


def test_builtin_catalog_errors():
    with pytest.raises(ConfigError):
        wd.builtin_problem("kdv7")
    with pytest.raises(ConfigError):
        wd.builtin_problem("poschl_teller", N=0)
    with pytest.raises(ConfigError):
        wd.builtin_problem("sech_pulse", width=-2.0)
    with pytest.raises(ConfigError):
        wd.builtin_problem("gaussian_pulse", amplitdue=1.0)


def test_poschl_teller_family_scaling():
    p2 = wd.builtin_problem("poschl_teller", N=2)
    assert p2.potential(0.0) == pytest.approx(6.0)


def test_biharmonic_demo_is_fourth_order():
    p = wd.builtin_problem("biharmonic_demo", amplitude=0.8)
    assert p.order == 4
    assert p.coeffs == (0.0,) * 4


# ---------------------------------------------------------------------------
# problems


def test_scalar_problem_validation():
    prof = wd.make_profile("sech2")
    with pytest.raises(ConfigError):
        wd.ScalarProblem(order=1, coeffs=(0.0,), profile=prof)
    with pytest.raises(ConfigError):
        wd.ScalarProblem(order=2, coeffs=(0.0,), profile=prof)
    with pytest.raises(ConfigError):
        wd.ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=prof,
                         deriv_order=1)
    with pytest.raises(ConfigError):
        wd.ScalarProblem(order=2, coeffs=(float("inf"), 0.0), profile=prof)


def test_potential_integral_exact_and_front(pt):
    assert pt.potential_integral() == pytest.approx(4.0)
    front = wd.builtin_problem("tanh_front", amplitude=1.0, offset=1.0)
    with pytest.raises(ConfigError):
        front.potential_integral()


def test_jacobian_reweights_potential(pt):
    prob = wd.ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=pt.profile,
                            jacobian=lambda p: 3.0 * p)
    assert prob.potential(0.0) == pytest.approx(6.0)
    assert prob.potential_integral() == pytest.approx(12.0, rel=1e-9)


# ---------------------------------------------------------------------------
# roots and spectrum


def test_char_roots_second_order():
    roots = wd.char_roots((0.0, 0.0), 4.0)
    assert sorted(r.real for r in roots) == pytest.approx([-2.0, 2.0])


@given(lam=st.complex_numbers(max_magnitude=8.0, allow_nan=False,
                              allow_infinity=False),
       a0=st.floats(-2.0, 2.0), a1=st.floats(-2.0, 2.0))
def test_char_roots_satisfy_polynomial(lam, a0, a1):
    roots = wd.char_roots((complex(a0), complex(a1)), lam)
    for r in roots:
        val = r**2 + a1 * r + a0 - lam
        assert abs(val) < 1e-8 * max(1.0, abs(r) ** 2)


def test_classify_point_statuses(pt):
    assert wd.classify_point(pt, 4.0).domain_status == "resolvent"
    assert wd.classify_point(pt, -1.0).domain_status == "essential"


def test_essential_spectrum_distance(pt):
    # sigma_e of u'' = lambda u is the negative real axis
    assert wd.essential_spectrum_distance(pt, 4.0) == pytest.approx(4.0, rel=1e-6)
    assert wd.essential_spectrum_distance(pt, -9.0 + 4.0j) == pytest.approx(4.0, rel=1e-6)


def test_symbol_curve_second_order(pt):
    zeta = np.array([0.0, 1.0, 2.0])
    assert np.allclose(wd.symbol_curve(pt, zeta), [0.0, -1.0, -4.0])


# ---------------------------------------------------------------------------
# first-order form


def test_companion_matrix_layout():
    A = model.companion_matrix((1.0, 2.0, 3.0), 5.0)
    assert A.shape == (3, 3)
    assert np.allclose(A[0], [0, 1, 0])
    assert np.allclose(A[1], [0, 0, 1])
    assert np.allclose(A[2], [5.0 - 1.0, -2.0, -3.0])


def test_to_system_pulse(pt):
    sysm = wd.to_system(pt)
    assert sysm.dimension == 2
    assert not sysm.is_front
    A = sysm.base_matrix(4.0)
    assert np.allclose(A, [[0, 1], [4, 0]])
    R = sysm.perturbation(0.0)
    assert np.allclose(R, [[0, 0], [-2.0, 0]])
    assert np.allclose(sysm.r_minus, 0) and np.allclose(sysm.r_plus, 0)
    assert sysm.tail_norm(20.0) < 1e-15


def test_to_system_front_limits():
    front = wd.builtin_problem("tanh_front", offset=-2.5, amplitude=1.5,
                              well=8.0)
    sysm = wd.to_system(front)
    assert sysm.is_front
    assert np.allclose(sysm.r_minus, [[0, 0], [4.0, 0]])
    assert np.allclose(sysm.r_plus, [[0, 0], [1.0, 0]])
    # decaying part switches its reference limit at x = 0
    left = sysm.decaying_part(-1.0)
    right = sysm.decaying_part(1.0)
    assert np.allclose(left, sysm.perturbation(-1.0) - sysm.r_minus)
    assert np.allclose(right, sysm.perturbation(1.0) - sysm.r_plus)


def test_to_system_derivative_coupling():
    """d/dx (v u) spreads over the bottom row with binomial weights."""
    prof = wd.make_profile("sech2", amplitude=1.0)
    prob = wd.ScalarProblem(order=4, coeffs=(0.0,) * 4, profile=prof,
                            deriv_order=2)
    sysm = wd.to_system(prob)
    R = sysm.perturbation(0.5)
    v0 = prob.potential_derivative(0.5, 2)
    v1 = prob.potential_derivative(0.5, 1)
    v2 = prob.potential(0.5)
    assert np.allclose(R[3, :3], [-v0, -2.0 * v1, -v2])
    assert np.allclose(R[:3], 0)


def test_to_system_rejects_essential_lambda(pt):
    with pytest.raises(EssentialSpectrum):
        wd.to_system(pt, lam=-4.0)


@given(x=st.floats(-15.0, 15.0))
def test_front_decaying_part_decays(x):
    front = wd.builtin_problem("tanh_front", offset=-2.5, amplitude=1.5,
                              well=8.0)
    sysm = wd.to_system(front)
    near = np.max(np.abs(sysm.decaying_part(x)))
    far = np.max(np.abs(sysm.decaying_part(np.sign(x) * 25.0 if x else 25.0)))
    assert far <= near + 1e-12
