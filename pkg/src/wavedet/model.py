"""Problem definitions for travelling-wave spectral computations.

A scalar problem is an eigenvalue equation for a constant-coefficient
differential operator of order n perturbed by a localized (or front-like)
coefficient:

    L u = u^(n) + a_{n-1} u^(n-1) + ... + a_0 u + d^m/dx^m ( v(x) u ) = lambda u

with v = V(phi) for a wave profile phi and an optional scalar map V
(identity by default).  The same problem in first-order form is

    dY/dx = (A0(lambda) + R(x)) Y,

where A0 is the companion matrix of the unperturbed symbol and R carries the
perturbation in its bottom row.  R here is the *physical* perturbation: the
first-order system above is literally equivalent to L u = lambda u, which
pins its bottom-row entries to -C(m,i) (d/dx)^(m-i) v.  Kernel-side
weightings that need the opposite sign absorb it internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError, EssentialSpectrum, NearMultipleRoots

__all__ = [
    "WaveProfile",
    "ScalarProblem",
    "SystemProblem",
    "SpectralPoint",
    "builtin_problem",
    "make_profile",
    "tabulated_profile",
    "to_system",
    "essential_spectrum_distance",
    "symbol_curve",
    "classify_point",
    "char_roots",
]

AXIS_TOL = 1e-8
SEP_TOL = 1e-6


# ---------------------------------------------------------------------------
# wave profiles


@dataclass
class WaveProfile:
    """A wave profile phi with enough structure for both pipelines.

    ``fn`` evaluates phi on scalars or arrays; ``deriv`` evaluates the
    order-l derivative.  ``limits`` holds (phi(-inf), phi(+inf)); both are 0
    for pulses.  ``l1_norm`` is the integral of |phi| (inf for fronts) and
    ``exact_integral`` the signed integral of phi when a closed form exists.
    """

    kind: str
    params: dict
    fn: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray, int], np.ndarray]
    limits: tuple[float, float] = (0.0, 0.0)
    l1_norm: float = math.nan
    exact_integral: Optional[float] = None

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def derivative(self, x, order: int = 1):
        if order == 0:
            return self(x)
        return self.deriv(np.asarray(x, dtype=float), order)

    @property
    def is_front(self) -> bool:
        return max(abs(self.limits[0]), abs(self.limits[1])) > 0.0


def _fd_derivative(f2, x, order, h=1e-3):
    # central differences stacked on the analytic second derivative;
    # only exercised for derivative orders >= 3
    if order == 2:
        return f2(x)
    return (_fd_derivative(f2, x + h, order - 1, h)
            - _fd_derivative(f2, x - h, order - 1, h)) / (2.0 * h)


def _profile_from_table(kind, params, f0, f1, f2, limits, l1, exact):
    def deriv(x, order):
        if order == 1:
            return f1(x)
        if order == 2:
            return f2(x)
        return _fd_derivative(f2, x, order)

    return WaveProfile(kind=kind, params=params, fn=f0, deriv=deriv,
                       limits=limits, l1_norm=l1, exact_integral=exact)


def _sech2_profile(kind, amplitude, width, params):
    a, w = amplitude, width

    def f0(x):
        s = 1.0 / np.cosh(x / w)
        return a * s * s

    def f1(x):
        s = 1.0 / np.cosh(x / w)
        t = np.tanh(x / w)
        return -2.0 * a / w * s * s * t

    def f2(x):
        s2 = 1.0 / np.cosh(x / w) ** 2
        t = np.tanh(x / w)
        return 2.0 * a / w ** 2 * s2 * (2.0 * t * t - s2)

    l1 = abs(a) * 2.0 * abs(w)
    return _profile_from_table(kind, params, f0, f1, f2, (0.0, 0.0),
                               l1, a * 2.0 * w)


def _sech_profile(amplitude, width, params):
    a, w = amplitude, width

    def f0(x):
        return a / np.cosh(x / w)

    def f1(x):
        s = 1.0 / np.cosh(x / w)
        return -a / w * s * np.tanh(x / w)

    def f2(x):
        s = 1.0 / np.cosh(x / w)
        t = np.tanh(x / w)
        return a / w ** 2 * s * (t * t - s * s)

    l1 = abs(a) * math.pi * abs(w)
    return _profile_from_table("sech_pulse", params, f0, f1, f2, (0.0, 0.0),
                               l1, a * math.pi * w)


def _gaussian_profile(amplitude, width, params):
    a, w = amplitude, width

    def f0(x):
        return a * np.exp(-((x / w) ** 2))

    def f1(x):
        return -2.0 * x / w ** 2 * f0(x)

    def f2(x):
        return (-2.0 / w ** 2 + 4.0 * x ** 2 / w ** 4) * f0(x)

    l1 = abs(a) * abs(w) * math.sqrt(math.pi)
    return _profile_from_table("gaussian_pulse", params, f0, f1, f2,
                               (0.0, 0.0), l1, a * w * math.sqrt(math.pi))


def _tanh_front_profile(amplitude, offset, well, width, params):
    a, c, q, w = amplitude, offset, well, width

    def f0(x):
        s = 1.0 / np.cosh(x / w)
        return c + a * np.tanh(x / w) + q * s * s

    def f1(x):
        s2 = 1.0 / np.cosh(x / w) ** 2
        t = np.tanh(x / w)
        return a / w * s2 - 2.0 * q / w * s2 * t

    def f2(x):
        s2 = 1.0 / np.cosh(x / w) ** 2
        t = np.tanh(x / w)
        return (-2.0 * a / w ** 2 * s2 * t
                + 2.0 * q / w ** 2 * s2 * (2.0 * t * t - s2))

    limits = (c - a, c + a)
    if limits == (0.0, 0.0):
        l1 = abs(q) * 2.0 * abs(w)
        exact = q * 2.0 * w
    else:
        l1 = math.inf
        exact = None
    return _profile_from_table("tanh_front", params, f0, f1, f2, limits,
                               l1, exact)


def tabulated_profile(x: Sequence[float], values: Sequence[float],
                      limits: tuple[float, float] = (0.0, 0.0)) -> WaveProfile:
    """Profile from samples: cubic interpolation inside the sample range,
    exponential tails matched to the last two samples outside it."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != values.shape or x.size < 4:
        raise ConfigError("tabulated profile needs >= 4 matching samples")
    if not np.all(np.diff(x) > 0):
        raise ConfigError("tabulated profile abscissae must increase")
    spline = CubicSpline(x, values)

    def tail(edge_val, prev_val, limit, dx):
        a = edge_val - limit
        b = prev_val - limit
        # decay rate from the last two samples; fall back to unit rate when
        # the samples do not look like a decaying exponential
        if abs(a) > 0 and abs(b) > abs(a):
            mu = math.log(abs(b / a)) / dx
        else:
            mu = 1.0
        return a, mu

    aR, muR = tail(values[-1], values[-2], limits[1], x[-1] - x[-2])
    aL, muL = tail(values[0], values[1], limits[0], x[1] - x[0])
    x_lo, x_hi = x[0], x[-1]

    def f0(t):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        lo = t < x_lo
        hi = t > x_hi
        mid = ~(lo | hi)
        out[mid] = spline(t[mid])
        out[lo] = limits[0] + aL * np.exp(-muL * (x_lo - t[lo]))
        out[hi] = limits[1] + aR * np.exp(-muR * (t[hi] - x_hi))
        return out

    def deriv(t, order):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        lo = t < x_lo
        hi = t > x_hi
        mid = ~(lo | hi)
        out[mid] = spline(t[mid], order)
        out[lo] = aL * muL ** order * np.exp(-muL * (x_lo - t[lo]))
        out[hi] = aR * (-muR) ** order * np.exp(-muR * (t[hi] - x_hi))
        return out

    body = spline.antiderivative()
    exact = None
    if limits == (0.0, 0.0):
        l1 = float(np.trapezoid(np.abs(values), x) + abs(aL) / muL + abs(aR) / muR)
        exact = float(body(x_hi) - body(x_lo) + aL / muL + aR / muR)
    else:
        l1 = math.inf
    return WaveProfile(kind="tabulated", params={"n_samples": int(x.size)},
                       fn=f0, deriv=deriv, limits=tuple(limits),
                       l1_norm=l1, exact_integral=exact)


# ---------------------------------------------------------------------------
# problems


@dataclass
class ScalarProblem:
    """Order-n scalar eigenvalue problem with a rank-one style perturbation.

    coeffs holds (a_0, ..., a_{n-1}); deriv_order is the m in
    d^m/dx^m (v u); jacobian is the optional scalar map V with v = V(phi).
    """

    order: int
    coeffs: tuple
    profile: WaveProfile
    deriv_order: int = 0
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    _potential_integral: Optional[complex] = field(default=None, repr=False)

    def __post_init__(self):
        n = self.order
        if n < 2:
            raise ConfigError("operator order must be >= 2")
        self.coeffs = tuple(complex(c) for c in self.coeffs)
        if len(self.coeffs) != n:
            raise ConfigError(
                f"expected {n} coefficients a_0..a_{n-1}, got {len(self.coeffs)}")
        if not all(math.isfinite(c.real) and math.isfinite(c.imag)
                   for c in self.coeffs):
            raise ConfigError("coefficients must be finite")
        if not 0 <= self.deriv_order <= n - 2:
            raise ConfigError("deriv_order must satisfy 0 <= m <= n-2")

    def potential(self, x):
        """v(x) = V(phi(x)) on scalars or arrays."""
        phi = self.profile(x)
        return phi if self.jacobian is None else self.jacobian(phi)

    def potential_derivative(self, x, order: int):
        if order == 0:
            return self.potential(x)
        if self.jacobian is None:
            return self.profile.derivative(x, order)
        # no symbolic algebra on V: nested central differences
        h = 1e-3
        return (self.potential_derivative(np.asarray(x) + h, order - 1)
                - self.potential_derivative(np.asarray(x) - h, order - 1)) / (2 * h)

    def potential_integral(self) -> complex:
        """Signed integral of v over the line (exact where available)."""
        if self._potential_integral is None:
            if self.profile.is_front:
                raise ConfigError(
                    "potential integral undefined for front profiles")
            if self.jacobian is None and self.profile.exact_integral is not None:
                self._potential_integral = complex(self.profile.exact_integral)
            else:
                xs, ws = np.polynomial.legendre.leggauss(2000)
                xs = 40.0 * xs
                ws = 40.0 * ws
                self._potential_integral = complex(
                    np.sum(ws * self.potential(xs)))
        return self._potential_integral

    @property
    def potential_limits(self) -> tuple[complex, complex]:
        lo, hi = self.profile.limits
        if self.jacobian is None:
            return complex(lo), complex(hi)
        return complex(self.jacobian(lo)), complex(self.jacobian(hi))


@dataclass
class SystemProblem:
    """First-order system dY/dx = (A0(lambda) + R(x)) Y.

    base_matrix maps lambda to the n x n constant part, perturbation maps x
    to R(x), and (r_minus, r_plus) are the limits of R at -/+ infinity
    (both zero for pulse problems).
    """

    dimension: int
    base_matrix: Callable[[complex], np.ndarray]
    perturbation: Callable[[float], np.ndarray]
    r_minus: np.ndarray
    r_plus: np.ndarray
    source: Optional[ScalarProblem] = None

    def __post_init__(self):
        self.r_minus = np.asarray(self.r_minus, dtype=complex)
        self.r_plus = np.asarray(self.r_plus, dtype=complex)
        n = self.dimension
        if self.r_minus.shape != (n, n) or self.r_plus.shape != (n, n):
            raise ConfigError("asymptotic matrices must be n x n")

    @property
    def is_front(self) -> bool:
        return bool(np.abs(self.r_minus).max() > 0
                    or np.abs(self.r_plus).max() > 0)

    def decaying_part(self, x: float) -> np.ndarray:
        """R(x) minus its limit on the half line containing x."""
        rinf = self.r_minus if x <= 0 else self.r_plus
        return self.perturbation(x) - rinf

    def tail_norm(self, half_width: float) -> float:
        """Estimate of the integral of ||R - R_inf|| over |x| > half_width."""
        xs, ws = np.polynomial.legendre.leggauss(120)
        total = 0.0
        for sign in (-1.0, 1.0):
            a = sign * half_width
            b = sign * (half_width + 30.0)
            mid, rad = (a + b) / 2.0, (b - a) / 2.0
            for xi, wi in zip(mid + rad * xs, rad * ws):
                total += abs(wi) * np.linalg.norm(self.decaying_part(xi))
        return float(total)


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter together with its domain classification."""

    lam: complex
    domain_status: str  # resolvent | essential | indeterminate


# ---------------------------------------------------------------------------
# characteristic roots and the essential spectrum


def char_roots(coeffs: Sequence[complex], lam: complex) -> np.ndarray:
    """Roots of kappa^n + a_{n-1} kappa^(n-1) + ... + a_0 - lambda, via the
    companion eigenvalue route plus one Newton polish step."""
    a = [complex(c) for c in coeffs]
    n = len(a)
    poly = np.array([1.0 + 0j] + [a[n - 1 - i] for i in range(n)])
    poly[-1] -= lam
    roots = np.roots(poly)
    dpoly = np.polyder(poly)
    vals = np.polyval(poly, roots)
    dvals = np.polyval(dpoly, roots)
    ok = np.abs(dvals) > 1e-14 * np.maximum(1.0, np.abs(vals))
    roots[ok] = roots[ok] - vals[ok] / dvals[ok]
    return roots


def classify_point(problem: ScalarProblem, lam: complex,
                   axis_tol: float = AXIS_TOL,
                   sep_tol: float = SEP_TOL) -> SpectralPoint:
    """Classify lambda by the real parts and separation of its roots."""
    roots = char_roots(problem.coeffs, lam)
    scale = max(float(np.max(np.abs(roots))), 1e-12)
    if float(np.min(np.abs(roots.real))) <= axis_tol * scale:
        status = "essential"
    else:
        d = np.abs(roots[:, None] - roots[None, :])
        np.fill_diagonal(d, np.inf)
        status = "indeterminate" if float(d.min()) < sep_tol * scale else "resolvent"
    return SpectralPoint(lam=complex(lam), domain_status=status)


def symbol_curve(problem: ScalarProblem, zeta) -> np.ndarray:
    """The dispersion symbol P(i zeta) tracing the essential spectrum."""
    z = 1j * np.asarray(zeta, dtype=float)
    n = problem.order
    out = z ** n
    for j, a in enumerate(problem.coeffs):
        out = out + a * z ** j
    return out


def essential_spectrum_distance(problem: ScalarProblem, lam: complex) -> float:
    """Distance from lambda to the symbol curve over real frequencies.

    Scans zeta in [-Z, Z] with Z grown until |P(iZ)| dominates |lambda|,
    then refines the best sample by golden section.
    """
    lam = complex(lam)
    target = 10.0 * (abs(lam) + 1.0)
    Z = 2.0
    while min(abs(symbol_curve(problem, Z)), abs(symbol_curve(problem, -Z))) <= target:
        Z *= 2.0
        if Z > 2.0 ** 40:
            break
    zs = np.linspace(-Z, Z, 4001)
    vals = np.abs(symbol_curve(problem, zs) - lam)
    i = int(np.argmin(vals))
    lo = zs[max(i - 1, 0)]
    hi = zs[min(i + 1, zs.size - 1)]

    def f(z):
        return abs(symbol_curve(problem, z) - lam)

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(90):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return float(min(fc, fd))


# ---------------------------------------------------------------------------
# builtins and the first-order form


def make_profile(kind: str, **params) -> WaveProfile:
    """Profile factory keyed the way configuration files spell it."""
    if kind == "sech2":
        amplitude = float(params.pop("amplitude", 1.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(kind, params)
        _require_positive(width, "width")
        return _sech2_profile("sech2", amplitude, width,
                              {"amplitude": amplitude, "width": width})
    if kind == "sech":
        amplitude = float(params.pop("amplitude", 1.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(kind, params)
        _require_positive(width, "width")
        return _sech_profile(amplitude, width,
                             {"amplitude": amplitude, "width": width})
    if kind == "gaussian":
        amplitude = float(params.pop("amplitude", 1.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(kind, params)
        _require_positive(width, "width")
        return _gaussian_profile(amplitude, width,
                                 {"amplitude": amplitude, "width": width})
    if kind == "tanh_front":
        amplitude = float(params.pop("amplitude", 1.0))
        offset = float(params.pop("offset", 0.0))
        well = float(params.pop("well", 0.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(kind, params)
        _require_positive(width, "width")
        return _tanh_front_profile(amplitude, offset, well, width,
                                   {"amplitude": amplitude, "offset": offset,
                                    "well": well, "width": width})
    raise ConfigError(f"unknown profile kind {kind!r}")


def builtin_problem(name: str, **params) -> ScalarProblem:
    """Catalog of ready-made problems used throughout the test battery."""
    if name == "poschl_teller":
        N = params.pop("N", 1)
        _reject_extra(name, params)
        if not isinstance(N, int) or N < 1:
            raise ConfigError("poschl_teller needs integer N >= 1")
        prof = _sech2_profile("poschl_teller", float(N * (N + 1)), 1.0,
                              {"N": N})
        return ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=prof)
    if name == "sech_pulse":
        amplitude = float(params.pop("amplitude", 1.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(name, params)
        _require_positive(width, "width")
        prof = _sech_profile(amplitude, width,
                             {"amplitude": amplitude, "width": width})
        return ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=prof)
    if name == "gaussian_pulse":
        amplitude = float(params.pop("amplitude", 1.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(name, params)
        _require_positive(width, "width")
        prof = _gaussian_profile(amplitude, width,
                                 {"amplitude": amplitude, "width": width})
        return ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=prof)
    if name == "tanh_front":
        amplitude = float(params.pop("amplitude", 1.0))
        offset = float(params.pop("offset", 0.0))
        well = float(params.pop("well", 0.0))
        width = float(params.pop("width", 1.0))
        _reject_extra(name, params)
        _require_positive(width, "width")
        prof = _tanh_front_profile(amplitude, offset, well, width,
                                   {"amplitude": amplitude, "offset": offset,
                                    "well": well, "width": width})
        return ScalarProblem(order=2, coeffs=(0.0, 0.0), profile=prof)
    if name == "biharmonic_demo":
        amplitude = float(params.pop("amplitude", 1.0))
        _reject_extra(name, params)
        prof = _sech2_profile("biharmonic_demo", amplitude, 1.0,
                              {"amplitude": amplitude})
        return ScalarProblem(order=4, coeffs=(0.0, 0.0, 0.0, 0.0),
                             profile=prof)
    raise ConfigError(f"unknown builtin problem {name!r}")


def _reject_extra(name, params):
    if params:
        raise ConfigError(f"unknown parameters for {name}: {sorted(params)}")


def _require_positive(value, label):
    if not value > 0:
        raise ConfigError(f"{label} must be positive")


def companion_matrix(coeffs: Sequence[complex], lam: complex) -> np.ndarray:
    """A0(lambda): shifted identity above a bottom row
    (lambda - a_0, -a_1, ..., -a_{n-1})."""
    a = [complex(c) for c in coeffs]
    n = len(a)
    A = np.zeros((n, n), dtype=complex)
    A[:-1, 1:] = np.eye(n - 1)
    A[-1, 0] = lam - a[0]
    for j in range(1, n):
        A[-1, j] = -a[j]
    return A


def to_system(problem: ScalarProblem, lam: complex | None = None) -> SystemProblem:
    """First-order form of a scalar problem.

    The bottom row of R collects the Leibniz expansion of d^m/dx^m (v u):
    R[n-1][i] = -C(m, i) v^(m-i)(x) for i = 0..m, so that
    dY/dx = (A0 + R) Y is equivalent to L u = lambda u.  The optional
    lambda argument is only classified for early error reporting.
    """
    n = problem.order
    m = problem.deriv_order
    coeffs = problem.coeffs
    if lam is not None:
        status = classify_point(problem, lam).domain_status
        if status == "essential":
            raise EssentialSpectrum(
                f"lambda={lam} touches the essential spectrum of the "
                "constant part")
        if status == "indeterminate":
            raise NearMultipleRoots(
                f"characteristic roots at lambda={lam} nearly coincide")
    binom = [math.comb(m, i) for i in range(m + 1)]

    def base(lmb: complex) -> np.ndarray:
        return companion_matrix(coeffs, lmb)

    def perturbation(x: float) -> np.ndarray:
        R = np.zeros((n, n), dtype=complex)
        for i in range(m + 1):
            R[n - 1, i] = -binom[i] * np.asarray(
                problem.potential_derivative(x, m - i)).item()
        return R

    v_lo, v_hi = problem.potential_limits
    r_minus = np.zeros((n, n), dtype=complex)
    r_plus = np.zeros((n, n), dtype=complex)
    r_minus[n - 1, m] = -v_lo
    r_plus[n - 1, m] = -v_hi
    return SystemProblem(dimension=n, base_matrix=base,
                         perturbation=perturbation,
                         r_minus=r_minus, r_plus=r_plus, source=problem)
