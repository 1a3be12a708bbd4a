"""Evans function by direct integration of the first-order system.

The solutions decaying at -infinity (and at +infinity) are continued across
the support of the perturbation with an adaptive Runge-Kutta integrator.
Exponential growth over the truncated window is stripped on the fly: the
integrated columns are kept O(1) by periodic QR renormalization, every
removed factor is logged, and determinant-bearing quantities are
reassembled from the logs, so the ratio E(lambda)/c(lambda) is free of the
arbitrary scalings.  The matrix transmission coefficient is accumulated
alongside the leftward run as the integral of Z0+ R Y-, whose integrand
stays bounded because the dual rows decay exactly as fast as the Jost
columns grow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from . import fredholm, greens, model
from .errors import ConfigError, CountMismatch, StiffnessFailure
from .greens import UnperturbedBasis
from .model import ScalarProblem, SystemProblem

__all__ = [
    "IntegrationParams",
    "JostSolution",
    "AdjointJost",
    "EvansResult",
    "jost_minus",
    "jost_plus",
    "adjoint_jost_plus",
    "evans_function",
    "transmission_matrix",
    "swinton_matrix",
    "born_transmission",
    "gram_determinant",
    "identity_report",
]


@dataclass(frozen=True)
class IntegrationParams:
    """Knobs for the Jost integrations.

    half_width is the truncation X shared with the quadrature grids.
    renorm_threshold caps the growth allowed between renormalizations (the
    segment length shrinks when the fastest characteristic rate would
    exceed it), and orthogonalize_interval is the largest x-distance
    between the QR sweeps that keep multi-column solutions from collapsing
    onto the fastest-growing mode.
    """

    half_width: float = 20.0
    rtol: float = 1e-10
    atol: float = 1e-12
    renorm_threshold: float = 1e8
    orthogonalize_interval: float = 1.0

    def __post_init__(self):
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise ConfigError("half_width must be positive and finite")
        if not (0.0 < self.rtol < 1e-2):
            raise ConfigError("rtol out of range (0, 1e-2)")
        if not (0.0 < self.atol < 1e-2):
            raise ConfigError("atol out of range (0, 1e-2)")
        if self.renorm_threshold < 1e2:
            raise ConfigError("renorm_threshold too small to be useful")
        if self.orthogonalize_interval <= 0:
            raise ConfigError("orthogonalize_interval must be positive")


@dataclass(frozen=True)
class JostSolution:
    """Scaled samples of a Jost solution along one integration run.

    The raw solution at sample i is

        values[i] @ (transform[i] * exp(renorm_log[i])[None, :])

    with values O(1) (orthonormal after the first renormalization),
    transform upper triangular with unit column maxima, and the whole
    exponential bookkeeping in renorm_log.  At the first sample the
    product reproduces the unperturbed data at the starting boundary
    exactly.  renorm_log - renorm_log[0] is the growth removed during the
    run; its dominant entry approximates (fastest rate) x (distance run).
    """

    direction: str
    xs: np.ndarray
    values: np.ndarray
    transform: np.ndarray
    renorm_log: np.ndarray
    basis: UnperturbedBasis

    def index_of(self, x: float) -> int:
        i = int(np.argmin(np.abs(self.xs - x)))
        if abs(float(self.xs[i]) - x) > 1e-9:
            raise ConfigError(f"x={x} is not a stored sample point")
        return i

    def raw_at(self, x: float) -> np.ndarray:
        """Unscaled n x k solution matrix at a stored sample point."""
        i = self.index_of(x)
        scale = self.transform[i] * np.exp(self.renorm_log[i])[None, :]
        return self.values[i] @ scale

    @property
    def growth_log(self) -> np.ndarray:
        """Per-column log of the growth removed over the whole run."""
        return self.renorm_log[-1] - self.renorm_log[0]


@dataclass(frozen=True)
class AdjointJost:
    """Row solutions of dZ/dx = -Z A, normalized to Z0+ at +X.

    Mirror bookkeeping of JostSolution for row vectors: the raw solution
    at sample i is (transform[i] * exp(renorm_log[i])[:, None]) @ values[i]
    with a lower-triangular transform of unit row maxima.
    """

    xs: np.ndarray
    values: np.ndarray
    transform: np.ndarray
    renorm_log: np.ndarray
    basis: UnperturbedBasis

    def index_of(self, x: float) -> int:
        i = int(np.argmin(np.abs(self.xs - x)))
        if abs(float(self.xs[i]) - x) > 1e-9:
            raise ConfigError(f"x={x} is not a stored sample point")
        return i

    def raw_at(self, x: float) -> np.ndarray:
        i = self.index_of(x)
        scale = self.transform[i] * np.exp(self.renorm_log[i])[:, None]
        return scale @ self.values[i]


@dataclass(frozen=True)
class EvansResult:
    """E(lambda), its normalizer c(lambda), and the transmission data.

    transmission / det_transmission are None for fronts, where only the
    scaling-free ratio E/c is meaningful in this module.
    """

    evans: complex
    c_lambda: complex
    ratio: complex
    transmission: Optional[np.ndarray]
    det_transmission: Optional[complex]
    matching_point: float
    truncation_error: float


def _as_system(obj) -> SystemProblem:
    if isinstance(obj, SystemProblem):
        return obj
    if isinstance(obj, ScalarProblem):
        return model.to_system(obj)
    raise ConfigError("expected a ScalarProblem or SystemProblem")


def _side_bases(system: SystemProblem, lam: complex):
    """Decaying bases at the two ends (identical for pulses)."""
    if not system.is_front:
        b = greens.system_basis(system, lam)
        return b, b
    bm = greens.matrix_basis(system.base_matrix(lam) + system.r_minus)
    bp = greens.matrix_basis(system.base_matrix(lam) + system.r_plus)
    if bm.k != bp.k:
        raise CountMismatch(
            f"unstable dimensions differ between the ends: {bm.k} vs {bp.k}")
    return bm, bp


def _segment_step(params: IntegrationParams, basis: UnperturbedBasis) -> float:
    rate = max(abs(r.real) for r in basis.roots.all) + 1.0
    return min(params.orthogonalize_interval,
               math.log(params.renorm_threshold) / (2.0 * rate))


def _boundaries(x_from: float, x_to: float, step: float,
                extra: Sequence[float] = ()) -> np.ndarray:
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    span = hi - lo
    n_seg = max(1, int(math.ceil(span / step - 1e-12)))
    pts = list(np.linspace(lo, hi, n_seg + 1))
    for e in extra:
        e = float(e)
        if not (lo - 1e-9 <= e <= hi + 1e-9):
            raise ConfigError(f"sample point {e} outside the run [{lo}, {hi}]")
        pts.append(e)
    pts.sort()
    merged = [pts[0]]
    for p in pts[1:]:
        if p - merged[-1] > 1e-10:
            merged.append(p)
    merged[0], merged[-1] = lo, hi
    out = np.array(merged)
    return out if x_from <= x_to else out[::-1].copy()


def _scaled_entries(M: np.ndarray, row_exp: np.ndarray,
                    col_exp: np.ndarray) -> np.ndarray:
    """M[i, j] * exp(row_exp[i] + col_exp[j]) combined in log space.

    The exponents can individually be far outside floating-point range
    while the products stay bounded, so naive exponentiation is not an
    option.
    """
    M = np.asarray(M, dtype=complex)
    out = np.zeros_like(M)
    W = np.asarray(row_exp)[:, None] + np.asarray(col_exp)[None, :]
    nz = M != 0
    out[nz] = np.exp(np.log(M[nz]) + W[nz])
    return out


def _exp_scaled(value: complex, expo: complex) -> complex:
    if value == 0:
        return 0.0 + 0.0j
    return complex(np.exp(np.log(complex(value)) + expo))


def _propagate_columns(system: SystemProblem, lam: complex,
                       basis: UnperturbedBasis, direction: str,
                       params: IntegrationParams,
                       x_stop: Optional[float] = None,
                       sample_points: Sequence[float] = (),
                       collect: bool = False):
    """Continue the decaying column block across the perturbation.

    direction "minus" starts at -X from the data Y0-(-X) and runs right;
    "plus" starts at +X from Y0+(+X) and runs left.  With collect=True
    (minus direction only) the pairing integral of Z0+ R Y- is advanced in
    the same ODE state and returned as the transmission correction D - I.
    """
    n = system.dimension
    k = basis.k
    if direction == "minus":
        fam = np.array(basis.roots.plus)
        cols = np.array(basis.P[:, :k], dtype=complex)
        x_from = -params.half_width
        x_default = params.half_width
    elif direction == "plus":
        fam = np.array(basis.roots.minus)
        cols = np.array(basis.P[:, k:], dtype=complex)
        x_from = params.half_width
        x_default = -params.half_width
    else:
        raise ConfigError("direction must be 'minus' or 'plus'")
    x_to = x_default if x_stop is None else float(x_stop)
    if abs(x_to) > params.half_width + 1e-9:
        raise ConfigError("stopping point outside the truncated window")
    ncols = cols.shape[1]
    A0 = np.asarray(system.base_matrix(lam), dtype=complex)
    Zr = basis.Pinv[:k, :]
    bounds = _boundaries(x_from, x_to, _segment_step(params, basis),
                         sample_points)
    ns = len(bounds)
    values = np.empty((ns, n, ncols), dtype=complex)
    transforms = np.empty((ns, ncols, ncols), dtype=complex)
    logs = np.empty((ns, ncols), dtype=complex)

    cur = cols
    T = np.eye(ncols, dtype=complex)
    sig = fam * x_from
    values[0], transforms[0], logs[0] = cur, T, sig
    D_acc = np.zeros((k, k), dtype=complex) if collect else None

    for s in range(ns - 1):
        a, b = float(bounds[s]), float(bounds[s + 1])
        if collect:
            def rhs(x, y, a=a):
                Y = y[:n * ncols].reshape(n, ncols)
                R = np.asarray(system.perturbation(x), dtype=complex)
                dY = (A0 + R) @ Y
                zfac = np.exp(-fam * (x - a))[:, None]
                dPhi = (zfac * (Zr @ R)) @ Y
                return np.concatenate([dY.ravel(), dPhi.ravel()])
            y0 = np.concatenate([cur.ravel(),
                                 np.zeros(k * k, dtype=complex)])
        else:
            def rhs(x, y):
                Y = y.reshape(n, ncols)
                R = np.asarray(system.perturbation(x), dtype=complex)
                return ((A0 + R) @ Y).ravel()
            y0 = cur.ravel()
        sol = solve_ivp(rhs, (a, b), y0, method="RK45",
                        rtol=params.rtol, atol=params.atol)
        if not sol.success:
            raise StiffnessFailure(
                f"integration failed on [{a}, {b}]: {sol.message}")
        yend = sol.y[:, -1]
        if collect:
            cur = yend[:n * ncols].reshape(n, ncols)
            Phi = yend[n * ncols:].reshape(k, k)
            D_acc += _scaled_entries(Phi @ T, -fam * a, sig)
        else:
            cur = yend.reshape(n, ncols)
        Q, Rtri = np.linalg.qr(cur)
        C = Rtri @ T
        scal = np.max(np.abs(C), axis=0)
        scal[scal == 0.0] = 1.0
        T = C / scal[None, :]
        sig = sig + np.log(scal)
        cur = Q
        values[s + 1], transforms[s + 1], logs[s + 1] = cur, T, sig

    jost = JostSolution(direction=direction, xs=bounds, values=values,
                        transform=transforms, renorm_log=logs, basis=basis)
    return (jost, D_acc) if collect else jost


def _propagate_adjoint(system: SystemProblem, lam: complex,
                       basis: UnperturbedBasis, params: IntegrationParams,
                       x_stop: Optional[float] = None,
                       sample_points: Sequence[float] = ()) -> AdjointJost:
    """Continue the dual rows of the +infinity family leftwards."""
    n = system.dimension
    k = basis.k
    kp = np.array(basis.roots.plus)
    x_from = params.half_width
    x_to = -params.half_width if x_stop is None else float(x_stop)
    if abs(x_to) > params.half_width + 1e-9:
        raise ConfigError("stopping point outside the truncated window")
    A0 = np.asarray(system.base_matrix(lam), dtype=complex)
    bounds = _boundaries(x_from, x_to, _segment_step(params, basis),
                         sample_points)
    ns = len(bounds)
    values = np.empty((ns, k, n), dtype=complex)
    transforms = np.empty((ns, k, k), dtype=complex)
    logs = np.empty((ns, k), dtype=complex)

    cur = np.array(basis.Pinv[:k, :], dtype=complex)
    T = np.eye(k, dtype=complex)
    sig = -kp * x_from
    values[0], transforms[0], logs[0] = cur, T, sig

    for s in range(ns - 1):
        a, b = float(bounds[s]), float(bounds[s + 1])

        def rhs(x, y):
            Z = y.reshape(k, n)
            R = np.asarray(system.perturbation(x), dtype=complex)
            return (-(Z @ (A0 + R))).ravel()

        sol = solve_ivp(rhs, (a, b), cur.ravel(), method="RK45",
                        rtol=params.rtol, atol=params.atol)
        if not sol.success:
            raise StiffnessFailure(
                f"adjoint integration failed on [{a}, {b}]: {sol.message}")
        cur = sol.y[:, -1].reshape(k, n)
        Qh, Rh = np.linalg.qr(cur.T)
        C = T @ Rh.T
        scal = np.max(np.abs(C), axis=1)
        scal[scal == 0.0] = 1.0
        T = C / scal[:, None]
        sig = sig + np.log(scal)
        cur = Qh.T.copy()
        values[s + 1], transforms[s + 1], logs[s + 1] = cur, T, sig

    return AdjointJost(xs=bounds, values=values, transform=transforms,
                       renorm_log=logs, basis=basis)


def jost_minus(system, lam: complex, params: Optional[IntegrationParams] = None,
               basis: Optional[UnperturbedBasis] = None,
               sample_points: Sequence[float] = ()) -> JostSolution:
    """Solutions decaying at -infinity, continued from -X to +X."""
    sysm = _as_system(system)
    params = params or IntegrationParams()
    if basis is None:
        basis = _side_bases(sysm, lam)[0]
    return _propagate_columns(sysm, lam, basis, "minus", params,
                              sample_points=sample_points)


def jost_plus(system, lam: complex, params: Optional[IntegrationParams] = None,
              basis: Optional[UnperturbedBasis] = None,
              sample_points: Sequence[float] = ()) -> JostSolution:
    """Solutions decaying at +infinity, continued from +X to -X."""
    sysm = _as_system(system)
    params = params or IntegrationParams()
    if basis is None:
        basis = _side_bases(sysm, lam)[1]
    return _propagate_columns(sysm, lam, basis, "plus", params,
                              sample_points=sample_points)


def adjoint_jost_plus(system, lam: complex,
                      params: Optional[IntegrationParams] = None,
                      basis: Optional[UnperturbedBasis] = None,
                      sample_points: Sequence[float] = ()) -> AdjointJost:
    """Dual rows normalized to Z0+ at +X, continued down to -X."""
    sysm = _as_system(system)
    params = params or IntegrationParams()
    if basis is None:
        basis = _side_bases(sysm, lam)[1]
    return _propagate_adjoint(sysm, lam, basis, params,
                              sample_points=sample_points)


def evans_function(system, lam: complex, matching_point: float = 0.0,
                   params: Optional[IntegrationParams] = None) -> EvansResult:
    """E(lambda) = det[Y- Y+] at the matching point, with its normalizer.

    The reported ratio E/c divides out both the matching-point drift (both
    determinants pick up the same Abel factor) and the renormalization
    logs, so it is the quantity to compare across matching points and
    against the Fredholm determinant.  For pulse problems the transmission
    matrix is accumulated during the same leftward run.
    """
    sysm = _as_system(system)
    params = params or IntegrationParams()
    x0 = float(matching_point)
    if abs(x0) > params.half_width:
        raise ConfigError("matching point outside the truncated window")
    bm, bp = _side_bases(sysm, lam)
    n = sysm.dimension
    if bm.k + (n - bp.k) != n:
        raise CountMismatch("Jost blocks do not fill out an n x n matrix")
    if sysm.is_front:
        jm = _propagate_columns(sysm, lam, bm, "minus", params, x_stop=x0)
        trans = None
        det_trans = None
    else:
        jm, D_corr = _propagate_columns(sysm, lam, bm, "minus", params,
                                        sample_points=(x0,), collect=True)
        trans = np.eye(bm.k, dtype=complex) + D_corr
        det_trans = complex(np.linalg.det(trans))
    jp = _propagate_columns(sysm, lam, bp, "plus", params, x_stop=x0)
    im = jm.index_of(x0)
    ip = jp.index_of(x0)
    combined = np.concatenate([jm.values[im], jp.values[ip]], axis=1)
    d0 = (np.linalg.det(combined)
          * np.linalg.det(jm.transform[im])
          * np.linalg.det(jp.transform[ip]))
    ssum = jm.renorm_log[im].sum() + jp.renorm_log[ip].sum()
    evans = _exp_scaled(d0, ssum)
    cmat = np.concatenate([bm.y_minus(x0), bp.y_plus(x0)], axis=1)
    c_lam = complex(np.linalg.det(cmat))
    ratio = _exp_scaled(d0 / c_lam, ssum)
    return EvansResult(evans=evans, c_lambda=c_lam, ratio=ratio,
                       transmission=trans, det_transmission=det_trans,
                       matching_point=x0,
                       truncation_error=sysm.tail_norm(params.half_width))


def transmission_matrix(system, lam: complex,
                        params: Optional[IntegrationParams] = None
                        ) -> np.ndarray:
    """I_k plus the accumulated pairing of Z0+ R against the Jost minus
    columns; its determinant equals the Fredholm determinant."""
    sysm = _as_system(system)
    if sysm.is_front:
        raise ConfigError("transmission matrix needs a decaying perturbation")
    params = params or IntegrationParams()
    basis = greens.system_basis(sysm, lam)
    _, D_corr = _propagate_columns(sysm, lam, basis, "minus", params,
                                   collect=True)
    return np.eye(basis.k, dtype=complex) + D_corr


def swinton_matrix(system, lam: complex,
                   params: Optional[IntegrationParams] = None,
                   matching_point: float = 0.0) -> np.ndarray:
    """Pairing of the perturbed dual rows with the Jost minus columns.

    The product Z+(x) Y-(x) is x-independent, so the result does not
    depend on the matching point; for decaying perturbations it equals the
    transmission matrix.
    """
    sysm = _as_system(system)
    params = params or IntegrationParams()
    x0 = float(matching_point)
    bm, bp = _side_bases(sysm, lam)
    jm = _propagate_columns(sysm, lam, bm, "minus", params, x_stop=x0)
    adj = _propagate_adjoint(sysm, lam, bp, params, x_stop=x0)
    im = jm.index_of(x0)
    ia = adj.index_of(x0)
    inner = adj.values[ia] @ jm.values[im]
    M = adj.transform[ia] @ inner @ jm.transform[im]
    return _scaled_entries(M, adj.renorm_log[ia], jm.renorm_log[im])


def born_transmission(system, lam: complex, grid=None) -> np.ndarray:
    """One-term weak-coupling approximation of the transmission matrix.

    Replaces the Jost minus solution in the pairing integral by its
    unperturbed limit and applies the quadrature rule directly.  Only a
    diagnostic: accurate when the perturbation is small, quadratic cost in
    the coupling otherwise.
    """
    sysm = _as_system(system)
    if sysm.is_front:
        raise ConfigError("weak-coupling route needs a decaying perturbation")
    grid = grid if grid is not None else fredholm.default_grid()
    basis = greens.system_basis(sysm, lam)
    k = basis.k
    kp = np.array(basis.roots.plus)
    Zr = basis.Pinv[:k, :]
    Pc = basis.P[:, :k]
    D = np.eye(k, dtype=complex)
    for x, w in zip(grid.nodes, grid.weights):
        R = np.asarray(sysm.perturbation(float(x)), dtype=complex)
        core = Zr @ R @ Pc
        D += w * core * np.exp((kp[None, :] - kp[:, None]) * x)
    return D


def gram_determinant(system, lam: complex,
                     params: Optional[IntegrationParams] = None) -> complex:
    """det of the unperturbed-dual pairing Z0+(X) Y-(X) at the right edge.

    Converges to det(transmission) as X grows; the truncation gap is the
    same boundary error the Jost runs carry.
    """
    sysm = _as_system(system)
    if sysm.is_front:
        raise ConfigError("pairing limit needs a decaying perturbation")
    params = params or IntegrationParams()
    basis = greens.system_basis(sysm, lam)
    jm = _propagate_columns(sysm, lam, basis, "minus", params)
    i = len(jm.xs) - 1
    k = basis.k
    kp = np.array(basis.roots.plus)
    M = (basis.Pinv[:k, :] @ jm.values[i]) @ jm.transform[i]
    G = _scaled_entries(M, -kp * params.half_width, jm.renorm_log[i])
    return complex(np.linalg.det(G))


def identity_report(problem, lam: complex, grid=None,
                    params: Optional[IntegrationParams] = None) -> dict:
    """Evaluate d, det D, E/c, and the trace-corrected det2 product at one
    lambda and report the largest pairwise gap.

    All four numbers are equal in exact arithmetic; the gap is a live
    estimate of the combined quadrature, integration, and truncation
    error.
    """
    if isinstance(problem, SystemProblem):
        if problem.source is None or problem.is_front:
            raise ConfigError("identity report needs a scalar-derived pulse")
        scalar, sysm = problem.source, problem
    elif isinstance(problem, ScalarProblem):
        if problem.profile.is_front:
            raise ConfigError("identity report needs a pulse profile")
        scalar, sysm = problem, model.to_system(problem)
    else:
        raise ConfigError("expected a ScalarProblem or SystemProblem")
    grid = grid if grid is not None else fredholm.default_grid()
    d_val = fredholm.det1(scalar, lam, grid).value
    er = evans_function(sysm, lam, params=params)
    d2 = fredholm.det2(sysm, lam, grid)
    product = _exp_scaled(d2.value, d2.trace_used)
    vals = [d_val, er.det_transmission, er.ratio, product]
    gap = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
    return {
        "d": d_val,
        "det_transmission": er.det_transmission,
        "evans_ratio": er.ratio,
        "det2_product": product,
        "max_pairwise_gap": float(gap),
    }
