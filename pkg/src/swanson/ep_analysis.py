"""Limit procedures onto the boundary strata.

Two families of sweeps exhibit the coalescence structure:

* sweep_to_boundary_i_iii drives omega -> alpha + beta along the root
  epsilon(G) of r(eps)^2 = G^2 eps^2 with r(eps)^2 = (alpha-beta)^2
  + 2 eps (alpha+beta) + eps^2.  The plus root carries the oscillator states
  onto the monomial eigenfunctions tau^-1 x^n / sqrt(n!); the minus root
  carries their Fourier-side partners onto the delta-derivative family, which
  is only a distributional limit and is therefore measured weakly against a
  fixed battery of displaced Gaussians.

* sweep_to_ep drives Omega^2 = +-eps^2 -> 0 at fixed (omega, beta) with
  alpha = (omega^2 -+ eps^2)/(4 beta); the Region I and Region II states both
  collapse onto the same E = 0 function (c0 + c1 x) exp(-(omega+2 beta)
  x^2 / (2 (omega-2 beta) b0^2)) while every eigenvalue goes to zero linearly
  in eps: an exceptional point of infinite order.

Distances between swept and limit functions are weighted-L2 with weight
exp(-x^2/b0^2) on |x| <= 8 b0, between unit-normalized, phase-aligned
functions, so unknown overall constants drop out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, RegionLabel, classify
from .errors import RegionError, SingularParameterError
from .eigensystems import (
    DeltaDeriv,
    GaussHermite,
    GaussMonomial,
    GaussPoly,
    PlaneWaveGauss,
    discrete_states,
    evaluate,
)
from .pairing import pair

__all__ = [
    "LimitSweepReport",
    "sweep_to_boundary_i_iii",
    "sweep_to_ep",
    "ep_spectrum_flow",
    "FlowEntry",
]


@dataclass(frozen=True)
class LimitSweepReport:
    """Distances of swept eigenfunctions to their limit, with energies."""

    parameter_values: np.ndarray
    distances: np.ndarray
    energies: np.ndarray


# ---------------------------------------------------------------------------
# weighted-L2 distance between normalized, phase-aligned functions
# ---------------------------------------------------------------------------

_QUAD_N = 400


def _weighted_grid(b0: float) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(_QUAD_N)
    x = 8.0 * b0 * nodes
    w = 8.0 * b0 * weights * np.exp(-(x / b0) ** 2)
    return x, w


def _normalized_distance(fv: np.ndarray, gv: np.ndarray, w: np.ndarray) -> float:
    nf = math.sqrt(float(np.real(np.sum(w * np.abs(fv) ** 2))))
    ng = math.sqrt(float(np.real(np.sum(w * np.abs(gv) ** 2))))
    if nf == 0.0 or ng == 0.0:
        raise ValueError("cannot normalize a vanishing function")
    overlap = complex(np.sum(w * np.conjugate(fv) * gv)) / (nf * ng)
    return math.sqrt(max(0.0, 2.0 - 2.0 * abs(overlap)))


# ---------------------------------------------------------------------------
# sweep onto the boundary omega = alpha + beta
# ---------------------------------------------------------------------------

def _boundary_sweep_function(alpha: float, beta: float, g_value: float, n: int,
                             root: str, b0: float) -> GaussHermite:
    """The swept eigenfunction at parameter G, written directly in terms of G.

    root 'plus' is the epsilon_+ branch (Gaussian exponent
    -c_tau + G (sqrt(1+q) - 1) -> -c_tau, flattening onto the monomial limit);
    'minus' is the epsilon_- branch with exponent -c_tau - G (sqrt(1+q) + 1),
    a narrowing Gaussian whose limit is distributional.  Both equal the
    dressed oscillator eigenfunction of the swept parameter point
    (cross-checked against the eigensystem constructors in the test suite).
    """
    q = 4.0 * alpha * beta / (g_value ** 2 * (alpha - beta) ** 2)
    if q < -1.0:
        raise SingularParameterError("sweep parameter leaves the real-root range")
    ct = (alpha + beta) / (alpha - beta)
    if root == "plus":
        gauss = -ct + g_value * (math.sqrt(1.0 + q) - 1.0)
    else:
        gauss = -ct - g_value * (math.sqrt(1.0 + q) + 1.0)
    norm = 2.0 ** (-n) * g_value ** (-0.5 * n) / math.sqrt(math.factorial(n))
    return GaussHermite(gauss=gauss, scale=math.sqrt(g_value), n=n, norm=norm)


def _gaussian_battery(b0: float) -> list[PlaneWaveGauss]:
    """Displaced Gaussians exp(-(x - a)^2/b0^2), a in {0, +-0.5, +-1} b0.

    exp(-(x-a)^2/b0^2) = e^{-a^2/b0^2} e^{2 a x / b0^2} e^{-x^2/b0^2}; the
    linear drift rides in an imaginary wavenumber.
    """
    battery = []
    for a in (0.0, 0.5 * b0, -0.5 * b0, 1.0 * b0, -1.0 * b0):
        battery.append(PlaneWaveGauss(
            gauss=-2.0,
            k_wave=-2j * a / b0 ** 2,
            amp_plus=math.exp(-(a / b0) ** 2),
            amp_minus=0.0,
        ))
    return battery


def _battery_direction(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ValueError("battery pairing vector vanished")
    return vec / norm


def _direction_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Phase-invariant distance between unit vectors, sqrt(2 - 2 |<u, v>|)."""
    overlap = abs(complex(np.vdot(u, v)))
    return math.sqrt(max(0.0, 2.0 - 2.0 * overlap))


def sweep_to_boundary_i_iii(alpha: float, beta: float, n: int, branch_target: str,
                            g_values, b0: float = 1.0, hbar: float = 1.0) -> LimitSweepReport:
    """Sweep eigenfunctions onto the boundary omega = alpha + beta.

    branch_target 'plus': weighted-L2 distance of the swept function to the
    monomial limit tau^-1 x^n / sqrt(n!); energies are hbar (n+1/2) G eps_+.
    branch_target 'minus': distributional convergence onto the
    delta-derivative family, measured as the euclidean distance between
    normalized battery-pairing vectors (five displaced Gaussians).
    """
    if alpha == beta:
        raise SingularParameterError("boundary sweep requires alpha != beta")
    if branch_target not in ("plus", "minus"):
        raise ValueError("branch_target must be 'plus' or 'minus'")
    g_values = np.asarray(g_values, dtype=float)
    if np.any(g_values <= 1.0):
        raise ValueError("G values must exceed 1 (epsilon(G) leaves its validity range)")
    if np.any(np.diff(g_values) <= 0.0):
        raise ValueError("G values must be increasing")

    params_boundary = ModelParams(alpha + beta, alpha, beta, b0, hbar)
    ct = (alpha + beta) / (alpha - beta)
    distances = np.zeros(len(g_values))
    energies = np.zeros(len(g_values), dtype=complex)

    if branch_target == "plus":
        x, w = _weighted_grid(b0)
        limit_fn = GaussMonomial(gauss=-ct, n=n, norm=1.0)
        limit_vals = evaluate(limit_fn, x, params_boundary)
        for i, g_val in enumerate(g_values):
            eps = (alpha + beta + math.sqrt(4.0 * alpha * beta + g_val ** 2 * (alpha - beta) ** 2)) \
                / (g_val ** 2 - 1.0)
            swept = _boundary_sweep_function(alpha, beta, g_val, n, "plus", b0)
            swept_vals = evaluate(swept, x, ModelParams(alpha + beta + eps, alpha, beta, b0, hbar))
            distances[i] = _normalized_distance(swept_vals, limit_vals, w)
            energies[i] = hbar * (n + 0.5) * g_val * eps
        return LimitSweepReport(g_values, distances, energies)

    battery = _gaussian_battery(b0)
    limit_fn = DeltaDeriv(gauss=-ct, n=n, norm=(-1.0) ** n / math.sqrt(math.factorial(n)))
    limit_vec = _battery_direction(
        np.array([pair(t, limit_fn, params_boundary) for t in battery]))
    for i, g_val in enumerate(g_values):
        eps = (alpha + beta - math.sqrt(4.0 * alpha * beta + g_val ** 2 * (alpha - beta) ** 2)) \
            / (g_val ** 2 - 1.0)
        swept = _boundary_sweep_function(alpha, beta, g_val, n, "minus", b0)
        p_eps = ModelParams(alpha + beta + eps, alpha, beta, b0, hbar)
        vec = _battery_direction(np.array([pair(t, swept, p_eps) for t in battery]))
        distances[i] = _direction_distance(vec, limit_vec)
        energies[i] = hbar * (n + 0.5) * g_val * eps
    return LimitSweepReport(g_values, distances, energies)


# ---------------------------------------------------------------------------
# sweep onto the Omega = 0 exceptional points
# ---------------------------------------------------------------------------

def _ep_limit_function(omega: float, beta: float, n: int) -> GaussPoly:
    coeffs = (1.0 + 0.0j,) if n % 2 == 0 else (0.0 + 0.0j, 1.0 + 0.0j)
    return GaussPoly(gauss=-(omega + 2.0 * beta) / (omega - 2.0 * beta), coeffs=coeffs, norm=1.0)


def _ep_swept_params(omega: float, beta: float, eps: float, side: str,
                     b0: float, hbar: float) -> ModelParams:
    if side == "I":
        alpha = (omega ** 2 - eps ** 2) / (4.0 * beta)
    else:
        alpha = (omega ** 2 + eps ** 2) / (4.0 * beta)
    return ModelParams(omega, alpha, beta, b0, hbar)


def sweep_to_ep(omega: float, beta: float, n: int, region_side: str, eps_values,
                branch: str = "+", b0: float = 1.0, hbar: float = 1.0) -> LimitSweepReport:
    """Sweep Omega^2 = +-eps^2 -> 0 at fixed (omega, beta).

    region_side 'I' approaches the boundary through the oscillator region
    (E = hbar eps (n+1/2)); side 'II' through the barrier region on the given
    branch (E = +-i hbar eps (n+1/2)).  Both converge to the same
    (even: Gaussian, odd: x Gaussian) E = 0 limit function.
    """
    if region_side not in ("I", "II"):
        raise ValueError("region_side must be 'I' or 'II'")
    if abs(omega - 2.0 * beta) <= 1e-12 * max(abs(omega), abs(beta)):
        raise SingularParameterError("EP sweep closed form is singular at omega = 2 beta")
    eps_values = np.asarray(eps_values, dtype=float)
    if np.any(eps_values <= 0.0) or np.any(np.diff(eps_values) >= 0.0):
        raise ValueError("eps values must be positive and decreasing")

    x, w = _weighted_grid(b0)
    limit_fn = _ep_limit_function(omega, beta, n)
    p_ref = ModelParams(omega, omega ** 2 / (4.0 * beta), beta, b0, hbar)
    limit_vals = evaluate(limit_fn, x, p_ref)

    expected = RegionLabel.REGION_I if region_side == "I" else RegionLabel.REGION_II
    distances = np.zeros(len(eps_values))
    energies = np.zeros(len(eps_values), dtype=complex)
    for i, eps in enumerate(eps_values):
        p = _ep_swept_params(omega, beta, eps, region_side, b0, hbar)
        label = classify(p)
        if label is not expected:
            raise RegionError(
                f"swept point at eps={eps:g} classifies as {label.pretty()}, not "
                f"Region {region_side}")
        states = discrete_states(p, n)
        if region_side == "I":
            state = next(s for s in states if s.n == n)
        else:
            state = next(s for s in states if s.n == n and s.branch == branch)
        swept_vals = evaluate(state.right_fn, x, p)
        distances[i] = _normalized_distance(swept_vals, limit_vals, w)
        energies[i] = complex(state.energy)
    return LimitSweepReport(eps_values, distances, energies)


@dataclass(frozen=True)
class FlowEntry:
    eps: float
    n: int
    energy_side1: float
    energy_side2_plus: complex
    energy_side2_minus: complex


def ep_spectrum_flow(omega: float, beta: float, n_max: int, eps_values,
                     b0: float = 1.0, hbar: float = 1.0) -> list[FlowEntry]:
    """Eigenvalue table along the coalescence sweep from both sides.

    Side I energies hbar eps (n+1/2) and side II energies +-i hbar eps (n+1/2)
    collapse to 0 simultaneously for every n: the coalescence is of infinite
    order.
    """
    if abs(omega - 2.0 * beta) <= 1e-12 * max(abs(omega), abs(beta)):
        raise SingularParameterError("EP sweep closed form is singular at omega = 2 beta")
    rows = []
    for eps in np.asarray(eps_values, dtype=float):
        p1 = _ep_swept_params(omega, beta, eps, "I", b0, hbar)
        p2 = _ep_swept_params(omega, beta, eps, "II", b0, hbar)
        s1 = {s.n: s for s in discrete_states(p1, n_max)}
        s2 = {(s.n, s.branch): s for s in discrete_states(p2, n_max)}
        for n in range(n_max + 1):
            rows.append(FlowEntry(
                eps=float(eps),
                n=n,
                energy_side1=float(np.real(s1[n].energy)),
                energy_side2_plus=complex(s2[(n, "+")].energy),
                energy_side2_minus=complex(s2[(n, "-")].energy),
            ))
    return rows
