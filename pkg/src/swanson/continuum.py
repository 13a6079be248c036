"""Continuous spectrum of the parabolic-barrier regions (II and IV).

The scattering-type states are Weber-function closed forms

    phi_(+-)^E(x) = C Gamma(nu+1) D_{-nu-1}(-+ sqrt(2) e^{-i pi/4} sigma x / b0),

with nu = -i E/(hbar |Omega|) - 1/2 in Region II (E -> -E in Region IV, which
mirrors the whole construction).  The rotation branch is fixed so that the
stripped states satisfy the oscillator equation h^x phi = E phi with the
printed order/prefactor pair Gamma(nu+1) D_{-nu-1}; the gamma prefactor then
has its poles at the resonant (decaying) discrete energies, where the Weber
function collapses onto the matching discrete family.

The continuum is delta-normalized, never pointwise-normalized: the
calibration constant is frozen from the tail asymptotics of the pairing
density at E = 0 and verified numerically by the windowed probe below.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, RegionLabel, classify, derive
from .errors import NonConvergentError, RegionError
from .eigensystems import (
    CylinderState,
    GaussHermite,
    GeneralizedFunction,
    conjugate_function,
    evaluate,
)
from .pairing import pair
from .specfun import SQRT_PI, log_gamma, parabolic_cylinder_d

__all__ = [
    "PoleScanReport",
    "continuum_state",
    "continuum_norm_constant",
    "pole_scan",
    "resonant_expansion",
    "delta_normalization_probe",
    "stripped_discrete_function",
]

ROT = cmath.exp(-1j * math.pi / 4.0)          # argument rotation of the Weber states
DELTA_DENSITY_AT_ZERO = 2.0 * math.sqrt(2.0) * math.pi ** 2
# reduced delta-normalization density n(eps) = pi |Gamma(1/2 - i eps)|^2 *
# [e^{pi eps/2} + e^{-3 pi eps/2}] / sqrt(2) + sqrt(2) pi^2 e^{-pi eps/2};
# at eps = 0 it equals 2 sqrt(2) pi^2, the frozen calibration value.


def _require_barrier(params: ModelParams) -> RegionLabel:
    label = classify(params)
    if label not in (RegionLabel.REGION_II, RegionLabel.REGION_IV):
        raise RegionError(f"continuum states require Region II or IV, got {label.pretty()}")
    return label


def _reduced_energy(params: ModelParams, energy: float, label: RegionLabel) -> float:
    d = derive(params)
    eps = energy / (params.hbar * abs(d.omega_cap))
    return eps if label is RegionLabel.REGION_II else -eps


def continuum_norm_constant(params: ModelParams) -> float:
    """Calibration constant C making <psi_bar^E | phi_tilde^E'> = delta(E - E')."""
    label = _require_barrier(params)
    d = derive(params)
    return math.sqrt(d.sigma / (params.b0 * params.hbar * abs(d.omega_cap) * DELTA_DENSITY_AT_ZERO))


def continuum_state(params: ModelParams, energy: float, side: str = "+",
                    kind: str = "phi") -> CylinderState:
    """Generalized continuum eigenfunction at real energy E.

    kind selects the family: 'phi' (stripped), 'eta' (its complex conjugate,
    the anti-resonant family), 'phi_tilde' (Upsilon^-1-dressed right state of
    H^x), or 'psi_bar' (Upsilon-dressed dual whose pairing against phi_tilde
    is delta-normalized).
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    label = _require_barrier(params)
    d = derive(params)
    eps = _reduced_energy(params, energy, label)
    nu = -1j * eps - 0.5
    arg_scale = math.sqrt(2.0) * ROT * d.sigma / params.b0
    norm = continuum_norm_constant(params)
    base = CylinderState(gauss=0.0 + 0.0j, nu=nu, arg_scale=arg_scale, side=side,
                         conjugated=False, norm=norm)
    if kind == "phi":
        return base
    if kind == "eta":
        return conjugate_function(base)
    if kind == "phi_tilde":
        return CylinderState(gauss=complex(d.upsilon_coeff), nu=nu, arg_scale=arg_scale,
                             side=side, conjugated=False, norm=norm)
    if kind == "psi_bar":
        return CylinderState(gauss=complex(-d.upsilon_coeff), nu=nu, arg_scale=arg_scale,
                             side=side, conjugated=False, norm=norm)
    raise ValueError("kind must be one of 'phi', 'eta', 'phi_tilde', 'psi_bar'")


# ---------------------------------------------------------------------------
# Gamma-pole (resonance) scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleScanReport:
    """|Gamma(nu+1)| magnitude along the resonant half-line.

    energies_imag holds |Im E|/(hbar |Omega|) samples (the scan runs along
    E = -i y hbar |Omega| in Region II and its mirror +i y in Region IV);
    log_gamma_magnitude is log10 |Gamma(nu+1)| there; detected_poles are the
    local-maximum positions, which sit at y = n + 1/2.
    """

    energies_imag: np.ndarray
    log_gamma_magnitude: np.ndarray
    detected_poles: np.ndarray


def pole_scan(params: ModelParams, n_scan: int, samples_per_unit: int = 200) -> PoleScanReport:
    """Scan the gamma-prefactor magnitude over |Im E|/(hbar |Omega|) in (0, n_scan+1]."""
    _require_barrier(params)
    if n_scan < 0 or samples_per_unit < 2:
        raise ValueError("need n_scan >= 0 and samples_per_unit >= 2")
    count = samples_per_unit * (n_scan + 1)
    # staggered grid avoids landing exactly on the poles at y = n + 1/2
    y = (np.arange(count) + 0.5) / samples_per_unit
    # on the resonant half-line nu + 1 = 1/2 - y regardless of region
    logmag = np.array([log_gamma(0.5 - yy).real for yy in y]) / math.log(10.0)
    interior = (logmag[1:-1] > logmag[:-2]) & (logmag[1:-1] > logmag[2:])
    return PoleScanReport(energies_imag=y, log_gamma_magnitude=logmag,
                          detected_poles=y[1:-1][interior])


# ---------------------------------------------------------------------------
# Resonant (Gamow-type) expansions
# ---------------------------------------------------------------------------

def stripped_discrete_function(params: ModelParams, n: int, branch: str) -> GaussHermite:
    """The similarity-stripped discrete state phi_n^(+-) of the barrier regions."""
    _require_barrier(params)
    d = derive(params)
    sigma, b0 = d.sigma, params.b0
    base = math.sqrt(sigma / (b0 * SQRT_PI * 2.0 ** n * math.factorial(n)))
    root_i = cmath.exp(1j * math.pi / 4.0)
    norm_plus = cmath.sqrt(root_i) * base
    if branch == "+":
        return GaussHermite(gauss=-1j * sigma ** 2, scale=root_i * sigma, n=n, norm=norm_plus)
    if branch == "-":
        return GaussHermite(gauss=1j * sigma ** 2, scale=root_i.conjugate() * sigma, n=n,
                            norm=norm_plus.conjugate())
    raise ValueError("branch must be '+' or '-'")


def _as_combination(target) -> list[tuple[complex, GeneralizedFunction]]:
    if isinstance(target, (list, tuple)):
        return [(complex(c), f) for c, f in target]
    return [(1.0 + 0.0j, target)]


def resonant_expansion(params: ModelParams, target, n_max: int, sector: str = "minus",
                       grid=None) -> tuple[np.ndarray, float]:
    """Expand a barrier-sector function over the resonant discrete family.

    sector 'minus' expands over phi_n^- with coefficients <phi_n^+ | target>
    (rotated-contour pairings against the opposite branch); 'plus' is the
    mirror.  target is a stripped GeneralizedFunction or a list of
    (coefficient, function) pairs.  Returns (coefficients, sup-norm residual
    of the truncated reconstruction on the grid).  Targets outside the
    sector's decay class make the coefficient integrals divergent, which
    raises NonConvergentError.
    """
    _require_barrier(params)
    if sector not in ("minus", "plus"):
        raise ValueError("sector must be 'minus' or 'plus'")
    pieces = _as_combination(target)
    basis_branch = "-" if sector == "minus" else "+"
    dual_branch = "+" if sector == "minus" else "-"
    if grid is None:
        grid = np.linspace(-6.0 * params.b0, 6.0 * params.b0, 201)
    grid = np.asarray(grid, dtype=float)

    coeffs = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        dual = stripped_discrete_function(params, n, dual_branch)
        try:
            coeffs[n] = sum(c * pair(dual, f, params) for c, f in pieces)
        except NonConvergentError as exc:
            raise NonConvergentError(
                f"sector mismatch: coefficient <phi_{n}^{dual_branch}|target> diverges "
                f"({exc})") from exc

    target_vals = np.zeros_like(grid, dtype=complex)
    for c, f in pieces:
        target_vals += c * evaluate(f, grid, params)
    recon = np.zeros_like(grid, dtype=complex)
    for n in range(n_max + 1):
        recon += coeffs[n] * evaluate(stripped_discrete_function(params, n, basis_branch),
                                      grid, params)
    sup_error = float(np.max(np.abs(recon - target_vals)))
    return coeffs, sup_error


# ---------------------------------------------------------------------------
# Windowed delta-normalization probe
# ---------------------------------------------------------------------------

def _weber_reduced(eps: float, u: np.ndarray) -> np.ndarray:
    """Gamma(nu+1) D_{-nu-1}(-sqrt(2) e^{-i pi/4} u), the side-+ family in
    reduced coordinates u = sigma x / b0."""
    nu = -1j * eps - 0.5
    pref = cmath.exp(log_gamma(nu + 1.0))
    return pref * parabolic_cylinder_d(-nu - 1.0, -math.sqrt(2.0) * ROT * u)


def _tail_coefficient_data(eps_p: float, eps0: float):
    """Asymptotic tail data of conj(f_eps_p) f_eps0.

    Each tail piece behaves like C * u^(-1 + s i Delta) * (1 + g / u^2) for
    u -> +infinity (after folding the left tail onto positive u); returns a
    list of (C, s, g) with Delta = eps_p - eps0.
    """
    delta = eps_p - eps0
    mu_p_bar = -1j * eps_p - 0.5          # conj of the order i eps' - 1/2
    mu0 = 1j * eps0 - 0.5
    gbar = cmath.exp(log_gamma(0.5 + 1j * eps_p))   # conj Gamma(nu'+1), real energies
    g0 = cmath.exp(log_gamma(0.5 - 1j * eps0))
    two_minus = 2.0 ** (0.5 * (-1.0 - 1j * delta))
    two_plus = 2.0 ** (0.5 * (-1.0 + 1j * delta))
    quarter = math.pi * (eps_p + eps0) / 4.0

    c_left = gbar * g0 * math.exp(quarter) * two_minus
    c_r1 = gbar * g0 * math.exp(-3.0 * quarter) * two_minus
    c_r2 = 2.0 * math.pi * math.exp(-quarter) * two_plus
    g_osc = 0.25j * (mu_p_bar * (mu_p_bar - 1.0) - mu0 * (mu0 - 1.0))
    g_r2 = 0.25j * ((mu0 + 1.0) * (mu0 + 2.0) - (mu_p_bar + 1.0) * (mu_p_bar + 2.0))
    return [(c_left, -1.0, g_osc), (c_r1, -1.0, g_osc), (c_r2, +1.0, g_r2)]


def _delta_density(eps: float) -> float:
    total = sum(c.real for c, _, _ in _tail_coefficient_data(eps, eps))
    return math.pi * total


def delta_normalization_probe(params: ModelParams, e0: float, width: float,
                              center: float | None = None, box: float = 10.0,
                              n_energy: int = 48, n_inner: int = 1400,
                              check_box: bool = False) -> complex:
    """Windowed test of the continuum delta-normalization.

    Smears the dual pairings <psi_bar^{E'} | phi_tilde^{E0}> against a
    peak-normalized Gaussian bump of width `width` centered at `center`
    (default E0).  With the calibrated normalization the value tends to
    bump(E0 - center): 1 when centered on the reference energy, 0 when
    centered off its support, with deviations shrinking as the window
    narrows.

    The x-integral is split at |u| = box (reduced units): the interior by
    quadrature, the oscillatory tails by their closed-form Mellin kernels
    (principal value plus delta part), which is exact in the smeared limit.
    check_box=True re-runs with a larger interior box and raises
    NonConvergentError if the two disagree by more than 2e-2.
    """
    label = _require_barrier(params)
    d = derive(params)
    scale = params.hbar * abs(d.omega_cap)
    eps0 = _reduced_energy(params, e0, label)
    w = width / scale
    if w <= 0:
        raise ValueError("width must be positive")
    cen = eps0 if center is None else _reduced_energy(params, center, label)

    if check_box:
        a = delta_normalization_probe(params, e0, width, center, box, n_energy, n_inner)
        b = delta_normalization_probe(params, e0, width, center, 1.5 * box, n_energy,
                                      int(1.5 * n_inner))
        if abs(a - b) > 2e-2:
            raise NonConvergentError(
                f"truncation box too small: probe values {a:.4f} vs {b:.4f} at boxes "
                f"{box} and {1.5 * box}")
        return b

    # energy window nodes (Gauss-Legendre over +-6 bump widths)
    lo, hi = cen - 6.0 * w, cen + 6.0 * w
    en_nodes, en_weights = np.polynomial.legendre.leggauss(n_energy)
    eps_p = 0.5 * (hi - lo) * en_nodes + 0.5 * (hi + lo)
    ew = 0.5 * (hi - lo) * en_weights
    bump = np.exp(-((eps_p - cen) / w) ** 2 / 2.0)

    # interior x-quadrature
    u_nodes, u_weights = np.polynomial.legendre.leggauss(n_inner)
    u = box * u_nodes
    uw = box * u_weights
    f0 = _weber_reduced(eps0, u)

    inside = lo < eps0 < hi
    regular = np.zeros(len(eps_p), dtype=complex)   # smooth part of P(eps')
    value = 0.0 + 0.0j

    # delta part: integral bump * C_p(eps') * pi * delta(eps' - eps0)
    if inside or abs(eps0 - cen) <= 6.0 * w:
        value += math.pi * sum(c.real + 0j for c, _, _ in _tail_coefficient_data(eps0, eps0)) \
            * math.exp(-((eps0 - cen) / w) ** 2 / 2.0)

    # assemble smooth parts per energy node
    pieces0 = _tail_coefficient_data(eps0, eps0)
    pv_terms = [np.zeros(len(eps_p), dtype=complex) for _ in pieces0]
    for j, ep in enumerate(eps_p):
        fp = _weber_reduced(ep, u)
        inner = np.sum(uw * np.conjugate(fp) * f0)
        tails = _tail_coefficient_data(ep, eps0)
        corr = sum(c * g * box ** (-2.0 + s * 1j * (ep - eps0)) / (2.0 - s * 1j * (ep - eps0))
                   for c, s, g in tails)
        regular[j] = inner + corr
        for k, (c, s, _) in enumerate(tails):
            pv_terms[k][j] = c * box ** (s * 1j * (ep - eps0)) * 1j / s

    value += np.sum(ew * bump * regular)

    # principal-value kernels: integral bump * F_k(eps') / (eps' - eps0)
    delta_arr = eps_p - eps0
    for k, (c0k, s, _) in enumerate(pieces0):
        f_vals = bump * pv_terms[k]
        if inside:
            f_at = math.exp(-((eps0 - cen) / w) ** 2 / 2.0) * (c0k * 1j / s)
            value += np.sum(ew * (f_vals - f_at) / delta_arr)
            value += f_at * math.log((hi - eps0) / (eps0 - lo))
        else:
            value += np.sum(ew * f_vals / delta_arr)

    return complex(value / DELTA_DENSITY_AT_ZERO)
