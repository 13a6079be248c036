"""Metric-weighted observables and time evolution.

In the real-spectrum regions the ladder matrix elements of X, P, X^2, P^2
between dressed states carry the Gaussian-width scaling (b0/sigma resp.
hbar sigma/b0 per ladder step); the sigma = 1 case reproduces the textbook
oscillator constants.  Expectation values evolve by the bi-orthogonal double
sum with phases exp(i (E_m - E_n) t / hbar).

In the barrier regions wave functions split into decaying ('+' branch) and
growing ('-' branch) resonant sectors evolving with rates |Omega| (n + 1/2);
evolve_sector applies exp(i E t / hbar) per mode, which makes the
plus-branch modes decay.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import ModelParams, RegionLabel, classify, derive
from .errors import RegionError
from .eigensystems import (
    GaussPoly,
    GeneralizedFunction,
    discrete_states,
    evaluate,
)
from .pairing import gram

__all__ = [
    "ObservableKind",
    "StateVector",
    "make_state",
    "matrix_element",
    "apply_observable",
    "evolve_expectation",
    "metric_norm",
    "evolve_sector",
]


class ObservableKind(Enum):
    X = "X"
    P = "P"
    X2 = "X2"
    P2 = "P2"


@dataclass(frozen=True)
class StateVector:
    """Finite superposition over the discrete right-state basis."""

    region: RegionLabel
    coeffs: tuple
    normalized: bool


def _require_real_spectrum(params: ModelParams) -> RegionLabel:
    label = classify(params)
    if label not in (RegionLabel.REGION_I, RegionLabel.REGION_III):
        raise RegionError(f"observable algebra requires Region I or III, got {label.pretty()}")
    return label


def make_state(params: ModelParams, coeffs) -> StateVector:
    """Normalize coefficients to unit metric norm <I|I>_U = 1."""
    label = _require_real_spectrum(params)
    c = np.asarray(coeffs, dtype=complex)
    g = gram(params, len(c) - 1, which="metric").matrix
    norm_sq = np.real(np.conjugate(c) @ g @ c)
    if norm_sq <= 0:
        raise ValueError("state has non-positive metric norm")
    return StateVector(label, tuple(c / math.sqrt(norm_sq)), True)


def matrix_element(kind: ObservableKind, m: int, n: int, params: ModelParams) -> complex:
    """<phi~_m | U O | phi~_n> by the ladder closed forms (Regions I and III).

    X couples |m-n| = 1, P likewise with an i hbar weight; X^2 and P^2 couple
    |m-n| in {0, 2}.  Validated against the sandwich quadrature oracle in the
    test suite.
    """
    _require_real_spectrum(params)
    if m < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    d = derive(params)
    sigma, b0, hbar = d.sigma, params.b0, params.hbar
    x_unit = b0 / (sigma * math.sqrt(2.0))
    p_unit = hbar * sigma / (math.sqrt(2.0) * b0)
    if kind is ObservableKind.X:
        if m == n + 1:
            return x_unit * math.sqrt(n + 1.0)
        if m == n - 1:
            return x_unit * math.sqrt(n)
        return 0.0 + 0.0j
    if kind is ObservableKind.P:
        if m == n + 1:
            return 1j * p_unit * math.sqrt(n + 1.0)
        if m == n - 1:
            return -1j * p_unit * math.sqrt(n)
        return 0.0 + 0.0j
    if kind is ObservableKind.X2:
        unit = (b0 / sigma) ** 2 / 2.0
        if m == n + 2:
            return unit * math.sqrt((n + 1.0) * (n + 2.0))
        if m == n:
            return unit * (2.0 * n + 1.0)
        if m == n - 2:
            return unit * math.sqrt(n * (n - 1.0))
        return 0.0 + 0.0j
    if kind is ObservableKind.P2:
        unit = -(hbar * sigma / b0) ** 2 / 2.0
        if m == n + 2:
            return unit * math.sqrt((n + 1.0) * (n + 2.0))
        if m == n:
            return -unit * (2.0 * n + 1.0)
        if m == n - 2:
            return unit * math.sqrt(n * (n - 1.0))
        return 0.0 + 0.0j
    raise TypeError(f"unknown observable {kind!r}")


def apply_observable(params: ModelParams, f: GeneralizedFunction,
                     kind: ObservableKind) -> GaussPoly:
    """O f as a closed form, for the sandwich quadrature oracle.

    X multiplies by x; P = p + i hbar c x / b0^2 acts by exact differentiation
    of the Gaussian x polynomial form.  The result stays in the same Gaussian
    class with a new polynomial part.
    """
    from .eigensystems import polynomial_pieces

    pieces = polynomial_pieces(f, params)
    if len(pieces) != 1 or pieces[0][1] != 0:
        raise TypeError("observable application needs a single Gaussian piece without drift")
    a, _, coeffs = pieces[0]
    gauss = complex(f.gauss)
    d = derive(params)
    hbar, b0 = params.hbar, params.b0

    def op_once(c: np.ndarray, which: ObservableKind) -> np.ndarray:
        if which is ObservableKind.X:
            return np.concatenate([[0.0 + 0.0j], c])
        # P c = -i hbar c' + i hbar (c_upsilon - gauss) x c / b0^2
        deriv = c[1:] * np.arange(1, len(c)) if len(c) > 1 else np.zeros(0, dtype=complex)
        out = np.zeros(len(c) + 1, dtype=complex)
        out[: len(deriv)] += -1j * hbar * deriv
        out[1:] += 1j * hbar * (d.upsilon_coeff - gauss) / b0 ** 2 * c
        return out

    if kind is ObservableKind.X:
        out = op_once(coeffs, ObservableKind.X)
    elif kind is ObservableKind.P:
        out = op_once(coeffs, ObservableKind.P)
    elif kind is ObservableKind.X2:
        out = op_once(op_once(coeffs, ObservableKind.X), ObservableKind.X)
    elif kind is ObservableKind.P2:
        out = op_once(op_once(coeffs, ObservableKind.P), ObservableKind.P)
    else:
        raise TypeError(f"unknown observable {kind!r}")
    return GaussPoly(gauss=gauss, coeffs=tuple(out), norm=1.0)


def _energies(params: ModelParams, count: int) -> np.ndarray:
    states = discrete_states(params, count - 1)
    return np.array([s.energy for s in states], dtype=complex)


def evolve_expectation(state: StateVector, kind: ObservableKind, params: ModelParams,
                       t: float) -> complex:
    """<I(t) | O |I(t)>_U = sum c_n conj(c_m) e^{i (E_m - E_n) t/hbar} O_mn."""
    _require_real_spectrum(params)
    c = np.asarray(state.coeffs, dtype=complex)
    n_states = len(c)
    energies = _energies(params, n_states).real
    amp = c * np.exp(-1j * energies * t / params.hbar)   # coefficients at time t
    mat = np.array([[matrix_element(kind, m, n, params) for n in range(n_states)]
                    for m in range(n_states)])
    # conj(amp_m) amp_n carries the printed e^{i(E_m - E_n) t/hbar} phases
    return complex(np.conjugate(amp) @ mat @ amp)


def metric_norm(state: StateVector, params: ModelParams, t: float = 0.0) -> float:
    """<I(t) | I(t)>_U through the metric gram (conserved for real spectra)."""
    _require_real_spectrum(params)
    c = np.asarray(state.coeffs, dtype=complex)
    energies = _energies(params, len(c)).real
    ct = c * np.exp(-1j * energies * t / params.hbar)
    g = gram(params, len(c) - 1, which="metric").matrix
    return float(np.real(np.conjugate(ct) @ g @ ct))


def evolve_sector(params: ModelParams, minus_coeffs, plus_coeffs, t: float,
                  grid) -> np.ndarray:
    """Resonant-sector evolution in the barrier regions.

    xi(x, t) = sum_n e^{+|Omega|(n+1/2) t} c_n^- phi~_n^-(x)
             + sum_n e^{-|Omega|(n+1/2) t} c_n^+ phi~_n^+(x)

    (each mode carries exp(i E_n t / hbar), so in Region IV the roles swap
    with the relabeled energies).  Raises OverflowError when a growth factor
    leaves the representable range, reporting its log-magnitude.
    """
    label = classify(params)
    if label not in (RegionLabel.REGION_II, RegionLabel.REGION_IV):
        raise RegionError(f"sector evolution requires Region II or IV, got {label.pretty()}")
    cm = np.asarray(minus_coeffs, dtype=complex)
    cp = np.asarray(plus_coeffs, dtype=complex)
    n_max = max(len(cm), len(cp)) - 1
    if n_max < 0:
        raise ValueError("at least one coefficient is required")
    states = discrete_states(params, n_max)
    by_key = {(s.n, s.branch): s for s in states}
    grid = np.asarray(grid, dtype=float)
    out = np.zeros(len(grid), dtype=complex)
    for coeffs, branch in ((cm, "-"), (cp, "+")):
        for n, c in enumerate(coeffs):
            if c == 0:
                continue
            s = by_key[(n, branch)]
            log_factor = 1j * complex(s.energy) * t / params.hbar
            if log_factor.real > 700.0:
                raise OverflowError(
                    f"sector growth factor overflows: log magnitude {log_factor.real:.1f} "
                    f"for mode n={n} branch {branch}")
            out += c * cmath.exp(log_factor) * evaluate(s.right_fn, grid, params)
    return out
