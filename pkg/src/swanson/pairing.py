"""Bilinear pairings <left | right> = integral conj(left) * right dx.

Three integration strategies realize the formal integrals:

* DirectGaussHermite: the combined Gaussian exponent already decays on the
  real line; Gauss-Hermite nodes are scaled to it.
* RotatedContour: purely oscillatory (or oscillation-dominated) combined
  Gaussians are rotated x -> e^{i theta} y onto a decaying direction.  The
  integrands are entire and Gaussian-bounded in the swept wedge whenever
  Re(combined exponent) <= 0, which the auto-selector requires, so the
  rotation is exact; theta = -+ pi/4 for the Region II/IV products.
* DistributionalExact: delta-derivative functionals against smooth closed
  forms, evaluated as exact Taylor derivatives at the origin with the
  Gaussian prefactors combined analytically (never sampled).

The exponent bookkeeping is symbolic throughout: Gaussian coefficients add,
they are never multiplied pointwise, so growing similarity factors cancel
before any number is evaluated.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, RegionLabel, classify, derive
from .errors import NonConvergentError, RegionError
from .eigensystems import (
    CylinderState,
    DeltaDeriv,
    GaussHermite,
    GaussMonomial,
    GaussPoly,
    GeneralizedFunction,
    PlaneWaveGauss,
    conjugate_function,
    discrete_states,
    evaluate,
    taylor_coefficients,
)
from .specfun import gauss_hermite, hermite

__all__ = [
    "DirectGaussHermite",
    "RotatedContour",
    "DistributionalExact",
    "GramReport",
    "pair",
    "metric_pair",
    "gram",
    "reconstruct",
]


@dataclass(frozen=True)
class DirectGaussHermite:
    order: int


@dataclass(frozen=True)
class RotatedContour:
    theta: float
    order: int

    def __post_init__(self):
        if not -math.pi / 2 < self.theta < math.pi / 2:
            raise ValueError("rotation angle must lie in (-pi/2, pi/2)")


@dataclass(frozen=True)
class DistributionalExact:
    pass


PairingStrategy = DirectGaussHermite | RotatedContour | DistributionalExact


def _poly_degree(f: GeneralizedFunction) -> int:
    if isinstance(f, GaussHermite):
        return f.n
    if isinstance(f, GaussMonomial):
        return f.n
    if isinstance(f, GaussPoly):
        return len(f.coeffs) - 1
    return 0


def _default_order(left: GeneralizedFunction, right: GeneralizedFunction) -> int:
    return 4 * max(_poly_degree(left), _poly_degree(right)) + 40


def _rest(f: GeneralizedFunction, x: np.ndarray, params: ModelParams) -> np.ndarray:
    """f(x) with its Gaussian factor exp(gauss x^2/(2 b0^2)) stripped."""
    b0 = params.b0
    if isinstance(f, GaussHermite):
        return f.norm * hermite(f.n, f.scale * x / b0)
    if isinstance(f, GaussMonomial):
        return f.norm * x ** f.n
    if isinstance(f, GaussPoly):
        out = np.zeros_like(x)
        for k in range(len(f.coeffs) - 1, -1, -1):
            out = out * x + f.coeffs[k]
        return f.norm * out
    if isinstance(f, PlaneWaveGauss):
        return f.amp_plus * np.exp(1j * f.k_wave * x) + f.amp_minus * np.exp(-1j * f.k_wave * x)
    raise NonConvergentError(
        f"{type(f).__name__} is not admissible in a numeric pairing; continuum states "
        "are paired weakly through the continuum module")


def _combined_gauss(left_conj: GeneralizedFunction, right: GeneralizedFunction,
                    params: ModelParams) -> complex:
    """Coefficient A of x^2 in the combined exponent (symbolic sum)."""
    return (complex(left_conj.gauss) + complex(right.gauss)) / (2.0 * params.b0 ** 2)


def _auto_strategy(a_tot: complex, order: int) -> PairingStrategy:
    mag = abs(a_tot)
    if mag == 0.0:
        raise NonConvergentError("combined Gaussian exponent vanishes; integrand has no decay")
    re, im = a_tot.real, a_tot.imag
    if re > 1e-13 * mag:
        raise NonConvergentError("combined Gaussian exponent grows; no admissible contour")
    if re < 0.0 and abs(im) <= 0.5 * (-re):
        return DirectGaussHermite(order)
    angle = math.atan2(im, re)
    target = math.pi if angle >= 0.0 else -math.pi
    return RotatedContour(0.5 * (target - angle), order)


def _quadrature_value(left_conj: GeneralizedFunction, right: GeneralizedFunction,
                      params: ModelParams, theta: float, order: int) -> complex:
    a_tot = _combined_gauss(left_conj, right, params)
    a_rot = a_tot * np.exp(2j * theta)
    if a_rot.real >= 0.0:
        raise NonConvergentError("rotated exponent does not decay; contour inadmissible")
    s = math.sqrt(-a_rot.real)
    rule = gauss_hermite(order)
    t = rule.nodes
    x = np.exp(1j * theta) * t / s
    # residual oscillation left after absorbing exp(-t^2): exp(i t^2 Im(a_rot)/s^2)
    residual = np.exp(t * t * (1.0 + a_rot / (s * s)))
    vals = _rest(left_conj, x, params) * _rest(right, x, params) * residual
    return complex(np.exp(1j * theta) / s * np.sum(rule.weights * vals))


def _distributional_value(left_conj: GeneralizedFunction, right: GeneralizedFunction,
                          params: ModelParams) -> complex:
    if isinstance(left_conj, DeltaDeriv) and isinstance(right, DeltaDeriv):
        raise NonConvergentError("pairing of two delta-derivative functionals is undefined")
    if isinstance(left_conj, DeltaDeriv):
        delta, smooth = left_conj, right
    else:
        delta, smooth = right, left_conj
    # fold the delta's Gaussian prefactor into the smooth side symbolically
    shifted = dataclasses.replace(smooth, gauss=complex(smooth.gauss) + complex(delta.gauss))
    m = delta.n
    coeff = taylor_coefficients(shifted, params, m)[m]
    return complex(delta.norm) * (-1.0) ** m * math.factorial(m) * coeff


def pair(left: GeneralizedFunction, right: GeneralizedFunction, params: ModelParams,
         strategy: PairingStrategy | None = None) -> complex:
    """<left | right> = integral conj(left(x)) right(x) dx.

    With strategy None an admissible strategy is selected from the combined
    Gaussian exponent; NonConvergentError is raised when none exists.
    """
    if isinstance(left, CylinderState) or isinstance(right, CylinderState):
        raise NonConvergentError(
            "continuum states are delta-normalized distributions; use "
            "continuum.delta_normalization_probe for their pairings")
    left_conj = conjugate_function(left)
    if isinstance(strategy, DistributionalExact) or (
            strategy is None and (isinstance(left, DeltaDeriv) or isinstance(right, DeltaDeriv))):
        return _distributional_value(left_conj, right, params)
    if isinstance(left, DeltaDeriv) or isinstance(right, DeltaDeriv):
        raise NonConvergentError("delta-derivative pairings require the DistributionalExact strategy")

    if strategy is None:
        strategy = _auto_strategy(_combined_gauss(left_conj, right, params),
                                  _default_order(left, right))
    if isinstance(strategy, DirectGaussHermite):
        a_tot = _combined_gauss(left_conj, right, params)
        if a_tot.real >= 0.0:
            raise NonConvergentError("combined Gaussian exponent does not decay on the real line")
        return _quadrature_value(left_conj, right, params, 0.0, strategy.order)
    if isinstance(strategy, RotatedContour):
        return _quadrature_value(left_conj, right, params, strategy.theta, strategy.order)
    raise TypeError(f"unknown strategy {strategy!r}")


def pair_with_callable(left: GeneralizedFunction, target, params: ModelParams,
                       order: int = 200) -> complex:
    """<left | target> for a plain callable target with Gaussian decay.

    Nodes are scaled to the decay of conj(left) alone; the target must decay
    at least as fast as the basis for the quadrature to converge.
    """
    left_conj = conjugate_function(left)
    a_l = complex(left_conj.gauss) / (2.0 * params.b0 ** 2)
    if a_l.real >= 0.0:
        raise NonConvergentError("dual function does not decay; pairing undefined")
    s = math.sqrt(-a_l.real)
    rule = gauss_hermite(order)
    x = rule.nodes / s
    residual = np.exp(rule.nodes ** 2 * (1.0 + a_l / (s * s)))
    vals = _rest(left_conj, x.astype(complex), params) * np.asarray(target(x), dtype=complex) * residual
    return complex(np.sum(rule.weights * vals) / s)


def metric_pair(a: GeneralizedFunction, b: GeneralizedFunction, params: ModelParams,
                strategy: PairingStrategy | None = None) -> complex:
    """<a | b>_U with U = Upsilon^2, applied by exponent arithmetic.

    For dressed right-states this reduces to the bilinear pairing of the
    corresponding left partner with b; at alpha = beta it is the ordinary
    inner product.
    """
    d = derive(params)
    if d.upsilon_coeff is None:
        raise RegionError("metric undefined on the boundary omega = alpha + beta")
    dressed = dataclasses.replace(a, gauss=complex(a.gauss) - 2.0 * d.upsilon_coeff)
    return pair(dressed, b, params, strategy)


@dataclass(frozen=True)
class GramReport:
    """Pairing matrix against the bi-orthogonality target (identity blocks).

    For branched regions the matrix stacks one (n_max+1)-square block per
    branch; max_offdiag and max_diag_err are sup-norm deviations from the
    identity across all blocks.
    """

    n_max: int
    which: str
    matrix: np.ndarray
    max_offdiag: float
    max_diag_err: float


def _block_deviations(block: np.ndarray) -> tuple[float, float]:
    eye = np.eye(block.shape[0])
    off = float(np.max(np.abs(block - np.diag(np.diag(block)))))
    diag = float(np.max(np.abs(np.diag(block) - np.diag(eye))))
    return off, diag


def gram(params: ModelParams, n_max: int, which: str = "right-left") -> GramReport:
    """Gram matrix of the discrete states.

    which = 'right-left' pairs each left partner against every right state
    (the bi-orthogonality contract); 'metric' pairs right states under the
    metric inner product (Regions I/III only, where U is positive).
    """
    states = discrete_states(params, n_max)
    label = classify(params)
    if which == "metric":
        if label not in (RegionLabel.REGION_I, RegionLabel.REGION_III):
            raise RegionError("metric gram requires Region I or III")
        rights = [s.right_fn for s in states]
        block = np.array([[metric_pair(rm, rn, params) for rn in rights] for rm in rights])
        off, diag = _block_deviations(block)
        return GramReport(n_max, which, block, off, diag)
    if which != "right-left":
        raise ValueError("which must be 'right-left' or 'metric'")

    branches = sorted({s.branch for s in states}, key=lambda b: (b is None, b))
    blocks = []
    max_off = 0.0
    max_diag = 0.0
    for br in branches:
        sub = sorted((s for s in states if s.branch == br), key=lambda s: s.n)
        block = np.array([[pair(sm.left_fn, sn.right_fn, params) for sn in sub] for sm in sub])
        off, diag = _block_deviations(block)
        max_off = max(max_off, off)
        max_diag = max(max_diag, diag)
        blocks.append(block)
    return GramReport(n_max, which, np.vstack(blocks), max_off, max_diag)


def reconstruct(params: ModelParams, target, n_max: int,
                grid=None, order: int | None = None) -> tuple[np.ndarray, float]:
    """Expand a decaying target over the Region I/III right-state basis.

    target is a GeneralizedFunction or a callable of x.  Coefficients are
    c_n = <left_n | target>; returns (coefficients, sup-norm deviation of the
    truncated reconstruction from the target on the grid).
    """
    label = classify(params)
    if label not in (RegionLabel.REGION_I, RegionLabel.REGION_III):
        raise RegionError("reconstruction over the discrete basis requires Region I or III")
    states = discrete_states(params, n_max)
    if order is None:
        order = max(4 * n_max + 40, 160)
    if grid is None:
        grid = np.linspace(-5.0 * params.b0, 5.0 * params.b0, 201)
    grid = np.asarray(grid, dtype=float)

    if callable(target):
        coeffs = np.array([pair_with_callable(s.left_fn, target, params, order) for s in states])
        target_vals = np.asarray(target(grid), dtype=complex)
    else:
        coeffs = np.array([pair(s.left_fn, target, params, DirectGaussHermite(order))
                           for s in states])
        target_vals = evaluate(target, grid, params)

    recon = np.zeros_like(grid, dtype=complex)
    for c, s in zip(coeffs, states):
        recon += c * evaluate(s.right_fn, grid, params)
    sup_error = float(np.max(np.abs(recon - target_vals)))
    return coeffs, sup_error
