"""Model parameters, derived scalar quantities, and parameter-space classification.

The Hamiltonian is the quadratic non-Hermitian oscillator

    H = hbar*omega (a^dag a + 1/2) + hbar*alpha a^2 + hbar*beta a^dag^2,

written in position space with characteristic length b0.  Everything downstream
is controlled by the sign of the effective mass m = hbar/((omega-alpha-beta) b0^2)
and of the squared frequency Omega^2 = omega^2 - 4 alpha beta, which split the
(alpha/omega, beta/omega) plane into four regions plus boundary strata.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

DEFAULT_TOL = 1e-12


class RegionLabel(Enum):
    REGION_I = "I"
    REGION_II = "II"
    REGION_III = "III"
    REGION_IV = "IV"
    BOUNDARY_I_II = "I-II"
    BOUNDARY_III_IV = "III-IV"
    BOUNDARY_I_III = "I-III"
    CORNER_DEGENERATE = "corner"

    def pretty(self) -> str:
        if self.name.startswith("REGION"):
            return f"Region {self.value}"
        if self.name.startswith("BOUNDARY"):
            return f"Boundary {self.value}"
        return "Corner degenerate"


@dataclass(frozen=True)
class ModelParams:
    """Point of the parameter space: couplings, characteristic length, hbar.

    omega, alpha, beta share units of angular frequency; b0 and hbar set the
    length and action scales (both default to 1 so reduced-unit formulas can be
    read off directly).
    """

    omega: float
    alpha: float
    beta: float
    b0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("omega", "alpha", "beta", "b0", "hbar"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.b0 <= 0:
            raise ValueError("b0 must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    def swapped(self) -> "ModelParams":
        """Parameters of the Hermitian conjugate, H_c(omega, alpha, beta) = H(omega, beta, alpha)."""
        return ModelParams(self.omega, self.beta, self.alpha, self.b0, self.hbar)


@dataclass(frozen=True)
class DerivedQuantities:
    """Scalars derived from a parameter point.

    Undefined quantities (at degenerate parameter combinations) are stored as
    None rather than inf/NaN so callers must handle degeneracy explicitly.

    omega_cap     complex frequency Omega = sqrt(omega^2 - 4 alpha beta), taken
                  real positive when Omega^2 > 0 and +i|Omega| when Omega^2 < 0
    omega_sq      real Omega^2
    m_eff         effective mass, None when omega - alpha - beta = 0
    k_stiff       stiffness m*Omega^2, None when m_eff is None
    sigma         dimensionless Gaussian width sqrt(|m Omega|/hbar)*b0, None
                  when m_eff is None or Omega = 0
    upsilon_coeff coefficient (alpha-beta)/(omega-alpha-beta) of the similarity
                  weight exp(-c x^2/(2 b0^2)); None when omega = alpha + beta
    tau_coeff     coefficient (alpha+beta)/(alpha-beta) of the boundary I-III
                  similarity weight; None when alpha = beta
    """

    omega_cap: complex
    omega_sq: float
    m_eff: float | None
    k_stiff: float | None
    sigma: float | None
    upsilon_coeff: float | None
    tau_coeff: float | None


def derive(params: ModelParams) -> DerivedQuantities:
    """Compute every derived scalar for a parameter point.

    Degeneracies are encoded as None fields, never raised and never NaN.
    """
    w, a, b = params.omega, params.alpha, params.beta
    omega_sq = w * w - 4.0 * a * b
    omega_cap = cmath.sqrt(complex(omega_sq, 0.0))  # real or +i|Omega|

    gap = w - a - b
    if gap != 0.0:
        m_eff = params.hbar / (gap * params.b0 ** 2)
        k_stiff = m_eff * omega_sq
        upsilon_coeff = (a - b) / gap
    else:
        m_eff = None
        k_stiff = None
        upsilon_coeff = None

    if m_eff is not None and omega_cap != 0.0:
        sigma = math.sqrt(abs(m_eff * omega_cap) / params.hbar) * params.b0
    else:
        sigma = None

    tau_coeff = (a + b) / (a - b) if a != b else None

    return DerivedQuantities(
        omega_cap=omega_cap,
        omega_sq=omega_sq,
        m_eff=m_eff,
        k_stiff=k_stiff,
        sigma=sigma,
        upsilon_coeff=upsilon_coeff,
        tau_coeff=tau_coeff,
    )


def classify(params: ModelParams, tol: float = DEFAULT_TOL) -> RegionLabel:
    """Assign the parameter point to a region or boundary stratum.

    tol is a relative tolerance: boundary strata are detected when the region
    indicators fall below tol * max(|omega|, |alpha|, |beta|) (squared for the
    Omega^2 indicator).  Scale-invariant under (omega, alpha, beta) -> s*(...)
    for s > 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w, a, b = params.omega, params.alpha, params.beta
    scale = max(abs(w), abs(a), abs(b))
    if scale == 0.0:
        return RegionLabel.CORNER_DEGENERATE

    omega_sq = w * w - 4.0 * a * b
    gap = w - a - b

    on_omega_boundary = abs(omega_sq) <= tol * scale * scale
    on_gap_boundary = abs(gap) <= tol * scale

    if on_omega_boundary and on_gap_boundary:
        return RegionLabel.CORNER_DEGENERATE
    if on_gap_boundary:
        return RegionLabel.BOUNDARY_I_III
    if on_omega_boundary:
        return RegionLabel.BOUNDARY_I_II if gap > 0 else RegionLabel.BOUNDARY_III_IV

    if gap > 0:
        return RegionLabel.REGION_I if omega_sq > 0 else RegionLabel.REGION_II
    return RegionLabel.REGION_III if omega_sq > 0 else RegionLabel.REGION_IV


@dataclass(frozen=True)
class SurfaceRow:
    """One grid point of the classification surface, in reduced units.

    omega_sq is Omega^2/omega^2 and mass is m*omega*b0^2/hbar (None on the
    mass discontinuity plane alpha + beta = omega).
    """

    alpha_over_omega: float
    beta_over_omega: float
    omega_sq: float
    mass: float | None
    region: RegionLabel


def surface_grid(half_range: float, n: int, tol: float = DEFAULT_TOL) -> list[SurfaceRow]:
    """Sample the reduced (alpha/omega, beta/omega) plane on an n x n grid.

    Rows are emitted row-major with alpha/omega as the outer (slow) index.
    Omega^2/omega^2 varies continuously; the reduced mass changes sign only
    across the line alpha/omega + beta/omega = 1, where it is undefined.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if half_range <= 0:
        raise ValueError("half_range must be positive")

    coords = [-half_range + 2.0 * half_range * i / (n - 1) for i in range(n)]
    rows = []
    for a in coords:
        for b in coords:
            p = ModelParams(1.0, a, b)
            d = derive(p)
            rows.append(
                SurfaceRow(
                    alpha_over_omega=a,
                    beta_over_omega=b,
                    omega_sq=d.omega_sq,
                    mass=d.m_eff if abs(1.0 - a - b) > tol * max(1.0, abs(a), abs(b)) else None,
                    region=classify(p, tol),
                )
            )
    return rows
