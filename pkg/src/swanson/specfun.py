"""Special-function backbone: complex Hermite polynomials, log-gamma, Weber
parabolic cylinder D, and Gauss-Hermite quadrature.

Only what the spectral construction needs is implemented, at double precision.
The parabolic cylinder function is the hard case: it is needed at complex
order along rotated rays where neither a pure Taylor nor a pure asymptotic
regime suffices, so it is evaluated by a three-way dispatch (Kummer series in
extended precision, sector-exact asymptotics, mpmath fallback for the
remaining order/argument middle zone).
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError

__all__ = [
    "QuadratureRule",
    "hermite",
    "hermite_coefficients",
    "log_gamma",
    "recip_gamma",
    "gauss_hermite",
    "parabolic_cylinder_d",
]

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# Hermite polynomials (physicists' convention), complex argument
# ---------------------------------------------------------------------------

def hermite(n: int, z):
    """H_n(z) by the three-term recurrence H_{k+1} = 2 z H_k - 2 k H_{k-1}.

    Accepts scalars or numpy arrays; exact for polynomial degree (up to
    floating-point rounding in the coefficients).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    z = np.asarray(z, dtype=complex)
    h_prev = np.ones_like(z)
    if n == 0:
        return h_prev if h_prev.ndim else complex(h_prev)
    h = 2.0 * z
    for k in range(1, n):
        h, h_prev = 2.0 * z * h - 2.0 * k * h_prev, h
    return h if h.ndim else complex(h)


def hermite_coefficients(n: int) -> np.ndarray:
    """Power-series coefficients of H_n, ascending order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    basis = np.zeros(n + 1)
    basis[n] = 1.0
    return np.polynomial.hermite.herm2poly(basis)


# ---------------------------------------------------------------------------
# Complex log-gamma (Lanczos) and reciprocal gamma
# ---------------------------------------------------------------------------

# Godfrey's Lanczos coefficients, g = 607/128, 15 terms: ~1e-14 relative
# accuracy on the half-plane Re z >= 0.5.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _log_gamma_lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    zm1 = z - 1.0
    s = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(s)


def log_gamma(z) -> complex:
    """Principal-branch log Gamma(z) for complex z.

    The branch is the standard analytic continuation satisfying
    log_gamma(z) = log_gamma(z+1) - Log(z); raises PoleError at
    z = 0, -1, -2, ...
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError(f"log_gamma pole at z = {z.real:g}")
    if z.real >= 0.5:
        return _log_gamma_lanczos(z)
    # shift into the Lanczos half-plane; this recursion defines the branch
    shift = int(math.ceil(0.5 - z.real))
    acc = 0.0 + 0.0j
    for k in range(shift):
        acc += cmath.log(z + k)
    return _log_gamma_lanczos(z + shift) - acc


def recip_gamma(z) -> complex:
    """1/Gamma(z); entire, exactly zero at non-positive integers."""
    z = complex(z)
    if z.real >= 0.5:
        return cmath.exp(-_log_gamma_lanczos(z))
    shift = int(math.ceil(0.5 - z.real))
    prod = 1.0 + 0.0j
    for k in range(shift):
        prod *= z + k
    return prod * cmath.exp(-_log_gamma_lanczos(z + shift))


# ---------------------------------------------------------------------------
# Gauss-Hermite quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights for the weight exp(-x^2) on the real line."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int


@functools.lru_cache(maxsize=64)
def gauss_hermite(n: int) -> QuadratureRule:
    """Gauss-Hermite rule of order n; exact for polynomials of degree 2n-1."""
    if not 1 <= n <= 500:
        raise ValueError("order must be between 1 and 500")
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes=nodes, weights=weights, order=n)


# ---------------------------------------------------------------------------
# Weber parabolic cylinder function D_nu(z), complex order and argument
# ---------------------------------------------------------------------------

_TAYLOR_RADIUS = 6.8       # |z| below which the Kummer series is used
_TAYLOR_ORDER_MAX = 8.0    # beyond this |nu| the Kummer series loses digits
_ASYMPTOTIC_MARGIN = 8.0   # |z|^2 >= margin*(|order|+4) for the tail series
_ASYMPTOTIC_TOL = 1e-10


_LONGDOUBLE_EPS = float(np.finfo(np.longdouble).eps)


def _mp_to_clongdouble(x) -> np.clongdouble:
    """mpmath mpc -> clongdouble via a double-double split of each part."""
    re_hi = float(x.real)
    im_hi = float(x.imag)
    re_lo = float(x.real - re_hi)
    im_lo = float(x.imag - im_hi)
    return np.clongdouble(re_hi) + np.clongdouble(re_lo) \
        + 1j * (np.clongdouble(im_hi) + np.clongdouble(im_lo))


@functools.lru_cache(maxsize=256)
def _dv_taylor_prefactors(nu: complex) -> tuple[np.clongdouble, np.clongdouble]:
    """sqrt(pi)/Gamma((1-nu)/2) and sqrt(2 pi)/Gamma(-nu/2) beyond double accuracy.

    The Kummer bracket can cancel by many orders of magnitude, so the scalar
    prefactors must carry more digits than the double-precision result.
    """
    import mpmath

    with mpmath.workdps(30):
        c1 = mpmath.sqrt(mpmath.pi) * mpmath.rgamma((1 - mpmath.mpc(nu)) / 2)
        c2 = mpmath.sqrt(2 * mpmath.pi) * mpmath.rgamma(-mpmath.mpc(nu) / 2)
        return _mp_to_clongdouble(c1), _mp_to_clongdouble(c2)


def _kummer_series(a: complex, b: complex, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """M(a, b, w) by Taylor series in extended precision.

    Returns (M, max_term_magnitude); the latter bounds the rounding noise
    floor eps * max_term left in the sum.
    """
    wl = w.astype(np.clongdouble)
    term = np.ones_like(wl)
    total = np.ones_like(wl)
    peak = np.ones(w.shape, dtype=np.longdouble)
    aa = np.clongdouble(a)
    bb = np.clongdouble(b)
    for k in range(400):
        term = term * ((aa + k) / ((bb + k) * (k + 1))) * wl
        total = total + term
        mag = np.abs(term)
        peak = np.maximum(peak, mag)
        if np.all(mag <= 1e-26 * np.abs(total)):
            break
    return total, peak


def _dv_taylor(nu: complex, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Kummer representation

        D_nu(z) = 2^(nu/2) e^(-z^2/4) [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
                  - sqrt(2 pi) z /Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]

    assembled in extended precision.  Returns (value, ok); ok is False where
    cancellation between the two parts (or inside the series) leaves fewer
    than ~9 reliable digits.
    """
    zl = z.astype(np.clongdouble)
    w = 0.5 * zl * zl
    c1, c2 = _dv_taylor_prefactors(nu)
    m1, peak1 = _kummer_series(-0.5 * nu, 0.5, w)
    m2, peak2 = _kummer_series(0.5 * (1.0 - nu), 1.5, w)
    part1 = c1 * m1
    part2 = c2 * zl * m2
    bracket = part1 - part2
    scale = np.clongdouble(cmath.exp(0.5 * nu * math.log(2.0)))
    val = scale * np.exp(-0.5 * w) * bracket
    noise = _LONGDOUBLE_EPS * (
        abs(complex(c1)) * peak1 + abs(complex(c2)) * np.abs(zl) * peak2
        + np.abs(part1) + np.abs(part2)
    )
    ok = noise <= 2e-9 * np.abs(bracket)
    return val.astype(complex), ok


def _dv_tail_series(order: complex, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """S(order, z) with D_order(z) ~ exp(-z^2/4) z^order S as |z| -> inf.

    Returns (S, ok); ok flags entries whose smallest term met the tolerance
    before the divergent tail took over.
    """
    inv = 1.0 / (2.0 * z * z)
    term = np.ones_like(z)
    total = np.ones_like(z)
    best = np.full(z.shape, np.inf)
    done = np.zeros(z.shape, dtype=bool)
    for k in range(60):
        term = term * (-(-order + 2 * k) * (-order + 2 * k + 1) / (k + 1.0)) * inv
        mag = np.abs(term)
        done |= mag > best          # past the smallest term: stop accumulating
        best = np.minimum(best, mag)
        total = np.where(done, total, total + term)
        if np.all(best <= _ASYMPTOTIC_TOL):
            break
    return total, best <= _ASYMPTOTIC_TOL


def _dv_dominant(order: complex, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """exp(-z^2/4) z^order S(order, z); correct alone for |arg z| <= pi/2."""
    s, ok = _dv_tail_series(order, z)
    return np.exp(-0.25 * z * z + order * np.log(z)) * s, ok


def _dv_asymptotic(nu: complex, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Large-|z| evaluation valid in every sector.

    For |arg z| <= pi/2 the recessive component of D_nu vanishes and the
    dominant series stands alone.  Elsewhere the exact connection

        D_nu(z) = e^{+- i pi nu} D_nu(-z)
                  + sqrt(2 pi)/Gamma(-nu) e^{+- i pi (nu+1)/2} D_{-nu-1}(-+ i z)

    (upper signs for Im z >= 0) maps both evaluations into that sector.
    """
    val = np.empty_like(z)
    ok = np.zeros(z.shape, dtype=bool)
    arg = np.angle(z)
    near = np.abs(arg) <= 0.5 * math.pi
    if np.any(near):
        v, o = _dv_dominant(nu, z[near])
        val[near] = v
        ok[near] = o
    far = ~near
    if np.any(far):
        zf = z[far]
        sgn = np.where(np.angle(zf) >= 0.0, 1.0, -1.0)
        v1, o1 = _dv_dominant(nu, -zf)
        v2, o2 = _dv_dominant(-nu - 1.0, -1j * sgn * zf)
        c2 = SQRT_2PI * recip_gamma(-nu)
        val[far] = np.exp(1j * math.pi * nu * sgn) * v1 \
            + c2 * np.exp(1j * math.pi * 0.5 * (nu + 1.0) * sgn) * v2
        ok[far] = o1 & o2
    return val, ok


def _dv_mpmath(nu: complex, z: np.ndarray) -> np.ndarray:
    import mpmath

    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for i, zz in enumerate(flat):
        out[i] = complex(mpmath.pcfd(mpmath.mpc(nu), mpmath.mpc(zz)))
    return out.reshape(z.shape)


def parabolic_cylinder_d(nu, z):
    """Weber function D_nu(z) for complex order and argument.

    Dispatches between a Kummer-series representation (moderate |z| and
    order, summed in extended precision), sector-exact asymptotics (large
    |z| relative to the order), and an arbitrary-precision fallback for the
    remaining middle zone.  Relative accuracy ~1e-8 or better on
    |z| <= 20, |Im nu| <= 20.

    z may be a scalar or a numpy array; nu is a scalar.
    """
    nu = complex(nu)
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr).astype(complex)
    out = np.empty_like(z_arr)

    order_scale = max(abs(nu), abs(nu + 1.0))
    small = np.abs(z_arr) <= _TAYLOR_RADIUS
    if np.any(small):
        if order_scale > _TAYLOR_ORDER_MAX:
            out[small] = _dv_mpmath(nu, z_arr[small])
        else:
            v, ok = _dv_taylor(nu, z_arr[small])
            if not np.all(ok):
                v[~ok] = _dv_mpmath(nu, z_arr[small][~ok])
            out[small] = v

    large = ~small
    if np.any(large):
        zl = z_arr[large]
        vals = np.empty_like(zl)
        ok = np.zeros(zl.shape, dtype=bool)
        maybe = np.abs(zl) ** 2 >= _ASYMPTOTIC_MARGIN * (order_scale + 4.0)
        if np.any(maybe):
            v, o = _dv_asymptotic(nu, zl[maybe])
            vals[maybe] = np.where(o, v, 0.0)
            ok[maybe] = o
        need_mp = ~ok
        if np.any(need_mp):
            vals[need_mp] = _dv_mpmath(nu, zl[need_mp])
        out[large] = vals

    if not np.all(np.isfinite(out)):
        raise OverflowError("parabolic_cylinder_d overflow; argument outside the supported range")
    return complex(out[0]) if scalar else out
