import dataclasses
import math

import numpy as np
import pytest

import conftest as pts
from swanson import (
    DirectGaussHermite,
    DistributionalExact,
    GaussPoly,
    ModelParams,
    NonConvergentError,
    RegionError,
    RotatedContour,
    discrete_states,
    evaluate,
    gram,
    metric_pair,
    pair,
    reconstruct,
)
from swanson.continuum import continuum_state, stripped_discrete_function


# ---------------------------------------------------------------------------
# bi-orthogonality
# ---------------------------------------------------------------------------

def test_region_i_biorthogonality():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 10)
    for m in range(0, 11, 2):
        for n in range(0, 11, 3):
            value = pair(states[m].left_fn, states[n].right_fn, p)
            assert value == pytest.approx(1.0 if m == n else 0.0, abs=1e-10)


def test_boundary_i_iii_distributional_exact():
    p = pts.BOUNDARY_I_III_POINT
    states = discrete_states(p, 10)
    by_key = {(s.n, s.branch): s for s in states}
    for m in range(11):
        for n in range(11):
            # monomial right against delta-derivative dual: the off-diagonal
            # entries vanish identically, the diagonal is 1 up to rounding in
            # the sqrt(n!) normalization arithmetic
            value = pair(by_key[(m, "+")].left_fn, by_key[(n, "+")].right_fn, p)
            if m != n:
                assert value == 0.0
            else:
                assert value == pytest.approx(1.0, abs=1e-12)
            value = pair(by_key[(m, "-")].left_fn, by_key[(n, "-")].right_fn, p)
            assert value == pytest.approx(1.0 if m == n else 0.0, abs=1e-12)


def test_region_ii_rotated_quarter_turn():
    p = pts.REGION_II_POINT
    states = {(s.n, s.branch): s for s in discrete_states(p, 8)}
    strategy = RotatedContour(-math.pi / 4.0, 72)
    for m in range(0, 9, 2):
        for n in range(9):
            value = pair(states[(m, "+")].left_fn, states[(n, "+")].right_fn, p, strategy)
            assert value == pytest.approx(1.0 if m == n else 0.0, abs=1e-6)


def test_rotated_contour_matches_exact_hermite_oracle():
    # at theta = -pi/4 the Region II pairing maps onto real Hermite
    # orthogonality, so delta_mn is exact, not just approximate
    p = pts.REGION_II_POINT
    states = {(s.n, s.branch): s for s in discrete_states(p, 5)}
    for m in range(6):
        for n in range(6):
            value = pair(states[(m, "+")].left_fn, states[(n, "+")].right_fn, p)
            assert value == pytest.approx(1.0 if m == n else 0.0, abs=1e-13)


# ---------------------------------------------------------------------------
# metric inner product
# ---------------------------------------------------------------------------

def test_metric_pair_examples():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 2)
    assert metric_pair(states[0].right_fn, states[0].right_fn, p) == pytest.approx(1.0, abs=1e-12)
    assert metric_pair(states[0].right_fn, states[2].right_fn, p) == pytest.approx(0.0, abs=1e-10)


def test_metric_reduces_to_plain_inner_product_when_hermitian():
    p = ModelParams(1.0, 0.15, 0.15)
    states = discrete_states(p, 2)
    a, b = states[0].right_fn, states[2].right_fn
    assert metric_pair(a, b, p) == pytest.approx(pair(a, b, p), abs=1e-14)
    assert metric_pair(a, a, p) == pytest.approx(pair(a, a, p), rel=1e-13)


def test_metric_region_guard():
    with pytest.raises(RegionError):
        metric_pair(
            GaussPoly(gauss=-1.0, coeffs=(1.0,), norm=1.0),
            GaussPoly(gauss=-1.0, coeffs=(1.0,), norm=1.0),
            pts.BOUNDARY_I_III_POINT)


# ---------------------------------------------------------------------------
# gram reports
# ---------------------------------------------------------------------------

def test_gram_region_i_and_iii():
    for p in pts.REGION_I_POINTS + pts.REGION_III_POINTS:
        report = gram(p, 10)
        assert report.max_offdiag <= 1e-10
        assert report.max_diag_err <= 1e-10
        assert report.matrix.shape == (11, 11)


def test_gram_region_ii_branches():
    report = gram(pts.REGION_II_POINT, 8)
    assert report.matrix.shape == (18, 9)   # two stacked branch blocks
    assert report.max_offdiag <= 1e-6
    assert report.max_diag_err <= 1e-6


def test_gram_metric():
    report = gram(pts.REGION_I_POINTS[0], 6, which="metric")
    assert report.max_offdiag <= 1e-10
    assert report.max_diag_err <= 1e-10
    with pytest.raises(RegionError):
        gram(pts.REGION_II_POINT, 3, which="metric")
    with pytest.raises(ValueError):
        gram(pts.REGION_I_POINTS[0], 3, which="bogus")


# ---------------------------------------------------------------------------
# truncated completeness
# ---------------------------------------------------------------------------

def test_reconstruct_basis_element():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 6)
    coeffs, sup_error = reconstruct(p, states[3].right_fn, 6)
    expect = np.zeros(7)
    expect[3] = 1.0
    assert np.max(np.abs(coeffs - expect)) <= 1e-10
    assert sup_error <= 1e-10


def test_reconstruct_displaced_gaussian():
    p = pts.REGION_I_POINTS[0]
    coeffs, sup_error = reconstruct(p, lambda x: np.exp(-(x - 0.5) ** 2), 40)
    assert sup_error <= 1e-6
    assert len(coeffs) == 41


def test_reconstruct_centered_gaussian():
    p = pts.REGION_I_POINTS[0]
    _, sup_error = reconstruct(p, lambda x: np.exp(-x ** 2), 40)
    assert sup_error <= 1e-6


def test_reconstruct_odd_target_parity():
    p = pts.REGION_I_POINTS[0]
    coeffs, _ = reconstruct(p, lambda x: x * np.exp(-x ** 2), 15)
    assert np.max(np.abs(coeffs[::2])) <= 1e-10


def test_reconstruct_region_guard():
    with pytest.raises(RegionError):
        reconstruct(pts.REGION_II_POINT, lambda x: np.exp(-x ** 2), 4)


# ---------------------------------------------------------------------------
# strategies and stability
# ---------------------------------------------------------------------------

def test_strategy_equivalence_direct_vs_rotated():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 4)
    for m, n in ((0, 0), (1, 3), (4, 4), (2, 0)):
        direct = pair(states[m].left_fn, states[n].right_fn, p, DirectGaussHermite(80))
        rotated = pair(states[m].left_fn, states[n].right_fn, p, RotatedContour(0.35, 80))
        assert direct == pytest.approx(rotated, abs=1e-8)


def test_quadrature_order_doubling_stability():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 5)
    base = pair(states[2].left_fn, states[2].right_fn, p, DirectGaussHermite(60))
    doubled = pair(states[2].left_fn, states[2].right_fn, p, DirectGaussHermite(120))
    assert abs(base - doubled) <= 1e-10

    p2 = pts.REGION_II_POINT
    s2 = {(s.n, s.branch): s for s in discrete_states(p2, 4)}
    base = pair(s2[(3, "+")].left_fn, s2[(3, "+")].right_fn, p2, RotatedContour(-math.pi / 4, 56))
    doubled = pair(s2[(3, "+")].left_fn, s2[(3, "+")].right_fn, p2,
                   RotatedContour(-math.pi / 4, 112))
    assert abs(base - doubled) <= 1e-10


def test_pairing_bilinearity():
    p = pts.REGION_I_POINTS[0]
    states = discrete_states(p, 3)
    a = states[1].left_fn
    b = states[2].right_fn
    scaled = dataclasses.replace(b, norm=(0.7 - 0.2j) * b.norm)
    assert pair(a, scaled, p) == pytest.approx((0.7 - 0.2j) * pair(a, b, p), abs=1e-14)

    f1 = GaussPoly(gauss=-1.5, coeffs=(1.0, 0.5), norm=1.0)
    f2 = GaussPoly(gauss=-1.5, coeffs=(0.0, 0.0, 2.0), norm=1.0)
    fsum = GaussPoly(gauss=-1.5, coeffs=(1.0, 0.5, 2.0), norm=1.0)
    assert pair(a, fsum, p) == pytest.approx(pair(a, f1, p) + pair(a, f2, p), abs=1e-14)


def test_nonconvergent_doubled_growth():
    # two right-functions whose dressing growth adds: no admissible contour
    p = ModelParams(1.0, -0.5, -3.0)          # Region II with positive dressing
    states = discrete_states(p, 0)
    plus = next(s for s in states if s.branch == "+")
    with pytest.raises(NonConvergentError):
        pair(plus.right_fn, plus.right_fn, p)


def test_nonconvergent_zero_gauss():
    p = pts.REGION_I_POINTS[0]
    flat1 = GaussPoly(gauss=0.0, coeffs=(1.0,), norm=1.0)
    flat2 = GaussPoly(gauss=0.0, coeffs=(0.0, 1.0), norm=1.0)
    with pytest.raises(NonConvergentError):
        pair(flat1, flat2, p)


def test_cylinder_states_not_pairable():
    p = pts.REGION_II_POINT
    st = continuum_state(p, 0.3, "+", "phi")
    other = stripped_discrete_function(p, 0, "+")
    with pytest.raises(NonConvergentError):
        pair(st, other, p)


def test_two_delta_pairing_undefined():
    p = pts.BOUNDARY_I_III_POINT
    states = {(s.n, s.branch): s for s in discrete_states(p, 1)}
    with pytest.raises(NonConvergentError):
        pair(states[(0, "-")].right_fn, states[(1, "-")].right_fn, p)


def test_distributional_requires_strategy_match():
    p = pts.BOUNDARY_I_III_POINT
    states = {(s.n, s.branch): s for s in discrete_states(p, 1)}
    delta_state = states[(0, "-")].right_fn
    smooth = GaussPoly(gauss=-1.0, coeffs=(1.0,), norm=1.0)
    with pytest.raises(NonConvergentError):
        pair(smooth, delta_state, p, DirectGaussHermite(40))


def test_distributional_against_displaced_gaussian():
    # <delta' with unit prefactor | exp(-(x-1)^2)> = d/dx exp(-(x-1)^2)|_0 = 2 e^{-1}
    from swanson import DeltaDeriv, PlaneWaveGauss

    p = ModelParams(1.0, 0.0, 0.0)
    delta = DeltaDeriv(gauss=0.0, n=1, norm=-1.0)   # (-1)^1/sqrt(1!) convention
    target = PlaneWaveGauss(gauss=-2.0, k_wave=-2.0j, amp_plus=math.exp(-1.0), amp_minus=0.0)
    value = pair(delta, target, p, DistributionalExact())
    assert value == pytest.approx(2.0 * math.exp(-1.0), rel=1e-12)


def test_right_states_combine_convergent_with_their_duals():
    # the combined Gaussian of a dual/right pair is -2 sigma^2 < 0 in the
    # real-spectrum regions: the dressing growth always cancels
    for p in pts.REGION_I_POINTS + pts.REGION_III_POINTS:
        for s in discrete_states(p, 4):
            combined = np.conjugate(s.left_fn.gauss) + s.right_fn.gauss
            assert complex(combined).real < 0


def test_reconstruct_slow_target_nonconvergent():
    p = pts.REGION_I_POINTS[0]
    growing = GaussPoly(gauss=2.0, coeffs=(1.0,), norm=1.0)
    with pytest.raises(NonConvergentError):
        reconstruct(p, growing, 4)
