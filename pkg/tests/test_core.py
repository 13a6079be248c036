import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swanson import ModelParams, RegionLabel, classify, derive, surface_grid

finite_coupling = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def test_hermitian_limit():
    d = derive(ModelParams(1.0, 0.0, 0.0))
    assert d.omega_cap == 1.0
    assert d.m_eff == 1.0
    assert d.k_stiff == 1.0
    assert d.sigma == 1.0
    assert d.upsilon_coeff == 0.0


def test_direct_evaluation():
    d = derive(ModelParams(1.0, 0.2, 0.1))
    assert d.omega_sq == pytest.approx(0.92, rel=1e-15)
    assert d.m_eff == pytest.approx(1.0 / 0.7, rel=1e-15)
    assert d.upsilon_coeff == pytest.approx(0.1 / 0.7, rel=1e-15)
    assert d.k_stiff == pytest.approx(d.m_eff * 0.92, rel=1e-15)


def test_region_ii_witness():
    d = derive(ModelParams(1.0, -2.0, -0.5))
    assert d.omega_sq == pytest.approx(-3.0, rel=1e-15)
    assert d.m_eff == pytest.approx(1.0 / 3.5, rel=1e-15)
    assert d.m_eff > 0
    assert d.omega_cap == pytest.approx(1j * math.sqrt(3.0))


def test_degenerate_flags_not_nan():
    d = derive(ModelParams(1.0, 0.6, 0.4))   # omega = alpha + beta
    assert d.m_eff is None
    assert d.k_stiff is None
    assert d.sigma is None
    assert d.upsilon_coeff is None
    assert d.tau_coeff == pytest.approx((0.6 + 0.4) / 0.2)

    d = derive(ModelParams(1.0, 0.5, 0.5))   # alpha = beta and Omega = 0
    assert d.tau_coeff is None
    assert d.sigma is None

    d = derive(ModelParams(1.0, -0.125, -2.0))  # Omega = 0 only
    assert d.sigma is None
    assert d.m_eff is not None


@given(w=st.floats(min_value=0.5, max_value=3.0), a=finite_coupling, b=finite_coupling)
@settings(max_examples=60, deadline=None)
def test_derived_invariants(w, a, b):
    d = derive(ModelParams(w, a, b))
    assert d.omega_cap ** 2 == pytest.approx(w * w - 4 * a * b, abs=1e-12)
    if d.m_eff is not None:
        assert d.m_eff * (w - a - b) == pytest.approx(1.0, rel=1e-12)
        assert d.k_stiff == pytest.approx(d.m_eff * d.omega_sq, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("params,label", [
    (ModelParams(1.0, 0.2, 0.1), RegionLabel.REGION_I),
    (ModelParams(1.0, -2.0, -0.5), RegionLabel.REGION_II),
    (ModelParams(1.0, 1.2, -0.1), RegionLabel.REGION_III),
    (ModelParams(1.0, 2.0, 0.5), RegionLabel.REGION_IV),
    (ModelParams(1.0, 0.6, 0.4), RegionLabel.BOUNDARY_I_III),
    (ModelParams(1.0, -0.125, -2.0), RegionLabel.BOUNDARY_I_II),
    (ModelParams(1.0, 2.0, 0.125), RegionLabel.BOUNDARY_III_IV),
    (ModelParams(1.0, 0.5, 0.5), RegionLabel.CORNER_DEGENERATE),
])
def test_classify_examples(params, label):
    assert classify(params) is label


@given(w=st.floats(min_value=0.5, max_value=3.0), a=finite_coupling, b=finite_coupling)
@settings(max_examples=60, deadline=None)
def test_classify_alpha_beta_symmetry(w, a, b):
    assert classify(ModelParams(w, a, b)) is classify(ModelParams(w, b, a))


@given(w=st.floats(min_value=0.5, max_value=3.0), a=finite_coupling, b=finite_coupling,
       s=st.floats(min_value=0.01, max_value=100.0))
@settings(max_examples=60, deadline=None)
def test_classify_scale_invariance(w, a, b, s):
    scale = max(abs(w), abs(a), abs(b))
    # stay away from the boundary strata where rounding of s*x can flip the label
    if abs(w - a - b) < 1e-6 * scale or abs(w * w - 4 * a * b) < 1e-6 * scale ** 2:
        return
    assert classify(ModelParams(w, a, b)) is classify(ModelParams(s * w, s * a, s * b))


def test_surface_grid_small():
    rows = surface_grid(2.0, 3)
    assert len(rows) == 9
    center = next(r for r in rows if r.alpha_over_omega == 0.0 and r.beta_over_omega == 0.0)
    assert center.omega_sq == 1.0
    assert center.mass == 1.0
    for r in rows:
        if r.alpha_over_omega + r.beta_over_omega > 1.0 and r.mass is not None:
            assert r.mass < 0


def test_surface_hermitian_diagonal():
    rows = surface_grid(1.0, 5)
    for r in rows:
        if r.alpha_over_omega == r.beta_over_omega:
            d = derive(ModelParams(1.0, r.alpha_over_omega, r.beta_over_omega))
            if d.upsilon_coeff is not None:
                assert d.upsilon_coeff == 0.0


def test_surface_omega_sq_continuity():
    n, half = 21, 2.0
    rows = surface_grid(half, n)
    h = 2.0 * half / (n - 1)
    lipschitz = 4.0 * half  # |d(omega_sq)/d(alpha)| = 4 |beta| <= 4 half
    for i in range(n):
        for j in range(n - 1):
            a = rows[i * n + j].omega_sq
            b = rows[i * n + j + 1].omega_sq
            assert abs(b - a) <= lipschitz * h + 1e-12


def test_surface_mass_sign_flip_on_line_only():
    n, half = 21, 2.0
    rows = surface_grid(half, n)
    for i in range(n):
        for j in range(n - 1):
            r1, r2 = rows[i * n + j], rows[i * n + j + 1]
            if r1.mass is None or r2.mass is None:
                continue
            s1 = r1.alpha_over_omega + r1.beta_over_omega - 1.0
            s2 = r2.alpha_over_omega + r2.beta_over_omega - 1.0
            crosses = (s1 < 0) != (s2 < 0)
            flipped = (r1.mass < 0) != (r2.mass < 0)
            assert crosses == flipped


def test_validation_errors():
    with pytest.raises(ValueError):
        ModelParams(1.0, 0.0, 0.0, b0=-1.0)
    with pytest.raises(ValueError):
        ModelParams(float("inf"), 0.0, 0.0)
    with pytest.raises(ValueError):
        surface_grid(2.0, 1)
    with pytest.raises(ValueError):
        classify(ModelParams(1.0, 0.0, 0.0), tol=0.0)


def test_hermitian_line_gives_identity_similarity():
    for a in (0.05, 0.2, -0.4):
        d = derive(ModelParams(1.0, a, a))
        assert d.upsilon_coeff == 0.0
