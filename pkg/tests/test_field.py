"""Spectral algebra oracles: products, norms, derivatives, projections."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracwave.field import (
    TorusField,
    cubic_term,
    cubic_term_full,
    field_from_grid,
    fractional_derivative,
    from_modes,
    grid_values,
    inner_product,
    l2_norm,
    linf_norm,
    lp_norm,
    multiply,
    pointwise_modulus_squared,
    random_decaying_field,
    sobolev_norm,
    szego_project,
    zero_field,
)


def brute_product(u: TorusField, v: TorusField) -> np.ndarray:
    """O(K^2) convolution oracle on the full output bandwidth."""
    Ko = u.max_mode + v.max_mode
    out = np.zeros(2 * Ko + 1, dtype=np.complex128)
    for k in range(-Ko, Ko + 1):
        acc = 0.0 + 0.0j
        for l in range(-u.max_mode, u.max_mode + 1):
            acc += u.coeff(l) * v.coeff(k - l)
        out[k + Ko] = acc
    return out


def test_coeff_indexing():
    u = from_modes(3, {-3: 1.0, 0: 2.0 + 1.0j, 2: -0.5j})
    assert u.coeff(-3) == 1.0
    assert u.coeff(0) == 2.0 + 1.0j
    assert u.coeff(2) == -0.5j
    assert u.coeff(5) == 0.0
    assert np.array_equal(u.modes, np.arange(-3, 4))


def test_coeffs_immutable():
    u = random_decaying_field(4, 1.0, seed=0)
    with pytest.raises(ValueError):
        u.coeffs[0] = 1.0


def test_from_modes_rejects_out_of_band():
    with pytest.raises(ValueError):
        from_modes(2, {3: 1.0})


def test_truncate_round_trip():
    u = random_decaying_field(8, 1.0, seed=1)
    up = u.truncate(12).truncate(8)
    assert np.allclose(up.coeffs, u.coeffs, atol=0)
    low = u.truncate(3)
    assert low.coeff(3) == u.coeff(3)
    assert low.coeff(4) == 0.0


def test_conj_is_pointwise_conjugate():
    u = random_decaying_field(6, 1.0, seed=2)
    g = 32
    assert np.allclose(
        grid_values(u.conj(), g), np.conj(grid_values(u, g)), atol=1e-14
    )


def test_arithmetic_mixed_bandwidth():
    u = from_modes(2, {1: 1.0})
    v = from_modes(4, {3: 2.0})
    w = u + v
    assert w.max_mode == 4
    assert w.coeff(1) == 1.0 and w.coeff(3) == 2.0
    d = (2.0 * u) - u
    assert d.coeff(1) == 1.0


def test_grid_values_matches_direct_sum():
    u = random_decaying_field(5, 1.0, seed=3)
    g = 16
    x = 2.0 * np.pi * np.arange(g) / g
    direct = sum(u.coeff(k) * np.exp(1j * k * x) for k in range(-5, 6))
    assert np.allclose(grid_values(u, g), direct, atol=1e-13)


def test_grid_round_trip():
    u = random_decaying_field(7, 1.5, seed=4)
    v = field_from_grid(grid_values(u, 20), 7)
    assert np.allclose(v.coeffs, u.coeffs, atol=1e-14)


def test_fractional_derivative_symbol():
    u = from_modes(3, {-2: 1.0, 0: 5.0, 3: 1.0j})
    d = fractional_derivative(u, 1.5)
    assert d.coeff(-2) == pytest.approx(2.0**1.5)
    assert d.coeff(0) == 0.0  # zero mode killed for rho > 0
    assert d.coeff(3) == pytest.approx(1j * 3.0**1.5)
    assert fractional_derivative(u, 0.0) is u
    with pytest.raises(ValueError):
        fractional_derivative(u, -0.5)


def test_sobolev_and_l2_norms():
    u = from_modes(2, {0: 3.0, 2: 4.0})
    assert l2_norm(u) == pytest.approx(5.0)
    assert sobolev_norm(u, 0.0) == pytest.approx(5.0)
    assert sobolev_norm(u, 1.0) == pytest.approx(np.sqrt(9.0 + 16.0 * 5.0))


def test_inner_product_conjugate_symmetry():
    u = random_decaying_field(5, 1.0, seed=5)
    v = random_decaying_field(5, 1.0, seed=6)
    assert inner_product(u, v) == pytest.approx(np.conj(inner_product(v, u)))
    assert inner_product(u, u).real == pytest.approx(l2_norm(u) ** 2)


def test_lp_norm_constant_and_plane_wave():
    c = from_modes(2, {0: 3.0})
    assert lp_norm(c, 4.0, 64) == pytest.approx(3.0)
    w = from_modes(3, {2: 2.0})
    # |w| = 2 everywhere under the normalized measure
    for p in (1.0, 2.0, 4.0, np.inf):
        assert lp_norm(w, p, 64) == pytest.approx(2.0)
    assert linf_norm(w) == pytest.approx(2.0)


def test_l4_norm_spectral_identity():
    u = random_decaying_field(8, 1.0, seed=7)
    l4 = lp_norm(u, 4.0, 256)
    spectral = np.sum(np.abs(pointwise_modulus_squared(u).coeffs) ** 2) ** 0.25
    assert l4 == pytest.approx(spectral, rel=1e-12)


def test_multiply_matches_convolution_oracle():
    u = random_decaying_field(4, 0.5, seed=8)
    v = random_decaying_field(3, 0.5, seed=9)
    w = multiply(u, v)
    assert w.max_mode == 7
    assert np.allclose(w.coeffs, brute_product(u, v), atol=1e-14)


def test_modulus_squared_real_and_exact():
    u = random_decaying_field(5, 1.0, seed=10)
    m = pointwise_modulus_squared(u)
    assert np.allclose(m.coeffs, brute_product(u, u.conj()), atol=1e-14)
    # realness: c_{-k} = conj(c_k)
    assert np.allclose(m.coeffs, np.conj(m.coeffs[::-1]), atol=1e-15)


def test_cubic_term_is_truncated_full_product():
    u = random_decaying_field(6, 1.0, seed=11)
    full = cubic_term_full(u)
    assert full.max_mode == 18
    trunc = cubic_term(u)
    assert trunc.max_mode == 6
    assert np.allclose(trunc.coeffs, full.truncate(6).coeffs, atol=1e-14)
    modsq = TorusField(12, brute_product(u, u.conj()))
    oracle = brute_product(modsq, u)  # bandwidth 18, matching full
    assert np.allclose(full.coeffs, oracle, atol=1e-13)


def test_szego_projection():
    u = random_decaying_field(4, 1.0, seed=12)
    p = szego_project(u)
    assert np.all(p.coeffs[:4] == 0)
    assert np.allclose(p.coeffs[4:], u.coeffs[4:], atol=0)
    assert np.allclose(szego_project(p).coeffs, p.coeffs, atol=0)


def test_zero_field_and_random_determinism():
    z = zero_field(3)
    assert l2_norm(z) == 0.0
    a = random_decaying_field(16, 2.0, seed=42)
    b = random_decaying_field(16, 2.0, seed=42)
    assert np.array_equal(a.coeffs, b.coeffs)
    c = random_decaying_field(16, 2.0, seed=43)
    assert not np.array_equal(a.coeffs, c.coeffs)


def test_random_field_decay_envelope():
    u = random_decaying_field(32, 3.0, amplitude=2.0, seed=0)
    k = u.modes.astype(float)
    env = 2.0 * (1.0 + k**2) ** -1.5
    assert np.all(np.abs(u.coeffs) <= env)


@given(st.integers(0, 6), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_parseval_under_grid_sampling(K, seed):
    u = random_decaying_field(K, 1.0, seed=seed)
    g = 2 * K + 2
    vals = grid_values(u, g)
    assert np.mean(np.abs(vals) ** 2) == pytest.approx(
        l2_norm(u) ** 2, rel=1e-10, abs=1e-12
    )


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_product_commutes(Ku, Kv, seed):
    u = random_decaying_field(Ku, 0.5, seed=seed)
    v = random_decaying_field(Kv, 0.5, seed=seed + 1)
    assert np.allclose(
        multiply(u, v).coeffs, multiply(v, u).coeffs, atol=1e-13
    )
