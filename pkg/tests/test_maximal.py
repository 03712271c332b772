import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracspace import (
    MaximalConfig,
    doubling_maximal,
    fractional_maximal,
    lp_norm,
    sharp_maximal,
    weak_type_check,
)

from conftest import random_space


def test_lp_norm_values(two_point):
    assert lp_norm(two_point, [0.0, 0.0], 2.0) == 0.0
    assert lp_norm(two_point, [1.0, 1.0], 2.0) == pytest.approx(np.sqrt(2), abs=1e-15)
    assert lp_norm(two_point, [-3.0, 2.0], float("inf")) == 3.0
    with pytest.raises(ValueError):
        lp_norm(two_point, [1.0, 1.0], 0.5)


def test_doubling_maximal_two_point(two_point):
    # [DERIVED] candidates at a: singleton mean 0, pair mean 1
    out = doubling_maximal(two_point, [0.0, 2.0])
    assert out[0] == pytest.approx(1.0)
    assert out[1] == pytest.approx(2.0)


def test_doubling_maximal_constant(grid16):
    out = doubling_maximal(grid16, np.full(grid16.n, 3.0))
    assert np.allclose(out, 3.0, rtol=1e-12)


def test_pointwise_lower_bound(grid16):
    rng = np.random.default_rng(2)
    f = rng.normal(size=grid16.n)
    nf = doubling_maximal(grid16, f)
    assert np.all(np.abs(f) <= nf * (1 + 1e-12) + 1e-15)
    assert np.all(nf <= np.max(np.abs(f)) * (1 + 1e-12))


def test_fractional_maximal_two_point(two_point):
    # [DERIVED] 3-ball enumeration with r=1, eta=5, beta=0, f=(1,0)
    out = fractional_maximal(two_point, [1.0, 0.0], MaximalConfig(1.0, 5.0, 0.0))
    assert out[0] == pytest.approx(1.0)
    assert out[1] == pytest.approx(0.5)


def test_fractional_maximal_constant_bound(grid16):
    out = fractional_maximal(grid16, np.full(grid16.n, 2.0), MaximalConfig(1.0, 5.0, 0.0))
    assert np.all(out <= 2.0 * (1 + 1e-12))


def test_r_monotonicity(grid16):
    rng = np.random.default_rng(3)
    f = rng.normal(size=grid16.n)
    m1 = fractional_maximal(grid16, f, MaximalConfig(1.0, 5.0, 0.0))
    m2 = fractional_maximal(grid16, f, MaximalConfig(2.0, 5.0, 0.0))
    m3 = fractional_maximal(grid16, f, MaximalConfig(3.0, 5.0, 0.0))
    assert np.all(m1 <= m2 * (1 + 1e-10))
    assert np.all(m2 <= m3 * (1 + 1e-10))


def test_config_validation(grid16):
    with pytest.raises(ValueError):
        MaximalConfig(0.5, 5.0, 0.0).validate(grid16)
    with pytest.raises(ValueError):
        MaximalConfig(1.0, 4.0, 0.0).validate(grid16)
    with pytest.raises(ValueError):
        MaximalConfig(1.0, 5.0, grid16.dim_n).validate(grid16)
    with pytest.raises(ValueError):
        MaximalConfig(3.0, 5.0, 0.5).validate(grid16)  # r >= dim_n / beta


def test_sharp_maximal_two_point(two_point):
    # [DERIVED] osc 1/2 via the pair ball plus pair term (1/2) / (1 + 7/12 + 7/36)
    out = sharp_maximal(two_point, [0.0, 1.0], 0.0)
    assert np.allclose(out, 25.0 / 32.0, rtol=1e-12)


def test_sharp_maximal_constant_and_shift(grid16):
    rng = np.random.default_rng(4)
    f = rng.normal(size=grid16.n)
    assert np.allclose(sharp_maximal(grid16, np.full(grid16.n, 5.0), 0.0), 0.0)
    a = sharp_maximal(grid16, f, 0.0)
    b = sharp_maximal(grid16, f + 11.0, 0.0)
    assert np.allclose(a, b, rtol=1e-10, atol=1e-12)
    assert np.all(a >= 0)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10_000),
       st.floats(0.1, 10.0, allow_nan=False))
def test_positive_homogeneity(n, seed, t):
    s = random_space(n, seed)
    rng = np.random.default_rng(seed + 5)
    f = rng.normal(size=n)
    cfg = MaximalConfig(1.5, 5.0, 0.0)
    assert np.allclose(doubling_maximal(s, t * f), t * doubling_maximal(s, f), rtol=1e-10)
    assert np.allclose(
        fractional_maximal(s, t * f, cfg), t * fractional_maximal(s, f, cfg), rtol=1e-10
    )
    assert np.allclose(sharp_maximal(s, t * f, 0.0), t * sharp_maximal(s, f, 0.0), rtol=1e-9)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10_000))
def test_maximal_operators_match_brute_force(n, seed):
    import oracles

    s = random_space(n, seed)
    rng = np.random.default_rng(seed + 9)
    f = rng.normal(size=n)
    d, w = s.distances.tolist(), s.weights.tolist()
    args = (d, w, s.lam.c, s.lam.k, s.dim_n)
    assert np.allclose(doubling_maximal(s, f), oracles.doubling_maximal(*args, f.tolist()), rtol=1e-10)
    assert np.allclose(
        fractional_maximal(s, f, MaximalConfig(1.5, 5.0, 0.5)),
        oracles.fractional_maximal(d, w, f.tolist(), 1.5, 5.0, 0.5, s.dim_n),
        rtol=1e-10,
    )
    assert np.allclose(
        sharp_maximal(s, f, 0.3),
        oracles.sharp_maximal(*args, f.tolist(), 0.3),
        rtol=1e-9,
    )


def test_weak_type_trivial_cases(grid16):
    cfg = MaximalConfig(1.5, 5.0, 0.0)
    rep = weak_type_check(grid16, np.zeros(grid16.n), cfg, [1.0, 2.0])
    assert rep.passed and rep.fitted_constant == 0.0
    f = np.ones(grid16.n)
    top = float(np.max(fractional_maximal(grid16, f, cfg)))
    rep = weak_type_check(grid16, f, cfg, [top * 10])
    assert rep.fitted_constant == 0.0  # empty level set
    with pytest.raises(ValueError):
        weak_type_check(grid16, f, cfg, [])
