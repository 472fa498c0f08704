import math

import numpy as np
import pytest

from circhad.constructions import (
    _SEED12_GRID_MIN,
    CefState,
    LegendreParams,
    cef_iterate,
    cef_seed12,
    cef_start,
    default_flip_count,
    is_prime,
    legendre_modified,
    legendre_symbol,
    random_signs,
    rudin_shapiro,
    search_degree12_seed,
)
from circhad.errors import SizeCapError
from circhad.rng import SplitMix64
from circhad.signs import SignVector
from circhad.spectrum import circle_profile, eigenvalues_fft, grid_min_modulus, report


# --- Rudin-Shapiro ----------------------------------------------------------


def test_rudin_shapiro_small():
    assert list(rudin_shapiro(0).signs) == [1]
    assert list(rudin_shapiro(2).signs) == [1, 1, 1, -1]
    assert list(rudin_shapiro(3).signs) == [1, 1, 1, -1, 1, 1, -1, 1]


def test_rudin_shapiro_matches_bit_rule():
    for k in [1, 4, 9]:
        s = rudin_shapiro(k).signs
        m = np.arange(1 << k, dtype=np.int64)
        pairs = np.zeros(1 << k, dtype=np.int64)
        v = m & (m >> 1)
        while v.any():
            pairs += v & 1
            v >>= 1
        assert np.array_equal(s, np.where(pairs % 2 == 0, 1, -1).astype(np.int8))


def test_rudin_shapiro_cap_and_validation():
    with pytest.raises(SizeCapError):
        rudin_shapiro(25)
    with pytest.raises(ValueError):
        rudin_shapiro(-1)


def test_rudin_shapiro_sigma_max_flatness():
    for k in range(4, 13):
        n = 1 << k
        r = report(eigenvalues_fft(rudin_shapiro(k)))
        assert r.sigma_max <= math.sqrt(2.0) * math.sqrt(n) + 1e-6


# --- random baseline --------------------------------------------------------


def test_random_signs_deterministic():
    a = random_signs(8, 42)
    assert a == random_signs(8, 42)
    assert a != random_signs(8, 43)
    with pytest.raises(ValueError):
        random_signs(0, 1)


def test_random_signs_unbiased():
    # grand mean concentrates fast; per-coordinate means only as 1/sqrt(seeds)
    n, seeds = 4096, 64
    acc = np.zeros(n)
    for seed in range(seeds):
        acc += random_signs(n, seed).as_floats()
    acc /= seeds
    assert abs(acc.mean()) <= 0.05
    assert np.max(np.abs(acc)) <= 4.5 / math.sqrt(seeds)


# --- primality and Legendre -------------------------------------------------


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 101, 1009, 3571}
    for n in range(-3, 120):
        assert is_prime(n) == (n in primes or (n > 1 and all(n % d for d in range(2, n))))
    assert is_prime(2**31 - 1)
    assert not is_prime(3571 * 3573)


def test_legendre_symbol():
    assert [legendre_symbol(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]
    assert legendre_symbol(14, 7) == 0


def test_legendre_base_vector():
    v = legendre_modified(LegendreParams(7, 0, 0))
    assert list(v.signs) == [1, 1, 1, -1, 1, -1, -1]
    vals = eigenvalues_fft(v).values
    assert abs(vals[0] - 1.0) <= 1e-12
    mods = np.abs(vals[1:])
    assert np.all(mods >= math.sqrt(7) - 1 - 1e-9)
    assert np.all(mods <= math.sqrt(7) + 1 + 1e-9)


def test_legendre_gauss_band_various_primes():
    for q in [7, 101, 1009]:
        v = legendre_modified(LegendreParams(q, 0, 0))
        vals = eigenvalues_fft(v).values
        assert abs(vals[0] - 1.0) <= 1e-9
        mods = np.abs(vals[1:])
        assert np.max(np.abs(mods - math.sqrt(q))) <= 1.0 + 1e-9


def test_legendre_flip_moves_dc():
    assert default_flip_count(7) == 1
    assert default_flip_count(3571) == 30
    v = legendre_modified(LegendreParams(7, 0))
    assert abs(eigenvalues_fft(v).values[0] - 3.0) <= 1e-12  # 1 + 2*flips
    v2 = legendre_modified(LegendreParams(101, 3))
    assert abs(eigenvalues_fft(v2).values[0] - (1 + 2 * default_flip_count(101))) <= 1e-9


def test_legendre_flips_only_remove_minus_ones():
    base = legendre_modified(LegendreParams(101, 0, 0))
    flipped = legendre_modified(LegendreParams(101, 0))
    diff = flipped.signs.astype(int) - base.signs.astype(int)
    assert set(np.unique(diff)) <= {0, 2}
    assert int(np.count_nonzero(diff)) == default_flip_count(101)


def test_legendre_validation():
    with pytest.raises(ValueError):
        legendre_modified(LegendreParams(9, 0))
    with pytest.raises(ValueError):
        legendre_modified(LegendreParams(2, 0))
    with pytest.raises(ValueError):
        legendre_modified(LegendreParams(7, 0, 4))  # only 3 non-residues
    with pytest.raises(ValueError):
        legendre_modified(LegendreParams(7, 0, -1))


def test_legendre_deterministic_per_seed():
    a = legendre_modified(LegendreParams(101, 5))
    assert a == legendre_modified(LegendreParams(101, 5))
    assert a != legendre_modified(LegendreParams(101, 6))


# --- CEF iteration ----------------------------------------------------------


def test_cef_examples():
    st = cef_iterate(cef_start(SignVector([1, 1])))
    assert list(st.coefficients.signs) == [1, 1, 1, 1]
    assert st.degree == 3
    st2 = cef_iterate(cef_start(SignVector([1, 1, -1])))
    assert list(st2.coefficients.signs) == [1, 1, -1, 1, 1, -1, -1, -1, 1]
    assert st2.degree == 8


def test_cef_signs_and_degree_random_seeds():
    rng = SplitMix64(2024)
    for _ in range(100):
        d = 1 + rng.next_below(8)
        vec = SignVector(rng.signs(d + 1))
        st = cef_iterate(cef_start(vec))
        assert st.degree == d * (d + 2)
        assert set(np.unique(st.coefficients.signs)) <= {-1, 1}
        assert st.generation == 1
        assert len(st.min_modulus_history) == 2


def test_cef_matches_polynomial_product():
    vec = SignVector([1, -1, 1, 1])
    st = cef_iterate(cef_start(vec))
    a = vec.as_floats()
    d = vec.n - 1
    spread = np.zeros(d * (d + 1) + 1)
    spread[:: d + 1] = a  # coefficients of P(z^{d+1})
    full = np.convolve(a, spread)
    assert full.size == st.coefficients.n
    assert np.array_equal(st.coefficients.as_floats(), full)


def test_cef_pointwise_modulus_identity():
    vec = SignVector([1, -1, 1, 1, -1, 1, 1])
    d = vec.n - 1
    st = cef_iterate(cef_start(vec))
    m = 64 * st.coefficients.n
    _, q_vals = circle_profile(st.coefficients, m)
    _, p_vals = circle_profile(vec, m)
    stretched = p_vals[(np.arange(m) * (d + 1)) % m]
    lhs = np.abs(q_vals)
    rhs = np.abs(p_vals) * np.abs(stretched)
    assert np.max(np.abs(lhs - rhs)) <= 1e-8 * max(1.0, rhs.max())


def test_cef_length_cap():
    st = cef_start(SignVector([1, -1] * 8))
    with pytest.raises(SizeCapError):
        cef_iterate(st, length_cap=100)


def test_cef_iterate_requires_degree():
    with pytest.raises(ValueError):
        cef_iterate(cef_start(SignVector([1])))


def test_seed12_frozen_constant():
    seed = cef_seed12()
    assert seed.n == 13
    assert seed.signs[12] == 1
    gmin = grid_min_modulus(seed, samples=4096)
    assert gmin > 1.0
    assert abs(gmin - _SEED12_GRID_MIN) <= 1e-12


def test_seed12_regeneration():
    found, gmin = search_degree12_seed()
    assert found == cef_seed12()
    assert abs(gmin - _SEED12_GRID_MIN) <= 1e-12
