import math

import numpy as np
import pytest

from circhad.errors import SizeCapError
from circhad.rng import sign_stream
from circhad.signs import SignVector
from circhad.spectrum import (
    apply_circulant,
    circle_profile,
    dense_apply_oracle,
    deviation_statistic,
    deviation_via_matrix_action,
    eigenvalues_fft,
    eigenvalues_naive,
    fourier_unit_vectors,
    grid_min_modulus,
    report,
)
from circhad.constructions import LegendreParams, legendre_modified, rudin_shapiro


def test_naive_known_values():
    assert np.allclose(eigenvalues_naive(SignVector([-1, 1, 1, 1])).values, [2, -2, -2, -2], atol=1e-12)
    assert np.allclose(eigenvalues_naive(SignVector([1])).values, [1])
    assert np.allclose(eigenvalues_naive(SignVector([1, 1])).values, [2, 0], atol=1e-12)


def test_fft_known_values():
    assert np.allclose(eigenvalues_fft(SignVector([-1, 1, 1, 1])).values, [2, -2, -2, -2], atol=1e-12)
    ones8 = eigenvalues_fft(SignVector([1] * 8)).values
    assert np.allclose(ones8, [8, 0, 0, 0, 0, 0, 0, 0], atol=1e-12)


def test_naive_cap():
    with pytest.raises(SizeCapError):
        eigenvalues_naive(SignVector([1] * 10), cap=8)


def test_fft_matches_naive_sampled():
    for n in [1, 2, 3, 4, 5, 16, 17, 64, 100, 257, 513]:
        for seed in range(3):
            s = SignVector(sign_stream(1000 * n + seed, n))
            a = eigenvalues_naive(s).values
            b = eigenvalues_fft(s).values
            assert np.max(np.abs(a - b)) <= 1e-9 * math.sqrt(n)


def test_conjugate_symmetry_and_integer_dc():
    for n in [2, 3, 8, 101, 3571]:
        s = SignVector(sign_stream(n, n))
        vals = eigenvalues_fft(s).values
        assert np.max(np.abs(vals[1:][::-1] - np.conj(vals[1:]))) <= 1e-10 if n > 1 else True
        dc = vals[0]
        assert abs(dc.imag) <= 1e-10
        assert abs(dc.real - round(dc.real)) <= 1e-9
        assert (round(dc.real) - n) % 2 == 0
        assert abs(dc.real) <= n + 1e-9


def test_parseval():
    for n in [5, 64, 513]:
        s = SignVector(sign_stream(n + 7, n))
        vals = eigenvalues_fft(s).values
        total = float(np.sum(np.abs(vals) ** 2))
        assert abs(total - n * n) <= 1e-8 * n * n


def test_report_examples():
    r = report(eigenvalues_fft(SignVector([-1, 1, 1, 1])))
    assert abs(r.condition_number - 1.0) <= 1e-12
    assert r.deviation <= 1e-12
    r2 = report(eigenvalues_fft(SignVector([1, 1])))
    assert math.isinf(r2.condition_number)
    assert r2.to_json_dict()["kappa"] == "inf"
    r3 = report(eigenvalues_fft(SignVector([1, 1, -1])))
    assert abs(r3.sigma_min - 1.0) <= 1e-12
    assert abs(r3.sigma_max - 2.0) <= 1e-12
    assert abs(r3.condition_number - 2.0) <= 1e-12
    assert abs(r3.deviation - (math.sqrt(3) - 1.0)) <= 1e-12


def test_report_deviation_matches_recomputation():
    for n in [3, 10, 37]:
        s = SignVector(sign_stream(n * 3, n))
        sp = eigenvalues_fft(s)
        r = report(sp)
        direct = float(np.max(np.abs(sp.moduli() - math.sqrt(n))))
        assert r.deviation == direct
        assert r.sigma_min <= r.sigma_max
        assert math.isinf(r.condition_number) or r.condition_number >= 1.0


def test_apply_circulant_examples():
    s = SignVector([-1, 1, 1, 1])
    assert np.allclose(apply_circulant(s, [1, 0, 0, 0]), [-1, 1, 1, 1], atol=1e-12)
    y = apply_circulant(s, [1, 1, 1, 1])
    assert np.allclose(y, [2, 2, 2, 2], atol=1e-12)
    assert abs(np.linalg.norm(y) / 2.0 - 2.0) <= 1e-12  # norm ratio sqrt(4)
    assert np.allclose(dense_apply_oracle(SignVector([1, 1]), [1, -1]), [0, 0], atol=1e-12)
    col = dense_apply_oracle(SignVector([1, -1, 1]), [1, 0, 0])
    assert np.allclose(col, [1, -1, 1])
    with pytest.raises(ValueError):
        apply_circulant(s, [1, 0])
    with pytest.raises(SizeCapError):
        dense_apply_oracle(SignVector([1] * 10), np.zeros(10), cap=8)


def test_apply_matches_dense_and_norm_bounds():
    rng = np.random.default_rng(5)
    for n in [3, 64, 257]:
        for trial in range(5):
            s = SignVector(sign_stream(31 * n + trial, n))
            x = rng.standard_normal(n)
            fast = apply_circulant(s, x)
            slow = dense_apply_oracle(s, x)
            assert np.max(np.abs(fast - slow)) <= 1e-9 * max(1.0, np.linalg.norm(x))
            r = report(eigenvalues_fft(s))
            ratio = np.linalg.norm(fast) / np.linalg.norm(x)
            assert r.sigma_min - 1e-9 <= ratio <= r.sigma_max + 1e-9


def test_fourier_unit_vectors_realize_singular_values():
    for n in [4, 9, 32]:
        s = SignVector(sign_stream(n + 500, n))
        mods = eigenvalues_fft(s).moduli()
        k = np.arange(n)
        for j in range(n):
            c = np.cos(2 * np.pi * j * k / n)
            x = c / np.linalg.norm(c)
            achieved = np.linalg.norm(apply_circulant(s, x))
            assert abs(achieved - mods[j]) <= 1e-8


def test_matrix_action_bridge():
    for n in [3, 8, 25, 101]:
        s = SignVector(sign_stream(2 * n + 1, n))
        assert abs(deviation_statistic(s) - deviation_via_matrix_action(s)) <= 1e-8
        assert fourier_unit_vectors(n).shape[0] <= 2 * n


def test_circle_profile():
    t, v = circle_profile(SignVector([1, 1]), 4)
    assert abs(v[2]) <= 1e-12  # p(e^{i*pi}) = 0
    s = SignVector(sign_stream(77, 12))
    sp = eigenvalues_fft(s)
    t, vals = circle_profile(s, 4 * 12)
    assert np.max(np.abs(vals[::4] - sp.values)) <= 1e-9
    assert np.abs(vals).min() <= report(sp).sigma_min + 1e-9
    with pytest.raises(ValueError):
        circle_profile(s, 1)


def test_circle_profile_window():
    s = SignVector(sign_stream(9, 40))
    t, vals = circle_profile(s, 100, window=(1.0, 1.05))
    assert t[0] == 1.0 and t[-1] < 1.05  # endpoint-exclusive
    coeffs = s.as_floats()
    direct = np.array([np.sum(coeffs * np.exp(1j * tt * np.arange(40))) for tt in t])
    assert np.max(np.abs(vals - direct)) <= 1e-9
    with pytest.raises(ValueError):
        circle_profile(s, 10, window=(2.0, 1.0))


def test_rudin_shapiro_circle_flatness():
    s = rudin_shapiro(12)  # length 4096
    _, vals = circle_profile(s, 1 << 18)
    assert np.abs(vals).max() <= math.sqrt(2.0) * math.sqrt(4096) + 1e-6


def test_legendre_instance_matches_naive():
    vec = legendre_modified(LegendreParams(3571, 7))
    fast = report(eigenvalues_fft(vec))
    slow = report(eigenvalues_naive(vec))
    assert abs(fast.deviation - slow.deviation) <= 1e-9 * math.sqrt(3571)
    mods = eigenvalues_fft(vec).moduli()
    assert np.all(mods >= fast.sqrt_n - fast.deviation - 1e-9)
    assert np.all(mods <= fast.sqrt_n + fast.deviation + 1e-9)


def test_grid_min_modulus():
    s = SignVector([1, 1])
    assert grid_min_modulus(s, samples=4) <= 1e-12  # grid hits the zero at t=pi
    val = grid_min_modulus(np.array([1.0, 1.0, -1.0]))
    assert 0 <= val <= 1.0 + 1e-12  # true circle min is below the root-of-unity min of 1
