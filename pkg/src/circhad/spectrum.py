"""Circulant spectra via polynomial evaluation on the unit circle.

The eigenvalues of the circulant with first column (a_0..a_{n-1}) are
lambda_j = p(w^j) with p(z) = a_0 + a_1 z + ... + a_{n-1} z^{n-1} and
w = exp(2*pi*i/n); its singular values are the moduli |lambda_j|. That
identity makes every quantity here a statement about the polynomial p on
the unit circle, and the whole module is built around one primitive:
evaluating p at equispaced points e^{i(t0 + k*delta)}.

The fast path is Bluestein's chirp reduction onto a power-of-two FFT of
length >= 2n-1, which runs in O(n log n) for every n (primes included).
Whenever delta is a rational multiple 2*pi*num/den of the full turn, the
quadratic chirp phases are reduced modulo 2*den in exact integer
arithmetic before any trig is evaluated, so phase accuracy does not decay
with n. The O(n^2) evaluator `eigenvalues_naive` is kept as the
correctness oracle for all of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SizeCapError
from .signs import SignVector

NAIVE_CAP = 4096
DENSE_CAP = 4096
SINGULAR_TOL = 1e-9  # sigma_min below SINGULAR_TOL * n reports kappa = inf


# ---------------------------------------------------------------------------
# chirp-z core


def _pow2_at_least(m: int) -> int:
    return 1 << max(0, m - 1).bit_length()


@lru_cache(maxsize=16)
def _chirp_tables(n: int, m: int, num: int, den: int):
    """Premultiply chirp, postmultiply chirp, and FFT'd filter for one (n, m, delta).

    delta = 2*pi*num/den. Quadratic phases pi*j^2*num/den are reduced mod 2*pi
    exactly: j^2*num mod 2*den stays in int64 for every supported size.
    Returned arrays are read-only so cached tables can be shared across threads.
    """
    L = _pow2_at_least(n + m - 1)
    j = np.arange(max(n, m), dtype=np.int64)
    half_num = (j * j * np.int64(num)) % np.int64(2 * den)
    chirp = np.exp((1j * np.pi / den) * half_num)
    filt = np.zeros(L, dtype=np.complex128)
    filt[:m] = np.conj(chirp[:m])
    if n > 1:
        filt[L - (n - 1):] = np.conj(chirp[1:n])[::-1]
    filt_fft = np.fft.fft(filt)
    pre = chirp[:n]
    post = chirp[:m]
    for arr in (pre, post, filt_fft):
        arr.setflags(write=False)
    return pre, post, filt_fft, L


def _czt_rational(x: np.ndarray, m: int, num: int, den: int) -> np.ndarray:
    """Evaluate p with coefficients x at e^{i*2*pi*num*k/den}, k = 0..m-1.

    x may be (n,) or batched (B, n); evaluation runs along the last axis.
    """
    n = x.shape[-1]
    pre, post, filt_fft, L = _chirp_tables(n, m, num, den)
    u = np.zeros(x.shape[:-1] + (L,), dtype=np.complex128)
    u[..., :n] = x * pre
    conv = np.fft.ifft(np.fft.fft(u, axis=-1) * filt_fft, axis=-1)
    return conv[..., :m] * post


def _czt_window(x: np.ndarray, m: int, t0: float, delta: float) -> np.ndarray:
    """Evaluate p at e^{i*(t0 + k*delta)}, k = 0..m-1, generic float phases.

    Used for short arc windows; full-circle grids go through the exact
    rational path instead.
    """
    n = x.shape[-1]
    L = _pow2_at_least(n + m - 1)
    j = np.arange(max(n, m), dtype=np.float64)
    chirp = np.exp(0.5j * delta * j * j)
    u = np.zeros(x.shape[:-1] + (L,), dtype=np.complex128)
    u[..., :n] = x * np.exp(1j * t0 * j[:n]) * chirp[:n]
    filt = np.zeros(L, dtype=np.complex128)
    filt[:m] = np.conj(chirp[:m])
    if n > 1:
        filt[L - (n - 1):] = np.conj(chirp[1:n])[::-1]
    conv = np.fft.ifft(np.fft.fft(u, axis=-1) * np.fft.fft(filt), axis=-1)
    return conv[..., :m] * chirp[:m]


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues lambda_j = p(w^j) in natural frequency order j = 0..n-1."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("spectrum must be a non-empty 1-d complex sequence")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def moduli(self) -> np.ndarray:
        return np.abs(self.values)


def eigen_rows(signs_matrix: np.ndarray) -> np.ndarray:
    """Batched fast path: eigenvalues of every row of a (B, n) sign matrix."""
    x = np.asarray(signs_matrix, dtype=np.float64)
    n = x.shape[-1]
    return _czt_rational(x, n, 1, n)


def eigenvalues_fft(s: SignVector) -> Spectrum:
    """Eigenvalues via the chirp transform; works for every n in O(n log n)."""
    return Spectrum(_czt_rational(s.as_floats(), s.n, 1, s.n))


def naive_rows(signs_matrix: np.ndarray, cap: int = NAIVE_CAP) -> np.ndarray:
    """Batched O(n^2) oracle: direct evaluation of p at all n-th roots of unity.

    Exponents i*j are reduced mod n in integer arithmetic and looked up in a
    root table, so each term is accurate to a unit in the last place.
    """
    x = np.asarray(signs_matrix, dtype=np.float64)
    n = x.shape[-1]
    if n > cap:
        raise SizeCapError("n=%d exceeds the naive oracle cap %d" % (n, cap), cap)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    out = np.empty(x.shape[:-1] + (n,), dtype=np.complex128)
    i = np.arange(n, dtype=np.int64)
    block = max(1, (1 << 22) // max(n, 1))
    for j0 in range(0, n, block):
        jb = np.arange(j0, min(j0 + block, n), dtype=np.int64)
        idx = (i[:, None] * jb[None, :]) % n
        out[..., j0:j0 + jb.size] = x @ roots[idx]
    return out


def eigenvalues_naive(s: SignVector, cap: int = NAIVE_CAP) -> Spectrum:
    """Correctness oracle for `eigenvalues_fft`; refuses n above the cap."""
    return Spectrum(naive_rows(s.as_floats(), cap=cap))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SpectralReport:
    """Scalar summary of a spectrum: extreme moduli and flatness deviation."""

    n: int
    sigma_min: float
    sigma_max: float
    condition_number: float  # math.inf marks a singular circulant
    sqrt_n: float
    deviation: float
    deviation_normalized: float

    def to_json_dict(self) -> dict:
        kappa = "inf" if math.isinf(self.condition_number) else self.condition_number
        return {
            "n": self.n,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "kappa": kappa,
            "sqrt_n": self.sqrt_n,
            "deviation": self.deviation,
            "deviation_normalized": self.deviation_normalized,
        }


def report(sp: Spectrum) -> SpectralReport:
    """Extreme singular values, condition number, and deviation from sqrt(n).

    Singularity is a value, not an error: sigma_min below SINGULAR_TOL * n
    is reported as condition_number = inf (eigenvalues of a +-1 circulant
    are algebraic integers, so true zeros are exact in the naive path and
    the threshold only has to absorb fast-path rounding).
    """
    mods = sp.moduli()
    n = sp.n
    sigma_min = float(mods.min())
    sigma_max = float(mods.max())
    sqrt_n = math.sqrt(n)
    deviation = max(sigma_max - sqrt_n, sqrt_n - sigma_min)
    if sigma_min < SINGULAR_TOL * n:
        kappa = math.inf
    else:
        kappa = sigma_max / sigma_min
    return SpectralReport(
        n=n,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        condition_number=kappa,
        sqrt_n=sqrt_n,
        deviation=deviation,
        deviation_normalized=deviation / n ** 0.25,
    )


def deviation_statistic(s: SignVector) -> float:
    """max_j | |lambda_j| - sqrt(n) |, the flatness deviation at roots of unity."""
    return report(eigenvalues_fft(s)).deviation


def condition_number(s: SignVector) -> float:
    return report(eigenvalues_fft(s)).condition_number


# ---------------------------------------------------------------------------
# matrix action


def apply_circulant(s: SignVector, x: np.ndarray) -> np.ndarray:
    """A @ x for the circulant A with first column s, via cyclic convolution."""
    vec = np.asarray(x, dtype=np.float64)
    n = s.n
    if vec.shape != (n,):
        raise ValueError("x has shape %r, expected (%d,)" % (vec.shape, n))
    fa = _czt_rational(s.as_floats(), n, -1, n)
    fx = _czt_rational(vec, n, -1, n)
    return (_czt_rational(fa * fx, n, 1, n) / n).real


def dense_apply_oracle(s: SignVector, x: np.ndarray, cap: int = DENSE_CAP) -> np.ndarray:
    """A @ x by materializing the circulant row by row: A[i, j] = a_{(i-j) mod n}."""
    n = s.n
    if n > cap:
        raise SizeCapError("n=%d exceeds the dense oracle cap %d" % (n, cap), cap)
    vec = np.asarray(x, dtype=np.float64)
    if vec.shape != (n,):
        raise ValueError("x has shape %r, expected (%d,)" % (vec.shape, n))
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return s.as_floats()[idx] @ vec


def fourier_unit_vectors(n: int) -> np.ndarray:
    """Real unit vectors spanning the circulant eigenplanes, <= 2n rows.

    Row built from frequency j is the normalized real part of the Fourier
    vector (cos(2*pi*j*k/n))_k, plus the normalized imaginary part whenever
    it is nonzero. Each satisfies ||A x|| = |lambda_j| for every circulant A,
    which is what ties the matrix-norm deviation to the spectral one.
    """
    k = np.arange(n)
    rows = []
    for j in range(n):
        ang = 2.0 * np.pi * j * k / n
        c = np.cos(ang)
        nc = np.linalg.norm(c)
        if nc > 1e-12:
            rows.append(c / nc)
        sn = np.sin(ang)
        ns = np.linalg.norm(sn)
        if ns > 1e-12:
            rows.append(sn / ns)
    return np.array(rows)


def deviation_via_matrix_action(s: SignVector) -> float:
    """Deviation recomputed as max_x | ||A x|| - sqrt(n) | over Fourier unit vectors."""
    sqrt_n = math.sqrt(s.n)
    worst = 0.0
    for x in fourier_unit_vectors(s.n):
        worst = max(worst, abs(float(np.linalg.norm(apply_circulant(s, x))) - sqrt_n))
    return worst


# ---------------------------------------------------------------------------
# unit-circle profiles


def circle_profile(
    s: SignVector,
    samples: int,
    window: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """p(e^{it}) on an endpoint-exclusive equispaced t-grid.

    Default grid covers the full circle [0, 2*pi); with samples a multiple
    of n it contains the n-th roots of unity, so the grid minimum bounds
    sigma_min from below. A (t_lo, t_hi) window restricts to that arc.
    Returns (t, values).
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    coeffs = s.as_floats()
    if window is None:
        t = 2.0 * np.pi * np.arange(samples) / samples
        return t, _czt_rational(coeffs, samples, 1, samples)
    t_lo, t_hi = float(window[0]), float(window[1])
    if not t_hi >= t_lo:
        raise ValueError("window must satisfy t_hi >= t_lo")
    delta = (t_hi - t_lo) / samples
    t = t_lo + delta * np.arange(samples)
    return t, _czt_window(coeffs, samples, t_lo, delta)


def grid_min_modulus(coeffs, samples: int | None = None) -> float:
    """Minimum of |p| over a full-circle grid (default 64 points per coefficient).

    Accepts a SignVector or a raw coefficient array. A grid value, hence an
    upper bound on the true circle minimum; the grid density tracks the
    degree so the gap stays small.
    """
    if isinstance(coeffs, SignVector):
        coeffs = coeffs.as_floats()
    x = np.asarray(coeffs, dtype=np.float64)
    n = x.size
    m = samples if samples is not None else 64 * n
    return float(np.abs(_czt_rational(x, m, 1, m)).min())
