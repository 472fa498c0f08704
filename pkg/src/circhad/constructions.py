"""Explicit sign-vector constructions.

Four families, each yielding the coefficient vector of a +-1 polynomial /
the first column of a circulant:

* `rudin_shapiro` -- the Golay-Rudin-Shapiro recurrence, whose circle
  maximum is sqrt(2)*sqrt(n);
* `random_signs` -- the uniform seeded baseline, circle maximum near
  sqrt(n log n);
* `legendre_modified` -- Legendre-symbol circulant for prime q with a few
  seeded -1 -> +1 flips, the construction whose moduli concentrate in a
  band of width about q^(1/4) around sqrt(q);
* `cef_iterate` / `cef_seed12` -- the Carroll-Eustice-Figiel squaring map
  P(z) -> P(z) * P(z^{d+1}), which keeps coefficients in +-1 while at least
  squaring the minimum modulus on the circle.

All randomness flows through the SplitMix64 streams in `rng`, so every
construction is bit-reproducible from (params, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeCapError
from .rng import SplitMix64, sign_stream
from .signs import SignVector
from .spectrum import grid_min_modulus

RUDIN_SHAPIRO_MAX_K = 24
CEF_LENGTH_CAP = 1 << 26
SEED12_GRID = 4096


# ---------------------------------------------------------------------------
# Rudin-Shapiro and the random baseline


def rudin_shapiro(k: int) -> SignVector:
    """Length-2^k Rudin-Shapiro coefficients.

    Pair recurrence P <- P||Q, Q <- P||(-Q) from P = Q = (1,); entry m
    equals (-1)^(number of "11" pairs in the binary expansion of m).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > RUDIN_SHAPIRO_MAX_K:
        raise SizeCapError(
            "k=%d exceeds the Rudin-Shapiro cap %d" % (k, RUDIN_SHAPIRO_MAX_K),
            RUDIN_SHAPIRO_MAX_K,
        )
    p = np.array([1], dtype=np.int8)
    q = np.array([1], dtype=np.int8)
    for _ in range(k):
        p, q = np.concatenate([p, q]), np.concatenate([p, -q])
    return SignVector(p)


def random_signs(n: int, seed: int) -> SignVector:
    """n independent +-1 entries from the SplitMix64 stream for `seed`."""
    if n < 1:
        raise ValueError("n must be positive")
    return SignVector(sign_stream(seed, n))


# ---------------------------------------------------------------------------
# Legendre circulants


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set covers all 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre_symbol(a: int, q: int) -> int:
    """(a|q) by Euler's criterion; 0 when q divides a."""
    ls = pow(a % q, (q - 1) // 2, q)
    return -1 if ls == q - 1 else ls


def default_flip_count(q: int) -> int:
    """ceil((sqrt(q) - 1) / 2): makes the zero-frequency eigenvalue 1 + 2*flips
    land next to sqrt(q), the level the Gauss-sum frequencies already sit at."""
    return math.ceil((math.sqrt(q) - 1.0) / 2.0)


@dataclass(frozen=True)
class LegendreParams:
    """Prime dimension, stream seed, and flip count (None = default recipe)."""

    q: int
    seed: int
    flips: int | None = None

    def resolved_flips(self) -> int:
        return default_flip_count(self.q) if self.flips is None else self.flips


def legendre_modified(params: LegendreParams) -> SignVector:
    """Legendre-symbol circulant with seeded -1 -> +1 flips.

    Base vector: a_0 = +1, a_j = (j|q) for j >= 1. Then `flips` distinct
    indices, drawn uniformly from the -1 positions, are flipped to +1; the
    flips move lambda_0 = p(1) up to 1 + 2*flips while each perturbs the
    other eigenvalues by 2 times a root-of-unity sum.
    """
    q, seed = params.q, params.seed
    if q < 3 or not is_prime(q):
        raise ValueError("q=%d must be a prime >= 3" % q)
    flips = params.resolved_flips()
    if flips < 0:
        raise ValueError("flips must be nonnegative")
    if flips > (q - 1) // 2:
        raise ValueError(
            "flips=%d exceeds the %d quadratic non-residues of q=%d" % (flips, (q - 1) // 2, q)
        )
    signs = np.empty(q, dtype=np.int8)
    signs[0] = 1
    residues = np.zeros(q, dtype=bool)
    j = np.arange(1, (q + 1) // 2, dtype=np.int64)
    residues[(j * j) % q] = True
    signs[1:] = np.where(residues[1:], 1, -1)
    if flips:
        pool = np.flatnonzero(signs == -1).tolist()
        chosen = SplitMix64(seed).choose(pool, flips)
        signs[np.array(chosen, dtype=np.int64)] = 1
    return SignVector(signs)


# ---------------------------------------------------------------------------
# Carroll-Eustice-Figiel iteration


@dataclass(frozen=True)
class CefState:
    """One stage of the squaring iteration, with its grid-minimum history."""

    coefficients: SignVector
    generation: int
    min_modulus_history: tuple[float, ...]

    @property
    def degree(self) -> int:
        return self.coefficients.n - 1


def cef_start(vector: SignVector) -> CefState:
    """Wrap a seed polynomial as generation 0 of the iteration."""
    return CefState(
        coefficients=vector,
        generation=0,
        min_modulus_history=(grid_min_modulus(vector),),
    )


def cef_iterate(state: CefState, length_cap: int = CEF_LENGTH_CAP) -> CefState:
    """One squaring step: coefficients of Q(z) = P(z) * P(z^{d+1}).

    Exponent i + (d+1)*j decomposes uniquely (base d+1 digits), so the new
    coefficient there is a_i * a_j and stays in +-1; the degree becomes
    d*(d+2). On the circle |Q(e^{it})| = |P(e^{it})| * |P(e^{i(d+1)t})|, so
    the true minimum modulus at least squares.
    """
    d = state.degree
    if d < 1:
        raise ValueError("iteration needs degree >= 1")
    new_len = (d + 1) * (d + 1)
    if new_len > length_cap:
        raise SizeCapError(
            "iterate would reach length %d, over the cap %d" % (new_len, length_cap),
            length_cap,
        )
    a = state.coefficients.signs
    coeffs = np.outer(a, a).ravel().astype(np.int8)
    vec = SignVector(coeffs)
    return CefState(
        coefficients=vec,
        generation=state.generation + 1,
        min_modulus_history=state.min_modulus_history + (grid_min_modulus(vec),),
    )


def search_degree12_seed(grid: int = SEED12_GRID) -> tuple[SignVector, float]:
    """Exhaustive search for the degree-12 seed with the largest grid minimum.

    Scans all 2^12 sign patterns with the leading (z^12) coefficient fixed
    to +1 -- negation leaves |P| unchanged, so this halving loses nothing --
    and maximizes min |P(e^{it})| over a `grid`-point circle grid. Ties
    break toward the lexicographically smallest vector (+1 before -1), so
    the result does not depend on how the scan is partitioned.
    """
    t = 2.0 * np.pi * np.arange(grid) / grid
    basis = np.exp(1j * np.outer(t, np.arange(13)))  # (grid, 13)
    best_min = -1.0
    best_signs = None
    codes = np.arange(1 << 12)
    # code order is lexicographic order of (a_0..a_11) with +1 before -1,
    # so "first strict improvement wins" realizes the tie-break.
    bits = (codes[:, None] >> np.arange(11, -1, -1)[None, :]) & 1
    signs_all = np.empty((1 << 12, 13), dtype=np.float64)
    signs_all[:, :12] = 1.0 - 2.0 * bits
    signs_all[:, 12] = 1.0
    chunk = 512
    for lo in range(0, 1 << 12, chunk):
        block = signs_all[lo:lo + chunk]
        mins = np.abs(block @ basis.T).min(axis=1)
        i = int(np.argmax(mins))  # argmax keeps the first (smallest-code) maximum
        if mins[i] > best_min:
            best_min = float(mins[i])
            best_signs = block[i].astype(np.int8)
    return SignVector(best_signs), best_min


# Result of search_degree12_seed(), frozen so cef_seed12 is table lookup;
# the regeneration test re-runs the search and compares.
_SEED12_SIGNS = (1, -1, 1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1)
_SEED12_GRID_MIN = 3.019743364235224


def cef_seed12() -> SignVector:
    """The searched degree-12 seed; its grid minimum exceeds 1, so the
    iteration grows."""
    return SignVector(np.array(_SEED12_SIGNS, dtype=np.int8))
