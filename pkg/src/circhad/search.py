"""Extremal-circulant search: exact at small n, stochastic above.

The exhaustive path enumerates exactly one representative per orbit of the
signcore symmetry group (negation x rotation x reversal, order 4n). Every
canonical representative starts with +1, so candidates are the integers
0 .. 2^(n-1)-1 read as the sign bits of positions 1..n-1; candidate code
order coincides with the lexicographic order used for tie-breaking, which
is what makes the partitioned scan independent of worker count.

The heuristics (steepest-descent local search, simulated annealing) walk
single sign flips. A flip of coordinate k moves every eigenvalue by
-2 * s_k * w^{jk}, an O(n) rank-one frequency update; a full transform is
recomputed every 4096 accepted flips and compared against the running
values to guard against floating-point drift.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import SizeCapError, ToleranceViolation
from .rng import SplitMix64
from .signs import SignVector, canonicalize
from .spectrum import SINGULAR_TOL, SpectralReport, eigenvalues_fft, report

EXHAUSTIVE_CAP = 24
OBJECTIVES = ("condition", "deviation")
DRIFT_CHECK_EVERY = 4096
DRIFT_TOL = 1e-8


def _check_objective(objective: str) -> str:
    if objective not in OBJECTIVES:
        raise ValueError("objective must be one of %s, got %r" % (OBJECTIVES, objective))
    return objective


def _objective_values(mods: np.ndarray, n: int, objective: str) -> np.ndarray:
    """Objective for each row of a (..., n) modulus array. Lower is better;
    singular circulants score +inf on the condition objective."""
    smin = mods.min(axis=-1)
    smax = mods.max(axis=-1)
    if objective == "condition":
        safe = np.maximum(smin, np.finfo(np.float64).tiny)
        with np.errstate(over="ignore"):
            return np.where(smin < SINGULAR_TOL * n, np.inf, smax / safe)
    sqrt_n = math.sqrt(n)
    return np.maximum(smax - sqrt_n, sqrt_n - smin)


@dataclass(frozen=True)
class SearchOutcome:
    """Best vector found for an objective, its report, and scan metadata."""

    n: int
    objective: str
    exact: bool
    best: SignVector
    report: SpectralReport
    orbits_visited: int
    evaluations: int
    seed: int | None

    def objective_value(self) -> float:
        if self.objective == "condition":
            return self.report.condition_number
        return self.report.deviation

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "objective": self.objective,
            "exact": self.exact,
            "best": self.best.to_json_dict(),
            "report": self.report.to_json_dict(),
            "orbits_visited": self.orbits_visited,
            "evaluations": self.evaluations,
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# canonical enumeration


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def _image_weight_matrix(n: int, decimate: bool) -> np.ndarray:
    """Weight columns turning a bit row b into the keys of half its images.

    Column (r) carries the key of rotate(b, r); column (rev, r) the key of
    rotate(reverse(b), r). Complement keys (negation) are 2^n - 1 - key, so
    they need no columns. With decimate=True the columns run over every
    index decimation composed with every rotation, which subsumes reversal.
    Float64 is exact here: keys stay below 2^n <= 2^53.
    """
    j = np.arange(n, dtype=np.int64)
    cols = []
    if decimate:
        for u in _units(n) or [1]:
            u_inv = pow(u, -1, n) if n > 1 else 0
            for r in range(n):
                cols.append(np.float64(2.0) ** (n - 1 - ((u_inv * j - r) % n)))
    else:
        for r in range(n):
            cols.append(2.0 ** (n - 1 - ((j - r) % n)))
        for r in range(n):
            cols.append(2.0 ** (n - 1 - ((n - 1 - j - r) % n)))
    return np.column_stack(cols)


def canonical_chunks(
    n: int,
    chunk_size: int = 1 << 14,
    code_lo: int = 0,
    code_hi: int | None = None,
    decimate: bool = False,
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (codes, bit_rows, orbit_sizes) for canonical representatives.

    Scans candidate codes in [code_lo, code_hi) in windows aligned to
    chunk_size, so chunk contents do not depend on how the full range was
    split across workers.
    """
    total = 1 << (n - 1)
    if code_hi is None:
        code_hi = total
    weights = _image_weight_matrix(n, decimate)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    lo = (code_lo // chunk_size) * chunk_size
    while lo < code_hi:
        start = max(lo, code_lo)
        stop = min(lo + chunk_size, code_hi)
        lo += chunk_size
        codes = np.arange(start, stop, dtype=np.int64)
        bits = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        keys = np.rint(bits @ weights).astype(np.int64)
        keys = np.concatenate([keys, (np.int64((1 << n) - 1)) - keys], axis=1)
        mask = keys.min(axis=1) == codes
        if not mask.any():
            continue
        kept = keys[mask]
        kept.sort(axis=1)
        orbit_sizes = 1 + np.count_nonzero(np.diff(kept, axis=1), axis=1)
        yield codes[mask], bits[mask].astype(np.int8), orbit_sizes.astype(np.int64)


def orbit_size_sum(n: int, decimate: bool = False) -> int:
    """Sum of orbit sizes over all canonical representatives (must be 2^n)."""
    return sum(int(o.sum()) for _, _, o in canonical_chunks(n, decimate=decimate))


@dataclass(frozen=True)
class _RangeResult:
    value: float
    code: int
    orbits: int
    evaluations: int


def _dft_matrix(n: int) -> np.ndarray:
    idx = (np.arange(n, dtype=np.int64)[:, None] * np.arange(n, dtype=np.int64)[None, :]) % n
    return np.exp(2j * np.pi * np.arange(n) / n)[idx]


def _scan_range(
    n: int,
    code_lo: int,
    code_hi: int,
    objective: str,
    dft: np.ndarray,
    chunk_size: int,
    decimate: bool,
) -> _RangeResult:
    best_value = math.inf
    best_code = -1
    orbits = 0
    evals = 0
    for codes, bits, _sizes in canonical_chunks(
        n, chunk_size=chunk_size, code_lo=code_lo, code_hi=code_hi, decimate=decimate
    ):
        signs = 1.0 - 2.0 * bits.astype(np.float64)
        mods = np.abs(signs @ dft)
        values = _objective_values(mods, n, objective)
        orbits += codes.size
        evals += codes.size
        i = int(np.argmin(values))  # first minimum = smallest code on ties
        if values[i] < best_value or (values[i] == best_value and codes[i] < best_code):
            best_value = float(values[i])
            best_code = int(codes[i])
    return _RangeResult(best_value, best_code, orbits, evals)


def _code_to_vector(n: int, code: int) -> SignVector:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (np.int64(code) >> shifts) & 1
    return SignVector((1 - 2 * bits).astype(np.int8))


def exhaustive_search(
    n: int,
    objective: str,
    cap: int = EXHAUSTIVE_CAP,
    threads: int = 1,
    chunk_size: int = 1 << 14,
    decimate: bool = False,
) -> SearchOutcome:
    """Global optimum over all 2^n sign vectors, one evaluation per orbit.

    Deterministic for every thread count: the candidate range is split into
    contiguous chunk-aligned spans, and the reduction orders by (objective
    value, candidate code).
    """
    _check_objective(objective)
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise SizeCapError("n=%d exceeds the exhaustive cap %d" % (n, cap), cap)
    dft = _dft_matrix(n)
    total = 1 << (n - 1)
    threads = max(1, min(threads, (total + chunk_size - 1) // chunk_size))
    if threads == 1:
        results = [_scan_range(n, 0, total, objective, dft, chunk_size, decimate)]
    else:
        n_chunks = (total + chunk_size - 1) // chunk_size
        per = (n_chunks + threads - 1) // threads
        spans = []
        for w in range(threads):
            lo = w * per * chunk_size
            hi = min((w + 1) * per * chunk_size, total)
            if lo < hi:
                spans.append((lo, hi))
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            futures = [
                pool.submit(_scan_range, n, lo, hi, objective, dft, chunk_size, decimate)
                for lo, hi in spans
            ]
            results = [f.result() for f in futures]
    best = min(results, key=lambda r: (r.value, r.code))
    vec = _code_to_vector(n, best.code)
    return SearchOutcome(
        n=n,
        objective=objective,
        exact=True,
        best=vec,
        report=report(eigenvalues_fft(vec)),
        orbits_visited=sum(r.orbits for r in results),
        evaluations=sum(r.evaluations for r in results),
        seed=None,
    )


# ---------------------------------------------------------------------------
# heuristics


def _roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def _flip_delta(roots: np.ndarray, s: np.ndarray, k: int) -> np.ndarray:
    """Eigenvalue shift caused by flipping coordinate k."""
    n = s.size
    return -2.0 * s[k] * roots[(k * np.arange(n)) % n]


class _Walker:
    """Mutable flip-walk state: sign vector, its spectrum, drift guard."""

    def __init__(self, signs: np.ndarray, n: int):
        self.n = n
        self.s = signs.astype(np.int8).copy()
        self.roots = _roots(n)
        self.lam = eigenvalues_fft(SignVector(self.s)).values.copy()
        self.accepted = 0

    def value(self, objective: str) -> float:
        return float(_objective_values(np.abs(self.lam), self.n, objective))

    def flip(self, k: int):
        self.lam = self.lam + _flip_delta(self.roots, self.s, k)
        self.s[k] = -self.s[k]
        self.accepted += 1
        if self.accepted % DRIFT_CHECK_EVERY == 0:
            fresh = eigenvalues_fft(SignVector(self.s)).values
            drift = float(np.max(np.abs(fresh - self.lam)))
            if drift > DRIFT_TOL * max(1.0, float(np.max(np.abs(fresh)))):
                raise ToleranceViolation(
                    "incremental spectrum drifted %.3e from a fresh transform" % drift
                )
            self.lam = fresh.copy()

    def vector(self) -> SignVector:
        return SignVector(self.s.copy())


class _Best:
    """Running optimum with the deterministic (value, canonical key) order."""

    def __init__(self):
        self.value = math.inf
        self.key = None
        self.vector = None

    def offer(self, value: float, vec: SignVector):
        if self.vector is None or value < self.value:
            rep = canonicalize(vec).representative
            self.value, self.key, self.vector = value, rep.key(), rep
            return
        if value == self.value:
            rep = canonicalize(vec).representative
            if rep.key() < self.key:
                self.key, self.vector = rep.key(), rep


def local_search(
    n: int,
    objective: str,
    seed: int,
    restarts: int = 8,
    max_iters: int = 10_000,
    start: SignVector | None = None,
) -> SearchOutcome:
    """Steepest descent over single sign flips from seeded random starts.

    Each sweep evaluates all n one-flip neighbors through the rank-one
    frequency update and takes the best strictly-improving one, so the
    returned vector is a local minimum of its one-flip neighborhood
    (unless max_iters stopped it first). Restart 0 may be pinned with an
    explicit start vector.
    """
    _check_objective(objective)
    if n < 1:
        raise ValueError("n must be positive")
    if start is not None and start.n != n:
        raise ValueError("start vector has n=%d, expected %d" % (start.n, n))
    rng = SplitMix64(seed)
    best = _Best()
    evaluations = 0
    k_idx = np.arange(n, dtype=np.int64)
    block = max(1, (1 << 21) // max(n, 1))
    for r in range(restarts):
        signs = rng.signs(n)  # keep stream position restart-independent
        if r == 0 and start is not None:
            signs = start.signs
        walker = _Walker(signs, n)
        value = walker.value(objective)
        evaluations += 1
        for _ in range(max_iters):
            best_k = -1
            best_neighbor = value
            for lo in range(0, n, block):
                kb = k_idx[lo:lo + block]
                shift = -2.0 * walker.s[kb, None] * walker.roots[(kb[:, None] * k_idx[None, :]) % n]
                mods = np.abs(walker.lam[None, :] + shift)
                vals = _objective_values(mods, n, objective)
                evaluations += kb.size
                i = int(np.argmin(vals))
                if vals[i] < best_neighbor:
                    best_neighbor = float(vals[i])
                    best_k = lo + i
            if best_k < 0:
                break
            walker.flip(best_k)
            value = best_neighbor
        value = walker.value(objective)  # settle on the walker's own books
        best.offer(value, walker.vector())
    rep = report(eigenvalues_fft(best.vector))
    return SearchOutcome(
        n=n,
        objective=objective,
        exact=False,
        best=best.vector,
        report=rep,
        orbits_visited=0,
        evaluations=evaluations,
        seed=seed,
    )


@dataclass(frozen=True)
class AnnealSchedule:
    """Initial temperature (None = deviation of the starting point),
    multiplicative cooling per epoch, and epoch count; n flips per epoch."""

    t0: float | None = None
    cooling: float = 0.98
    epochs: int = 500

    def validate(self):
        if self.t0 is not None and not self.t0 > 0:
            raise ValueError("initial temperature must be positive")
        if not (0.0 < self.cooling < 1.0):
            raise ValueError("cooling factor must lie in (0, 1)")
        if self.epochs < 0 or int(self.epochs) != self.epochs:
            raise ValueError("epochs must be a nonnegative integer")


def anneal(
    n: int,
    objective: str,
    seed: int,
    schedule: AnnealSchedule | None = None,
    start: SignVector | None = None,
) -> SearchOutcome:
    """Metropolis walk over single sign flips, returning the best state visited.

    Never worse than its own starting point: the start is scored and kept
    as the initial best, and zero epochs simply return it.
    """
    _check_objective(objective)
    if n < 1:
        raise ValueError("n must be positive")
    schedule = schedule or AnnealSchedule()
    schedule.validate()
    if start is not None and start.n != n:
        raise ValueError("start vector has n=%d, expected %d" % (start.n, n))
    rng = SplitMix64(seed)
    signs = rng.signs(n)
    if start is not None:
        signs = start.signs
    walker = _Walker(signs, n)
    value = walker.value(objective)
    evaluations = 1
    best = _Best()
    best.offer(value, walker.vector())
    # scale-free default: deviation of the starting point
    mods = np.abs(walker.lam)
    temperature = schedule.t0
    if temperature is None:
        sqrt_n = math.sqrt(n)
        temperature = float(max(mods.max() - sqrt_n, sqrt_n - mods.min()))
    for _ in range(schedule.epochs):
        for _ in range(n):
            k = rng.next_below(n)
            lam2 = walker.lam + _flip_delta(walker.roots, walker.s, k)
            val2 = float(_objective_values(np.abs(lam2), n, objective))
            evaluations += 1
            accept = val2 <= value
            if not accept and temperature > 0.0 and math.isfinite(val2):
                accept = rng.next_float() < math.exp(-(val2 - value) / temperature)
            if accept:
                walker.flip(k)
                value = val2
                if val2 < best.value or best.vector is None:
                    best.offer(val2, walker.vector())
        temperature *= schedule.cooling
    rep = report(eigenvalues_fft(best.vector))
    return SearchOutcome(
        n=n,
        objective=objective,
        exact=False,
        best=best.vector,
        report=rep,
        orbits_visited=0,
        evaluations=evaluations,
        seed=seed,
    )
