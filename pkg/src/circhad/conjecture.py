"""Empirical probes of the flatness-at-roots-of-unity conjecture.

Three instruments:

* `scan_deviation` -- per-n minimum of the deviation max_j ||lambda_j| - sqrt(n)|,
  exact (exhaustive over orbits) up to a cap, best-of-constructions above it.
  The running minimum of deviation / n^(1/4) over the exact range is an
  empirical lower-envelope candidate for the conjectured constant; above
  the cap the scan only bounds the true minimum from above, and each row
  records which method produced its witness.
* `ryser_verify` -- exact integer autocorrelation over all orbits: at which
  n does a circulant Hadamard matrix exist (expected: 1 and 4 only).
* `legendre_statistics` -- multi-seed condition-number and deviation
  quantiles for the modified Legendre construction at a prime q, the
  statistical stand-in for any single unrecorded instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import LegendreParams, is_prime, legendre_modified, rudin_shapiro
from .errors import SizeCapError
from .search import EXHAUSTIVE_CAP, canonical_chunks, exhaustive_search, local_search
from .signs import SignVector, canonicalize
from .spectrum import SpectralReport, eigenvalues_fft, report


@dataclass(frozen=True)
class ScanRecord:
    """One n of a deviation scan: minimum found, its normalizer, provenance."""

    n: int
    min_deviation: float
    normalized: float  # min_deviation / n^(1/4)
    exact: bool
    method: str
    witness: SignVector


@dataclass(frozen=True)
class SeedStats:
    """Multi-seed quantiles for the Legendre construction at prime q.

    Quantile tuples are (min, 25%, median, 75%, max); normalized_median
    divides the median deviation by q^(1/4) * sqrt(log q), the scale the
    construction is expected to attain.
    """

    q: int
    seeds: int
    kappa_quantiles: tuple[float, float, float, float, float]
    deviation_quantiles: tuple[float, float, float, float, float]
    normalized_median: float

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "seeds": self.seeds,
            "kappa_quantiles": list(self.kappa_quantiles),
            "deviation_quantiles": list(self.deviation_quantiles),
            "normalized_median": self.normalized_median,
        }


def _heuristic_candidates(n: int, seed: int, restarts: int) -> list[tuple[str, SignVector]]:
    cands: list[tuple[str, SignVector]] = []
    if n >= 3 and is_prime(n):
        cands.append(("legendre", legendre_modified(LegendreParams(n, seed))))
    if n >= 1 and (n & (n - 1)) == 0:
        cands.append(("rudin-shapiro", rudin_shapiro(n.bit_length() - 1)))
    out = local_search(n, "deviation", seed=seed, restarts=restarts)
    cands.append(("local-search", out.best))
    return cands


def scan_deviation(
    n_lo: int,
    n_hi: int,
    exact_cap: int = EXHAUSTIVE_CAP,
    seed: int = 0,
    restarts: int = 4,
    threads: int = 1,
) -> list[ScanRecord]:
    """One ScanRecord per n in [n_lo, n_hi].

    n <= exact_cap: exhaustive minimum (exact = True). Above: the best of
    the applicable constructions and a seeded local search, an upper bound
    on the true minimum.
    """
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError("need 1 <= n_lo <= n_hi")
    records = []
    for n in range(n_lo, n_hi + 1):
        if n <= exact_cap:
            out = exhaustive_search(n, "deviation", threads=threads)
            rec = ScanRecord(
                n=n,
                min_deviation=out.report.deviation,
                normalized=out.report.deviation_normalized,
                exact=True,
                method="exhaustive",
                witness=out.best,
            )
        else:
            best = None
            for method, vec in _heuristic_candidates(n, seed, restarts):
                rep = report(eigenvalues_fft(vec))
                if best is None or rep.deviation < best[0]:
                    best = (rep.deviation, method, vec)
            rec = ScanRecord(
                n=n,
                min_deviation=best[0],
                normalized=best[0] / n**0.25,
                exact=False,
                method=best[1],
                witness=canonicalize(best[2]).representative,
            )
        records.append(rec)
    return records


def ryser_verify(n_hi: int, cap: int = EXHAUSTIVE_CAP) -> list[tuple[int, bool]]:
    """(n, does a circulant Hadamard of size n exist) for n = 1..n_hi.

    Exact integer autocorrelation test over one representative per orbit.
    """
    if n_hi > cap:
        raise SizeCapError("n_hi=%d exceeds the exhaustive cap %d" % (n_hi, cap), cap)
    results = []
    for n in range(1, n_hi + 1):
        found = False
        for _codes, bits, _sizes in canonical_chunks(n):
            signs = (1 - 2 * bits.astype(np.int64))
            ok = np.ones(signs.shape[0], dtype=bool)
            for k in range(1, n):
                ok &= np.einsum("ci,ci->c", signs, np.roll(signs, -k, axis=1)) == 0
                if not ok.any():
                    break
            if ok.any():
                found = True
                break
        results.append((n, found))
    return results


def moduli_histogram(moduli: np.ndarray, bins: int = 60):
    """Equal-width histogram over [min, max] of the moduli.

    Returns (bin_lo, bin_hi, count) arrays, the Fig-style view of how the
    eigenvalue moduli concentrate around sqrt(n).
    """
    if bins < 1:
        raise ValueError("bins must be positive")
    mods = np.asarray(moduli, dtype=np.float64)
    counts, edges = np.histogram(mods, bins=bins)
    return edges[:-1], edges[1:], counts


def legendre_statistics(
    q: int,
    seeds: int,
    flips: int | None = None,
) -> tuple[SeedStats, list[SpectralReport]]:
    """Quantiles of kappa and deviation over seeds 0..seeds-1 at prime q.

    Returns the aggregate stats plus each seed's report (callers wanting
    per-seed histograms recompute the spectra they need from the params).
    """
    if seeds < 1:
        raise ValueError("seeds must be >= 1")
    if not is_prime(q):
        raise ValueError("q=%d must be prime" % q)
    reports = []
    for seed in range(seeds):
        vec = legendre_modified(LegendreParams(q, seed, flips))
        reports.append(report(eigenvalues_fft(vec)))
    kappas = np.array([r.condition_number for r in reports])
    devs = np.array([r.deviation for r in reports])
    qs = [0, 25, 50, 75, 100]
    kq = tuple(float(v) for v in np.percentile(kappas, qs))
    dq = tuple(float(v) for v in np.percentile(devs, qs))
    norm = dq[2] / (q**0.25 * math.sqrt(math.log(q)))
    return (
        SeedStats(
            q=q,
            seeds=seeds,
            kappa_quantiles=kq,
            deviation_quantiles=dq,
            normalized_median=norm,
        ),
        reports,
    )
