"""Circulant sign matrices that are approximately Hadamard.

The organizing identity: the singular values of the circulant with first
column (a_0..a_{n-1}) are the moduli of the polynomial a_0 + a_1 z + ...
+ a_{n-1} z^{n-1} at the n-th roots of unity. Construction, analysis, and
search all live on that bridge.
"""

__version__ = "0.1.0"

from .conjecture import (
    ScanRecord,
    SeedStats,
    legendre_statistics,
    moduli_histogram,
    ryser_verify,
    scan_deviation,
)
from .constructions import (
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
from .errors import SizeCapError, ToleranceViolation
from .search import (
    AnnealSchedule,
    SearchOutcome,
    anneal,
    exhaustive_search,
    local_search,
    orbit_size_sum,
)
from .signs import (
    CanonicalForm,
    SignVector,
    canonicalize,
    from_json_dict,
    is_circulant_hadamard,
    negate,
    periodic_autocorrelation,
    reverse,
    rotate,
)
from .spectrum import (
    SpectralReport,
    Spectrum,
    apply_circulant,
    circle_profile,
    condition_number,
    dense_apply_oracle,
    deviation_statistic,
    deviation_via_matrix_action,
    eigenvalues_fft,
    eigenvalues_naive,
    grid_min_modulus,
    report,
)

__all__ = [
    "__version__",
    "AnnealSchedule",
    "CanonicalForm",
    "CefState",
    "LegendreParams",
    "ScanRecord",
    "SearchOutcome",
    "SeedStats",
    "SignVector",
    "SizeCapError",
    "SpectralReport",
    "Spectrum",
    "ToleranceViolation",
    "anneal",
    "apply_circulant",
    "canonicalize",
    "cef_iterate",
    "cef_seed12",
    "cef_start",
    "circle_profile",
    "condition_number",
    "default_flip_count",
    "dense_apply_oracle",
    "deviation_statistic",
    "deviation_via_matrix_action",
    "eigenvalues_fft",
    "eigenvalues_naive",
    "exhaustive_search",
    "from_json_dict",
    "grid_min_modulus",
    "is_circulant_hadamard",
    "is_prime",
    "legendre_modified",
    "legendre_statistics",
    "legendre_symbol",
    "local_search",
    "moduli_histogram",
    "negate",
    "orbit_size_sum",
    "periodic_autocorrelation",
    "random_signs",
    "report",
    "reverse",
    "rotate",
    "rudin_shapiro",
    "ryser_verify",
    "scan_deviation",
    "search_degree12_seed",
]
