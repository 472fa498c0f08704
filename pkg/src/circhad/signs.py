"""Sign vectors, their symmetry group, and exact integer tests.

A length-n vector with entries in {-1, +1} is read two ways at once: as the
first column of an n x n circulant matrix and as the coefficient list of a
polynomial with coefficients -1/+1. Everything in this module is exact
integer arithmetic; the floating-point spectral machinery lives in
`spectrum`.

The symmetry group used for search reduction is negation x rotation x
reversal (order 4n). All three operations permute or conjugate the
circulant eigenvalues, so they preserve the multiset of singular values.
Index decimation i -> u*i mod n with gcd(u, n) = 1 preserves it too and is
available behind the `decimate` flag (off by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _coerce_signs(signs) -> np.ndarray:
    arr = np.asarray(signs)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("signs must be a non-empty 1-d sequence")
    arr = arr.astype(np.int8, casting="unsafe")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValueError("every entry must be exactly -1 or +1")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SignVector:
    """Immutable vector of -1/+1 entries (stored as a read-only int8 array)."""

    signs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "signs", _coerce_signs(self.signs))

    @property
    def n(self) -> int:
        return int(self.signs.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.signs, other.signs))

    def __repr__(self) -> str:
        if self.n <= 16:
            body = ",".join("%+d" % v for v in self.signs)
        else:
            body = ",".join("%+d" % v for v in self.signs[:8]) + ",..."
        return "SignVector(n=%d, [%s])" % (self.n, body)

    def as_floats(self) -> np.ndarray:
        return self.signs.astype(np.float64)

    def as_ints(self) -> np.ndarray:
        return self.signs.astype(np.int64)

    def bits(self) -> np.ndarray:
        """Bit image used for ordering: +1 -> 0, -1 -> 1."""
        return ((1 - self.signs.astype(np.int16)) // 2).astype(np.uint8)

    def key(self) -> bytes:
        """Lexicographic sort key; +1 sorts before -1."""
        return self.bits().tobytes()

    def to_json_dict(self) -> dict:
        return {"n": self.n, "signs": [int(v) for v in self.signs]}

    def to_hex(self) -> str:
        """Compact form: bit 1 = +1, MSB-first, zero-padded at the tail."""
        bit_is_plus = ((1 + self.signs.astype(np.int16)) // 2).astype(np.uint8)
        return np.packbits(bit_is_plus).tobytes().hex()


def from_json_dict(obj: dict) -> SignVector:
    """Accepts {"n":…, "signs":[...]} or the hex form {"n":…, "bits":"…"}."""
    if not isinstance(obj, dict) or "n" not in obj:
        raise ValueError("sign vector object must carry an 'n' field")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'n' must be a positive integer")
    if "signs" in obj:
        signs = obj["signs"]
        if len(signs) != n:
            raise ValueError("length of 'signs' (%d) does not match n=%d" % (len(signs), n))
        return SignVector(signs)
    if "bits" in obj:
        raw = bytes.fromhex(obj["bits"])
        if len(raw) * 8 < n:
            raise ValueError("hex field too short for n=%d" % n)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[:n]
        return SignVector(np.where(bits == 1, 1, -1).astype(np.int8))
    raise ValueError("sign vector object needs a 'signs' or 'bits' field")


def rotate(s: SignVector, r: int) -> SignVector:
    """Cyclic shift: entry i of the result is s[(i + r) mod n]."""
    return SignVector(np.roll(s.signs, -r))


def reverse(s: SignVector) -> SignVector:
    return SignVector(s.signs[::-1])


def negate(s: SignVector) -> SignVector:
    return SignVector(-s.signs)


def periodic_autocorrelation(s: SignVector, k: int) -> int:
    """Sum over i of s_i * s_{(i+k) mod n}, exact integer arithmetic."""
    n = s.n
    if not (0 <= k < n):
        raise ValueError("lag k=%d out of range 0..%d" % (k, n - 1))
    a = s.as_ints()
    return int(np.dot(a, np.roll(a, -k)))


def is_circulant_hadamard(s: SignVector) -> bool:
    """True iff every nonzero-lag periodic autocorrelation vanishes.

    Exact integer test: equivalent to the circulant having pairwise
    orthogonal rows.
    """
    a = s.as_ints()
    for k in range(1, s.n):
        if int(np.dot(a, np.roll(a, -k))) != 0:
            return False
    return True


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def orbit_images(s: SignVector, decimate: bool = False) -> np.ndarray:
    """All symmetry images of s as an (m, n) int8 matrix (duplicates kept).

    Default group: {+-rotate(b, r)} for b in {s, reverse(s)}, m = 4n.
    With decimate=True the base set becomes every index decimation of s,
    which subsumes reversal; m = 2 * n * phi(n).

    Builds an O(m n) matrix, so intended for search-scale n.
    """
    a = s.signs
    n = s.n
    idx = np.arange(n)
    rot = (idx[:, None] + idx[None, :]) % n  # row r selects b[(i + r) mod n]
    if decimate:
        bases = [a[(u * idx) % n] for u in _units(n)]
        if not bases:  # n = 1
            bases = [a]
    else:
        bases = [a, a[::-1]]
    blocks = []
    for b in bases:
        rotated = b[rot]
        blocks.append(rotated)
        blocks.append(-rotated)
    return np.ascontiguousarray(np.vstack(blocks), dtype=np.int8)


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically minimal orbit member plus the orbit's size."""

    representative: SignVector
    orbit_size: int


def canonicalize(s: SignVector, decimate: bool = False) -> CanonicalForm:
    """Minimal orbit member under the symmetry group; +1 sorts before -1.

    The representative always starts with +1 (negation can force that), and
    canonicalize is idempotent. orbit_size counts distinct images, which
    divides the group order.
    """
    images = orbit_images(s, decimate=decimate)
    bits = ((1 - images.astype(np.int16)) // 2).astype(np.uint8)
    keys = [row.tobytes() for row in bits]
    best = min(range(len(keys)), key=keys.__getitem__)
    return CanonicalForm(
        representative=SignVector(images[best]),
        orbit_size=len(set(keys)),
    )
