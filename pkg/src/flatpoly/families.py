"""Generators for the polynomial families used in the experiments."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Iterator

import numpy as np

from .polycore import BinarySequence, SignSequence, split_littlewood

# Every report names the generator so runs are comparable across platforms.
RNG_ALGORITHM = "numpy.PCG64/v1"

MAX_RUDIN_SHAPIRO_K = 24
MAX_ENUMERATION_Q = 28


def rng(seed: int) -> np.random.Generator:
    if seed is None:
        raise ValueError("randomized families require an explicit seed")
    return np.random.Generator(np.random.PCG64(int(seed) & (2**64 - 1)))


def random_littlewood(q: int, seed: int) -> SignSequence:
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    bits = rng(seed).integers(0, 2, size=q, dtype=np.int8)
    return SignSequence(1 - 2 * bits)


def rudin_shapiro(k: int) -> SignSequence:
    """Length-2^k Rudin-Shapiro signs: P' = P ++ Q, Q' = P ++ (-Q)."""
    if k < 0 or k > MAX_RUDIN_SHAPIRO_K:
        raise ValueError(f"Rudin-Shapiro order must lie in [0, {MAX_RUDIN_SHAPIRO_K}], got {k}")
    P = np.array([1], dtype=np.int8)
    Q = P.copy()
    for _ in range(k):
        P, Q = np.concatenate([P, Q]), np.concatenate([P, -Q])
    return SignSequence(P)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fekete(p: int) -> SignSequence:
    """Legendre symbols (j|p) for j = 0..p-1, with the j = 0 entry set to +1."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"Fekete polynomials need an odd prime, got {p}")
    j = np.arange(p, dtype=object)
    legendre = [1] + [1 if pow(int(v), (p - 1) // 2, p) == 1 else -1 for v in j[1:]]
    return SignSequence(np.array(legendre, dtype=np.int8))


def newman_from_signs(s: SignSequence, variant: str = "plus") -> BinarySequence:
    """Support of the +1 signs (``plus``) or of the -1 signs (``minus``)."""
    eta, eta_prime = split_littlewood(s)
    if variant == "plus":
        return eta
    if variant == "minus":
        return eta_prime
    raise ValueError(f"variant must be 'plus' or 'minus', got {variant!r}")


def random_binary(q: int, d: float, seed: int) -> BinarySequence:
    """I.i.d. Bernoulli(d) bits. May be all zero for small q*d; callers guard."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if not 0 < d < 1:
        raise ValueError(f"density must lie in (0, 1), got {d}")
    return BinarySequence((rng(seed).random(q) < d).astype(np.int8))


# symmetry classes -------------------------------------------------------
#
# A sign sequence of length q is coded as an integer whose bit (q-1-j) is set
# when eps_j = -1, so integer order is lexicographic order with '+' < '-'.


def _bit_reverse(x: np.ndarray, q: int) -> np.ndarray:
    x = x.astype(np.uint64)
    out = np.zeros_like(x)
    for i in range(q):
        out |= ((x >> np.uint64(i)) & np.uint64(1)) << np.uint64(q - 1 - i)
    return out


def _masks(q: int) -> tuple[np.uint64, np.uint64]:
    full = np.uint64((1 << q) - 1)
    alt = 0
    for j in range(1, q, 2):
        alt |= 1 << (q - 1 - j)
    return full, np.uint64(alt)


def orbit_codes(x: np.ndarray, q: int) -> np.ndarray:
    """All 8 images under negation, reversal and alternation; shape (8, len(x))."""
    x = np.asarray(x, dtype=np.uint64)
    full, alt = _masks(q)
    r = _bit_reverse(x, q)
    images = []
    for base in (x, r):
        for a in (np.uint64(0), alt):
            for n in (np.uint64(0), full):
                images.append(base ^ a ^ n)
    return np.stack(images)


def canonical_codes(x: np.ndarray, q: int) -> np.ndarray:
    return orbit_codes(x, q).min(axis=0)


def codes_to_signs(codes: np.ndarray, q: int) -> np.ndarray:
    """Matrix of +/-1 rows for integer codes."""
    codes = np.asarray(codes, dtype=np.uint64)
    shifts = np.arange(q - 1, -1, -1, dtype=np.uint64)
    bits = (codes[:, None] >> shifts[None, :]) & np.uint64(1)
    return (1 - 2 * bits.astype(np.int8)).astype(np.int8)


def signs_to_code(s: SignSequence) -> int:
    code = 0
    for e in s.entries:
        code = (code << 1) | (1 if e < 0 else 0)
    return code


def representative_blocks(q: int, block: int = 1 << 18) -> Iterator[np.ndarray]:
    """Integer codes of class representatives, ascending, in blocks."""
    if q < 1 or q > MAX_ENUMERATION_Q:
        raise ValueError(f"enumeration supports 1 <= q <= {MAX_ENUMERATION_Q}, got {q}")
    # representatives start with '+', i.e. the top bit is clear
    stop = 1 << (q - 1)
    for start in range(0, stop, block):
        x = np.arange(start, min(start + block, stop), dtype=np.uint64)
        keep = canonical_codes(x, q) == x
        if keep.any():
            yield x[keep]


@dataclass
class SignEnumeration:
    """One representative per symmetry class of length-q sign sequences."""

    q: int

    def __post_init__(self):
        if self.q < 1 or self.q > MAX_ENUMERATION_Q:
            raise ValueError(f"enumeration supports 1 <= q <= {MAX_ENUMERATION_Q}, got {self.q}")
        self._classes: int | None = None

    @property
    def total(self) -> int:
        return 2**self.q

    @property
    def class_count(self) -> int:
        if self._classes is None:
            self._classes = sum(len(b) for b in representative_blocks(self.q))
        return self._classes

    def blocks(self) -> Iterator[np.ndarray]:
        return representative_blocks(self.q)

    def __iter__(self) -> Iterator[SignSequence]:
        for block in self.blocks():
            for row in codes_to_signs(block, self.q):
                yield SignSequence(row)


def enumerate_signs(q: int) -> SignEnumeration:
    return SignEnumeration(q)


# family specs -----------------------------------------------------------

FAMILY_KINDS = ("dirichlet", "random_sign", "rudin_shapiro", "fekete", "binary_random", "from_string")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    q: int | None = None
    k: int | None = None
    p: int | None = None
    seed: int | None = None
    density: float | None = None
    text: str | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")
        randomized = self.kind in ("random_sign", "binary_random")
        if randomized and self.seed is None:
            raise ValueError(f"family {self.kind!r} requires a seed")
        if not randomized and self.seed is not None:
            raise ValueError(f"family {self.kind!r} takes no seed")

    def build(self) -> SignSequence | BinarySequence:
        if self.kind == "dirichlet":
            return SignSequence(np.ones(_need(self.q, "q"), dtype=np.int8))
        if self.kind == "random_sign":
            return random_littlewood(_need(self.q, "q"), self.seed)
        if self.kind == "rudin_shapiro":
            return rudin_shapiro(_need(self.k, "k"))
        if self.kind == "fekete":
            return fekete(_need(self.p, "p"))
        if self.kind == "binary_random":
            return random_binary(_need(self.q, "q"), _need(self.density, "density"), self.seed)
        text = _need(self.text, "text")
        return BinarySequence.parse(text) if set(text) <= set("01") else SignSequence.parse(text)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(**d)


def _need(value, name):
    if value is None:
        raise ValueError(f"family parameter {name!r} is required")
    return value


def sign_family(kind: str, size: int, seed: int = 0) -> SignSequence:
    """Sign sequence of roughly the given length from a named family.

    Used by sweeps: ``size`` is q for dirichlet/random_sign, the nearest
    power-of-two exponent for rudin_shapiro and the next prime for fekete.
    """
    if kind in ("dirichlet", "all_plus"):
        return SignSequence(np.ones(size, dtype=np.int8))
    if kind == "random_sign":
        return random_littlewood(size, seed)
    if kind == "rudin_shapiro":
        k = int(round(np.log2(size)))
        return rudin_shapiro(k)
    if kind == "fekete":
        p = max(size, 3)
        while p % 2 == 0 or not is_prime(p):
            p += 1
        return fekete(p)
    raise ValueError(f"unknown sign family {kind!r}")
