"""Exact integer polynomials on the unit circle.

Coefficients are stored constant term first. All coefficient arithmetic is
exact: int64 arrays are used while an overflow bound allows it, Python
integers (object arrays) otherwise. Only evaluation produces floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_INT64_SAFE = 2**62

MINUS_SIGNS = ("-", "−")


def _as_int_array(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError("coefficients must form a one-dimensional vector")
    if arr.dtype == object:
        ints = [int(v) for v in arr]
        big = max((abs(v) for v in ints), default=0)
        if big < _INT64_SAFE:
            return np.array(ints, dtype=np.int64)
        return np.array(ints, dtype=object)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.bool_):
            return arr.astype(np.int64)
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("coefficients must be integers")
    return arr.astype(np.int64)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SignSequence:
    """Coefficients of a Littlewood polynomial, each +1 or -1."""

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.entries)
        if arr.size < 1:
            raise ValueError("a sign sequence needs at least one entry")
        if not np.all((arr == 1) | (arr == -1)):
            raise ValueError("sign entries must be +1 or -1")
        object.__setattr__(self, "entries", _frozen(arr.astype(np.int8)))

    @classmethod
    def parse(cls, text: str) -> "SignSequence":
        """Read a string such as ``"+-++"``; the unicode minus is accepted."""
        vals = []
        for ch in text.strip():
            if ch == "+":
                vals.append(1)
            elif ch in MINUS_SIGNS:
                vals.append(-1)
            else:
                raise ValueError(f"invalid sign character {ch!r}")
        return cls(np.array(vals, dtype=np.int8))

    def __len__(self) -> int:
        return int(self.entries.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, SignSequence) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __str__(self) -> str:
        return "".join("+" if e > 0 else "-" for e in self.entries)

    def __repr__(self) -> str:
        return f"SignSequence({str(self)!r})"


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """0/1 coefficients of an idempotent (Newman-Bourgain) polynomial."""

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.entries)
        if arr.size < 1:
            raise ValueError("a binary sequence needs at least one entry")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("binary entries must be 0 or 1")
        object.__setattr__(self, "entries", _frozen(arr.astype(np.int8)))

    @classmethod
    def parse(cls, text: str) -> "BinarySequence":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError("bit strings may only contain '0' and '1'")
        return cls(np.array([int(ch) for ch in text], dtype=np.int8))

    def __len__(self) -> int:
        return int(self.entries.size)

    @property
    def support(self) -> np.ndarray:
        """Indices j with entry 1."""
        return np.flatnonzero(self.entries)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.entries))

    @property
    def density(self) -> float:
        return self.weight / len(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinarySequence) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __str__(self) -> str:
        return "".join(str(int(b)) for b in self.entries)

    def __repr__(self) -> str:
        return f"BinarySequence({str(self)!r})"


@dataclass(frozen=True, eq=False)
class IntPolynomial:
    """Polynomial with exact integer coefficients, constant term first."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _as_int_array(self.coeffs)
        if arr.size < 1:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", _frozen(arr))

    @property
    def degree(self) -> int:
        return int(self.coeffs.size) - 1

    def __len__(self) -> int:
        return int(self.coeffs.size)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.tolist() == other.tolist()

    def __hash__(self) -> int:
        return hash(tuple(self.tolist()))

    def __repr__(self) -> str:
        head = self.tolist()[:12]
        tail = ", ..." if self.degree >= 12 else ""
        return f"IntPolynomial([{', '.join(map(str, head))}{tail}])"

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(_pad(self.coeffs, n) + _pad(other.coeffs, n))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(_pad(self.coeffs, n) - _pad(other.coeffs, n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-self.coeffs)

    def __rmul__(self, k: int) -> "IntPolynomial":
        if isinstance(k, (bool, np.bool_)) or not isinstance(k, (int, np.integer)):
            return NotImplemented
        return IntPolynomial(_as_int_array(self.coeffs.astype(object) * int(k)))

    def __mul__(self, other):
        if isinstance(other, IntPolynomial):
            return IntPolynomial(convolve(self.coeffs, other.coeffs))
        return self.__rmul__(other)

    def __call__(self, z):
        """Evaluate at complex point(s) z by Horner's rule."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + float(c)
        return acc


def _pad(arr: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=arr.dtype)
    out[: arr.size] = arr
    return out


def convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer convolution; falls back to Python ints on overflow risk."""
    a = _as_int_array(a)
    b = _as_int_array(b)
    if a.dtype != object and b.dtype != object:
        bound = int(np.abs(a).sum(dtype=object)) * int(np.abs(b).max())
        if bound < _INT64_SAFE:
            return np.convolve(a, b)
    return np.convolve(a.astype(object), b.astype(object))


# construction -----------------------------------------------------------


def from_signs(s: SignSequence | str) -> IntPolynomial:
    """Unscaled Littlewood polynomial: coefficient k is the k-th sign."""
    if isinstance(s, str):
        s = SignSequence.parse(s)
    return IntPolynomial(s.entries.astype(np.int64))


def from_bits(b: BinarySequence | str) -> IntPolynomial:
    if isinstance(b, str):
        b = BinarySequence.parse(b)
    return IntPolynomial(b.entries.astype(np.int64))


def dirichlet(N: int) -> IntPolynomial:
    """The all-ones polynomial 1 + z + ... + z^(N-1)."""
    if int(N) != N or N < 1:
        raise ValueError(f"Dirichlet kernel needs N >= 1, got {N}")
    return IntPolynomial(np.ones(int(N), dtype=np.int64))


def monomial(k: int, coeff: int = 1) -> IntPolynomial:
    c = np.zeros(k + 1, dtype=np.int64)
    c[k] = coeff
    return IntPolynomial(c)


def dilate(P: IntPolynomial, M: int) -> IntPolynomial:
    """Return P(z^M)."""
    if M < 1:
        raise ValueError("dilation factor must be >= 1")
    c = np.zeros(P.degree * M + 1, dtype=P.coeffs.dtype)
    c[::M] = P.coeffs
    return IntPolynomial(c)


def split_littlewood(s: SignSequence) -> tuple[BinarySequence, BinarySequence]:
    """Split signs into the supports of +1 and of -1.

    With eta = (1 + eps)/2 and eta' = (1 - eps)/2 the unscaled polynomial
    satisfies sum(eps_k z^k) = 2*Q - D = D - 2*Q' where Q, Q' carry eta, eta'
    and D is the Dirichlet kernel of the same length.
    """
    e = s.entries.astype(np.int64)
    eta = BinarySequence((1 + e) // 2)
    eta_prime = BinarySequence((1 - e) // 2)
    return eta, eta_prime


# evaluation -------------------------------------------------------------


@dataclass(frozen=True)
class SampleGrid:
    """The m-th roots of unity exp(2 pi i j/m), each carrying weight 1/m."""

    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"grid size must be a positive integer, got {self.m}")

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.m) / self.m)

    @property
    def turns(self) -> np.ndarray:
        """Angles j/m folded into [-1/2, 1/2)."""
        j = np.arange(self.m)
        return np.where(2 * j < self.m, j, j - self.m) / self.m


@dataclass(frozen=True, eq=False)
class ComplexSamples:
    values: np.ndarray
    grid: SampleGrid

    def __post_init__(self):
        if len(self.values) != self.grid.m:
            raise ValueError("sample count must equal the grid size")

    def __len__(self) -> int:
        return self.grid.m

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.values)


def fold_coefficients(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Alias coefficients modulo m; exact at the m-th roots of unity."""
    c = np.asarray(coeffs, dtype=float)
    if c.size <= m:
        out = np.zeros(m)
        out[: c.size] = c
        return out
    pad = (-c.size) % m
    return np.concatenate([c, np.zeros(pad)]).reshape(-1, m).sum(axis=0)


def evaluate_on_grid(P: IntPolynomial, m: int) -> ComplexSamples:
    """Values P(exp(2 pi i j/m)) for j = 0..m-1 via one FFT of length m."""
    grid = SampleGrid(m)
    folded = fold_coefficients(P.coeffs, m)
    values = np.fft.ifft(folded) * m
    values[0] = float(sum(int(c) for c in P.coeffs))
    return ComplexSamples(values, grid)


def grid_modulus_batch(coeff_rows: np.ndarray, m: int) -> np.ndarray:
    """|P(xi)| on the m-grid for each row of a real coefficient matrix."""
    rows = np.asarray(coeff_rows, dtype=float)
    if rows.shape[1] > m:
        raise ValueError("batch evaluation needs m >= number of coefficients")
    return np.abs(np.fft.rfft(rows, n=m, axis=1))


def grid_modulus_full(half: np.ndarray, m: int) -> np.ndarray:
    """Expand rfft moduli (real coefficients) to all m grid points."""
    tail = half[..., 1 : (m + 1) // 2][..., ::-1]
    return np.concatenate([half, tail], axis=-1)


# exact correlation and powers ------------------------------------------


def autocorrelation(P: IntPolynomial) -> np.ndarray:
    """Aperiodic autocorrelations a_t = sum_j c_j c_(j+t), t = 0..degree."""
    c = P.coeffs
    full = convolve(c, c[::-1])
    return full[P.degree :]


def power_coefficients(P: IntPolynomial, p: int) -> IntPolynomial:
    """Exact coefficients of P**p by repeated squaring of convolutions."""
    if int(p) != p or p < 1:
        raise ValueError(f"power must be a positive integer, got {p}")
    result = None
    base = P.coeffs
    p = int(p)
    while p:
        if p & 1:
            result = base if result is None else convolve(result, base)
        p >>= 1
        if p:
            base = convolve(base, base)
    return IntPolynomial(result)


def sum_of_squares(coeffs: np.ndarray) -> int:
    """Exact sum of squared integer coefficients."""
    c = _as_int_array(coeffs)
    if c.dtype != object:
        top = int(np.abs(c).max()) if c.size else 0
        if top * top * c.size < _INT64_SAFE:
            return int(np.dot(c, c))
    return sum(int(v) * int(v) for v in c)


# text / JSON records ----------------------------------------------------


def to_record(obj) -> dict:
    if isinstance(obj, SignSequence):
        return {"kind": "sign", "coeffs": [int(v) for v in obj.entries]}
    if isinstance(obj, BinarySequence):
        return {"kind": "binary", "coeffs": [int(v) for v in obj.entries]}
    if isinstance(obj, IntPolynomial):
        return {"kind": "int", "coeffs": obj.tolist()}
    raise TypeError(f"no polynomial record for {type(obj).__name__}")


def from_record(rec: dict):
    kind = rec.get("kind")
    coeffs = rec.get("coeffs")
    if coeffs is None:
        raise ValueError("polynomial record lacks 'coeffs'")
    if kind == "sign":
        return SignSequence(np.array(coeffs, dtype=np.int64))
    if kind == "binary":
        return BinarySequence(np.array(coeffs, dtype=np.int64))
    if kind == "int":
        return IntPolynomial(np.array([int(c) for c in coeffs], dtype=object))
    raise ValueError(f"unknown polynomial kind {kind!r}")


def as_polynomial(obj: IntPolynomial | SignSequence | BinarySequence | Sequence[int]) -> IntPolynomial:
    if isinstance(obj, IntPolynomial):
        return obj
    if isinstance(obj, SignSequence):
        return from_signs(obj)
    if isinstance(obj, BinarySequence):
        return from_bits(obj)
    return IntPolynomial(np.asarray(list(obj) if isinstance(obj, Iterable) else obj))
