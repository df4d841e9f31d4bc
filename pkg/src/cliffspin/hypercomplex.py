"""Exact complex numbers, quaternions and octonions via Cayley-Dickson doubling.

A value of dimension 2m is the pair (a, b) of two values of dimension m and

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).

Starting from the rationals this gives C (dim 2), H (dim 4) and O (dim 8)
with compatible embeddings C < H < O on leading coordinates.  Coordinates are
``int`` or ``Fraction``; nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionMismatch, UnsupportedDimension

DIMS = (1, 2, 4, 8)


def exact(x) -> int | Fraction:
    """Coerce to an exact rational, collapsing integral fractions to ``int``."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return exact(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return exact(Fraction(x))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _mul(a: tuple, b: tuple) -> tuple:
    n = len(a)
    if n == 1:
        return (a[0] * b[0],)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    left = _sub(_mul(a0, b0), _mul(_conj(b1), a1))
    right = _add(_mul(b1, a0), _mul(a1, _conj(b0)))
    return left + right


def _conj(a: tuple) -> tuple:
    return (a[0],) + tuple(-x for x in a[1:])


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


class Hypercomplex:
    """Immutable element of R, C, H or O with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        coords = tuple(exact(c) for c in coords)
        if len(coords) not in DIMS:
            raise UnsupportedDimension(len(coords), "dimension must be 1, 2, 4 or 8")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Hypercomplex is immutable")

    @classmethod
    def basis(cls, dim: int, i: int) -> "Hypercomplex":
        if dim not in DIMS:
            raise UnsupportedDimension(dim, "dimension must be 1, 2, 4 or 8")
        if not 0 <= i < dim:
            raise IndexError(f"basis index {i} out of range for dimension {dim}")
        return cls(1 if k == i else 0 for k in range(dim))

    @classmethod
    def scalar(cls, dim: int, value=1) -> "Hypercomplex":
        return cls((value,) + (0,) * (dim - 1))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: "Hypercomplex") -> None:
        if not isinstance(other, Hypercomplex):
            raise TypeError(f"expected Hypercomplex, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(self.dim, other.dim)

    def __mul__(self, other):
        if isinstance(other, Hypercomplex):
            return cd_mul(self, other)
        return Hypercomplex(c * exact(other) for c in self.coords)

    def __rmul__(self, other):
        return Hypercomplex(exact(other) * c for c in self.coords)

    def __add__(self, other: "Hypercomplex") -> "Hypercomplex":
        self._check(other)
        return Hypercomplex(_add(self.coords, other.coords))

    def __sub__(self, other: "Hypercomplex") -> "Hypercomplex":
        self._check(other)
        return Hypercomplex(_sub(self.coords, other.coords))

    def __neg__(self) -> "Hypercomplex":
        return Hypercomplex(-c for c in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypercomplex) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Hypercomplex({list(map(str, self.coords))})"

    def is_zero(self) -> bool:
        return not any(self.coords)


def cd_mul(a: Hypercomplex, b: Hypercomplex) -> Hypercomplex:
    """Cayley-Dickson product ``ab``."""
    a._check(b)
    return Hypercomplex(_mul(a.coords, b.coords))


def conj(a: Hypercomplex) -> Hypercomplex:
    return Hypercomplex(_conj(a.coords))


def re(a: Hypercomplex) -> int | Fraction:
    return a.coords[0]


def inner(a: Hypercomplex, b: Hypercomplex) -> int | Fraction:
    """Euclidean inner product, equal to ``re(a * conj(b))``."""
    a._check(b)
    return exact(sum(x * y for x, y in zip(a.coords, b.coords)))


def norm2(a: Hypercomplex) -> int | Fraction:
    return inner(a, a)


def associator(a: Hypercomplex, b: Hypercomplex, c: Hypercomplex) -> Hypercomplex:
    """``(ab)c - a(bc)``; zero on any triple from an associative subalgebra."""
    a._check(b)
    a._check(c)
    return (a * b) * c - a * (b * c)


def multiplication_table(dim: int = 8) -> list[dict]:
    """Basis products e_i e_j = sign * e_k as a list of ``{i, j, k, sign}`` rows."""
    rows = []
    for i in range(dim):
        for j in range(dim):
            prod = cd_mul(Hypercomplex.basis(dim, i), Hypercomplex.basis(dim, j))
            (k,) = [idx for idx, c in enumerate(prod.coords) if c]
            rows.append({"i": i, "j": j, "k": k, "sign": int(prod.coords[k])})
    return rows


def as_hypercomplex(x: Hypercomplex | Sequence) -> Hypercomplex:
    return x if isinstance(x, Hypercomplex) else Hypercomplex(x)
