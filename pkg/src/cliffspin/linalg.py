"""Exact rational matrices, signed permutations and canonical subspaces.

``ExactMatrix`` stores rows sparsely as ``{col: value}`` dicts with ``int`` or
``Fraction`` values.  ``SignedPerm`` is the fast path for matrices with one
+-1 per row and column; every Clifford generator built by this package has
that form.  Products of two signed permutations stay signed permutations;
anything else falls back to ``ExactMatrix``.

``Subspace`` keeps its basis in reduced row-echelon form (leading 1, cleared
pivot columns), so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _backend
from .errors import DimensionMismatch, MaxDimensionExceeded, ZeroVectorError
from .hypercomplex import exact

DEFAULT_MAX_DIM = 2**16


def max_dim() -> int:
    return int(os.environ.get("CSL_MAX_DIM", DEFAULT_MAX_DIM))


def _check_size(*sides: int) -> None:
    limit = max_dim()
    for s in sides:
        if s > limit:
            raise MaxDimensionExceeded(s, limit)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    """Immutable sparse matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[dict] | None = None):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix shape must be positive")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple({} for _ in range(rows))
        else:
            self._data = tuple(
                {j: exact(v) for j, v in r.items() if v} for r in data
            )
            if len(self._data) != rows:
                raise DimensionMismatch(rows, len(self._data), "row count")

    # constructors

    @classmethod
    def identity(cls, n: int, scale=1) -> "ExactMatrix":
        return cls(n, n, ({i: scale} for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "ExactMatrix":
        rows = len(dense)
        cols = len(dense[0])
        return cls(rows, cols, ({j: v for j, v in enumerate(r) if v} for r in dense))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple]) -> "ExactMatrix":
        data = [dict() for _ in range(rows)]
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            data[i][j] = v
        return cls(rows, cols, data)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i].get(j, 0)

    def row(self, i: int) -> dict:
        return self._data[i]

    def entries(self):
        for i, r in enumerate(self._data):
            for j in sorted(r):
                yield i, j, r[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def to_numpy(self):
        import numpy as np

        out = np.zeros(self.shape)
        for i, j, v in self.entries():
            out[i, j] = float(v)
        return out

    def to_exact(self) -> "ExactMatrix":
        return self

    # arithmetic

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        other = as_matrix(other)
        if other.shape != self.shape:
            raise DimensionMismatch(self.shape, other.shape, "shape")
        data = []
        for a, b in zip(self._data, other._data):
            r = dict(a)
            for j, v in b.items():
                r[j] = r.get(j, 0) + sign * v
            data.append(r)
        return ExactMatrix(self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, ({j: -v for j, v in r.items()} for r in self._data))

    def __mul__(self, scalar) -> "ExactMatrix":
        s = exact(scalar)
        return ExactMatrix(self.rows, self.cols, ({j: s * v for j, v in r.items()} for r in self._data))

    __rmul__ = __mul__

    def __matmul__(self, other) -> "ExactMatrix":
        other = as_matrix(other)
        if self.cols != other.rows:
            raise DimensionMismatch(self.cols, other.rows, "inner dimension")
        odata = other._data
        data = []
        for r in self._data:
            acc: dict = {}
            for k, a in r.items():
                for j, b in odata[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            data.append(acc)
        return ExactMatrix(self.rows, other.cols, data)

    def __eq__(self, other) -> bool:
        if isinstance(other, SignedPerm):
            other = other.to_matrix()
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_entries(self.cols, self.rows, ((j, i, v) for i, j, v in self.entries()))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(self.cols, len(v), "vector length")
        return tuple(exact(sum(a * v[j] for j, a in r.items())) for r in self._data)

    def is_zero(self) -> bool:
        return not any(self._data)

    def scalar_value(self):
        """The c with ``self == c * Id``, or None."""
        if self.rows != self.cols:
            return None
        c = self._data[0].get(0, 0)
        for i, r in enumerate(self._data):
            if c == 0:
                if r:
                    return None
            elif len(r) != 1 or r.get(i) != c:
                return None
        return c

    def to_signed_perm(self) -> "SignedPerm | None":
        if self.rows != self.cols:
            return None
        n = self.cols
        perm = [None] * n
        signs = [0] * n
        for i, r in enumerate(self._data):
            if len(r) != 1:
                return None
            ((j, v),) = r.items()
            if v not in (1, -1) or perm[j] is not None:
                return None
            perm[j] = i
            signs[j] = int(v)
        return SignedPerm(perm, signs)

    def kron(self, other) -> "ExactMatrix":
        return kron(self, other)

    # serialization

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, format_rational(v)] for i, j, v in self.entries()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMatrix":
        return cls.from_entries(
            obj["rows"], obj["cols"], ((i, j, Fraction(v)) for i, j, v in obj["entries"])
        )


class SignedPerm:
    """Matrix sending basis vector i to ``signs[i]`` times basis vector ``perm[i]``."""

    __slots__ = ("perm", "signs")

    def __init__(self, perm: Sequence[int], signs: Sequence[int] | None = None):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm is not a permutation")
        signs = (1,) * len(perm) if signs is None else tuple(int(s) for s in signs)
        if len(signs) != len(perm) or any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be a +-1 sequence matching perm")
        self.perm = perm
        self.signs = signs

    @classmethod
    def identity(cls, n: int, sign: int = 1) -> "SignedPerm":
        return cls(range(n), (sign,) * n)

    @property
    def size(self) -> int:
        return len(self.perm)

    @property
    def rows(self) -> int:
        return len(self.perm)

    cols = rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    def __getitem__(self, ij):
        i, j = ij
        return self.signs[j] if self.perm[j] == i else 0

    def to_matrix(self) -> ExactMatrix:
        data = [dict() for _ in range(self.size)]
        for j, (i, s) in enumerate(zip(self.perm, self.signs)):
            data[i][j] = s
        return ExactMatrix(self.size, self.size, data)

    to_exact = to_matrix

    def to_numpy(self):
        import numpy as np

        out = np.zeros(self.shape)
        out[list(self.perm), list(range(self.size))] = self.signs
        return out

    def to_json(self) -> dict:
        return self.to_matrix().to_json()

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.size:
            raise DimensionMismatch(self.size, len(v), "vector length")
        out = [0] * self.size
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = v[i] if s == 1 else -v[i]
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, SignedPerm):
            if other.size != self.size:
                raise DimensionMismatch(self.size, other.size, "inner dimension")
            p, s = self.perm, self.signs
            return SignedPerm(
                (p[q] for q in other.perm),
                (t * s[q] for q, t in zip(other.perm, other.signs)),
            )
        return self.to_matrix() @ other

    def __rmatmul__(self, other):
        return as_matrix(other) @ self.to_matrix()

    def __neg__(self) -> "SignedPerm":
        return SignedPerm(self.perm, (-s for s in self.signs))

    def __mul__(self, scalar):
        if scalar == 1:
            return self
        if scalar == -1:
            return -self
        return self.to_matrix() * scalar

    __rmul__ = __mul__

    def __add__(self, other):
        return self.to_matrix() + other

    def __radd__(self, other):
        if other == 0:
            return self
        return as_matrix(other) + self.to_matrix()

    def __sub__(self, other):
        return self.to_matrix() - other

    def __eq__(self, other) -> bool:
        if isinstance(other, SignedPerm):
            return self.perm == other.perm and self.signs == other.signs
        if isinstance(other, ExactMatrix):
            return self.to_matrix() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.perm, self.signs))

    def __repr__(self) -> str:
        return f"SignedPerm(size={self.size})"

    def transpose(self) -> "SignedPerm":
        inv = [0] * self.size
        sg = [0] * self.size
        for j, (i, s) in enumerate(zip(self.perm, self.signs)):
            inv[i] = j
            sg[i] = s
        return SignedPerm(inv, sg)

    inverse = transpose

    @property
    def T(self) -> "SignedPerm":
        return self.transpose()

    def scalar_value(self):
        if self.perm == tuple(range(self.size)) and len(set(self.signs)) == 1:
            return self.signs[0]
        return None

    def is_zero(self) -> bool:
        return False

    def to_signed_perm(self) -> "SignedPerm":
        return self

    def kron(self, other):
        return kron(self, other)

    def anticommutator_is_zero(self, other: "SignedPerm") -> bool:
        """``AB + BA == 0`` without leaving the signed-permutation form."""
        ab, ba = self @ other, other @ self
        return ab.perm == ba.perm and all(x == -y for x, y in zip(ab.signs, ba.signs))


Operator = ExactMatrix | SignedPerm


def as_matrix(x) -> ExactMatrix:
    if isinstance(x, ExactMatrix):
        return x
    if isinstance(x, SignedPerm):
        return x.to_matrix()
    raise TypeError(f"expected a matrix, got {type(x).__name__}")


def simplify(x: Operator) -> Operator:
    """Return the signed-permutation form when the matrix has one."""
    if isinstance(x, ExactMatrix):
        sp = x.to_signed_perm()
        return sp if sp is not None else x
    return x


def kron(a: Operator, b: Operator) -> Operator:
    """Kronecker product; signed permutations stay signed permutations."""
    _check_size(a.rows * b.rows, a.cols * b.cols)
    if isinstance(a, SignedPerm) and isinstance(b, SignedPerm):
        nb = b.size
        perm = [pa * nb + pb for pa in a.perm for pb in b.perm]
        signs = [sa * sb for sa in a.signs for sb in b.signs]
        return SignedPerm(perm, signs)
    a, b = as_matrix(a), as_matrix(b)
    data = []
    for ra in a._data:
        for rb in b._data:
            data.append({ja * b.cols + jb: va * vb for ja, va in ra.items() for jb, vb in rb.items()})
    return ExactMatrix(a.rows * b.rows, a.cols * b.cols, data)


def kron_all(factors: Sequence[Operator]) -> Operator:
    out = factors[0]
    for f in factors[1:]:
        out = kron(out, f)
    return out


def _integer_row(v: Sequence) -> list[int]:
    if all(type(x) is int for x in v):
        return list(v)
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return [int(Fraction(x) * den) for x in v]


def _normalize_row(r: list[int], p: int) -> tuple:
    if p == 1:
        return tuple(r)
    return tuple(x // p if x % p == 0 else Fraction(x, p) for x in r)


def _canonical(rows: Iterable[Sequence], ambient_dim: int) -> tuple:
    ints = [_integer_row(r) for r in rows]
    ints = [r for r in ints if any(r)]
    if not ints:
        return ()
    reduced, pivots = _backend.rref(ints)
    return tuple(_normalize_row(r, r[p]) for r, p in zip(reduced, pivots))


class Subspace:
    """Subspace of Q^ambient_dim with a canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: tuple = (), _canonical_form: bool = False):
        self.ambient_dim = ambient_dim
        if _canonical_form:
            self.basis = basis
        else:
            for r in basis:
                if len(r) != ambient_dim:
                    raise DimensionMismatch(ambient_dim, len(r), "vector length")
            self.basis = _canonical(basis, ambient_dim)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int | None = None) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient_dim required for an empty span")
            ambient_dim = len(vectors[0])
        return cls(ambient_dim, vectors)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(_unit(n, i) for i in range(n)), _canonical_form=True)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), _canonical_form=True)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, tuple(_unit(n, i) for i in sorted(set(indices))), _canonical_form=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def contains(self, v: Sequence) -> bool:
        return (self + Subspace.span([v], self.ambient_dim)).dim == self.dim

    def tensor(self, other: "Subspace") -> "Subspace":
        """Span of all ``u (x) w``, in Kronecker index order."""
        n = self.ambient_dim * other.ambient_dim
        vecs = [tuple(a * b for a in u for b in w) for u in self.basis for w in other.basis]
        return Subspace(n, vecs) if vecs else Subspace.zero(n)

    def basis_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_dense(self.basis) if self.basis else ExactMatrix.zeros(1, self.ambient_dim)

    def to_json(self) -> dict:
        mat = {
            "rows": self.dim,
            "cols": self.ambient_dim,
            "entries": [
                [i, j, format_rational(v)] for i, r in enumerate(self.basis) for j, v in enumerate(r) if v
            ],
        }
        return {"ambient_dim": self.ambient_dim, "basis": mat}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        n = obj["ambient_dim"]
        m = obj["basis"]
        rows = [[0] * n for _ in range(m["rows"])]
        for i, j, v in m["entries"]:
            rows[i][j] = Fraction(v)
        return cls(n, rows)

    def orthonormal_basis(self):
        """Float orthonormal basis (rows) of the same subspace."""
        import numpy as np

        if not self.basis:
            return np.zeros((0, self.ambient_dim))
        a = np.array([[float(x) for x in r] for r in self.basis])
        q, _ = np.linalg.qr(a.T)
        return q.T


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(n))


def _same_ambient(s: Subspace, t: Subspace) -> None:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, t.ambient_dim, "ambient dimension")


def image(op: Operator, s: Subspace) -> Subspace:
    """Row space of ``basis @ op.T``: the image of ``s`` under ``op``."""
    if op.cols != s.ambient_dim:
        raise DimensionMismatch(op.cols, s.ambient_dim, "operator columns")
    vecs = [op.apply(v) for v in s.basis]
    return Subspace(op.rows, vecs) if vecs else Subspace.zero(op.rows)


def direct_sum_check(s: Subspace, t: Subspace) -> bool:
    """True iff the ambient space is the internal direct sum of ``s`` and ``t``."""
    _same_ambient(s, t)
    if s.dim + t.dim != s.ambient_dim:
        return False
    return (s + t).dim == s.ambient_dim


def _integer_matrix(op: Operator) -> list[list[int]]:
    if isinstance(op, SignedPerm):
        n = op.size
        out = [[0] * n for _ in range(n)]
        for j, (i, sg) in enumerate(zip(op.perm, op.signs)):
            out[i][j] = sg
        return out
    # rescaling a generator does not change the spaces it stabilizes
    return _integer_row_block(op.to_dense())


def _integer_row_block(dense: list[list]) -> list[list[int]]:
    den = lcm(*(Fraction(x).denominator for r in dense for x in r))
    return [[int(Fraction(x) * den) for x in r] for r in dense]


class Spinner:
    """Generators prepared once for repeated spinning."""

    def __init__(self, gens: Sequence[Operator], size: int | None = None):
        gens = list(gens)
        n = gens[0].rows if gens else size
        if n is None:
            raise ValueError("size required when there are no generators")
        for g in gens:
            if g.rows != g.cols:
                raise DimensionMismatch(g.rows, g.cols, "generator shape")
            if g.cols != n:
                raise DimensionMismatch(n, g.cols, "generator size")
        self.size = n
        mats = [_integer_matrix(g) for g in gens]
        import numpy as np

        small = all(abs(x) <= 2**31 for m in mats for r in m for x in r)
        self._mats = np.array(mats, dtype=np.int64).reshape(len(mats), n, n) if small else mats

    def spin(self, v: Sequence, backend: str | None = None, certify: bool = True) -> Subspace:
        n = self.size
        if len(v) != n:
            raise DimensionMismatch(n, len(v), "vector length")
        if not any(v):
            raise ZeroVectorError("cannot spin the zero vector")
        seed = _integer_row(v)
        if certify and _backend.spin_rank_mod(self._mats, seed, backend=backend) == n:
            # independent mod p implies independent over Q
            return Subspace.full(n)
        rows = _backend.spin(self._mats, seed, backend=backend)
        return Subspace(n, rows)


def spin_submodule(
    gens: Sequence[Operator], v: Sequence, backend: str | None = None, certify: bool = True
) -> Subspace:
    """Smallest subspace containing ``v`` and mapped into itself by every generator.

    With ``certify`` a rank computation mod a prime runs first; when it finds
    full rank the answer is the whole space, exactly.  Otherwise the spin is
    done over the integers.
    """
    if not any(v):
        raise ZeroVectorError("cannot spin the zero vector")
    return Spinner(gens, size=len(v)).spin(v, backend=backend, certify=certify)
