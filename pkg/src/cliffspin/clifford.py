"""Explicit matrix realizations of the Clifford algebras Cl_n on spinor spaces.

Write n = 8k + m with 0 <= m <= 7.  The spinor space is B (x) (O^2)^(x)k where
the base B depends on m:

    m   V_n              base B     generators on B (then (x) E_k)
    0   O^k              R          -
    1   R + O^k          C          L_i
    2   R^2 + O^k        H          L_i, L_j
    3   ImH + O^k        H (+/-)    R_q  /  R_conj(q),   q = i, j, k
    4   H + O^k          H^2        [[0, R_q], [-R_conj(q), 0]],   q = 1, i, j, k
    5   R + H + O^k      H^2        diag(L_i, -L_i), then the m=4 blocks
    6   R^2 + H + O^k    H^2        diag(L_i, -L_i), diag(L_j, -L_j), then m=4 blocks
    7   ImO + O^k        O (+/-)    R_q  /  R_conj(q),   q = e_1 .. e_7

and each octonion slot s = 1..k contributes Id_B (x) A^s_{e_i} for i = 0..7.
For m = 3, 7 the algebra is a sum of two simple pieces and every generator is a
pair (plus, minus).  Generator order: base generators first, then the octonion
slots in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from . import _backend
from .errors import DimensionMismatch, UnsupportedDimension
from .hypercomplex import Hypercomplex, as_hypercomplex, cd_mul, conj
from .linalg import ExactMatrix, Operator, SignedPerm, kron, kron_all, simplify

SPINOR_FACTOR = (1, 2, 4, 4, 8, 8, 8, 8)
# dim_R of the division algebra the simple components are modules over
BASE_FIELD_DIM = (1, 2, 4, 4, 4, 2, 1, 1)
PAIR_RESIDUES = (3, 7)

CONVENTIONS = {
    "octonion_product": "(a,b)(c,d) = (ac - conj(d) b, da + b conj(c))",
    "m2_operator": "left",
    "m7_tail_identity": "Id_O",
    "generator_order": "base slots first, then octonion slots 1..k with e_0..e_7 each",
    "kron_order": "base (x) slot_1 (x) ... (x) slot_k, leftmost factor most significant",
}


def split(n: int) -> tuple[int, int]:
    """``(k, m)`` with ``n = 8k + m``."""
    return divmod(n, 8)


def spinor_dim(n: int) -> int:
    """Real dimension of the spinor space (of each component when m is 3 or 7)."""
    if n < 0:
        raise UnsupportedDimension(n, "n must be non-negative")
    k, m = split(n)
    return SPINOR_FACTOR[m] * 16**k


def clifford_algebra_dim_from_spinors(n: int) -> int:
    """dim_R Cl_n recovered from the spinor data: (dim over the base field)^2 * dim base field."""
    k, m = split(n)
    base = BASE_FIELD_DIM[m]
    over_base = spinor_dim(n) // base
    total = over_base**2 * base
    return 2 * total if m in PAIR_RESIDUES else total


# elementary operators


def _columns_to_matrix(cols: Sequence[Hypercomplex]) -> Operator:
    n = len(cols)
    return simplify(ExactMatrix.from_entries(n, n, ((i, j, c) for j, col in enumerate(cols) for i, c in enumerate(col.coords) if c)))


def right_mult_matrix(p) -> Operator:
    """Matrix of x -> x p on H or O in the canonical basis."""
    p = as_hypercomplex(p)
    if p.dim not in (4, 8):
        raise UnsupportedDimension(p.dim, "right multiplication is built on H or O")
    return _columns_to_matrix([cd_mul(Hypercomplex.basis(p.dim, j), p) for j in range(p.dim)])


def left_mult_matrix(q) -> Operator:
    """Matrix of x -> q x on C or H."""
    q = as_hypercomplex(q)
    if q.dim not in (2, 4):
        raise UnsupportedDimension(q.dim, "left multiplication is built on C or H")
    return _columns_to_matrix([cd_mul(q, Hypercomplex.basis(q.dim, j)) for j in range(q.dim)])


def block(rows: Sequence[Sequence[Operator | None]]) -> Operator:
    """Assemble a block matrix; ``None`` marks a zero block."""
    heights = [next(b.rows for b in r if b is not None) for r in rows]
    widths = [next(r[c].cols for r in rows if r[c] is not None) for c in range(len(rows[0]))]
    entries = []
    r0 = 0
    for bi, r in enumerate(rows):
        c0 = 0
        for bj, b in enumerate(r):
            if b is not None:
                if b.shape != (heights[bi], widths[bj]):
                    raise DimensionMismatch((heights[bi], widths[bj]), b.shape, "block shape")
                for i, j, v in b.to_exact().entries():
                    entries.append((r0 + i, c0 + j, v))
            c0 += widths[bj]
        r0 += heights[bi]
    return simplify(ExactMatrix.from_entries(sum(heights), sum(widths), entries))


def _unit(dim: int, i: int) -> Hypercomplex:
    return Hypercomplex.basis(dim, i)


def m_op(p) -> Operator:
    """M_p = [[0, R_p], [-R_conj(p), 0]] on O^2 (16 x 16)."""
    p = as_hypercomplex(p)
    if p.dim != 8:
        raise UnsupportedDimension(p.dim, "M_p needs an octonion")
    return block([[None, right_mult_matrix(p)], [-right_mult_matrix(conj(p)), None]])


def e_op() -> SignedPerm:
    """E = diag(Id_O, -Id_O)."""
    return SignedPerm(range(16), [1] * 8 + [-1] * 8)


def e_k(k: int) -> SignedPerm:
    """E (x) ... (x) E, k factors; the 1 x 1 identity for k = 0."""
    if k < 0:
        raise UnsupportedDimension(k, "k must be non-negative")
    if k == 0:
        return SignedPerm.identity(1)
    return kron_all([e_op()] * k)


def a_op(s: int, k: int, p) -> Operator:
    """A^s_p = Id (x) ... (x) Id (x) M_p (x) E (x) ... (x) E with M_p in slot s of k."""
    if not 1 <= s <= k:
        raise IndexError(f"slot {s} outside 1..{k}")
    factors = [SignedPerm.identity(16)] * (s - 1) + [m_op(p)] + [e_op()] * (k - s)
    return kron_all(factors)


# base generators, indexed by m


def _c(i):
    return _unit(2, i)


def _h(i):
    return _unit(4, i)


def _base_generators(m: int) -> tuple[list[Operator], list[Operator] | None]:
    """Generators on the base space; the second list is the minus copy for m = 3, 7."""
    if m == 0:
        return [], None
    if m == 1:
        return [left_mult_matrix(_c(1))], None
    if m == 2:
        return [left_mult_matrix(_h(1)), left_mult_matrix(_h(2))], None
    if m == 3:
        qs = [_h(i) for i in (1, 2, 3)]
        return [right_mult_matrix(q) for q in qs], [right_mult_matrix(conj(q)) for q in qs]
    if m == 7:
        qs = [_unit(8, i) for i in range(1, 8)]
        return [right_mult_matrix(q) for q in qs], [right_mult_matrix(conj(q)) for q in qs]

    def quaternion_block(q):
        return block([[None, right_mult_matrix(q)], [-right_mult_matrix(conj(q)), None]])

    def complex_block(q):
        L = left_mult_matrix(q)
        return block([[L, None], [None, -L]])

    hblocks = [quaternion_block(_h(i)) for i in range(4)]
    if m == 4:
        return hblocks, None
    if m == 5:
        return [complex_block(_h(1))] + hblocks, None
    return [complex_block(_h(1)), complex_block(_h(2))] + hblocks, None


BASE_DIM = (1, 2, 4, 4, 8, 8, 8, 8)


@dataclass(frozen=True)
class CliffordRealization:
    """Generators e_0 .. e_{n-1} of Cl_n acting on the spinor space.

    ``generators`` holds n operators, or n ``(plus, minus)`` pairs when
    ``semisimple_pair`` is set.
    """

    n: int
    k: int
    m: int
    semisimple_pair: bool
    generators: tuple
    spinor_dim: int
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS), compare=False)

    @property
    def components(self) -> tuple[str, ...]:
        return ("+", "-") if self.semisimple_pair else ("single",)

    def component(self, tag: str = "+") -> tuple[Operator, ...]:
        """The generator list of one simple component."""
        if not self.semisimple_pair:
            if tag not in ("single", "+"):
                raise ValueError(f"n={self.n} has a single component")
            return self.generators
        if tag == "+":
            return tuple(g[0] for g in self.generators)
        if tag == "-":
            return tuple(g[1] for g in self.generators)
        raise ValueError(f"unknown component {tag!r}")

    def to_json(self) -> dict:
        if self.semisimple_pair:
            gens = [[p.to_json(), q.to_json()] for p, q in self.generators]
        else:
            gens = [g.to_json() for g in self.generators]
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "spinor_dim": self.spinor_dim,
            "semisimple_pair": self.semisimple_pair,
            "conventions": self.conventions,
            "generators": gens,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CliffordRealization":
        def load(g):
            return simplify(ExactMatrix.from_json(g))

        pair = bool(obj["semisimple_pair"])
        if pair:
            gens = tuple((load(p), load(q)) for p, q in obj["generators"])
        else:
            gens = tuple(load(g) for g in obj["generators"])
        return cls(
            n=obj["n"],
            k=obj["k"],
            m=obj["m"],
            semisimple_pair=pair,
            generators=gens,
            spinor_dim=obj["spinor_dim"],
            conventions=obj.get("conventions", dict(CONVENTIONS)),
        )


def build(n: int) -> CliffordRealization:
    """The realization of Cl_n for any n >= 1."""
    if n < 1:
        raise UnsupportedDimension(n, "Cl_0 has no generators")
    k, m = split(n)
    plus, minus = _base_generators(m)
    ek = e_k(k)
    base_id = SignedPerm.identity(BASE_DIM[m])
    tail = [kron(base_id, a_op(s, k, _unit(8, i))) for s in range(1, k + 1) for i in range(8)]
    gens_plus = [kron(g, ek) for g in plus] + tail
    if minus is None:
        generators = tuple(gens_plus)
    else:
        gens_minus = [kron(g, ek) for g in minus] + tail
        generators = tuple(zip(gens_plus, gens_minus))
    assert len(generators) == n
    return CliffordRealization(
        n=n,
        k=k,
        m=m,
        semisimple_pair=minus is not None,
        generators=generators,
        spinor_dim=spinor_dim(n),
    )


# verification


@dataclass
class RelationReport:
    n: int
    components: tuple[str, ...]
    checked_pairs: int
    violations: list = field(default_factory=list)
    non_signed_perm: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "components": list(self.components),
            "checked_pairs": self.checked_pairs,
            "violations": [
                {"component": c, "i": i, "j": j, "detail": d} for c, i, j, d in self.violations
            ],
            "non_signed_perm": [{"component": c, "index": i} for c, i in self.non_signed_perm],
            "pass": self.passed,
        }


def anticommutator(a: Operator, b: Operator) -> Operator:
    return a @ b + b @ a


def _relation_holds(a: Operator, b: Operator, same: bool) -> bool:
    if isinstance(a, SignedPerm) and isinstance(b, SignedPerm):
        if same:
            return (a @ a) == SignedPerm.identity(a.size, -1)
        return a.anticommutator_is_zero(b)
    ac = anticommutator(a, b)
    if same:
        return ac == ExactMatrix.identity(a.rows, -2)
    return ac.is_zero()


def verify_relations(r: CliffordRealization) -> RelationReport:
    """Check e_i e_j + e_j e_i = -2 delta_ij Id for every pair, per component."""
    report = RelationReport(n=r.n, components=r.components, checked_pairs=0)
    for tag in r.components:
        gens = r.component(tag)
        for idx, g in enumerate(gens):
            if g.shape != (r.spinor_dim, r.spinor_dim):
                report.violations.append((tag, idx, idx, f"shape {g.shape}"))
                continue
            if not isinstance(g, SignedPerm):
                report.non_signed_perm.append((tag, idx))
        for i in range(len(gens)):
            for j in range(i, len(gens)):
                report.checked_pairs += 1
                if gens[i].shape != gens[j].shape:
                    continue
                if not _relation_holds(gens[i], gens[j], i == j):
                    what = "square is not -Id" if i == j else "pair does not anticommute"
                    report.violations.append((tag, i, j, what))
    return report


def _linear_combination(gens: Sequence[Operator], coeffs: Sequence[int]) -> ExactMatrix:
    n = gens[0].rows
    data = [dict() for _ in range(n)]
    for g, c in zip(gens, coeffs):
        if not c:
            continue
        if isinstance(g, SignedPerm):
            for j, (i, s) in enumerate(zip(g.perm, g.signs)):
                data[i][j] = data[i].get(j, 0) + c * s
        else:
            for i, j, v in g.entries():
                data[i][j] = data[i].get(j, 0) + c * v
    return ExactMatrix(n, n, data)


def quadratic_form_holds(gens: Sequence[Operator], x: Sequence) -> bool:
    """Exact check of (sum x_i e_i)^2 == -|x|^2 Id for rational x."""
    xs = [Fraction(v) for v in x]
    if len(xs) != len(gens):
        raise DimensionMismatch(len(gens), len(xs), "coefficient count")
    den = 1
    for v in xs:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in xs]
    # scale by the common denominator so the check runs on integers
    a = _linear_combination(gens, ints)
    return a @ a == ExactMatrix.identity(a.rows, -sum(c * c for c in ints))


def monomial(gens: Sequence[Operator], alpha: Sequence[int]) -> Operator:
    """Ordered product e_{a_1} ... e_{a_r}; the identity for the empty index set."""
    size = gens[0].rows
    out: Operator = SignedPerm.identity(size)
    for a in alpha:
        out = out @ gens[a]
    return out


def volume_element(r: CliffordRealization) -> tuple[Operator, ...]:
    """e_0 e_1 ... e_{n-1}, one operator per component."""
    return tuple(monomial(r.component(t), range(r.n)) for t in r.components)


@dataclass
class DichotomyReport:
    n: int
    component_scalars: list
    direct_sum_scalar: bool
    requires_non_scalar: bool

    @property
    def passed(self) -> bool:
        return not (self.requires_non_scalar and self.direct_sum_scalar)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "component_scalars": [None if s is None else str(s) for s in self.component_scalars],
            "direct_sum_scalar": self.direct_sum_scalar,
            "requires_non_scalar": self.requires_non_scalar,
            "pass": self.passed,
        }


def dichotomy_check(r: CliffordRealization) -> DichotomyReport:
    """For n = 3 mod 4 the volume element of the full realization must not be real."""
    vols = volume_element(r)
    scalars = [v.scalar_value() for v in vols]
    whole = scalars[0] is not None and all(s == scalars[0] for s in scalars)
    return DichotomyReport(
        n=r.n,
        component_scalars=scalars,
        direct_sum_scalar=whole,
        requires_non_scalar=r.n % 4 == 3,
    )


def algebra_dimension(gens: Sequence[Operator], backend: str | None = None) -> int:
    """Exact dimension of the span of all 2^n generator monomials."""
    n = len(gens)
    size = gens[0].rows
    rows = []
    for r in range(n + 1):
        for alpha in combinations(range(n), r):
            mono = monomial(gens, alpha)
            flat = [0] * (size * size)
            sp = mono.to_signed_perm()
            if sp is not None:
                for j, (i, s) in enumerate(zip(sp.perm, sp.signs)):
                    flat[i * size + j] = s
            else:
                for i, j, v in mono.entries():
                    flat[i * size + j] = v
            rows.append(flat)
    reduced, _ = _backend.rref(rows, backend=backend)
    return len(reduced)


def clifford_conj_sign(alpha: Sequence[int], convention: str = "cardinality") -> int:
    """Sign c with conj(e_alpha) = c e_alpha.

    ``cardinality`` uses |alpha| = number of indices (the usual grading);
    ``index-sum`` uses |alpha| = sum of the indices.
    """
    if convention == "cardinality":
        size = len(alpha)
    elif convention == "index-sum":
        size = sum(alpha)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return -1 if (size * (size + 1) // 2) % 2 else 1
