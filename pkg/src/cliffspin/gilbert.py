"""Witnesses and obstructions for the Hardy-space decomposition problem.

A witness for Cl_n is a pair (eta, H0): eta a unit generator direction with
eta^2 = -1 and H0 a subspace of the spinor space S with

    S = H0 + eta H0  (direct), and
    eta e_0 e_j H0 = H0 = e_0 e_j eta H0   for j = 1 .. n-1.

Witnesses exist for n mod 8 not in {6, 7}.  For n = 8k + 6, 8k + 7 the
necessary inequality dim S_n >= 2 dim S_{n-2} fails, because H0 would be a
module over the algebra generated by the g_1 g_j and hence at least as large as
S_{n-2}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .clifford import CliffordRealization, build, monomial, spinor_dim, split
from .errors import DimensionMismatch, ObstructedDimension, UnsupportedDimension
from .linalg import Operator, SignedPerm, Spinner, Subspace, direct_sum_check, image

OBSTRUCTED_RESIDUES = (6, 7)


def _eta_index(m: int) -> int:
    return 1 if m in (3, 5) else 0


def _block_space(total: int, pieces: list[tuple[int, list[int]]], block: int) -> list[int]:
    """Coordinates of sum_b (span of `coords` in block b), blocks of size ``block``."""
    return [b * block + c for b, coords in pieces for c in coords]


def _diagonal_space(half: int, tail: int) -> Subspace:
    """span{(e_a, e_a)} (x) R^tail inside (R^half)^2 (x) R^tail."""
    vecs = []
    for a in range(half):
        u = [0] * (2 * half)
        u[a] = u[half + a] = 1
        vecs.append(u)
    return Subspace.span(vecs, 2 * half).tensor(Subspace.full(tail))


def standard_h0(n: int, component: str = "+") -> Subspace:
    """The subspace H0 of the standard witness for ``n``."""
    k, m = split(n)
    dim = spinor_dim(n)
    if m == 0:
        return _diagonal_space(8, 16 ** (k - 1))
    if m == 1:
        return Subspace.coordinate(2, [0]).tensor(Subspace.full(16**k))
    if m == 2:
        return Subspace.coordinate(4, [0, 2]).tensor(Subspace.full(16**k))
    if m == 4:
        return _diagonal_space(4, 16**k)
    if m == 3:
        if k == 0:
            return Subspace.coordinate(4, [0, 1])
        # [1 (x) (O,0) + i (x) (O,0) + j (x) (0,O) + k (x) (0,O)] (x) full
        top, bottom = list(range(8)), list(range(8, 16))
        coords = _block_space(64, [(0, top), (1, top), (2, bottom), (3, bottom)], 16)
        return Subspace.coordinate(64, coords).tensor(Subspace.full(16 ** (k - 1)))
    if m == 5:
        if k == 0:
            return Subspace.coordinate(8, range(4))
        # [(H,0) (x) (O,0) + (0,H) (x) (0,O)] (x) full
        top, bottom = list(range(8)), list(range(8, 16))
        coords = _block_space(128, [(b, top) for b in range(4)] + [(b, bottom) for b in range(4, 8)], 16)
        return Subspace.coordinate(128, coords).tensor(Subspace.full(16 ** (k - 1)))
    raise ObstructedDimension(n, dim, spinor_dim(n - 2))


@dataclass
class GilbertWitness:
    n: int
    eta_index: int
    eta_matrix: Operator
    h0: Subspace
    component_tag: str = "single"

    @property
    def eta_vector(self) -> list[int]:
        return [1 if i == self.eta_index else 0 for i in range(self.n)]


def standard_witness(n: int, component: str = "+", realization: CliffordRealization | None = None) -> GilbertWitness:
    """The explicit witness for ``n``; ``component`` selects + or - when n = 3 mod 8."""
    if n < 2:
        raise UnsupportedDimension(n, "the boundary R^(n-1) is trivial for n < 2")
    k, m = split(n)
    if m in OBSTRUCTED_RESIDUES:
        raise ObstructedDimension(n, spinor_dim(n), spinor_dim(n - 2))
    r = realization if realization is not None else build(n)
    tag = component if r.semisimple_pair else "single"
    eta = _eta_index(m)
    return GilbertWitness(
        n=n,
        eta_index=eta,
        eta_matrix=r.component(tag)[eta],
        h0=standard_h0(n, tag),
        component_tag=tag,
    )


@dataclass
class ConditionReport:
    n: int
    component_tag: str
    decomposition_ok: bool
    eta_square_ok: bool
    conditions: list = field(default_factory=list)
    simplified: list | None = None
    witness: GilbertWitness | None = None

    @property
    def simplified_agrees(self) -> bool | None:
        if self.simplified is None:
            return None
        return all(s == (c["forward_ok"] and c["backward_ok"]) for s, c in zip(self.simplified, self.conditions))

    @property
    def verdict(self) -> bool:
        ok = self.decomposition_ok and self.eta_square_ok
        ok = ok and all(c["forward_ok"] and c["backward_ok"] for c in self.conditions)
        return ok and self.simplified_agrees is not False

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "component": self.component_tag,
            "verdict": self.verdict,
            "decomposition_ok": self.decomposition_ok,
            "eta_square_ok": self.eta_square_ok,
            "conditions": self.conditions,
        }
        if self.simplified is not None:
            out["simplified_conditions"] = [{"j": j + 1, "ok": s} for j, s in enumerate(self.simplified)]
            out["simplified_agrees"] = self.simplified_agrees
        if self.witness is not None:
            out["eta"] = self.witness.eta_vector
            out["h0_basis"] = self.witness.h0.to_json()["basis"]
        return out


def check_gilbert(r: CliffordRealization, w: GilbertWitness) -> ConditionReport:
    """Exact check of the decomposition and the per-j invariance conditions."""
    gens = r.component(w.component_tag if r.semisimple_pair else "single")
    size = r.spinor_dim
    if w.h0.ambient_dim != size:
        raise DimensionMismatch(size, w.h0.ambient_dim, "witness ambient dimension")
    eta = w.eta_matrix
    if eta.shape != (size, size):
        raise DimensionMismatch((size, size), eta.shape, "eta shape")
    eta_sq = eta @ eta
    eta_square_ok = eta_sq == SignedPerm.identity(size, -1)
    h0 = w.h0
    decomposition_ok = direct_sum_check(h0, image(eta, h0))
    conditions = []
    for j in range(1, r.n):
        ej = monomial(gens, (0, j))
        forward = image(eta @ ej, h0) == h0
        backward = image(ej @ eta, h0) == h0
        conditions.append({"j": j, "forward_ok": forward, "backward_ok": backward})
    simplified = None
    if eta == gens[0]:
        # with eta = e_0 the conditions reduce to e_j H0 = H0
        simplified = [image(gens[j], h0) == h0 for j in range(1, r.n)]
    return ConditionReport(
        n=r.n,
        component_tag=w.component_tag,
        decomposition_ok=decomposition_ok,
        eta_square_ok=eta_square_ok,
        conditions=conditions,
        simplified=simplified,
        witness=w,
    )


def even_generators(r: CliffordRealization, component: str = "+") -> list[Operator]:
    """g_j = e_0 e_j for j = 1 .. n-1."""
    gens = r.component(component if r.semisimple_pair else "single")
    return [gens[0] @ gens[j] for j in range(1, r.n)]


@dataclass
class ObstructionReport:
    n: int
    spinor_dim: int
    spinor_dim_minus_two: int

    @property
    def required(self) -> int:
        return 2 * self.spinor_dim_minus_two

    @property
    def failed(self) -> bool:
        return self.spinor_dim < self.required

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "spinor_dim": self.spinor_dim,
            "twice_spinor_dim_n_minus_2": self.required,
            "inequality_holds": not self.failed,
            "obstructed": self.failed,
        }


def dim_obstruction(n: int) -> ObstructionReport:
    """Necessary condition dim S_n >= 2 dim S_{n-2} for a witness to exist."""
    if n < 3:
        raise UnsupportedDimension(n, "the inequality needs n >= 3")
    return ObstructionReport(n=n, spinor_dim=spinor_dim(n), spinor_dim_minus_two=spinor_dim(n - 2))


@dataclass
class EvidenceReport:
    n: int
    component_tag: str
    trials: int
    seed: int
    threshold: int
    dims: list = field(default_factory=list)
    basis_dims: list = field(default_factory=list)

    @property
    def min_dim(self) -> int:
        return min(self.dims + self.basis_dims)

    @property
    def consistent(self) -> bool:
        return self.min_dim > self.threshold

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "component": self.component_tag,
            "kind": "probabilistic",
            "trials": self.trials,
            "seed": self.seed,
            "half_spinor_dim": self.threshold,
            "random_spin_dims": self.dims,
            "basis_spin_dims": self.basis_dims,
            "min_spin_dim": self.min_dim,
            "consistent_with_obstruction": self.consistent,
        }


def random_vector(rng: random.Random, size: int, bound: int = 9) -> list[int]:
    """Integer vector with entries in [-bound, bound], never zero."""
    while True:
        v = [rng.randint(-bound, bound) for _ in range(size)]
        if any(v):
            return v


def spinning_evidence(
    n: int,
    trials: int,
    seed: int = 0,
    component: str = "+",
    include_basis: bool = True,
    backend: str | None = None,
) -> EvidenceReport:
    """Spin random and basis vectors under {g_1 g_j : j = 2 .. n-1}.

    Any H0 of a witness would be stable under these operators, so a spin of
    dimension above half the spinor dimension for every tried vector is
    evidence (not proof) that no witness exists.
    """
    k, m = split(n)
    if m not in OBSTRUCTED_RESIDUES:
        raise UnsupportedDimension(n, "spinning evidence is for n = 6, 7 mod 8")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    r = build(n)
    g = even_generators(r, component)
    spinner = Spinner([g[0] @ gj for gj in g[1:]], size=r.spinor_dim)
    size = r.spinor_dim
    rng = random.Random(seed)
    report = EvidenceReport(
        n=n,
        component_tag=component if r.semisimple_pair else "single",
        trials=trials,
        seed=seed,
        threshold=size // 2,
    )
    for _ in range(trials):
        report.dims.append(spinner.spin(random_vector(rng, size), backend=backend).dim)
    if include_basis:
        for i in range(size):
            e = [0] * size
            e[i] = 1
            report.basis_dims.append(spinner.spin(e, backend=backend).dim)
    return report


@dataclass
class SignatureReport:
    n: int
    component_tag: str
    squares: list
    expected_squares: list
    anticommute: list
    commute: list

    @property
    def squares_ok(self) -> bool:
        return self.squares == self.expected_squares

    @property
    def anticommute_ok(self) -> bool:
        size = len(self.squares)
        return len(self.anticommute) == size * (size - 1) // 2

    @property
    def passed(self) -> bool:
        return self.squares_ok and self.anticommute_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "component": self.component_tag,
            "squares": [None if s is None else int(s) for s in self.squares],
            "expected_squares": self.expected_squares,
            "squares_ok": self.squares_ok,
            "anticommuting_pairs": [list(p) for p in self.anticommute],
            "commuting_pairs": [list(p) for p in self.commute],
            "anticommute_ok": self.anticommute_ok,
            "pass": self.passed,
        }


def mixed_signature_check(r: CliffordRealization, component: str = "+") -> SignatureReport:
    """Relations of h_j = e_1 e_0 e_j, j = 1 .. n-1, against the Cl_{1,n-2} pattern.

    Expected: h_1^2 = +Id, h_j^2 = -Id for j >= 2, distinct h's anticommute.
    The report records what actually holds, including commuting pairs.
    """
    if r.n < 3:
        raise UnsupportedDimension(r.n, "needs n >= 3")
    tag = component if r.semisimple_pair else "single"
    gens = r.component(tag)
    h = [monomial(gens, (1, 0, j)) for j in range(1, r.n)]
    squares = [(x @ x).scalar_value() for x in h]
    anti, comm = [], []
    for a in range(len(h)):
        for b in range(a + 1, len(h)):
            ab, ba = h[a] @ h[b], h[b] @ h[a]
            if (ab + ba).is_zero():
                anti.append((a + 1, b + 1))
            elif ab == ba:
                comm.append((a + 1, b + 1))
    return SignatureReport(
        n=r.n,
        component_tag=tag,
        squares=squares,
        expected_squares=[1] + [-1] * (r.n - 2),
        anticommute=anti,
        commute=comm,
    )
