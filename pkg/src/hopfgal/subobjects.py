"""Coideal subalgebras, generalized quotients and the correspondences between them.

Conventions: a left coideal subalgebra K satisfies Delta(K) in H (x) K; a
generalized quotient is H/I for a right ideal coideal I.  Quotients are
ordered by Q1 <= Q2 when ideal(Q2) is contained in ideal(Q1), so H is the top
and k = H/ker(eps) the bottom.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import InputError, InternalInconsistency, TransportViolation
from .fields import PrimeField
from .groups import GroupTable
from .hopf import CoalgebraStr, HopfAlgebra, AlgebraStr, dual_hopf
from .lattice import FinitePoset, is_anti_isomorphism
from .linalg import (
    Echelon, QuotientSpace, Subspace, annihilator, kernel,
    quotient_by, span, subspace_contains, tensor, vaxpy, vscale, vsub,
)


# ---------------------------------------------------------------- tensor slicing

def right_factors(x: dict, nb: int) -> list[dict]:
    """Rows of x viewed as an (na x nb) matrix: the smallest W with x in k^na (x) W."""
    rows: dict[int, dict] = {}
    for p, v in x.items():
        i, j = divmod(p, nb)
        rows.setdefault(i, {})[j] = v
    return list(rows.values())


def left_factors(x: dict, nb: int) -> list[dict]:
    cols: dict[int, dict] = {}
    for p, v in x.items():
        i, j = divmod(p, nb)
        cols.setdefault(j, {})[i] = v
    return list(cols.values())


# ---------------------------------------------------------------- closures

def close_subalgebra(a: AlgebraStr, seed: Subspace) -> Subspace:
    """Smallest unital subalgebra containing ``seed``."""
    e = Echelon(a.field, a.dim)
    gens: list[dict] = []
    queue = [a.unit] + list(seed.vectors)
    while queue:
        v = queue.pop()
        if not e.add(v):
            continue
        for w in gens:
            queue.append(a.mul(v, w))
            queue.append(a.mul(w, v))
        queue.append(a.mul(v, v))
        gens.append(v)
    return span(a.field, a.dim, gens)


def close_subcoalgebra(c: CoalgebraStr, seed: Subspace) -> Subspace:
    n = c.dim
    e = Echelon(c.field, n)
    queue = list(seed.vectors)
    kept = []
    while queue:
        v = queue.pop()
        if not e.add(v):
            continue
        kept.append(v)
        d = c.delta(v)
        queue.extend(right_factors(d, n))
        queue.extend(left_factors(d, n))
    return span(c.field, n, kept)


def _is_left_coideal(h: HopfAlgebra, space: Subspace) -> bool:
    return all(space.contains_vector(r) for v in space.vectors for r in right_factors(h.delta(v), h.dim))


def _is_right_coideal(h: HopfAlgebra, space: Subspace) -> bool:
    return all(space.contains_vector(r) for v in space.vectors for r in left_factors(h.delta(v), h.dim))


def _is_subalgebra(a: AlgebraStr, space: Subspace) -> bool:
    if not space.contains_vector(a.unit):
        return False
    vs = space.vectors
    return all(space.contains_vector(a.mul(x, y)) for x in vs for y in vs)


def _is_left_ideal(a: AlgebraStr, space: Subspace) -> bool:
    return all(space.contains_vector(a.mul({i: a.field.one}, v)) for v in space.vectors for i in range(a.dim))


def _is_right_ideal(a: AlgebraStr, space: Subspace) -> bool:
    return all(space.contains_vector(a.mul(v, {i: a.field.one})) for v in space.vectors for i in range(a.dim))


def _is_coideal(h: HopfAlgebra, space: Subspace) -> bool:
    if any(h.eps(v) for v in space.vectors):
        return False
    q = quotient_by(space)
    n = h.dim
    pb = [q.project({i: h.field.one}) for i in range(n)]
    for v in space.vectors:
        acc: dict = {}
        for p, c in h.delta(v).items():
            i, j = divmod(p, n)
            vaxpy(acc, c, tensor(pb[i], pb[j], q.dim))
        if acc:
            return False
    return True


_CHECKS = {
    "left_coideal": lambda h, s: _is_left_coideal(h, s),
    "right_coideal": lambda h, s: _is_right_coideal(h, s),
    "coideal": _is_coideal,
    "subalgebra": lambda h, s: _is_subalgebra(h.alg, s),
    "left_ideal": lambda h, s: _is_left_ideal(h.alg, s),
    "right_ideal": lambda h, s: _is_right_ideal(h.alg, s),
}
_COMPOUND = {
    "left_coideal_subalgebra": ("left_coideal", "subalgebra"),
    "right_coideal_subalgebra": ("right_coideal", "subalgebra"),
    "left_ideal_coideal": ("left_ideal", "coideal"),
    "right_ideal_coideal": ("right_ideal", "coideal"),
}


def has_kind(h: HopfAlgebra, space: Subspace, kind: str) -> bool:
    parts = _COMPOUND.get(kind, (kind,))
    return all(_CHECKS[p](h, space) for p in parts)


def close_coideal_subalgebra(h: HopfAlgebra, seed: Subspace) -> "CoidealSubalgebra":
    """Smallest left coideal subalgebra containing ``seed``.

    Alternates subalgebra closure with adding the right tensor factors of
    Delta(K); each step only adds elements forced into any left coideal
    subalgebra containing the seed.
    """
    n = h.dim
    cur = span(h.field, n, list(seed.vectors) + [h.unit])
    while True:
        cur = close_subalgebra(h.alg, cur)
        extra = [r for v in cur.vectors for r in right_factors(h.delta(v), n)]
        nxt = span(h.field, n, cur.vectors + extra)
        if nxt == cur:
            return CoidealSubalgebra(h, cur)
        cur = nxt


# ---------------------------------------------------------------- subobject types

@dataclass(frozen=True, eq=False)
class CoidealSubalgebra:
    host: HopfAlgebra
    space: Subspace

    def __eq__(self, other):
        return isinstance(other, CoidealSubalgebra) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    @property
    def dim(self):
        return self.space.dim

    def violations(self) -> list[str]:
        out = []
        if not self.space.contains_vector(self.host.unit):
            out.append("contains unit")
        if not _is_subalgebra(self.host.alg, self.space):
            out.append("closed under multiplication")
        if not _is_left_coideal(self.host, self.space):
            out.append("left coideal")
        return out


@dataclass(frozen=True, eq=False)
class RightIdealCoideal:
    host: HopfAlgebra
    space: Subspace

    def __eq__(self, other):
        return isinstance(other, RightIdealCoideal) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def violations(self) -> list[str]:
        out = []
        if not _is_right_ideal(self.host.alg, self.space):
            out.append("right ideal")
        if any(self.host.eps(v) for v in self.space.vectors):
            out.append("counit vanishes")
        if not _is_coideal(self.host, self.space):
            out.append("coideal")
        return out


@dataclass(frozen=True, eq=False)
class GeneralizedQuotient:
    """H/I with induced coalgebra structure and right H-action."""

    ideal: RightIdealCoideal
    q: QuotientSpace

    def __eq__(self, other):
        return isinstance(other, GeneralizedQuotient) and self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    @property
    def host(self) -> HopfAlgebra:
        return self.ideal.host

    @property
    def dim(self) -> int:
        return self.q.dim

    def pi(self, x: dict) -> dict:
        return self.q.project(x)

    @cached_property
    def _pi_basis(self) -> list[dict]:
        one = self.host.field.one
        return [self.q.project({i: one}) for i in range(self.host.dim)]

    def pi_tensor_right(self, x: dict, na: int) -> dict:
        """(id (x) pi) on k^na (x) H."""
        n, m = self.host.dim, self.dim
        out: dict = {}
        for p, v in x.items():
            i, j = divmod(p, n)
            for k, w in self._pi_basis[j].items():
                idx = i * m + k
                s = out.get(idx, 0) + v * w
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return out

    def pi_tensor_left(self, x: dict, nb: int) -> dict:
        """(pi (x) id) on H (x) k^nb."""
        out: dict = {}
        for p, v in x.items():
            i, j = divmod(p, nb)
            for k, w in self._pi_basis[i].items():
                idx = k * nb + j
                s = out.get(idx, 0) + v * w
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return out

    @cached_property
    def comult(self) -> list[dict]:
        """(pi (x) pi) Delta on the section basis."""
        h, m = self.host, self.dim
        out = []
        for c in self.q.complement:
            d = h.coalg.comult[c]
            acc: dict = {}
            n = h.dim
            for p, v in d.items():
                i, j = divmod(p, n)
                vaxpy(acc, v, tensor(self._pi_basis[i], self._pi_basis[j], m))
            out.append(acc)
        return out

    @cached_property
    def counit(self) -> list:
        return [self.host.coalg.counit[c] for c in self.q.complement]

    def act(self, qv: dict, hv: dict) -> dict:
        """Right action q . h = pi(section(q) h)."""
        return self.pi(self.host.mul(self.q.lift(qv), hv))

    def coalgebra(self) -> CoalgebraStr:
        return CoalgebraStr.build(self.host.field, self.dim, self.comult, self.counit)

    def check_projection(self) -> list[str]:
        """pi is a coalgebra map and a right H-module map."""
        h = self.host
        n = h.dim
        one = h.field.one
        bad = []
        for a in range(n):
            lhs: dict = {}
            for p, v in h.coalg.comult[a].items():
                i, j = divmod(p, n)
                vaxpy(lhs, v, tensor(self._pi_basis[i], self._pi_basis[j], self.dim))
            pa = self._pi_basis[a]
            rhs: dict = {}
            for k, v in pa.items():
                vaxpy(rhs, v, self.comult[k])
            if lhs != rhs:
                bad.append(f"coalgebra map at {a}")
            for b in range(n):
                if self.act(pa, {b: one}) != self.pi(h.mul({a: one}, {b: one})):
                    bad.append(f"module map at {(a, b)}")
        return bad


def quotient_leq(q1: GeneralizedQuotient, q2: GeneralizedQuotient) -> bool:
    """q1 <= q2 when q1 is a quotient of q2."""
    return subspace_contains(q1.ideal.space, q2.ideal.space)


def quotient_from_ideal(h: HopfAlgebra, ideal: Subspace, check: bool = True) -> GeneralizedQuotient:
    I = RightIdealCoideal(h, ideal)
    if check:
        bad = I.violations()
        if bad:
            raise InputError("not a right ideal coideal: " + ", ".join(bad), witness=bad)
    return GeneralizedQuotient(I, quotient_by(ideal))


def k_plus_h(k: CoidealSubalgebra) -> GeneralizedQuotient:
    """H/K+H with K+H spanned by (x - eps(x)1)h."""
    h = k.host
    one = h.field.one
    vecs = []
    for x in k.space.vectors:
        xp = vsub(x, vscale(h.eps(x), h.unit))
        if xp:
            for j in range(h.dim):
                vecs.append(h.mul(xp, {j: one}))
    ideal = span(h.field, h.dim, vecs)
    I = RightIdealCoideal(h, ideal)
    bad = I.violations()
    if bad:
        raise InternalInconsistency("K+H fails: " + ", ".join(bad), witness=bad)
    return GeneralizedQuotient(I, quotient_by(ideal))


def h_coinvariants(h: HopfAlgebra, q: GeneralizedQuotient) -> CoidealSubalgebra:
    """{x : (id (x) pi) Delta(x) = x (x) pi(1)}."""
    n = h.dim
    pi1 = q.pi(h.unit)
    one = h.field.one
    cols = []
    for i in range(n):
        lhs = q.pi_tensor_right(h.coalg.comult[i], n)
        cols.append(vsub(lhs, tensor({i: one}, pi1, q.dim)))
    K = CoidealSubalgebra(h, kernel(h.field, cols, n))
    bad = K.violations()
    if bad:
        raise InternalInconsistency("coinvariants fail: " + ", ".join(bad), witness=bad)
    return K


def takeuchi_check(h: HopfAlgebra, subs, quots) -> dict:
    failures = []
    rows = []
    for idx, K in enumerate(subs):
        Q = k_plus_h(K)
        back = h_coinvariants(h, Q)
        ok = back == K
        rows.append({"kind": "sub", "index": idx, "dim": K.dim, "quotient_dim": Q.dim, "round_trip": ok,
                     "free_rank_consistent": K.dim * Q.dim == h.dim})
        if not ok:
            failures.append({"kind": "sub", "index": idx})
    for idx, Q in enumerate(quots):
        K = h_coinvariants(h, Q)
        back = k_plus_h(K)
        ok = back == Q
        rows.append({"kind": "quot", "index": idx, "dim": Q.dim, "sub_dim": K.dim, "round_trip": ok,
                     "free_rank_consistent": K.dim * Q.dim == h.dim})
        if not ok:
            failures.append({"kind": "quot", "index": idx})
    return {"ok": not failures, "checked": len(rows), "rows": rows, "failures": failures}


# ---------------------------------------------------------------- perp duality

PERP_TARGET = {
    "left_coideal": "left_ideal",
    "right_coideal": "right_ideal",
    "coideal": "subalgebra",
    "subalgebra": "coideal",
    "left_ideal": "left_coideal",
    "right_ideal": "right_coideal",
    "left_coideal_subalgebra": "left_ideal_coideal",
    "right_coideal_subalgebra": "right_ideal_coideal",
    "left_ideal_coideal": "left_coideal_subalgebra",
    "right_ideal_coideal": "right_coideal_subalgebra",
}


def perp_transport(h: HopfAlgebra, x: Subspace, kind: str, dual: HopfAlgebra | None = None) -> Subspace:
    """x^perp inside the dual, checked to be of the matching kind.

    ``kind`` names the property of x in h; the image has ``PERP_TARGET[kind]``
    in ``dual_hopf(h)``.  Both sides share coordinates (dual basis).
    """
    if kind not in PERP_TARGET:
        raise InputError(f"unknown subspace kind {kind!r}")
    if not has_kind(h, x, kind):
        raise TransportViolation(f"input is not a {kind}")
    dual = dual or dual_hopf(h)
    y = annihilator(x)
    target = PERP_TARGET[kind]
    if not has_kind(dual, y, target):
        raise TransportViolation(f"perp is not a {target}")
    return y


# ---------------------------------------------------------------- groups

@dataclass
class GroupSubobjects:
    group: GroupTable
    subgroups: list
    subgroup_poset: FinitePoset
    sub_gen: list            # k[G0] inside k[G]
    quot_gen: list           # k[G] / k[G0]+ k[G]
    quot_gen_dual: list      # k[G]* / I_{G0}
    quot_poset: FinitePoset
    quot_poset_dual: FinitePoset
    anti_isomorphic: bool
    dual_isomorphic: bool
    coset_kernels_match: bool


def group_subobjects(g: GroupTable, h: HopfAlgebra, hd: HopfAlgebra) -> GroupSubobjects:
    """Subgroup-indexed generalized subalgebras and quotients of k[G] and k[G]*.

    ``h`` must be group_algebra(g) and ``hd`` dual_group_algebra(g).
    """
    F, n = h.field, g.order
    one = F.one
    subs = g.subgroups()
    spos = FinitePoset.from_relation(range(len(subs)), lambda a, b: subs[a] <= subs[b])
    sub_gen, quots, dquots = [], [], []
    coset_ok = True
    for G0 in subs:
        K = CoidealSubalgebra(h, span(F, n, [{x: one} for x in sorted(G0)]))
        Q = k_plus_h(K)
        # kernel of k[G] -> k[G0\G], g -> right coset of g
        coset = {x: min(g.mul(y, x) for y in G0) for x in range(n)}
        ker = span(F, n, [{x: one, coset[x]: -one} for x in range(n) if coset[x] != x])
        coset_ok &= ker == Q.ideal.space
        sub_gen.append(K)
        quots.append(Q)
        dquots.append(quotient_from_ideal(hd, span(F, n, [{x: one} for x in range(n) if x not in G0])))
    m = len(subs)
    qpos = FinitePoset.from_relation(range(m), lambda a, b: quotient_leq(quots[a], quots[b]))
    dpos = FinitePoset.from_relation(range(m), lambda a, b: quotient_leq(dquots[a], dquots[b]))
    anti = is_anti_isomorphism(spos, qpos, list(range(m)))
    iso = all(spos.leq[a][b] == dpos.leq[a][b] for a in range(m) for b in range(m))
    return GroupSubobjects(g, subs, spos, sub_gen, quots, dquots, qpos, dpos, anti, iso, coset_ok)


# ---------------------------------------------------------------- GF(p) scans

def enumerate_subspaces(field: PrimeField, n: int):
    """Every subspace of GF(p)^n, one RREF matrix per pivot pattern and fill."""
    from itertools import combinations
    elems = list(range(field.p))
    for r in range(n + 1):
        for piv in combinations(range(n), r):
            free = [(row, col) for row, p in enumerate(piv) for col in range(p + 1, n) if col not in piv]
            for vals in product(elems, repeat=len(free)):
                rows = [{p: field.one} for p in piv]
                for (row, col), v in zip(free, vals):
                    if v:
                        rows[row][col] = field(v)
                yield span(field, n, rows)


def scan_sub_gen(h: HopfAlgebra, max_dim: int = 5) -> list[CoidealSubalgebra]:
    if not isinstance(h.field, PrimeField) or h.dim > max_dim:
        raise InputError("exhaustive scans need a prime field and small dimension")
    out = []
    for s in enumerate_subspaces(h.field, h.dim):
        if has_kind(h, s, "left_coideal_subalgebra"):
            out.append(CoidealSubalgebra(h, s))
    return out


def scan_quot_gen(h: HopfAlgebra, max_dim: int = 5) -> list[GeneralizedQuotient]:
    if not isinstance(h.field, PrimeField) or h.dim > max_dim:
        raise InputError("exhaustive scans need a prime field and small dimension")
    out = []
    for s in enumerate_subspaces(h.field, h.dim):
        if has_kind(h, s, "right_ideal_coideal"):
            out.append(GeneralizedQuotient(RightIdealCoideal(h, s), quotient_by(s)))
    return out


def is_normal_subalgebra(h: HopfAlgebra, k: Subspace) -> bool:
    """Stable under the left adjoint action h_(1) x S(h_(2))."""
    n = h.dim
    one = h.field.one
    for i in range(n):
        for x in k.vectors:
            acc: dict = {}
            for p, v in h.coalg.comult[i].items():
                a, b = divmod(p, n)
                vaxpy(acc, v, h.mul(h.mul({a: one}, x), h.S({b: one})))
            if not k.contains_vector(acc):
                return False
    return True


def close_right_coideal_subalgebra(h: HopfAlgebra, seed: Subspace) -> Subspace:
    """Smallest right coideal subalgebra (Delta(K) in K (x) H) containing ``seed``."""
    n = h.dim
    cur = span(h.field, n, list(seed.vectors) + [h.unit])
    while True:
        cur = close_subalgebra(h.alg, cur)
        extra = [c for v in cur.vectors for c in left_factors(h.delta(v), n)]
        nxt = span(h.field, n, cur.vectors + extra)
        if nxt == cur:
            return cur
        cur = nxt
