"""Corings over a finite-dimensional base algebra and the Galois connections built on them.

An A-coring C is stored by its left and right A-actions on a basis of C,
a representative of Delta(c) in C (x)_k C and the counit values in A.
Tensor products over A are quotients of the k-tensor powers by the
balancing relations (c a) (x) d - c (x) (a d) over basis triples.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import sympy

from .errors import (
    DimensionGuardError, InputError, InternalInconsistency, NotMonoActionError,
    PreconditionError, ZeroDivisorError,
)
from .extensions import (
    CanResult, ModuleAlgebra, check_free_basis, invariants, relative_tensor,
)
from .fields import GaussianField, PrimeField, QQ
from .groups import GroupTable
from .hopf import AlgebraStr, _to_sympy
from .lattice import FinitePoset, GaloisConn, export_dot
from .linalg import (
    Echelon, Mat, Subspace, _from_echelon, check_guard, kernel, rank_of,
    solve_sparse, span, subspace_contains, subspace_intersect, subspace_sum, tensor,
    vaxpy, vscale, vsub,
)
from .subobjects import has_kind

DOMAIN_SCAN_CAP = 64
EXHAUSTIVE_DOMAIN_CAP = 4096


def _e(field, i):
    return {i: field.one}


# ---------------------------------------------------------------- A-corings

@dataclass(frozen=True, eq=False)
class ACoring:
    base: AlgebraStr
    dim: int
    left: tuple      # left[a][x] = e_a . c_x
    right: tuple     # right[x][a] = c_x . e_a
    comult: tuple    # representative of Delta(c_x) in C (x) C, index x*m + y
    counit: tuple    # eps(c_x) in A
    name: str = ""

    @property
    def field(self):
        return self.base.field

    def lact(self, a: dict, c: dict) -> dict:
        out: dict = {}
        for i, s in a.items():
            for x, t in c.items():
                vaxpy(out, s * t, self.left[i][x])
        return out

    def ract(self, c: dict, a: dict) -> dict:
        out: dict = {}
        for x, t in c.items():
            for i, s in a.items():
                vaxpy(out, s * t, self.right[x][i])
        return out

    def delta(self, c: dict) -> dict:
        out: dict = {}
        for x, t in c.items():
            vaxpy(out, t, self.comult[x])
        return out

    def eps(self, c: dict) -> dict:
        out: dict = {}
        for x, t in c.items():
            vaxpy(out, t, self.counit[x])
        return out

    def balancing2(self) -> Subspace:
        """Relations spanning the kernel of C (x)_k C -> C (x)_A C."""
        m, n = self.dim, self.base.dim
        check_guard(m * m, "coring tensor square")
        ech = Echelon(self.field, m * m)
        for x in range(m):
            for a in range(n):
                ca = self.right[x][a]
                for y in range(m):
                    v = tensor(ca, _e(self.field, y), m)
                    vaxpy(v, -self.field.one, tensor(_e(self.field, x), self.left[a][y], m))
                    if v:
                        ech.add(v)
        return _from_echelon(ech)

    def balancing3(self) -> Subspace:
        m, n = self.dim, self.base.dim
        check_guard(m ** 3, "coring tensor cube")
        F = self.field
        ech = Echelon(F, m ** 3)
        for x in range(m):
            for a in range(n):
                for y in range(m):
                    for z in range(m):
                        v = tensor(tensor(self.right[x][a], _e(F, y), m), _e(F, z), m)
                        vaxpy(v, -F.one, tensor(tensor(_e(F, x), self.left[a][y], m), _e(F, z), m))
                        if v:
                            ech.add(v)
                        w = tensor(tensor(_e(F, z), self.right[x][a], m), _e(F, y), m)
                        vaxpy(w, -F.one, tensor(tensor(_e(F, z), _e(F, x), m), self.left[a][y], m))
                        if w:
                            ech.add(w)
        return _from_echelon(ech)

    def _left_on_first(self, a: dict, t: dict) -> dict:
        m = self.dim
        out: dict = {}
        for p, v in t.items():
            x, y = divmod(p, m)
            vaxpy(out, v, tensor(self.lact(a, _e(self.field, x)), _e(self.field, y), m))
        return out

    def _right_on_second(self, t: dict, a: dict) -> dict:
        m = self.dim
        out: dict = {}
        for p, v in t.items():
            x, y = divmod(p, m)
            vaxpy(out, v, tensor(_e(self.field, x), self.ract(_e(self.field, y), a), m))
        return out

    def violations(self) -> list:
        A, m, n = self.base, self.dim, self.base.dim
        F = self.field
        out = []
        for x in range(m):
            cx = _e(F, x)
            if self.lact(A.unit, cx) != cx or self.ract(cx, A.unit) != cx:
                out.append(("unit acts trivially", (x,)))
            for a in range(n):
                for b in range(n):
                    ea, eb = _e(F, a), _e(F, b)
                    if self.lact(A.mult[a][b], cx) != self.lact(ea, self.left[b][x]):
                        out.append(("left module", (a, b, x)))
                    if self.ract(cx, A.mult[a][b]) != self.ract(self.right[x][a], eb):
                        out.append(("right module", (x, a, b)))
                    if self.ract(self.left[a][x], eb) != self.lact(ea, self.right[x][b]):
                        out.append(("bimodule", (a, x, b)))
        rel2 = self.balancing2()
        for x in range(m):
            cx = _e(F, x)
            for a in range(n):
                ea = _e(F, a)
                if not rel2.contains_vector(vsub(self.delta(self.left[a][x]), self._left_on_first(ea, self.comult[x]))):
                    out.append(("comultiplication left linear", (a, x)))
                if not rel2.contains_vector(vsub(self.delta(self.right[x][a]), self._right_on_second(self.comult[x], ea))):
                    out.append(("comultiplication right linear", (x, a)))
                if self.eps(self.left[a][x]) != A.mul(ea, self.counit[x]):
                    out.append(("counit left linear", (a, x)))
                if self.eps(self.right[x][a]) != A.mul(self.counit[x], ea):
                    out.append(("counit right linear", (x, a)))
            left: dict = {}
            right: dict = {}
            for p, v in self.comult[x].items():
                y, z = divmod(p, m)
                vaxpy(left, v, self.lact(self.counit[y], _e(F, z)))
                vaxpy(right, v, self.ract(_e(F, y), self.counit[z]))
            if left != cx:
                out.append(("left counit", (x,)))
            if right != cx:
                out.append(("right counit", (x,)))
        try:
            rel3 = self.balancing3()
        except DimensionGuardError:
            rel3 = None
            out.append(("coassociativity not checked: tensor cube exceeds the guard", ()))
        if rel3 is not None:
            for x in range(m):
                d1: dict = {}
                d2: dict = {}
                for p, v in self.comult[x].items():
                    y, z = divmod(p, m)
                    vaxpy(d1, v, tensor(self.comult[y], _e(F, z), m))
                    vaxpy(d2, v, tensor(_e(F, y), self.comult[z], m * m))
                if not rel3.contains_vector(vsub(d1, d2)):
                    out.append(("coassociativity", (x,)))
        return out


def coring_morphism_violations(c1: ACoring, c2: ACoring, columns) -> list:
    """f: C1 -> C2 given on basis elements; A-bilinear, comultiplicative and counital."""
    F = c1.field
    m1, m2 = c1.dim, c2.dim
    out = []

    def f(v):
        acc: dict = {}
        for x, t in v.items():
            vaxpy(acc, t, columns[x])
        return acc

    rel = c2.balancing2()
    for x in range(m1):
        for a in range(c1.base.dim):
            ea = _e(F, a)
            if f(c1.left[a][x]) != c2.lact(ea, columns[x]) or f(c1.right[x][a]) != c2.ract(columns[x], ea):
                out.append(("bilinear", (x, a)))
        lhs = c2.delta(columns[x])
        rhs: dict = {}
        for p, v in c1.comult[x].items():
            y, z = divmod(p, m1)
            vaxpy(rhs, v, tensor(columns[y], columns[z], m2))
        if not rel.contains_vector(vsub(lhs, rhs)):
            out.append(("comultiplicative", (x,)))
        if c2.eps(columns[x]) != c1.counit[x]:
            out.append(("counital", (x,)))
    return out


def _coring_from_function(base, m, left, right, comult, counit, name, verify=True) -> ACoring:
    c = ACoring(base, m, tuple(tuple(r) for r in left), tuple(tuple(r) for r in right),
                tuple(comult), tuple(counit), name)
    if verify:
        bad = c.violations()
        if bad:
            raise InternalInconsistency(f"{name} fails the coring axioms: {bad[0][0]}", witness=bad[:5])
    return c


# ---------------------------------------------------------------- Sweedler coring

def sweedler_coring(a: AlgebraStr, b: Subspace, verify: bool = True) -> ACoring:
    """A (x)_B A with Delta(x (x) y) = (x (x) 1) (x)_A (1 (x) y) and eps = multiplication."""
    from .extensions import is_subalgebra
    if not is_subalgebra(a, b):
        raise InputError("the base of a Sweedler coring must be a subalgebra")
    n = a.dim
    F = a.field
    rt = relative_tensor(a, b)
    q = rt.q
    m = q.dim
    comp = q.complement
    left = [[q.project(tensor(a.mult[i][comp[x] // n], _e(F, comp[x] % n), n)) for x in range(m)] for i in range(n)]
    right = [[q.project(tensor(_e(F, comp[x] // n), a.mult[comp[x] % n][i], n)) for i in range(n)] for x in range(m)]
    comult, counit = [], []
    for x in range(m):
        i, j = divmod(comp[x], n)
        comult.append(tensor(q.project(tensor(_e(F, i), a.unit, n)), q.project(tensor(a.unit, _e(F, j), n)), m))
        counit.append(a.mult[i][j])
    c = _coring_from_function(a, m, left, right, comult, counit, "sweedler", verify)
    object.__setattr__(c, "_quotient", q)
    return c


# ---------------------------------------------------------------- Map(G, E)

def automorphism_violations(g: GroupTable, e: AlgebraStr, action) -> list:
    """action[g] lists the images g(e_k); checks algebra maps, bijectivity and g(h(x)) = (gh)(x)."""
    n = e.dim
    F = e.field
    out = []
    if len(action) != g.order:
        return [("one map per group element", ())]

    def ap(gi, v):
        acc: dict = {}
        for k, t in v.items():
            vaxpy(acc, t, action[gi][k])
        return acc

    for gi in range(g.order):
        if ap(gi, e.unit) != e.unit:
            out.append(("unit preserved", (gi,)))
        if rank_of(F, n, action[gi]) != n:
            out.append(("bijective", (gi,)))
        for i in range(n):
            for j in range(n):
                if ap(gi, e.mult[i][j]) != e.mul(action[gi][i], action[gi][j]):
                    out.append(("multiplicative", (gi, i, j)))
        for hi in range(g.order):
            for k in range(n):
                if ap(gi, action[hi][k]) != action[g.mul(gi, hi)][k]:
                    out.append(("group action", (gi, hi, k)))
    if any(action[g.identity][k] != _e(F, k) for k in range(n)):
        out.append(("identity acts trivially", ()))
    return out


def map_coring(g: GroupTable, e: AlgebraStr, action, verify: bool = True) -> ACoring:
    """Map(G, E) with basis delta_g e_k at index g*n + k.

    Left action (a phi)(g) = a phi(g), right action (phi a)(g) = phi(g) g(a),
    Delta(phi)(g1, g2) = phi(g1 g2) read through phi1 (x) phi2 -> phi1(g1) g1(phi2(g2)),
    and eps is evaluation at the identity.
    """
    bad = automorphism_violations(g, e, action)
    if bad:
        raise InputError("G does not act by algebra automorphisms: " + bad[0][0], witness=list(bad[0][1]))
    n, order = e.dim, g.order
    F = e.field
    m = order * n

    def shift(gi, v):
        return {gi * n + k: t for k, t in v.items()}

    left = [[shift(x // n, e.mult[a][x % n]) for x in range(m)] for a in range(n)]
    right = [[shift(x // n, e.mul(_e(F, x % n), action[x // n][a])) for a in range(n)] for x in range(m)]
    comult, counit = [], []
    for x in range(m):
        g0, k = divmod(x, n)
        acc: dict = {}
        for h in range(order):
            rest = g.mul(g.inverse(h), g0)
            vaxpy(acc, F.one, tensor(shift(h, _e(F, k)), shift(rest, e.unit), m))
        comult.append(acc)
        counit.append(_e(F, k) if g0 == g.identity else {})
    return _coring_from_function(e, m, left, right, comult, counit, "map", verify)


def fixed_subalgebra(e: AlgebraStr, action) -> Subspace:
    n = e.dim
    F = e.field
    cols = []
    for k in range(n):
        col: dict = {}
        for gi, img in enumerate(action):
            for idx, v in vsub(img[k], _e(F, k)).items():
                col[gi * n + idx] = v
        cols.append(col)
    return kernel(F, cols, n)


def field_ext_galois_check(g: GroupTable, e: AlgebraStr, action, base: Subspace | None = None,
                           morphism: bool = True) -> dict:
    """Rank of E (x)_F E -> Map(G, E), e1 (x) e2 -> (g -> e1 g(e2)).

    F defaults to the ground field k 1; the fixed subalgebra E^G is reported alongside.
    """
    bad = automorphism_violations(g, e, action)
    if bad:
        raise InputError("G does not act by algebra automorphisms: " + bad[0][0], witness=list(bad[0][1]))
    n = e.dim
    F = e.field
    fixed = fixed_subalgebra(e, action)
    base = base if base is not None else span(F, n, [e.unit])
    if not subspace_contains(fixed, base):
        raise PreconditionError("the base is not fixed by G")
    rt = relative_tensor(e, base)
    cols = []
    for u, c in rt.reps:
        img: dict = {}
        for gi in range(g.order):
            for k, v in e.mul(u, _apply(action[gi], c)).items():
                img[gi * n + k] = v
        cols.append(img)
    target = g.order * n
    res = CanResult(rank_of(F, target, cols), rt.dim, target, cols, {"fixed_dim": fixed.dim})
    out = res.as_dict()
    if morphism:
        sw = sweedler_coring(e, base)
        mp = map_coring(g, e, action)
        comp = sw._quotient.complement
        columns = []
        for x in range(sw.dim):
            i, j = divmod(comp[x], n)
            img = {}
            for gi in range(g.order):
                for k, v in e.mul(_e(F, i), action[gi][j]).items():
                    img[gi * n + k] = v
            columns.append(img)
        out["coring_morphism_violations"] = [list(w) for _, w in coring_morphism_violations(sw, mp, columns)]
        out["map_coring_dim"] = mp.dim
    return out


def _apply(cols, v: dict) -> dict:
    acc: dict = {}
    for k, t in v.items():
        vaxpy(acc, t, cols[k])
    return acc


# ---------------------------------------------------------------- domain and mono-action certificates

@dataclass
class DomainCert:
    domain: bool | None
    method: str
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {"domain": self.domain, "method": self.method,
                "witness": None if self.witness is None else [sorted(w.items()) for w in self.witness]}


def _powers_basis(alg: AlgebraStr, x: dict):
    n = alg.dim
    pw = [alg.unit]
    for _ in range(n):
        pw.append(alg.mul(pw[-1], x))
    return pw


def _minimal_polynomial(alg: AlgebraStr, x: dict):
    """Coefficients c_0..c_d (monic) of the minimal polynomial of x, or None if x does not generate."""
    n = alg.dim
    F = alg.field
    pw = _powers_basis(alg, x)
    if rank_of(F, n, pw[:n]) != n:
        return None
    sol = solve_sparse(F, pw[:n], pw[n], n)
    return [-sol.get(i, F.zero) for i in range(n)] + [F.one]


def _irreducible(field, coeffs) -> bool:
    t = sympy.Symbol("t")
    poly_expr = sum(_to_sympy(c) * t ** i for i, c in enumerate(coeffs))
    if isinstance(field, PrimeField):
        p = sympy.Poly([int(c.v) for c in reversed(coeffs)], t, modulus=field.p)
        return p.is_irreducible
    if isinstance(field, GaussianField):
        return len(sympy.factor_list(poly_expr, t, extension=sympy.I)[1]) == 1 and \
            sympy.factor_list(poly_expr, t, extension=sympy.I)[1][0][1] == 1
    return sympy.Poly(poly_expr, t, domain="QQ").is_irreducible


def domain_certificate(alg: AlgebraStr, cap: int = DOMAIN_SCAN_CAP) -> DomainCert:
    """Decide whether A has no zero divisors.

    Exhaustive over GF(p) when |A| <= 4096; via the minimal polynomial of a
    generating element for commutative singly generated algebras; otherwise a
    scan of basis products and two-term combinations, which can only refute.
    """
    F = alg.field
    n = alg.dim
    for i in range(n):
        for j in range(n):
            if not alg.mult[i][j]:
                return DomainCert(False, "basis scan", (_e(F, i), _e(F, j)))
    if isinstance(F, PrimeField) and F.p ** n <= EXHAUSTIVE_DOMAIN_CAP:
        elems = [dict((k, F(v)) for k, v in enumerate(c) if v) for c in product(range(F.p), repeat=n)]
        elems = [x for x in elems if x]
        for x in elems:
            cols = alg.left_mult_columns(x)
            if rank_of(F, n, cols) < n:
                y = kernel(F, cols, n).vectors[0]
                return DomainCert(False, "exhaustive", (x, y))
        return DomainCert(True, "exhaustive")
    if alg.is_commutative():
        cands = [_e(F, i) for i in range(n)] + [{i: F.one, j: F.one} for i, j in combinations(range(n), 2)]
        for x in cands:
            mp = _minimal_polynomial(alg, x)
            if mp is not None:
                ok = _irreducible(F, mp)
                return DomainCert(ok, "minimal polynomial", None if ok else (x,))
    if n > cap:
        return DomainCert(None, "not scanned: dimension above cap")
    scalars = [F.one, -F.one]
    if isinstance(F, GaussianField):
        scalars += [F.i, -F.i]
    cands = [_e(F, i) for i in range(n)]
    cands += [{i: F.one, j: s} for i in range(n) for j in range(n) if i != j for s in scalars]
    for x in cands:
        cols = alg.left_mult_columns(x)
        if rank_of(F, n, cols) < n:
            return DomainCert(False, "two-term scan", (x, kernel(F, cols, n).vectors[0]))
    return DomainCert(None, "two-term scan found no zero divisor")


@dataclass
class MonoActionCert:
    module: ModuleAlgebra
    basis: tuple

    def failures(self) -> list:
        """(i, witness) where h_i acts with a kernel or eps(h_i) = 0."""
        m = self.module
        F = m.field
        out = []
        for i in self.basis:
            if not m.hopf.coalg.counit[i]:
                out.append((i, "counit vanishes", None))
            cols = list(m.action[i])
            if rank_of(F, m.dim, cols) < m.dim:
                out.append((i, "kernel", kernel(F, cols, m.dim).vectors[0]))
        return out


def mono_action_cert(m: ModuleAlgebra) -> MonoActionCert:
    """Certificate over the standard basis of H."""
    return MonoActionCert(m, tuple(range(m.hopf.dim)))


def _preconditions(m: ModuleAlgebra, cert: MonoActionCert | None, domain: DomainCert | None, strict: bool) -> dict:
    cert = cert or mono_action_cert(m)
    domain = domain or domain_certificate(m.alg)
    fails = cert.failures()
    info = {"mono_action": not fails,
            "mono_action_witness": [[i, why, None if w is None else sorted(w.items())] for i, why, w in fails],
            "domain": domain.as_dict()}
    if strict:
        if fails:
            i, why, w = fails[0]
            raise NotMonoActionError(f"h_{i} does not act through a monomorphism ({why})", witness=[i, w])
        if domain.domain is False:
            raise ZeroDivisorError("the algebra has zero divisors", witness=domain.witness)
        if domain.domain is None:
            raise PreconditionError("no domain certificate: " + domain.method)
    return info


# ---------------------------------------------------------------- Hom(H, A)

def hom_coring(m: ModuleAlgebra, cert: MonoActionCert | None = None, domain: DomainCert | None = None,
               strict: bool = True, verify: bool = True) -> ACoring:
    """Hom_k(H, A) with basis phi_{i,k}: h_i -> e_k at index i*n + k.

    (a phi)(h) = a phi(h), (phi a)(h) = phi(h1)(h2 . a), eps(phi) = phi(1) and
    Delta(phi) = alpha^{-1}(phi o mult) where
    alpha(phi1 (x) phi2)(h (x) k) = phi1(h1) (h2 . phi2(k)).
    """
    info = _preconditions(m, cert, domain, strict)
    A, H = m.alg, m.hopf
    n, nh = A.dim, H.dim
    F = A.field
    size = nh * n
    check_guard(size * size, "Hom(H, A) tensor square")
    terms = [[(v, *divmod(p, nh)) for p, v in H.coalg.comult[j].items()] for j in range(nh)]

    def hom_vec(i, v):
        return {i * n + k: t for k, t in v.items()}

    left = [[hom_vec(x // n, A.mult[a][x % n]) for x in range(size)] for a in range(n)]
    right = []
    for x in range(size):
        i, k = divmod(x, n)
        row = []
        for a in range(n):
            acc: dict = {}
            for j in range(nh):
                for v, h1, h2 in terms[j]:
                    if h1 == i:
                        for kk, t in A.mul(_e(F, k), m.action[h2][a]).items():
                            vaxpy(acc, v * t, {j * n + kk: 1})
            row.append(acc)
        right.append(row)
    alpha = []
    for x in range(size):
        i, k = divmod(x, n)
        for y in range(size):
            j, l = divmod(y, n)
            col: dict = {}
            for p in range(nh):
                for v, h1, h2 in terms[p]:
                    if h1 == i:
                        for kk, t in A.mul(_e(F, k), m.action[h2][l]).items():
                            vaxpy(col, v * t, {(p * nh + j) * n + kk: 1})
            alpha.append(col)
    coring0 = ACoring(A, size, tuple(map(tuple, left)), tuple(map(tuple, right)), (), (), "hom")
    rel = coring0.balancing2()
    tensor_dim = size * size - rel.dim
    alpha_rank = rank_of(F, nh * nh * n, alpha)
    if alpha_rank != tensor_dim:
        raise InternalInconsistency("alpha is not injective on the tensor over A",
                                    witness={"rank": alpha_rank, "dim": tensor_dim})
    comult, counit = [], []
    for x in range(size):
        i, k = divmod(x, n)
        rhs: dict = {}
        for p in range(nh):
            for q in range(nh):
                c = H.alg.mult[p][q].get(i)
                if c:
                    vaxpy(rhs, c, {(p * nh + q) * n + k: 1})
        sol = solve_sparse(F, alpha, rhs, nh * nh * n)
        if sol is None:
            raise InternalInconsistency("phi o mult is outside the image of alpha", witness=[x])
        comult.append(sol)
        counit.append(vscale(H.unit.get(i, F.zero), _e(F, k)) if H.unit.get(i) else {})
    c = _coring_from_function(A, size, left, right, comult, counit, "hom", verify)
    object.__setattr__(c, "_info", dict(info, alpha_rank=alpha_rank))
    return c


# ---------------------------------------------------------------- coring canonical map

def _is_unit(alg: AlgebraStr, x: dict) -> bool:
    n = alg.dim
    return rank_of(alg.field, n, alg.left_mult_columns(x)) == n


def coring_can(m: ModuleAlgebra, cert: MonoActionCert | None = None, relative_basis=None,
               strict: bool = True, full: bool = False, domain: DomainCert | None = None,
               h_rows=None) -> dict:
    """A (x)_{A^H} A -> Hom(H, A), a (x) a' -> (h -> a (h . a')).

    With ``relative_basis`` r (A free over B on r, each r_j a unit and each
    h_i . r_j in k r_j) the map is decided by the scalar matrix
    M_ij = coefficient of r_j in h_i . r_j: can is bijective iff det M != 0.
    ``h_rows`` optionally lists the H-vectors used as matrix rows.
    """
    A, H = m.alg, m.hopf
    n, nh = A.dim, H.dim
    F = A.field
    info = _preconditions(m, cert, domain, strict)
    B = invariants(m)
    out: dict = {"base_dim": B.dim, **info}
    if relative_basis is not None and not full:
        r = [dict(v) for v in relative_basis]
        if not check_free_basis(A, B, r):
            raise PreconditionError("declared basis is not a free basis over the invariants")
        if len(r) != nh:
            raise PreconditionError("free basis size differs from dim H", witness=[len(r), nh])
        for j, rj in enumerate(r):
            if not _is_unit(A, rj):
                raise PreconditionError("basis element is not a unit", witness=[j])
        rows = [dict(h) for h in h_rows] if h_rows is not None else [_e(F, i) for i in range(nh)]
        mat = []
        for i, h in enumerate(rows):
            row = []
            for j, rj in enumerate(r):
                img = m.act(h, rj)
                p = next(iter(rj))
                c = img.get(p, F.zero) / rj[p]
                if img != vscale(c, rj):
                    raise PreconditionError("h . r_j is not a multiple of r_j", witness=[i, j])
                row.append(c)
            mat.append(row)
        M = Mat(F, mat, len(r))
        det = M.det()
        out.update({"path": "reduced", "matrix": M, "det": det, "bijective": bool(det),
                    "source_dim": n * len(r), "target_dim": n * nh})
        return out
    rt = relative_tensor(A, B, free_basis=relative_basis)
    cols = []
    for u, c in rt.reps:
        img: dict = {}
        for i in range(nh):
            for k, v in A.mul(u, m.act(_e(F, i), c)).items():
                img[i * n + k] = v
        cols.append(img)
    res = CanResult(rank_of(F, n * nh, cols), rt.dim, n * nh, cols)
    out.update({"path": "full", **res.as_dict()})
    return out


def coring_can_morphism_check(m: ModuleAlgebra, cert: MonoActionCert | None = None,
                              domain: DomainCert | None = None) -> list:
    """Delta o can = (can (x) can) o Delta_Sweedler on every basis element of A (x)_B A."""
    A, H = m.alg, m.hopf
    n = A.dim
    F = A.field
    hom = hom_coring(m, cert, domain)
    B = invariants(m)
    sw = sweedler_coring(A, B)
    comp = sw._quotient.complement
    columns = []
    for x in range(sw.dim):
        i, j = divmod(comp[x], n)
        img: dict = {}
        for h in range(H.dim):
            for k, v in A.mul(_e(F, i), m.action[h][j]).items():
                img[h * n + k] = v
        columns.append(img)
    return coring_morphism_violations(sw, hom, columns)


# ---------------------------------------------------------------- module-algebra connection

def _smash_mul(m: ModuleAlgebra, x: dict, y: dict) -> dict:
    """(a#h)(b#k) = a (h1 . b) # h2 k in A (x) H coordinates."""
    A, H = m.alg, m.hopf
    nh = H.dim
    F = A.field
    out: dict = {}
    for p, s in x.items():
        a, h = divmod(p, nh)
        for q, t in y.items():
            b, k = divmod(q, nh)
            for r, v in H.coalg.comult[h].items():
                h1, h2 = divmod(r, nh)
                left = A.mul(_e(F, a), m.action[h1][b])
                if left:
                    vaxpy(out, s * t * v, tensor(left, H.alg.mult[h2][k], nh))
    return out


def centralizer_invariants(m: ModuleAlgebra, k: Subspace) -> Subspace:
    """A intersected with the centralizer of 1#K inside A#H."""
    A, H = m.alg, m.hopf
    n, nh = A.dim, H.dim
    F = A.field
    cols = []
    for j in range(n):
        aj = tensor(_e(F, j), H.unit, nh)
        col: dict = {}
        for r, kv in enumerate(k.vectors):
            one_k = tensor(A.unit, kv, nh)
            diff = vsub(_smash_mul(m, aj, one_k), _smash_mul(m, one_k, aj))
            for idx, v in diff.items():
                col[r * n * nh + idx] = v
        cols.append(col)
    return kernel(F, cols, n)


def centralizer_psi(m: ModuleAlgebra, s: Subspace) -> Subspace:
    """H intersected with the centralizer of S#1 inside A#H."""
    A, H = m.alg, m.hopf
    n, nh = A.dim, H.dim
    F = A.field
    cols = []
    for i in range(nh):
        hi = tensor(A.unit, _e(F, i), nh)
        col: dict = {}
        for r, sv in enumerate(s.vectors):
            s1 = tensor(sv, H.unit, nh)
            diff = vsub(_smash_mul(m, s1, hi), _smash_mul(m, hi, s1))
            for idx, v in diff.items():
                col[r * n * nh + idx] = v
        cols.append(col)
    return kernel(F, cols, nh)


@dataclass
class ModuleConnection:
    conn: GaloisConn
    ks: list
    subs: list


def module_algebra_connection(m: ModuleAlgebra, k_candidates=(), sub_candidates=(), cap: int = 256) -> ModuleConnection:
    """Phi(K) = A^K and Psi(S) = H cap Cent(S#1) on right coideal subalgebras K."""
    H = m.hopf
    ks: list[Subspace] = []
    subs: list[Subspace] = []
    for k in k_candidates:
        if not has_kind(H, k, "right_coideal_subalgebra"):
            raise InputError("candidates must be right coideal subalgebras", witness=k.vectors)
        if k not in ks:
            ks.append(k)
    for s in sub_candidates:
        if s not in subs:
            subs.append(s)
    phi_map: dict = {}
    psi_map: dict = {}
    while True:
        if len(ks) + len(subs) > cap:
            from .errors import EnumerationCapError
            raise EnumerationCapError(f"module connection exceeded {cap} elements")
        grew = False
        for k in list(ks):
            if k not in phi_map:
                grew = True
                a_k = invariants(m, k)
                if a_k != centralizer_invariants(m, k):
                    raise InternalInconsistency("invariants differ from the centralizer description")
                phi_map[k] = a_k
                if a_k not in subs:
                    subs.append(a_k)
        for s in list(subs):
            if s not in psi_map:
                grew = True
                p = centralizer_psi(m, s)
                if not has_kind(H, p, "right_coideal_subalgebra"):
                    raise InternalInconsistency("Psi(S) is not a right coideal subalgebra")
                psi_map[s] = p
                if p not in ks:
                    ks.append(p)
        if not grew:
            break
    kpos = FinitePoset.from_relation(range(len(ks)), lambda i, j: subspace_contains(ks[j], ks[i]))
    spos = FinitePoset.from_relation(range(len(subs)), lambda i, j: subspace_contains(subs[j], subs[i]))
    conn = GaloisConn(kpos, spos, tuple(subs.index(phi_map[k]) for k in ks),
                      tuple(ks.index(psi_map[s]) for s in subs))
    bad = conn.violations()
    if bad:
        raise InternalInconsistency("module connection is not a Galois connection", witness=bad[:5])
    return ModuleConnection(conn, ks, subs)


# ---------------------------------------------------------------- coring connection transport

def hom_kernel(m: ModuleAlgebra, k: Subspace) -> Subspace:
    """{phi in Hom(H, A) : phi|_K = 0}, the kernel of Hom(H, A) -> Hom(K, A)."""
    n, nh = m.dim, m.hopf.dim
    F = m.field
    cols = []
    for x in range(nh * n):
        i, kk = divmod(x, n)
        col: dict = {}
        for r, kv in enumerate(k.vectors):
            c = kv.get(i)
            if c:
                col[r * n + kk] = c
        cols.append(col)
    return kernel(F, cols, nh * n)


def can_k(m: ModuleAlgebra, k: Subspace) -> CanResult:
    """A (x)_{A^K} A -> Hom(K, A), a (x) a' -> (k -> a (k . a'))."""
    A = m.alg
    n = A.dim
    F = A.field
    base = invariants(m, k)
    rt = relative_tensor(A, base)
    cols = []
    for u, c in rt.reps:
        img: dict = {}
        for r, kv in enumerate(k.vectors):
            for idx, v in A.mul(u, m.act(kv, c)).items():
                img[r * n + idx] = v
        cols.append(img)
    target = k.dim * n
    return CanResult(rank_of(F, target, cols), rt.dim, target, cols)


def coring_connection_transport(m: ModuleAlgebra, k_candidates, cert: MonoActionCert | None = None) -> dict:
    """Hom(K, A) quotient corings for each K, with injectivity, meets and can_K => closed."""
    info = _preconditions(m, cert, None, strict=False)
    ks = list(k_candidates)
    mc = module_algebra_connection(m, ks)
    kers = [hom_kernel(m, k) for k in ks]
    injective = len(set(kers)) == len(set(ks))
    meet_failures = []
    for i, j in combinations(range(len(ks)), 2):
        meet = subspace_intersect(ks[i], ks[j])
        if meet in ks and hom_kernel(m, meet) != subspace_sum(kers[i], kers[j]):
            meet_failures.append([i, j])
    rows = []
    for i, k in enumerate(ks):
        res = can_k(m, k)
        idx = mc.ks.index(k)
        closed = mc.conn.psi[mc.conn.phi[idx]] == idx
        rows.append({"k_dim": k.dim, "can_bijective": res.bijective, "closed": closed,
                     "implication_holds": closed or not res.bijective})
    return {"injective": injective, "meet_failures": meet_failures, "rows": rows, **info,
            "ok": injective and not meet_failures and all(r["implication_holds"] for r in rows)}


# ---------------------------------------------------------------- congruence / submonoid bridges

def _subsets_with_identity(g: GroupTable):
    others = [x for x in range(g.order) if x != g.identity]
    for r in range(len(others) + 1):
        for comb in combinations(others, r):
            yield frozenset((g.identity,) + comb)


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def congruences(g: GroupTable) -> list[tuple]:
    """Equivalence relations compatible with multiplication, as class-index tuples."""
    out = []
    for part in _partitions(list(range(g.order))):
        cls = [0] * g.order
        for c, block in enumerate(sorted(sorted(b) for b in part)):
            for x in block:
                cls[x] = c
        ok = all(cls[g.mul(a, b)] == cls[g.mul(a2, b2)]
                 for a in range(g.order) for a2 in range(g.order) if cls[a] == cls[a2]
                 for b in range(g.order) for b2 in range(g.order) if cls[b] == cls[b2])
        if ok:
            out.append(tuple(cls))
    return out


def congruence_submonoid_bridges(g: GroupTable, e: AlgebraStr | None = None, action=None) -> dict:
    """theta/xi between coideals of Map(G, E) and submonoids, and between subcorings and congruences."""
    if e is None:
        e = AlgebraStr.build(QQ, 1, [[{0: 1}]], {0: 1})
    F = e.field
    n = e.dim
    if action is None:
        action = [[_e(F, k) for k in range(n)] for _ in range(g.order)]
    mp = map_coring(g, e, action)
    m = mp.dim
    rel2 = mp.balancing2()

    def vanishing(s) -> Subspace:
        return span(F, m, [_e(F, x * n + k) for x in range(g.order) if x not in s for k in range(n)])

    def zeros(space: Subspace) -> frozenset:
        return frozenset(x for x in range(g.order)
                         if all(v.get(x * n + k) is None for v in space.vectors for k in range(n)))

    def is_coideal(space: Subspace) -> bool:
        if any(mp.eps(v) for v in space.vectors):
            return False
        if any(not space.contains_vector(mp.ract(v, _e(F, a))) or not space.contains_vector(mp.lact(_e(F, a), v))
               for v in space.vectors for a in range(n)):
            return False
        big = span(F, m * m, [tensor(v, _e(F, y), m) for v in space.vectors for y in range(m)]
                   + [tensor(_e(F, y), v, m) for v in space.vectors for y in range(m)] + rel2.vectors)
        return all(big.contains_vector(mp.delta(v)) for v in space.vectors)

    submonoids = [s for s in _subsets_with_identity(g)
                  if all(g.mul(a, b) in s for a in s for b in s)]
    coideals = []
    for s in _subsets_with_identity(g):
        sp = vanishing(s)
        if is_coideal(sp):
            coideals.append(sp)
    theta_xi = all(zeros(vanishing(s)) == s for s in submonoids)
    xi_theta = all(subspace_contains(vanishing(zeros(i)), i) for i in coideals)
    exact = sorted(map(sorted, (zeros(i) for i in coideals))) == sorted(map(sorted, submonoids))
    # ge1
    cons = congruences(g)

    def c_of(cls) -> Subspace:
        blocks = sorted(set(cls))
        return span(F, m, [{x * n + k: F.one for x in range(g.order) if cls[x] == b} for b in blocks for k in range(n)])

    def theta_of(space: Subspace) -> tuple:
        cls: list = []
        reps: list = []
        for x in range(g.order):
            sig = tuple(tuple(v.get(x * n + k, F.zero) for k in range(n)) for v in space.vectors)
            if sig not in reps:
                reps.append(sig)
            cls.append(reps.index(sig))
        return tuple(cls)

    def canon(cls):
        seen: dict = {}
        return tuple(seen.setdefault(c, len(seen)) for c in cls)

    ge1_rows = []
    for cls in cons:
        c = c_of(cls)
        back = canon(theta_of(c))
        sub_bimodule = all(c.contains_vector(mp.ract(v, _e(F, a))) and c.contains_vector(mp.lact(_e(F, a), v))
                           for v in c.vectors for a in range(n))
        ge1_rows.append({"classes": list(cls), "theta_of_c_equals": back == canon(cls),
                         "c_within_c_theta": subspace_contains(c_of(theta_of(c)), c),
                         "sub_bimodule": sub_bimodule})
    sm_pos = FinitePoset.from_relation(range(len(submonoids)), lambda i, j: submonoids[i] <= submonoids[j])
    co_pos = FinitePoset.from_relation(range(len(coideals)), lambda i, j: subspace_contains(coideals[j], coideals[i]))
    labels_sm = [g.label(s) for s in submonoids]
    labels_co = ["I" + g.label(zeros(i)) for i in coideals]
    return {
        "submonoids": len(submonoids), "coideals": len(coideals),
        "theta_xi_id": theta_xi, "xi_theta_ge_id": xi_theta, "coideals_match_submonoids": exact,
        "congruences": len(cons), "ge1": ge1_rows,
        "ok": theta_xi and xi_theta and all(r["theta_of_c_equals"] and r["c_within_c_theta"] for r in ge1_rows),
        "dot": {"submonoids": export_dot(sm_pos, labels_sm, "submonoids"),
                "coideals": export_dot(co_pos, labels_co, "coideals")},
    }
