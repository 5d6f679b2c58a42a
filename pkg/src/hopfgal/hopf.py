"""Algebras, coalgebras, bialgebras and Hopf algebras given by structure constants.

Conventions:

* ``mult[i][j]`` is the sparse coordinate vector of ``e_i e_j``.
* ``comult[i]`` is the sparse vector of ``Delta(e_i)`` in the ``n*n`` tensor
  coordinates, ``e_j (x) e_k`` at index ``j*n + k``.
* Linear maps are matrices whose column ``j`` is the image of ``e_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from .errors import AntipodeNotInvertibleError, DimensionError, SolverScopeExceeded
from .fields import Field, GaussRational, FpElem, QQ, QQi, PrimeField
from .linalg import (
    Mat, Subspace, kernel, lincomb, solve_sparse, span,
    tensor, vaxpy, vscale, vsub,
)


# ---------------------------------------------------------------- structures

def _clean(field: Field, v: dict) -> dict:
    return {k: field.coerce(c) for k, c in v.items() if c}


@dataclass(frozen=True, eq=False)
class AlgebraStr:
    field: Field
    dim: int
    mult: tuple  # mult[i][j] -> dict
    unit: dict

    @classmethod
    def build(cls, field: Field, dim: int, mult, unit) -> "AlgebraStr":
        m = tuple(tuple(_clean(field, mult[i][j]) for j in range(dim)) for i in range(dim))
        if len(mult) != dim:
            raise DimensionError("multiplication table has the wrong size")
        return cls(field, dim, m, _clean(field, unit))

    @classmethod
    def from_function(cls, field: Field, dim: int, product, unit) -> "AlgebraStr":
        """``product(i, j)`` returns the sparse vector of e_i e_j."""
        return cls.build(field, dim, [[product(i, j) for j in range(dim)] for i in range(dim)], unit)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        m = self.mult
        for i, a in x.items():
            row = m[i]
            for j, b in y.items():
                vaxpy(out, a * b, row[j])
        return out

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def left_mult_columns(self, x: dict) -> list[dict]:
        return [self.mul(x, {j: self.field.one}) for j in range(self.dim)]

    def right_mult_columns(self, x: dict) -> list[dict]:
        return [self.mul({j: self.field.one}, x) for j in range(self.dim)]

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def opposite(self) -> "AlgebraStr":
        return AlgebraStr(self.field, self.dim, tuple(tuple(self.mult[j][i] for j in range(self.dim)) for i in range(self.dim)), self.unit)

    def tensor_mul(self, x: dict, y: dict, other: "AlgebraStr | None" = None) -> dict:
        """Product in A (x) B with (a (x) b)(c (x) d) = ac (x) bd."""
        other = other or self
        nb = other.dim
        out: dict = {}
        for p, a in x.items():
            i, j = divmod(p, nb)
            for q, b in y.items():
                k, l = divmod(q, nb)
                left = self.mult[i][k]
                right = other.mult[j][l]
                if left and right:
                    vaxpy(out, a * b, tensor(left, right, nb))
        return out

    def same_constants(self, other: "AlgebraStr") -> bool:
        return self.field == other.field and self.dim == other.dim and self.mult == other.mult and self.unit == other.unit


@dataclass(frozen=True, eq=False)
class CoalgebraStr:
    field: Field
    dim: int
    comult: tuple  # comult[i] -> dict over dim*dim
    counit: tuple  # dense scalars

    @classmethod
    def build(cls, field: Field, dim: int, comult, counit) -> "CoalgebraStr":
        if len(comult) != dim or len(counit) != dim:
            raise DimensionError("coalgebra tensors have the wrong size")
        return cls(field, dim, tuple(_clean(field, c) for c in comult), tuple(field.coerce(c) for c in counit))

    def delta(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            vaxpy(out, a, self.comult[i])
        return out

    def eps(self, x: dict):
        return sum((a * self.counit[i] for i, a in x.items()), self.field.zero)

    def delta_left(self, x: dict) -> dict:
        """(Delta (x) id) on the n*n tensor space."""
        n = self.dim
        out: dict = {}
        for p, a in x.items():
            i, j = divmod(p, n)
            for q, b in self.comult[i].items():
                out_k = q * n + j
                s = out.get(out_k, 0) + a * b
                if s:
                    out[out_k] = s
                else:
                    out.pop(out_k, None)
        return out

    def delta_right(self, x: dict) -> dict:
        """(id (x) Delta) on the n*n tensor space."""
        n = self.dim
        nn = n * n
        out: dict = {}
        for p, a in x.items():
            i, j = divmod(p, n)
            for q, b in self.comult[j].items():
                out_k = i * nn + q
                s = out.get(out_k, 0) + a * b
                if s:
                    out[out_k] = s
                else:
                    out.pop(out_k, None)
        return out

    def same_constants(self, other: "CoalgebraStr") -> bool:
        return self.field == other.field and self.dim == other.dim and self.comult == other.comult and self.counit == other.counit


@dataclass(frozen=True, eq=False)
class Bialgebra:
    alg: AlgebraStr
    coalg: CoalgebraStr

    def __post_init__(self):
        if self.alg.dim != self.coalg.dim:
            raise DimensionError("algebra and coalgebra dimensions differ")
        if self.alg.field != self.coalg.field:
            raise DimensionError("algebra and coalgebra fields differ")


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    bi: Bialgebra
    antipode: Mat
    name: str = ""

    @classmethod
    def build(cls, alg: AlgebraStr, coalg: CoalgebraStr, antipode: Mat, name: str = "") -> "HopfAlgebra":
        if antipode.nrows != alg.dim or antipode.ncols != alg.dim:
            raise DimensionError("antipode matrix has the wrong shape")
        return cls(Bialgebra(alg, coalg), antipode, name)

    @property
    def alg(self) -> AlgebraStr:
        return self.bi.alg

    @property
    def coalg(self) -> CoalgebraStr:
        return self.bi.coalg

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def unit(self) -> dict:
        return self.alg.unit

    def mul(self, x, y):
        return self.alg.mul(x, y)

    def delta(self, x):
        return self.coalg.delta(x)

    def eps(self, x):
        return self.coalg.eps(x)

    @cached_property
    def _s_columns(self) -> list[dict]:
        return self.antipode.columns()

    def S(self, x: dict) -> dict:
        return lincomb((a, self._s_columns[i]) for i, a in x.items())

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def same_constants(self, other: "HopfAlgebra") -> bool:
        return self.alg.same_constants(other.alg) and self.coalg.same_constants(other.coalg) and self.antipode == other.antipode


# ---------------------------------------------------------------- verification

@dataclass
class Report:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def as_dict(self):
        return {"ok": self.ok, "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations]}


def _algebra_violations(a: AlgebraStr) -> list:
    out = []
    n = a.dim
    one = a.field.one
    for i in range(n):
        ei = {i: one}
        if a.mul(a.unit, ei) != ei or a.mul(ei, a.unit) != ei:
            out.append(("unit", (i,)))
    for i in range(n):
        for j in range(n):
            ij = a.mult[i][j]
            for k in range(n):
                left = a.mul(ij, {k: one})
                right = a.mul({i: one}, a.mult[j][k])
                if left != right:
                    out.append(("associativity", (i, j, k)))
    return out


def _coalgebra_violations(c: CoalgebraStr) -> list:
    out = []
    n = c.dim
    for i in range(n):
        d = c.comult[i]
        if c.delta_left(d) != c.delta_right(d):
            out.append(("coassociativity", (i,)))
        left: dict = {}
        right: dict = {}
        for p, v in d.items():
            j, k = divmod(p, n)
            vaxpy(left, v * c.counit[j], {k: 1})
            vaxpy(right, v * c.counit[k], {j: 1})
        ei = {i: c.field.one}
        if left != ei or right != ei:
            out.append(("counit", (i,)))
    return out


def _bialgebra_violations(b: Bialgebra) -> list:
    out = []
    a, c = b.alg, b.coalg
    n = a.dim
    one = a.field.one
    for i in range(n):
        di = c.comult[i]
        for j in range(n):
            if c.delta(a.mult[i][j]) != a.tensor_mul(di, c.comult[j]):
                out.append(("comultiplicative", (i, j)))
            if c.eps(a.mult[i][j]) != c.counit[i] * c.counit[j]:
                out.append(("counit multiplicative", (i, j)))
    if c.delta(a.unit) != tensor(a.unit, a.unit, n):
        out.append(("comult of unit", ()))
    if c.eps(a.unit) != one:
        out.append(("counit of unit", ()))
    return out


def _antipode_violations(h: HopfAlgebra) -> list:
    out = []
    n = h.dim
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for p, v in h.coalg.comult[i].items():
            j, k = divmod(p, n)
            vaxpy(left, v, h.mul(h.S({j: 1}), {k: 1}))
            vaxpy(right, v, h.mul({j: 1}, h.S({k: 1})))
        target = vscale(h.coalg.counit[i], h.unit)
        if left != target:
            out.append(("antipode left", (i,)))
        if right != target:
            out.append(("antipode right", (i,)))
    return out


def verify_structure(kind: str, data) -> Report:
    """Check every axiom of ``kind`` and report all violations with witnesses."""
    if kind == "algebra":
        v = _algebra_violations(data)
    elif kind == "coalgebra":
        v = _coalgebra_violations(data)
    elif kind == "bialgebra":
        bi = data.bi if isinstance(data, HopfAlgebra) else data
        v = _algebra_violations(bi.alg) + _coalgebra_violations(bi.coalg) + _bialgebra_violations(bi)
    elif kind == "hopf":
        v = (_algebra_violations(data.alg) + _coalgebra_violations(data.coalg)
             + _bialgebra_violations(data.bi) + _antipode_violations(data))
    else:
        raise ValueError(f"unknown structure kind {kind!r}")
    return Report(not v, v)


# ---------------------------------------------------------------- convolution

@dataclass(frozen=True, eq=False)
class LinMap:
    """Linear map from a coalgebra to an algebra."""

    source: CoalgebraStr
    target: AlgebraStr
    matrix: Mat

    def __post_init__(self):
        if self.matrix.nrows != self.target.dim or self.matrix.ncols != self.source.dim:
            raise DimensionError("matrix shape does not match the endpoints")

    @classmethod
    def from_columns(cls, source, target, columns) -> "LinMap":
        return cls(source, target, Mat.from_columns(target.field, columns, target.dim))

    @cached_property
    def columns(self) -> list[dict]:
        return self.matrix.columns()

    def __call__(self, x: dict) -> dict:
        return lincomb((a, self.columns[i]) for i, a in x.items())

    def __eq__(self, other):
        return isinstance(other, LinMap) and self.matrix == other.matrix

    __hash__ = object.__hash__


def unit_counit(source: CoalgebraStr, target: AlgebraStr) -> LinMap:
    return LinMap.from_columns(source, target, [vscale(e, target.unit) for e in source.counit])


def convolution(f: LinMap, g: LinMap) -> LinMap:
    if f.source is not g.source and not f.source.same_constants(g.source):
        raise DimensionError("convolution needs a common source coalgebra")
    c, a = f.source, f.target
    n = c.dim
    cols = []
    for i in range(n):
        acc: dict = {}
        for p, v in c.comult[i].items():
            j, k = divmod(p, n)
            vaxpy(acc, v, a.mul(f.columns[j], g.columns[k]))
        cols.append(acc)
    return LinMap.from_columns(c, a, cols)


def convolution_inverse(f: LinMap) -> LinMap | None:
    """Solve f*g = u eps = g*f jointly for g; None when inconsistent."""
    c, a = f.source, f.target
    n, m = c.dim, a.dim
    one = a.field.one
    # unknown g(e_k)_l has index k*m + l; equations indexed (side, i, r)
    columns = []
    for k in range(n):
        for l in range(m):
            el = {l: one}
            col: dict = {}
            for i in range(n):
                for p, v in c.comult[i].items():
                    j, kk = divmod(p, n)
                    if kk == k:
                        for r, w in a.mul(f.columns[j], el).items():
                            idx = i * m + r
                            vaxpy(col, v, {idx: w})
                    if j == k:
                        for r, w in a.mul(el, f.columns[kk]).items():
                            idx = n * m + i * m + r
                            vaxpy(col, v, {idx: w})
            columns.append(col)
    rhs: dict = {}
    for i in range(n):
        for r, w in a.unit.items():
            val = c.counit[i] * w
            if val:
                rhs[i * m + r] = val
                rhs[n * m + i * m + r] = val
    x = solve_sparse(a.field, columns, rhs, 2 * n * m)
    if x is None:
        return None
    cols = [{l: x[k * m + l] for l in range(m) if x.get(k * m + l)} for k in range(n)]
    g = LinMap.from_columns(c, a, cols)
    e = unit_counit(c, a)
    if convolution(f, g) != e or convolution(g, f) != e:
        return None
    return g


# ---------------------------------------------------------------- duals and opposites

def _inverse_antipode(h: HopfAlgebra) -> Mat:
    inv = h.antipode.inverse()
    if inv is None:
        raise AntipodeNotInvertibleError("the antipode matrix is singular")
    return inv


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """H* on the dual basis, in the same index order.

    The antipode of H* is the transpose of S.
    """
    _inverse_antipode(h)
    F, n = h.field, h.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for p, v in h.coalg.comult[k].items():
            i, j = divmod(p, n)
            mult[i][j][k] = v
    unit = {k: e for k, e in enumerate(h.coalg.counit) if e}
    comult = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, v in h.alg.mult[i][j].items():
                comult[k][i * n + j] = v
    counit = [h.unit.get(k, 0) for k in range(n)]
    alg = AlgebraStr.build(F, n, mult, unit)
    coalg = CoalgebraStr.build(F, n, comult, counit)
    return HopfAlgebra.build(alg, coalg, h.antipode.T, name=f"{h.name}*" if h.name else "")


def opposite(h: HopfAlgebra) -> HopfAlgebra:
    """Reversed multiplication, same comultiplication, antipode S^-1."""
    inv = _inverse_antipode(h)
    return HopfAlgebra.build(h.alg.opposite(), h.coalg, inv, name=f"{h.name}^op" if h.name else "")


def adjoint_action(h: HopfAlgebra) -> list[list[dict]]:
    """action[i][j] = e_i . e_j = (e_i)_(1) e_j S((e_i)_(2))."""
    n = h.dim
    one = h.field.one
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: dict = {}
            for p, v in h.coalg.comult[i].items():
                a, b = divmod(p, n)
                vaxpy(acc, v, h.mul(h.mul({a: one}, {j: one}), h.S({b: one})))
            row.append(acc)
        out.append(row)
    return out


# ---------------------------------------------------------------- group-likes

MAX_GROUP_LIKE_DIM = 64
MAX_BRANCHES = 4096


def _to_sympy(x):
    import sympy
    if isinstance(x, GaussRational):
        return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
    if isinstance(x, FpElem):
        return sympy.Integer(x.v)
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(field: Field, r):
    import sympy
    if field == QQ:
        if not r.is_rational:
            return None
        return Fraction(int(r.p), int(r.q))
    re_, im_ = sympy.re(r), sympy.im(r)
    if not (re_.is_rational and im_.is_rational):
        return None
    return GaussRational(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q)))


def eigenvalues_in_field(m: Mat) -> list:
    """Distinct roots in the base field of the characteristic polynomial."""
    import sympy
    F = m.field
    n = m.nrows
    if n == 0:
        return []
    if isinstance(F, PrimeField):
        if F.p <= 4096:
            out = []
            for v in range(F.p):
                lam = F(v)
                shifted = Mat(F, [[x - (lam if i == j else 0) for j, x in enumerate(r)] for i, r in enumerate(m.rows)], n)
                if not shifted.det():
                    out.append(lam)
            return out
        lam = sympy.Symbol("lam")
        cp = sympy.Matrix([[int(x.v) for x in r] for r in m.rows]).charpoly(lam).as_expr()
        poly = sympy.Poly(cp, lam, modulus=F.p)
        roots = [f for f, _ in poly.factor_list()[1] if f.degree() == 1]
        return sorted({F(-int(f.all_coeffs()[1]) * pow(int(f.all_coeffs()[0]), -1, F.p)) for f in roots}, key=lambda e: e.v)
    lam = sympy.Symbol("lam")
    sm = sympy.Matrix([[_to_sympy(x) for x in r] for r in m.rows])
    cp = sm.charpoly(lam).as_expr()
    if F == QQi:
        factors = sympy.factor_list(cp, lam, extension=sympy.I)[1]
    elif F == QQ:
        factors = sympy.factor_list(cp, lam)[1]
    else:
        raise SolverScopeExceeded(f"no root finder for {F}")
    out = []
    for f, _ in factors:
        p = sympy.Poly(f, lam)
        if p.degree() != 1:
            continue
        a, b = p.all_coeffs()
        val = _from_sympy(F, sympy.simplify(-b / a))
        if val is not None and val not in out:
            out.append(val)
    return out


def _restriction(U: Subspace, cols: list[dict]) -> Mat | None:
    """Matrix of the map on U (in U's RREF basis), or None if U is not invariant."""
    rows = []
    for v in U.vectors:
        img = lincomb((a, cols[j]) for j, a in v.items())
        c = U.coordinates(img)
        if c is None:
            return None
        rows.append(c)
    return Mat(U.field, rows, U.dim).T if rows else Mat(U.field, [], 0)


def _largest_invariant(U: Subspace, cols: list[dict]) -> Subspace:
    F, n = U.field, U.ambient_dim
    while True:
        # v in U with L v in U: solve over U's basis
        if U.dim == 0:
            return U
        ann = _annihilator_rows(U)
        images = [lincomb((a, cols[j]) for j, a in v.items()) for v in U.vectors]
        # coefficients x with sum x_k images_k killed by every functional in ann
        conds = [{r: sum((f.get(i, 0) * c for i, c in img.items()), F.zero) for r, f in enumerate(ann)} for img in images]
        conds = [{r: c for r, c in d.items() if c} for d in conds]
        ker = kernel(F, conds, U.dim)
        if ker.dim == U.dim:
            return U
        U = span(F, n, [lincomb((x.get(k, 0), U.vectors[k]) for k in range(U.dim)) for x in ker.vectors])


def _annihilator_rows(U: Subspace) -> list[dict]:
    from .linalg import annihilator
    return annihilator(U).vectors


def find_group_likes(h) -> list[dict]:
    """All g with Delta(g) = g (x) g and eps(g) = 1.

    A group-like g is a joint eigenvector of the maps L_i = (e_i^* (x) id) Delta
    with eigenvalue g_i, so the search branches over eigenvalues of each L_i in
    turn, restricted to the largest invariant subspace of the current joint
    eigenspace.
    """
    c = h.coalg if isinstance(h, HopfAlgebra) else h
    F, n = c.field, c.dim
    if n > MAX_GROUP_LIKE_DIM:
        raise SolverScopeExceeded(f"dimension {n} is above the group-like solver cap {MAX_GROUP_LIKE_DIM}")
    L = []
    for i in range(n):
        cols = []
        for j in range(n):
            cols.append({k: v for p, v in c.comult[j].items() for k in [p % n] if p // n == i})
        L.append(cols)
    found: list[dict] = []
    branches = [0]

    def rec(i: int, W: Subspace):
        branches[0] += 1
        if branches[0] > MAX_BRANCHES:
            raise SolverScopeExceeded("group-like search exceeded the branch cap")
        if W.dim == 0:
            return
        if i == n:
            for v in W.vectors:
                e = c.eps(v)
                if e:
                    g = vscale(1 / e, v)
                    if c.delta(g) == tensor(g, g, n) and g not in found:
                        found.append(g)
            return
        U = _largest_invariant(W, L[i])
        if U.dim == 0:
            return
        M = _restriction(U, L[i])
        for lam in eigenvalues_in_field(M):
            shifted = [vsub(col, {j: lam}) for j, col in enumerate(L[i])]
            # eigenvectors of L_i inside U
            imgs = [lincomb((a, shifted[j]) for j, a in v.items()) for v in U.vectors]
            ker = kernel(F, imgs, U.dim)
            Wn = span(F, n, [lincomb((x.get(k, 0), U.vectors[k]) for k in range(U.dim)) for x in ker.vectors])
            rec(i + 1, Wn)

    from .linalg import full_space
    rec(0, full_space(F, n))
    found.sort(key=lambda g: sorted((k, str(v)) for k, v in g.items()))
    return found
