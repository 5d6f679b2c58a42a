"""Constructors for the concrete structures used throughout the package."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InputError
from .fields import GF, Field, QQ, QQi
from .groups import GroupTable, cyclic
from .hopf import AlgebraStr, CoalgebraStr, HopfAlgebra
from .linalg import Mat, span, vaxpy


# ---------------------------------------------------------------- group algebras

def group_algebra(g: GroupTable, field: Field = QQ) -> HopfAlgebra:
    n = g.order
    one = field.one
    mult = [[{g.mul(a, b): one} for b in range(n)] for a in range(n)]
    comult = [{a * n + a: one} for a in range(n)]
    alg = AlgebraStr.build(field, n, mult, {g.identity: one})
    coalg = CoalgebraStr.build(field, n, comult, [one] * n)
    s = Mat.from_columns(field, [{g.inverse(a): one} for a in range(n)], n)
    return HopfAlgebra.build(alg, coalg, s, name="k[G]")


def dual_group_algebra(g: GroupTable, field: Field = QQ) -> HopfAlgebra:
    """k[G]^* on the basis delta_g."""
    n = g.order
    one = field.one
    mult = [[{a: one} if a == b else {} for b in range(n)] for a in range(n)]
    comult = [{} for _ in range(n)]
    for a in range(n):
        for b in range(n):
            comult[g.mul(a, b)][a * n + b] = one
    counit = [one if a == g.identity else 0 for a in range(n)]
    alg = AlgebraStr.build(field, n, mult, {a: one for a in range(n)})
    coalg = CoalgebraStr.build(field, n, comult, counit)
    s = Mat.from_columns(field, [{g.inverse(a): one} for a in range(n)], n)
    return HopfAlgebra.build(alg, coalg, s, name="k[G]*")


# ---------------------------------------------------------------- circle Hopf algebra

CIRCLE_BASIS = ("1", "t", "c", "s", "c²-s²", "tc", "ts", "t(c²-s²)")
# position in the listed basis of t^p * (1, c, s, d) with d = c^2 - s^2
_CIRCLE_INDEX = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (0, 2): 3, (0, 3): 4, (1, 1): 5, (1, 2): 6, (1, 3): 7}
_CIRCLE_PAIR = {v: k for k, v in _CIRCLE_INDEX.items()}


def circle_hopf(field: Field = QQi, commuting: bool = False) -> HopfAlgebra:
    """Hopf algebra on c, s, t with c^2+s^2=1, cs=sc=0, ct=tc, t^2=1.

    ``ts = -st`` by default; ``commuting=True`` takes ``ts = st`` instead,
    which gives the group algebra of Z4 x Z2 after adjoining i.
    """
    if field not in (QQ, QQi):
        raise InputError(f"the circle Hopf algebra is built over Q or Q(i), not {field}")
    F = field
    half = F(1) / 2
    # products in the commutative part on (1, c, s, d)
    small = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 1): {0: half, 3: half}, (1, 2): {}, (1, 3): {1: 1},
        (2, 2): {0: half, 3: -half}, (2, 3): {2: -1},
        (3, 3): {0: 1},
    }

    def cmul(a, b):
        return small[(a, b)] if (a, b) in small else small[(b, a)]

    s_sign = 1 if commuting else -1
    theta = {0: 1, 1: 1, 2: s_sign, 3: 1}  # a t = t theta(a) on basis of the commutative part

    def product(i, j):
        p1, a = _CIRCLE_PAIR[i]
        p2, b = _CIRCLE_PAIR[j]
        # (t^p1 a)(t^p2 b) = t^(p1+p2) theta^p2(a) b
        sign = theta[a] if p2 else 1
        out = {}
        for k, v in cmul(a, b).items():
            idx = _CIRCLE_INDEX[((p1 + p2) % 2, k)]
            out[idx] = out.get(idx, 0) + sign * v
        return {k: F(v) for k, v in out.items() if v}

    alg = AlgebraStr.from_function(F, 8, product, {0: 1})
    n = 8
    e = lambda i: {i: F.one}
    delta_gen = {
        0: {0: F.one},
        1: {1 * n + 1: F.one},
        2: {2 * n + 2: F.one, 3 * n + 3: -F.one},
        3: {3 * n + 2: F.one, 2 * n + 3: F.one},
    }
    # Delta(d) = Delta(c)^2 - Delta(s)^2 and Delta(t x) = Delta(t) Delta(x)
    dc = delta_gen[2]
    ds = delta_gen[3]
    dd = {}
    for k, v in alg.tensor_mul(dc, dc).items():
        dd[k] = dd.get(k, 0) + v
    for k, v in alg.tensor_mul(ds, ds).items():
        dd[k] = dd.get(k, 0) - v
    delta = {0: delta_gen[0], 1: delta_gen[1], 2: dc, 3: ds, 4: dd}
    dt = delta_gen[1]
    delta[5] = alg.tensor_mul(dt, dc)
    delta[6] = alg.tensor_mul(dt, ds)
    delta[7] = alg.tensor_mul(dt, dd)
    comult = [delta[i] for i in range(n)]
    counit = [1, 1, 1, 0, 1, 1, 0, 1]
    coalg = CoalgebraStr.build(F, n, comult, counit)
    # S(t^p a) = S(a) t^p = t^p theta^p(S(a)), with S(s) = -s
    s_on = {0: 1, 1: 1, 2: -1, 3: 1}
    cols = []
    for i in range(n):
        p, a = _CIRCLE_PAIR[i]
        sign = s_on[a] * (theta[a] if p else 1)
        cols.append({i: F(sign)})
    anti = Mat.from_columns(F, cols, n)
    del e
    return HopfAlgebra.build(alg, coalg, anti, name="circle-commuting" if commuting else "circle")


def circle_element(field: Field, coeffs: dict) -> dict:
    """Vector from a {basis label: scalar} mapping over CIRCLE_BASIS."""
    return {CIRCLE_BASIS.index(k): field(v) for k, v in coeffs.items() if v}


# ---------------------------------------------------------------- polynomial quotients

def poly_algebra(field: Field, coeffs) -> AlgebraStr:
    """k[x]/(f) on the basis 1, x, ..., x^(n-1); ``coeffs`` lists f from the constant term up."""
    f = [field(c) for c in coeffs]
    while f and not f[-1]:
        f.pop()
    if len(f) < 2:
        raise InputError("the modulus must have positive degree")
    lead = f[-1]
    f = [c / lead for c in f]
    n = len(f) - 1

    def reduce(poly: dict) -> dict:
        poly = {k: v for k, v in poly.items() if v}
        for d in sorted((k for k in poly if k >= n), reverse=True):
            c = poly.pop(d, None)
            if not c:
                continue
            for i in range(n):
                if f[i]:
                    poly[d - n + i] = poly.get(d - n + i, field.zero) - c * f[i]
            poly = {k: v for k, v in poly.items() if v}
        return poly

    def prod_(i, j):
        return reduce({i + j: field.one})

    return AlgebraStr.from_function(field, n, prod_, {0: field.one})


def _poly_mod(a: list, b: list, p: int) -> list:
    """Remainder of a by monic b over GF(p), coefficient lists from the constant term."""
    a = [x % p for x in a]
    while len(a) >= len(b):
        c = a[-1]
        if c:
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return a


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    """Exhaustive search for monic factors of degree at most deg/2 (degree <= 6)."""
    f = [c % p for c in coeffs]
    while f and not f[-1]:
        f.pop()
    n = len(f) - 1
    if n < 1:
        return False
    if n > 6:
        raise InputError("irreducibility is only checked up to degree 6")
    inv = pow(f[-1], p - 2, p)
    f = [(c * inv) % p for c in f]
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            if not any(_poly_mod(f, list(tail) + [1], p)):
                return False
    return True


@dataclass
class FieldExtension:
    e: AlgebraStr
    group: GroupTable
    action: list           # action[g][k] = g(e_k), g = Frobenius^g
    module: object         # k[G]-module algebra
    comodule: object       # k[G]*-comodule algebra


def finite_field_ext(p: int, coeffs) -> FieldExtension:
    """GF(p^n) = GF(p)[x]/(f) with the cyclic group generated by Frobenius."""
    from .extensions import ModuleAlgebra, module_to_comodule
    if not is_irreducible_mod_p(coeffs, p):
        raise InputError(f"polynomial {list(coeffs)} is reducible over GF({p})")
    F = GF(p)
    e = poly_algebra(F, coeffs)
    n = e.dim

    def power(v: dict, k: int) -> dict:
        out = e.unit
        for _ in range(k):
            out = e.mul(out, v)
        return out

    frob = [power({k: F.one}, p) if k else e.unit for k in range(n)]
    maps = [[{k: F.one} for k in range(n)]]
    for _ in range(1, n):
        prev = maps[-1]
        maps.append([_apply_cols(frob, prev[k]) for k in range(n)])
    if _apply_cols_all(frob, maps[-1]) != maps[0]:
        raise InputError("Frobenius does not have order n")
    g = cyclic(n)
    ga = group_algebra(g, F)
    m = ModuleAlgebra.build(e, ga, [[maps[i][j] for j in range(n)] for i in range(n)])
    comod = module_to_comodule(m, dual_group_algebra(g, F))
    return FieldExtension(e, g, maps, m, comod)


def _apply_cols(cols, v: dict) -> dict:
    out: dict = {}
    for k, t in v.items():
        vaxpy(out, t, cols[k])
    return out


def _apply_cols_all(cols, vs):
    return [_apply_cols(cols, v) for v in vs]


# ---------------------------------------------------------------- graded algebras

def grading_violations(g: GroupTable, alg: AlgebraStr, degrees) -> list:
    comps = _components(g, alg, degrees)
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            target = comps[g.mul(degrees[i], degrees[j])]
            if not target.contains_vector(alg.mult[i][j]):
                out.append((i, j))
    if not comps[g.identity].contains_vector(alg.unit):
        out.append(("unit",))
    return out


def _components(g: GroupTable, alg: AlgebraStr, degrees):
    F = alg.field
    return [span(F, alg.dim, [{i: F.one} for i in range(alg.dim) if degrees[i] == x]) for x in range(g.order)]


def graded_algebra(g: GroupTable, alg: AlgebraStr, degrees):
    """k[G]-comodule algebra with delta(e_i) = e_i (x) g_i for the homogeneous basis."""
    from .extensions import ComoduleAlgebra
    if len(degrees) != alg.dim or any(not 0 <= d < g.order for d in degrees):
        raise InputError("one degree per basis element is required")
    bad = grading_violations(g, alg, degrees)
    if bad:
        raise InputError("products do not respect the grading", witness=list(bad[0]))
    h = group_algebra(g, alg.field)
    coaction = [{i * g.order + degrees[i]: alg.field.one} for i in range(alg.dim)]
    return ComoduleAlgebra.build(alg, h, coaction)


def is_strongly_graded(g: GroupTable, alg: AlgebraStr, degrees) -> bool:
    """A_x A_y = A_xy for all x, y."""
    comps = _components(g, alg, degrees)
    for x in range(g.order):
        for y in range(g.order):
            prods = [alg.mul(u, v) for u in comps[x].vectors for v in comps[y].vectors]
            got = span(alg.field, alg.dim, prods)
            if got != comps[g.mul(x, y)]:
                return False
    return True


def z2_graded_quadratic(field: Field, square) -> tuple:
    """k[x]/(x^2 - square) graded by deg x = 1 in Z2."""
    g = cyclic(2)
    alg = poly_algebra(field, [-field(square), 0, 1])
    return g, alg, [0, 1]


def sign_action(field: Field, square):
    """k[Z2] acting on k[x]/(x^2 - square) by x -> -x."""
    from .extensions import ModuleAlgebra
    g = cyclic(2)
    h = group_algebra(g, field)
    alg = poly_algebra(field, [-field(square), 0, 1])
    act = [[{0: field.one}, {1: field.one}], [{0: field.one}, {1: -field.one}]]
    return ModuleAlgebra.build(alg, h, act)


# ---------------------------------------------------------------- the 128-dimensional example

EXAMPLE_RELATIVE_BASIS = ("1", "J", "Z", "JZ", "Z^2", "JZ^2", "Z^3", "JZ^3")
EXAMPLE_ROW_LABELS = ("1", "t", "c", "s", "c^2", "ct", "st", "c^2t")


def example_index(a: int, b: int, c: int) -> int:
    """Position of J^a X^b Z^c."""
    return (a % 2) * 64 + (b % 4) * 16 + (c % 16)


def example_algebra() -> AlgebraStr:
    """J, X, Z with XZ = iZX, X^4 = Z^16 = 1, J^2 = -1 and J central."""
    F = QQi
    q = F.i

    def prod_(u, v):
        a, r = divmod(u, 64)
        b, c = divmod(r, 16)
        a2, r2 = divmod(v, 64)
        b2, c2 = divmod(r2, 16)
        coef = q ** ((-c * b2) % 4)
        if a and a2:
            coef = -coef
        return {example_index(a + a2, b + b2, c + c2): coef}

    return AlgebraStr.from_function(F, 128, prod_, {0: F.one})


def _monomial(a, b, c):
    return {example_index(a, b, c): QQi.one}


# generator values of c and s, as (coefficient, image exponents) or None for zero
_GEN_C = {"J": (1, (1, 0, 0)), "X": (1, (0, 1, 0)), "Z": None}
_GEN_S = {"J": None, "X": None, "Z": (-1, (0, 0, 1))}

# rows of the action table on 1, X^j, J, Z, Z^2, Z^3, Y = Z^4
_TABLE_COLUMNS = {"1": (0, 0, 0), "X": (0, 1, 0), "X^2": (0, 2, 0), "X^3": (0, 3, 0), "J": (1, 0, 0),
                  "Z": (0, 0, 1), "Z^2": (0, 0, 2), "Z^3": (0, 0, 3), "Y": (0, 0, 4)}
_TABLE = {
    "c": {"1": 1, "X": 1, "X^2": 1, "X^3": 1, "J": 1, "Z": 0, "Z^2": -1, "Z^3": 0, "Y": 1},
    "s": {"1": 0, "X": 0, "X^2": 0, "X^3": 0, "J": 0, "Z": -1, "Z^2": 0, "Z^3": 1, "Y": 0},
    "t": {"1": 1, "X": 1, "X^2": 1, "X^3": 1, "J": -1, "Z": 1, "Z^2": 1, "Z^3": 1, "Y": 1},
    "c^2": {"1": 1, "X": 1, "X^2": 1, "X^3": 1, "J": 1, "Z": 0, "Z^2": 1, "Z^3": 0, "Y": 1},
    "s^2": {"1": 0, "X": 0, "X^2": 0, "X^3": 0, "J": 0, "Z": 1, "Z^2": 0, "Z^3": 1, "Y": 0},
}


def _gen_value(table, gen):
    v = table[gen]
    return {} if v is None else {example_index(*v[1]): QQi(v[0])}


def _extend_cs(alg: AlgebraStr):
    """c and s on every monomial from the generator values, via Delta c = c(x)c - s(x)s, Delta s = s(x)c + c(x)s."""
    cs = []
    for u in range(128):
        a, r = divmod(u, 64)
        b, c = divmod(r, 16)
        word = ["J"] * a + ["X"] * b + ["Z"] * c
        cm, sm = alg.unit, {}
        for gen in word:
            cg, sg = _gen_value(_GEN_C, gen), _gen_value(_GEN_S, gen)
            new_c: dict = {}
            vaxpy(new_c, QQi.one, alg.mul(cm, cg))
            vaxpy(new_c, -QQi.one, alg.mul(sm, sg))
            new_s: dict = {}
            vaxpy(new_s, QQi.one, alg.mul(sm, cg))
            vaxpy(new_s, QQi.one, alg.mul(cm, sg))
            cm, sm = new_c, new_s
        cs.append((cm, sm))
    return cs


@dataclass
class WorkedExample:
    a: object                  # ModuleAlgebra over the circle Hopf algebra
    b_basis: list              # monomials X^b Z^(4k)
    relative_basis: list       # 1, J, Z, JZ, Z^2, JZ^2, Z^3, JZ^3
    row_vectors: list          # 1, t, c, s, c^2, ct, st, c^2 t as vectors of H
    table_mismatches: list
    domain: object = None      # DomainCert: (J - i)(J + i) = 0


def paper_example(literal_d8: bool = False, verify: bool = True) -> WorkedExample:
    """The 128-dimensional algebra with the circle Hopf algebra acting through the table.

    ``literal_d8`` uses ts = -st; that version is not a module (the table forces
    ts = st on Z), and building it raises InputError with the failing entry.
    """
    from .extensions import ModuleAlgebra
    F = QQi
    alg = example_algebra()
    h = circle_hopf(F, commuting=not literal_d8)
    cs = _extend_cs(alg)

    def c_act(v):
        out: dict = {}
        for u, x in v.items():
            vaxpy(out, x, cs[u][0])
        return out

    def s_act(v):
        out: dict = {}
        for u, x in v.items():
            vaxpy(out, x, cs[u][1])
        return out

    def t_act(v):
        return {u: (-x if u >= 64 else x) for u, x in v.items()}

    def d_act(v):
        out: dict = {}
        vaxpy(out, F.one, c_act(c_act(v)))
        vaxpy(out, -F.one, s_act(s_act(v)))
        return out

    base_ops = [lambda v: v, c_act, s_act, d_act]
    action = []
    for i in range(8):
        p, k = _CIRCLE_PAIR[i]
        op = base_ops[k]
        row = []
        for u in range(128):
            img = op({u: F.one})
            row.append(t_act(img) if p else img)
        action.append(row)
    ops = {"c": c_act, "s": s_act, "t": t_act,
           "c^2": lambda v: c_act(c_act(v)), "s^2": lambda v: s_act(s_act(v))}
    mismatches = []
    for row, vals in _TABLE.items():
        for col, coef in vals.items():
            mono = _monomial(*_TABLE_COLUMNS[col])
            expect = {k: F(coef) * x for k, x in mono.items()} if coef else {}
            if ops[row](mono) != expect:
                mismatches.append((row, col))
    if mismatches and not literal_d8:
        raise InputError("table entries disagree with the measuring extension", witness=mismatches)
    ma = ModuleAlgebra.build(alg, h, action, verify=verify)
    b_basis = [_monomial(0, b, 4 * k) for b in range(4) for k in range(4)]
    rel = [_monomial(a, 0, c) for c in range(4) for a in range(2)]
    half = F(1) / 2
    e = lambda i: {i: F.one}
    c2 = {0: half, 4: half}
    rows = [e(0), e(1), e(2), e(3), c2, e(5), e(6), {1: half, 7: half}]
    from .corings import DomainCert
    x = {example_index(1, 0, 0): F.one, 0: -F.i}
    y = {example_index(1, 0, 0): F.one, 0: F.i}
    if alg.mul(x, y):
        raise InputError("expected (J - i)(J + i) = 0")
    return WorkedExample(ma, b_basis, rel, rows, mismatches, DomainCert(False, "builder witness", (x, y)))


def example_monomial_name(u: int) -> str:
    a, r = divmod(u, 64)
    b, c = divmod(r, 16)
    parts = [("J", a), ("X", b), ("Z", c)]
    word = "".join(s if e == 1 else f"{s}^{e}" for s, e in parts if e)
    return word or "1"


def example_generators(alg: AlgebraStr, space) -> list[str] | None:
    """Fewest-degree monomial generators of a monomially spanned subalgebra, else None."""
    from .subobjects import close_subalgebra
    F = alg.field
    monos = [u for u in range(alg.dim) if space.contains_vector({u: F.one})]
    if span(F, alg.dim, [{u: F.one} for u in monos]) != space:
        return None

    def degree(u):
        a, r = divmod(u, 64)
        b, c = divmod(r, 16)
        return (a + b + c, u)

    chosen: list[int] = []
    current = span(F, alg.dim, [alg.unit])
    for u in sorted(monos, key=degree):
        if not current.contains_vector({u: F.one}):
            chosen.append(u)
            current = close_subalgebra(alg, span(F, alg.dim, [alg.unit] + [{x: F.one} for x in chosen]))
    return [example_monomial_name(u) for u in chosen]
