"""JSON loaders and dumpers for structure constants, groups and builder refs.

Sparse tensors are lists of ``[i, j, k, "scalar"]`` entries:

* ``mult``: ``e_i e_j`` gains ``scalar * e_k``
* ``comult``: ``Delta(e_i)`` gains ``scalar * e_j (x) e_k``
* ``antipode``: ``S(e_i)`` gains ``scalar * e_j``
* ``coaction``: ``delta(e_i)`` gains ``scalar * e_j (x) h_k``
* ``action``: ``h_i . e_j`` gains ``scalar * e_k``
* ``cocycle``: ``sigma(h_i, h_j)`` gains ``scalar * b_k``

Omitted tensors are zero.
"""
from __future__ import annotations

import json

from .errors import InputError
from .fields import Field, field_from_key
from .groups import GroupTable, named_group
from .hopf import AlgebraStr, CoalgebraStr, HopfAlgebra
from .linalg import Mat, Subspace


def _scalar(field: Field, s):
    if isinstance(s, bool):
        raise InputError(f"bad scalar {s!r}")
    if isinstance(s, int):
        return field.coerce(s)
    if isinstance(s, str):
        try:
            return field.parse(s)
        except (ValueError, ZeroDivisionError) as ex:
            raise InputError(f"bad scalar {s!r}: {ex}") from None
    raise InputError(f"scalars are strings or integers, got {s!r}")


def _index(i, n: int, what: str) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
        raise InputError(f"{what} index {i!r} out of range 0..{n - 1}")
    return i


def _entries(obj, key: str, arity: int):
    rows = obj.get(key, [])
    if not isinstance(rows, list):
        raise InputError(f"{key!r} must be a list")
    for r in rows:
        if not isinstance(r, list) or len(r) != arity + 1:
            raise InputError(f"{key!r} entries have {arity} indices and a scalar", witness=r)
        yield r


def _vector(field: Field, seq, n: int, what: str) -> dict:
    if not isinstance(seq, list) or len(seq) != n:
        raise InputError(f"{what} must list {n} scalars")
    return {i: c for i, c in ((i, _scalar(field, s)) for i, s in enumerate(seq)) if c}


def parse_field(obj) -> Field:
    try:
        return field_from_key(obj.get("field", "Q") if isinstance(obj, dict) else obj)
    except (ValueError, TypeError) as ex:
        raise InputError(str(ex)) from None


def _dim(obj) -> int:
    n = obj.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("'dim' must be a positive integer")
    return n


def load_algebra(obj, field: Field | None = None) -> AlgebraStr:
    F = field or parse_field(obj)
    n = _dim(obj)
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i, j, k, s in _entries(obj, "mult", 3):
        row = mult[_index(i, n, "mult")][_index(j, n, "mult")]
        k = _index(k, n, "mult")
        row[k] = row.get(k, F.zero) + _scalar(F, s)
    if "unit" not in obj:
        raise InputError("'unit' is required")
    return AlgebraStr.build(F, n, mult, _vector(F, obj["unit"], n, "unit"))


def load_coalgebra(obj, field: Field | None = None) -> CoalgebraStr:
    F = field or parse_field(obj)
    n = _dim(obj)
    comult = [{} for _ in range(n)]
    for i, j, k, s in _entries(obj, "comult", 3):
        v = comult[_index(i, n, "comult")]
        key = _index(j, n, "comult") * n + _index(k, n, "comult")
        v[key] = v.get(key, F.zero) + _scalar(F, s)
    counit = obj.get("counit", ["0"] * n)
    eps = _vector(F, counit, n, "counit")
    return CoalgebraStr.build(F, n, comult, [eps.get(i, F.zero) for i in range(n)])


def load_hopf(obj, name: str = "") -> HopfAlgebra:
    if "builder" in obj:
        h = build_ref(obj)
        if not isinstance(h, HopfAlgebra):
            raise InputError(f"builder {obj['builder']!r} does not produce a Hopf algebra")
        return h
    F = parse_field(obj)
    n = _dim(obj)
    cols = [{} for _ in range(n)]
    for i, j, s in _entries(obj, "antipode", 2):
        c = cols[_index(i, n, "antipode")]
        j = _index(j, n, "antipode")
        c[j] = c.get(j, F.zero) + _scalar(F, s)
    return HopfAlgebra.build(load_algebra(obj, F), load_coalgebra(obj, F),
                             Mat.from_columns(F, cols, n), name=obj.get("name", name))


def load_group(obj) -> GroupTable:
    if isinstance(obj, str):
        try:
            return named_group(obj)
        except (KeyError, ValueError) as ex:
            raise InputError(f"unknown group {obj!r}") from ex
    if not isinstance(obj, dict) or "mult" not in obj:
        raise InputError("group must be a name or {'order': n, 'mult': [[...]]}")
    mult = obj["mult"]
    if "order" in obj and obj["order"] != len(mult):
        raise InputError("'order' disagrees with the table size")
    return GroupTable.from_table(mult, obj.get("names"))


def _algebra_block(obj) -> dict:
    return obj["algebra"] if "algebra" in obj else obj


def load_comodule_algebra(obj):
    """Algebra block plus ``coaction`` and a ``hopf`` block or builder ref."""
    from .extensions import ComoduleAlgebra
    if "hopf" not in obj:
        raise InputError("'hopf' is required")
    h = load_hopf(obj["hopf"])
    alg = load_algebra(_algebra_block(obj), h.field)
    n, nh = alg.dim, h.dim
    co = [{} for _ in range(n)]
    for i, j, k, s in _entries(obj, "coaction", 3):
        v = co[_index(i, n, "coaction")]
        key = _index(j, n, "coaction") * nh + _index(k, nh, "coaction")
        v[key] = v.get(key, h.field.zero) + _scalar(h.field, s)
    return ComoduleAlgebra.build(alg, h, co)


def load_module_algebra(obj):
    from .extensions import ModuleAlgebra
    if "hopf" not in obj:
        raise InputError("'hopf' is required")
    h = load_hopf(obj["hopf"])
    alg = load_algebra(_algebra_block(obj), h.field)
    n, nh = alg.dim, h.dim
    act = [[{} for _ in range(n)] for _ in range(nh)]
    for i, j, k, s in _entries(obj, "action", 3):
        v = act[_index(i, nh, "action")][_index(j, n, "action")]
        k = _index(k, n, "action")
        v[k] = v.get(k, h.field.zero) + _scalar(h.field, s)
    return ModuleAlgebra.build(alg, h, act)


def load_crossed_data(obj):
    """``algebra`` (the base B), ``hopf``, ``action`` and ``cocycle``."""
    from .extensions import CrossedData
    if "hopf" not in obj:
        raise InputError("'hopf' is required")
    h = load_hopf(obj["hopf"])
    F = h.field
    b = load_algebra(_algebra_block(obj), F)
    n, nh = b.dim, h.dim
    act = [[{} for _ in range(n)] for _ in range(nh)]
    for i, j, k, s in _entries(obj, "action", 3):
        v = act[_index(i, nh, "action")][_index(j, n, "action")]
        k = _index(k, n, "action")
        v[k] = v.get(k, F.zero) + _scalar(F, s)
    sig = [[{} for _ in range(nh)] for _ in range(nh)]
    for i, j, k, s in _entries(obj, "cocycle", 3):
        v = sig[_index(i, nh, "cocycle")][_index(j, nh, "cocycle")]
        k = _index(k, n, "cocycle")
        v[k] = v.get(k, F.zero) + _scalar(F, s)
    return CrossedData(b, h, tuple(map(tuple, act)), tuple(map(tuple, sig)))


# ---------------------------------------------------------------- builder refs

def build_ref(ref: dict):
    """Resolve ``{"builder": name, ...params}``."""
    from . import builders as B
    name = ref.get("builder")
    field = parse_field(ref) if "field" in ref else None
    try:
        if name == "circle_hopf":
            return B.circle_hopf(field or B.QQi, commuting=bool(ref.get("commuting", False)))
        if name in ("group_algebra", "dual_group_algebra"):
            g = load_group(ref.get("group", "S3"))
            f = B.group_algebra if name == "group_algebra" else B.dual_group_algebra
            return f(g, field or B.QQ)
        if name == "paper_example":
            return B.paper_example(literal_d8=bool(ref.get("literal_d8", False)))
        if name == "finite_field_ext":
            p, poly = ref.get("p"), ref.get("poly")
            if not isinstance(p, int) or not isinstance(poly, list):
                raise InputError("finite_field_ext needs integer 'p' and a 'poly' list")
            return B.finite_field_ext(p, poly)
    except (ValueError, KeyError) as ex:
        if isinstance(ex, InputError):
            raise
        raise InputError(f"builder {name!r}: {ex}") from ex
    raise InputError(f"unknown builder {name!r}")


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as ex:
        raise InputError(f"cannot read {path}: {ex.strerror}") from None
    except json.JSONDecodeError as ex:
        raise InputError(f"{path} is not valid JSON: {ex.msg} at line {ex.lineno}") from None


# ---------------------------------------------------------------- dumping

def dump_algebra(a: AlgebraStr) -> dict:
    F = a.field
    mult = [[i, j, k, F.format(c)] for i in range(a.dim) for j in range(a.dim)
            for k, c in sorted(a.mult[i][j].items())]
    return {"field": F.json_key(), "dim": a.dim, "mult": mult,
            "unit": [F.format(a.unit.get(i, F.zero)) for i in range(a.dim)]}


def dump_hopf(h: HopfAlgebra) -> dict:
    F, n = h.field, h.dim
    out = dump_algebra(h.alg)
    out["comult"] = [[i, *divmod(key, n), F.format(c)] for i in range(n)
                     for key, c in sorted(h.coalg.comult[i].items())]
    out["counit"] = [F.format(h.eps({i: F.one})) for i in range(n)]
    out["antipode"] = [[i, j, F.format(c)] for i in range(n)
                       for j, c in sorted(h.antipode.column(i).items())]
    if h.name:
        out["name"] = h.name
    return out


def vector_json(field: Field, v: dict, n: int) -> list[str]:
    return [field.format(v.get(i, field.zero)) for i in range(n)]


def subspace_json(s: Subspace) -> dict:
    """Basis as RREF rows of scalar strings."""
    return {"dim": s.dim, "ambient": s.ambient_dim,
            "rref": [vector_json(s.field, r, s.ambient_dim) for r in s.vectors]}
