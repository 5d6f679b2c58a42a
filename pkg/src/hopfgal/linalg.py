"""Exact linear algebra over the fields in :mod:`hopfgal.fields`.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros.  Subspaces are
kept in canonical reduced row echelon form, so two subspaces are equal exactly
when their stored rows agree.  Tensor coordinates use the left-major
convention: ``e_i (x) e_j`` of ``k^m (x) k^n`` has index ``i*n + j``.
"""
from __future__ import annotations

import heapq
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property

from .errors import DimensionError, DimensionGuardError, FieldMismatchError
from .fields import Field, field_of

DEFAULT_GUARD = 4096
_guard = [DEFAULT_GUARD]


@contextmanager
def dimension_guard(limit: int):
    """Temporarily override the ambient-dimension guard."""
    old = _guard[0]
    _guard[0] = limit
    try:
        yield
    finally:
        _guard[0] = old


def check_guard(n: int, what: str = "ambient space"):
    if n > _guard[0]:
        raise DimensionGuardError(
            f"{what} of dimension {n} exceeds the guard {_guard[0]}; "
            "raise it with dimension_guard()"
        )


# ---------------------------------------------------------------- sparse vectors

def vadd(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vsub(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(c, x: dict) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def vaxpy(acc: dict, c, x: dict) -> None:
    """acc += c*x in place."""
    if not c:
        return
    for k, v in x.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def lincomb(terms) -> dict:
    """Sum of c*x over (c, x) pairs."""
    acc: dict = {}
    for c, x in terms:
        vaxpy(acc, c, x)
    return acc


def tensor(x: dict, y: dict, ny: int) -> dict:
    out = {}
    for i, a in x.items():
        base = i * ny
        for j, b in y.items():
            out[base + j] = a * b
    return out


def to_dense(x: dict, n: int, zero=0) -> list:
    out = [zero] * n
    for k, v in x.items():
        out[k] = v
    return out


def to_sparse(seq) -> dict:
    return {i: v for i, v in enumerate(seq) if v}


def coerce_vec(field: Field, x: dict) -> dict:
    return {k: field.coerce(v) for k, v in x.items() if v}


# ---------------------------------------------------------------- elimination

class Echelon:
    """Incremental semi-echelon form of a growing set of sparse rows.

    Each stored row has leading entry 1 at its pivot and no entries left of
    it.  ``reduced_rows`` performs the deferred back-substitution.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        rows = self.rows
        F = self.field
        v = {k: F.coerce(c) for k, c in v.items() if c}
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            c = v.get(p)
            if not c:
                continue
            for col, val in rows[p].items():
                s = v.get(col, 0) - c * val
                if s:
                    if col not in v and col in rows:
                        heapq.heappush(heap, col)
                    v[col] = s
                else:
                    v.pop(col, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {k: c * inv for k, c in r.items()}
        return True

    def reduced_rows(self) -> list[tuple[int, dict]]:
        rows = {p: dict(r) for p, r in self.rows.items()}
        for p in sorted(rows, reverse=True):
            row = rows[p]
            for q in [q for q in row if q != p and q in rows]:
                c = row.get(q)
                if c:
                    vaxpy(row, -c, rows[q])
        return sorted(rows.items())


def _freeze(row: dict) -> tuple:
    return tuple(sorted(row.items()))


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Canonical RREF subspace of ``field^ambient_dim``."""

    field: Field
    ambient_dim: int
    rows: tuple  # tuple of sorted (col, value) tuples, ordered by pivot

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(r[0][0] for r in self.rows)

    @cached_property
    def vectors(self) -> list[dict]:
        return [dict(r) for r in self.rows]

    @cached_property
    def _pivot_rows(self) -> dict:
        return {r[0][0]: dict(r) for r in self.rows}

    @property
    def basis(self) -> "Mat":
        return Mat(self.field, [to_dense(v, self.ambient_dim, self.field.zero) for v in self.vectors], self.ambient_dim)

    def reduce(self, v: dict) -> dict:
        """v modulo the subspace, in the complement spanned by non-pivot columns."""
        out = {k: self.field.coerce(c) for k, c in v.items() if c}
        for p, row in self._pivot_rows.items():
            c = out.get(p)
            if c:
                vaxpy(out, -c, row)
        return out

    def contains_vector(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict) -> list | None:
        """Coefficients of v in the stored basis, or None if v is outside."""
        coeffs = [v.get(p, 0) for p in self.pivots]
        rest = dict(v)
        for c, row in zip(coeffs, self.vectors):
            if c:
                vaxpy(rest, -c, row)
        if any(rest.values()):
            return None
        return [self.field.coerce(c) for c in coeffs]

    def __le__(self, other: "Subspace") -> bool:
        return subspace_contains(other, self)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def _from_echelon(e: Echelon) -> Subspace:
    return Subspace(e.field, e.ncols, tuple(_freeze(r) for _, r in e.reduced_rows()))


def span(field: Field, n: int, vectors) -> Subspace:
    check_guard(n)
    e = Echelon(field, n)
    for v in vectors:
        if v:
            e.add(v)
    return _from_echelon(e)


def zero_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, ())


def full_space(field: Field, n: int) -> Subspace:
    one = field.one
    return Subspace(field, n, tuple(((i, one),) for i in range(n)))


def rank_of(field: Field, n: int, vectors) -> int:
    e = Echelon(field, n)
    for v in vectors:
        if v:
            e.add(v)
    return len(e)


def _check_pair(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    if a.field != b.field:
        raise FieldMismatchError(f"subspaces over {a.field} and {b.field}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_pair(a, b)
    return span(a.field, a.ambient_dim, a.vectors + b.vectors)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True when b is a subspace of a."""
    _check_pair(a, b)
    return all(a.contains_vector(v) for v in b.vectors)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Kernel method: solve sum(x_i a_i) = sum(y_j b_j)."""
    _check_pair(a, b)
    cols = a.vectors + [vscale(-1, v) for v in b.vectors]
    ker = kernel(a.field, cols, len(cols), a.ambient_dim)
    vecs = [lincomb((x.get(i, 0), a.vectors[i]) for i in range(a.dim)) for x in ker.vectors]
    return span(a.field, a.ambient_dim, vecs)


def intersect_all(field: Field, n: int, spaces) -> Subspace:
    out = full_space(field, n)
    for s in spaces:
        out = subspace_intersect(out, s)
    return out


def _nullspace_of_rref(field: Field, n: int, rows: list[tuple[int, dict]]) -> list[dict]:
    pivots = {p for p, _ in rows}
    one = field.one
    out = []
    for f in range(n):
        if f in pivots:
            continue
        v = {f: one}
        for p, r in rows:
            c = r.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def annihilator(w: Subspace) -> Subspace:
    """Functionals vanishing on w under the standard pairing."""
    rows = [(r[0][0], dict(r)) for r in w.rows]
    return span(w.field, w.ambient_dim, _nullspace_of_rref(w.field, w.ambient_dim, rows))


def kernel(field: Field, columns: list[dict], nin: int, nout: int | None = None) -> Subspace:
    """Kernel of the linear map sending e_j to ``columns[j]``."""
    check_guard(nin)
    by_row: dict[int, dict] = {}
    for j, col in enumerate(columns):
        for i, c in col.items():
            if c:
                by_row.setdefault(i, {})[j] = c
    e = Echelon(field, nin)
    for i in sorted(by_row):
        e.add(by_row[i])
        if len(e) == nin:
            break
    rows = e.reduced_rows()
    return span(field, nin, _nullspace_of_rref(field, nin, rows))


def image(field: Field, columns: list[dict], nout: int) -> Subspace:
    return span(field, nout, columns)


def rank_of_map(field: Field, columns: list[dict], nout: int) -> int:
    return rank_of(field, nout, columns)


# ---------------------------------------------------------------- dense matrices

class Mat:
    """Dense exact matrix, immutable."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field | None, rows, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        flat = [v for r in rows for v in r]
        found = field_of(flat)
        if field is None:
            if found is None:
                raise FieldMismatchError("cannot infer the field of an all-integer matrix")
            field = found
        elif found is not None and found != field:
            raise FieldMismatchError(f"entries over {found} in a matrix over {field}")
        self.field = field
        self.rows = tuple(tuple(field.coerce(v) for v in r) for r in rows)
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, [[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns: list[dict], nrows: int):
        rows = [[0] * len(columns) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = v
        return cls(field, rows, len(columns))

    def __eq__(self, other):
        return isinstance(other, Mat) and self.field == other.field and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(v) for v in r) for r in self.rows)
        return f"Mat[{self.nrows}x{self.ncols}]({body})"

    @property
    def T(self) -> "Mat":
        return Mat(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else [], self.nrows)

    def column(self, j) -> dict:
        return {i: r[j] for i, r in enumerate(self.rows) if r[j]}

    def columns(self) -> list[dict]:
        return [self.column(j) for j in range(self.ncols)]

    def sparse_rows(self) -> list[dict]:
        return [to_sparse(r) for r in self.rows]

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, c in v.items():
            for i, r in enumerate(self.rows):
                if r[j]:
                    s = out.get(i, 0) + r[j] * c
                    if s:
                        out[i] = s
                    else:
                        out.pop(i, None)
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise DimensionError("shape mismatch in product")
        if self.field != other.field:
            raise FieldMismatchError("product of matrices over different fields")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        zero = self.field.zero
        rows = [[sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols] for r in self.rows]
        return Mat(self.field, rows, other.ncols)

    def __add__(self, other):
        return Mat(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return Mat(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def rref(self):
        """(RREF matrix, rank, pivot columns)."""
        e = Echelon(self.field, self.ncols)
        for r in self.rows:
            e.add(to_sparse(r))
        red = e.reduced_rows()
        zero = self.field.zero
        rows = [to_dense(r, self.ncols, zero) for _, r in red]
        rows += [[zero] * self.ncols for _ in range(self.nrows - len(rows))]
        return Mat(self.field, rows, self.ncols), len(red), tuple(p for p, _ in red)

    def rank(self) -> int:
        return rank_of(self.field, self.ncols, self.sparse_rows())

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return self.field.zero
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = 1 / piv
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f = f * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "Mat | None":
        n = self.nrows
        if n != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        aug = Mat(self.field, [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)], 2 * n)
        red, rank, piv = aug.rref()
        if piv[:n] != tuple(range(n)) or rank < n or (rank > n):
            return None
        return Mat(self.field, [r[n:] for r in red.rows[:n]], n)

    def nullspace(self) -> Subspace:
        return kernel(self.field, self.columns(), self.ncols, self.nrows)

    def row_space(self) -> Subspace:
        return span(self.field, self.ncols, self.sparse_rows())


def kron(a: Mat, b: Mat) -> Mat:
    if a.field != b.field:
        raise FieldMismatchError("kron of matrices over different fields")
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return Mat(a.field, rows, a.ncols * b.ncols)


def solve(m: Mat, rhs) -> list | None:
    """A particular solution x of m x = rhs, or None if inconsistent."""
    rhs = list(rhs)
    if len(rhs) != m.nrows:
        raise DimensionError("right-hand side length mismatch")
    n = m.ncols
    aug = Mat(m.field, [list(r) + [b] for r, b in zip(m.rows, rhs)], n + 1)
    red, rank, piv = aug.rref()
    if n in piv:
        return None
    x = [m.field.zero] * n
    for i, p in enumerate(piv):
        x[p] = red.rows[i][n]
    return x


def solve_sparse(field: Field, columns: list[dict], rhs: dict, nout: int) -> dict | None:
    """Sparse variant: find x with sum_j x_j columns[j] = rhs."""
    n = len(columns)
    by_row: dict[int, dict] = {}
    for j, col in enumerate(columns):
        for i, c in col.items():
            by_row.setdefault(i, {})[j] = c
    for i, c in rhs.items():
        if c:
            by_row.setdefault(i, {})[n] = c
    e = Echelon(field, n + 1)
    for i in sorted(by_row):
        e.add(by_row[i])
    red = e.reduced_rows()
    if any(p == n for p, _ in red):
        return None
    x = {}
    for p, r in red:
        c = r.get(n)
        if c:
            x[p] = c
    return x


# ---------------------------------------------------------------- quotients

@dataclass(frozen=True)
class QuotientSpace:
    """ambient / kernel with the lexicographically least coordinate section."""

    kernel: Subspace

    @property
    def field(self):
        return self.kernel.field

    @property
    def ambient_dim(self) -> int:
        return self.kernel.ambient_dim

    @cached_property
    def complement(self) -> tuple:
        piv = set(self.kernel.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    @cached_property
    def _index(self) -> dict:
        return {c: i for i, c in enumerate(self.complement)}

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v: dict) -> dict:
        r = self.kernel.reduce(v)
        idx = self._index
        return {idx[k]: c for k, c in r.items()}

    def lift(self, q: dict) -> dict:
        comp = self.complement
        return {comp[i]: c for i, c in q.items() if c}

    @property
    def section(self) -> Mat:
        return Mat.from_columns(self.field, [{c: self.field.one} for c in self.complement], self.ambient_dim)

    @property
    def projection(self) -> Mat:
        one = self.field.one
        cols = [self.project({j: one}) for j in range(self.ambient_dim)]
        return Mat.from_columns(self.field, cols, self.dim)


def quotient_by(sub: Subspace) -> QuotientSpace:
    return QuotientSpace(sub)
