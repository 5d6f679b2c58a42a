"""Finite posets, lattices and Galois connections, stored extensionally."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .errors import EnumerationCapError, InputError

SUBLATTICE_CAP = 64


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple
    leq: tuple  # leq[i][j] is True when elements[i] <= elements[j]

    @classmethod
    def from_relation(cls, elements, rel) -> "FinitePoset":
        elements = tuple(elements)
        n = len(elements)
        leq = tuple(tuple(bool(rel(elements[i], elements[j])) for j in range(n)) for i in range(n))
        p = cls(elements, leq)
        p.check()
        return p

    def __len__(self):
        return len(self.elements)

    def check(self) -> None:
        n, le = len(self.elements), self.leq
        for i in range(n):
            if not le[i][i]:
                raise InputError("order is not reflexive", witness=[i])
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise InputError("order is not antisymmetric", witness=[i, j])
                if le[i][j]:
                    for k in range(n):
                        if le[j][k] and not le[i][k]:
                            raise InputError("order is not transitive", witness=[i, j, k])

    def index(self, label) -> int:
        return self.elements.index(label)

    def upper_bounds(self, subset) -> list[int]:
        return [u for u in range(len(self)) if all(self.leq[s][u] for s in subset)]

    def lower_bounds(self, subset) -> list[int]:
        return [u for u in range(len(self)) if all(self.leq[u][s] for s in subset)]

    def least(self, subset) -> int | None:
        for s in subset:
            if all(self.leq[s][t] for t in subset):
                return s
        return None

    def greatest(self, subset) -> int | None:
        for s in subset:
            if all(self.leq[t][s] for t in subset):
                return s
        return None

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (a, b) with a < b and nothing strictly between."""
        n, le = len(self), self.leq
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and le[a][b]:
                    if not any(c != a and c != b and le[a][c] and le[c][b] for c in range(n)):
                        out.append((a, b))
        return out

    def dual(self) -> "FinitePoset":
        n = len(self)
        return FinitePoset(self.elements, tuple(tuple(self.leq[j][i] for j in range(n)) for i in range(n)))

    def to_json(self) -> str:
        return json.dumps({"elements": [str(e) for e in self.elements],
                           "leq": [[int(x) for x in r] for r in self.leq]}, ensure_ascii=False)


@dataclass(frozen=True)
class CompleteLattice:
    poset: FinitePoset
    join: tuple
    meet: tuple
    top: int
    bottom: int

    @classmethod
    def from_poset(cls, p: FinitePoset) -> "CompleteLattice":
        n = len(p)
        if n == 0:
            raise InputError("the empty poset is not a complete lattice")
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                j = p.least(p.upper_bounds([a, b]))
                m = p.greatest(p.lower_bounds([a, b]))
                if j is None or m is None:
                    raise InputError("missing join or meet", witness=[a, b])
                join[a][b] = join[b][a] = j
                meet[a][b] = meet[b][a] = m
        top = p.greatest(range(n))
        bottom = p.least(range(n))
        return cls(p, tuple(map(tuple, join)), tuple(map(tuple, meet)), top, bottom)

    @classmethod
    def from_relation(cls, elements, rel) -> "CompleteLattice":
        return cls.from_poset(FinitePoset.from_relation(elements, rel))

    def __len__(self):
        return len(self.poset)

    @property
    def elements(self):
        return self.poset.elements

    def leq(self, a, b) -> bool:
        return self.poset.leq[a][b]

    def join_all(self, subset) -> int:
        out = self.bottom
        for s in subset:
            out = self.join[out][s]
        return out

    def meet_all(self, subset) -> int:
        out = self.top
        for s in subset:
            out = self.meet[out][s]
        return out


@dataclass(frozen=True)
class GaloisConn:
    """Antitone maps phi: P -> Q and psi: Q -> P given as index tuples."""

    p: FinitePoset
    q: FinitePoset
    phi: tuple
    psi: tuple

    def violations(self) -> list:
        out = []
        P, Q = self.p, self.q
        for a in range(len(P)):
            for b in range(len(P)):
                if P.leq[a][b] and not Q.leq[self.phi[b]][self.phi[a]]:
                    out.append(("phi antitone", (a, b)))
        for a in range(len(Q)):
            for b in range(len(Q)):
                if Q.leq[a][b] and not P.leq[self.psi[b]][self.psi[a]]:
                    out.append(("psi antitone", (a, b)))
        for a in range(len(P)):
            if not P.leq[a][self.psi[self.phi[a]]]:
                out.append(("p <= psi phi p", (a,)))
        for b in range(len(Q)):
            if not Q.leq[b][self.phi[self.psi[b]]]:
                out.append(("q <= phi psi q", (b,)))
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    @cached_property
    def closed(self) -> tuple[tuple, tuple]:
        return closed_elements(self)


class NoAdjoint:
    """Falsy result of :func:`adjoint_from` carrying the failing subset."""

    def __init__(self, witness):
        self.witness = witness

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoAdjoint(witness={self.witness})"


def adjoint_from(phi, p: CompleteLattice, q: FinitePoset) -> GaloisConn | NoAdjoint:
    """Right adjoint psi(y) = join{x : phi(x) >= y}, if phi reflects suprema."""
    phi = tuple(phi)
    P = p.poset
    n, m = len(P), len(q)
    for a in range(n):
        for b in range(n):
            if P.leq[a][b] and not q.leq[phi[b]][phi[a]]:
                raise InputError("phi is not antitone", witness=[a, b])
    psi = []
    for y in range(m):
        psi.append(p.join_all([x for x in range(n) if q.leq[y][phi[x]]]))
    for y in range(m):
        for x in range(n):
            if q.leq[y][phi[x]] != P.leq[x][psi[y]]:
                return NoAdjoint(sorted(z for z in range(n) if q.leq[y][phi[z]]))
    return GaloisConn(P, q, phi, tuple(psi))


def closed_elements(g: GaloisConn) -> tuple[tuple, tuple]:
    pc = tuple(a for a in range(len(g.p)) if g.psi[g.phi[a]] == a)
    qc = tuple(b for b in range(len(g.q)) if g.phi[g.psi[b]] == b)
    return pc, qc


def reflects_suprema(phi, p: CompleteLattice, q: CompleteLattice):
    """Exhaustive subset scan; returns None or a subset whose join is not reflected."""
    n = len(p)
    if n > 16:
        raise EnumerationCapError("exhaustive subset scan is limited to 16 elements")
    for mask in range(1 << n):
        sub = [i for i in range(n) if mask >> i & 1]
        if phi[p.join_all(sub)] != q.meet_all([phi[i] for i in sub]):
            return sub
    return None


def check_modular_distributive(l: CompleteLattice) -> dict:
    """Search for N5 and M3 sublattices; witnesses are least sorted 5-tuples."""
    n = len(l)
    if n > SUBLATTICE_CAP:
        raise EnumerationCapError(f"sublattice search is capped at {SUBLATTICE_CAP} elements")
    le, J, M = l.poset.leq, l.join, l.meet

    def comparable(a, b):
        return le[a][b] or le[b][a]

    n5 = None
    for a in range(n):
        for c in range(n):
            if a == c or not le[a][c]:
                continue
            for b in range(n):
                if comparable(a, b) or comparable(c, b):
                    continue
                if J[a][b] == J[c][b] and M[a][b] == M[c][b]:
                    w = tuple(sorted((M[a][b], a, b, c, J[a][b])))
                    if n5 is None or w < n5:
                        n5 = w
    m3 = None
    for x in range(n):
        for y in range(x + 1, n):
            if comparable(x, y):
                continue
            for z in range(y + 1, n):
                if comparable(x, z) or comparable(y, z):
                    continue
                if M[x][y] == M[y][z] == M[x][z] and J[x][y] == J[y][z] == J[x][z]:
                    w = tuple(sorted((M[x][y], x, y, z, J[x][y])))
                    if m3 is None or w < m3:
                        m3 = w
    bad = [w for w in (n5, m3) if w is not None]
    return {
        "modular": {"holds": n5 is None, "witness": list(n5) if n5 else None},
        "distributive": {
            "holds": not bad,
            "witness": list(min(bad)) if bad else None,
            "kind": None if not bad else ("N5" if min(bad) == n5 else "M3"),
        },
    }


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: FinitePoset, labels=None, name: str = "hasse") -> str:
    """Hasse diagram as DOT with nodes sorted by label and `a -> b` for a covered by b."""
    labels = [str(x) for x in (labels if labels is not None else p.elements)]
    if len(set(labels)) != len(labels):
        raise InputError("labels must be distinct")
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for lab in sorted(labels):
        lines.append(f"  {_dot_id(lab)};")
    edges = sorted((labels[a], labels[b]) for a, b in p.covers())
    for a, b in edges:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_anti_isomorphism(p: FinitePoset, q: FinitePoset, f) -> bool:
    """f: P -> Q bijective with a <= b iff f(b) <= f(a)."""
    n = len(p)
    if len(q) != n or sorted(f) != list(range(n)):
        return False
    return all(p.leq[a][b] == q.leq[f[b]][f[a]] for a in range(n) for b in range(n))
