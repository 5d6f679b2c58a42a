"""Finite group multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .errors import InputError


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult: tuple  # mult[a][b] = index of a*b
    identity: int
    names: tuple = ()

    @classmethod
    def from_table(cls, mult, names=None) -> "GroupTable":
        n = len(mult)
        mult = tuple(tuple(int(x) for x in row) for row in mult)
        ident = next((e for e in range(n) if all(mult[e][a] == a == mult[a][e] for a in range(n))), None)
        g = cls(n, mult, -1 if ident is None else ident, tuple(names) if names else tuple(str(i) for i in range(n)))
        g.check()
        return g

    def check(self) -> None:
        n, m = self.order, self.mult
        if n == 0 or any(len(r) != n for r in m):
            raise InputError("group table must be square and non-empty")
        for a, b in product(range(n), repeat=2):
            if not 0 <= m[a][b] < n:
                raise InputError("product outside the group", witness=[a, b])
        if self.identity < 0:
            raise InputError("no identity element")
        for a, b, c in product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise InputError("associativity fails", witness=[a, b, c])
        for a in range(n):
            if self.identity not in m[a]:
                raise InputError("element without inverse", witness=[a])

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.mult[a].index(self.identity)

    def closure(self, gens) -> frozenset:
        """Subgroup generated by ``gens`` (finite, so submonoid = subgroup)."""
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mult[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    def subgroups(self) -> list[frozenset]:
        """All subgroups, by closing the known ones under one more generator."""
        found = {frozenset([self.identity])}
        frontier = list(found)
        while frontier:
            h = frontier.pop()
            for g in range(self.order):
                if g not in h:
                    k = self.closure(set(h) | {g})
                    if k not in found:
                        found.add(k)
                        frontier.append(k)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, sub) -> bool:
        return all(self.mult[self.mult[g][h]][self.inverse(g)] in sub for g in range(self.order) for h in sub)

    def label(self, sub) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(sub)) + "}"


def cyclic(n: int) -> GroupTable:
    return GroupTable.from_table([[(a + b) % n for b in range(n)] for a in range(n)],
                                 ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)])


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    n, m = g.order, h.order
    table = [[g.mult[a // m][b // m] * m + h.mult[a % m][b % m] for b in range(n * m)] for a in range(n * m)]
    names = [f"({x},{y})" for x in g.names for y in h.names]
    return GroupTable.from_table(table, names)


def klein() -> GroupTable:
    return GroupTable.from_table([[a ^ b for b in range(4)] for a in range(4)], ["e", "a", "b", "ab"])


def symmetric3() -> GroupTable:
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return GroupTable.from_table(table, names)


def dihedral8() -> GroupTable:
    """Elements sigma^a tau^b (index a + 4b) with tau sigma tau = sigma^3."""

    def mul(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        return (a + (c if b == 0 else -c)) % 4 + 4 * ((b + d) % 2)

    rot = ["e", "σ", "σ²", "σ³"]
    names = rot + [("" if r == "e" else r) + "τ" for r in rot]
    return GroupTable.from_table([[mul(x, y) for y in range(8)] for x in range(8)], names)


NAMED_GROUPS = {
    "trivial": lambda: cyclic(1),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z2xZ2": klein,
    "V4": klein,
    "S3": symmetric3,
    "D8": dihedral8,
}


def named_group(name: str) -> GroupTable:
    if name in NAMED_GROUPS:
        return NAMED_GROUPS[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise InputError(f"unknown group {name!r}")
