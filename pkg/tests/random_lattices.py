"""Random finite lattices with a join-to-meet map between them.

P and Q are intersection-closed set families containing all extents and
intents of a random relation R, and phi(A) = A' (the common R-neighbours of A).
"""
import random

from hopfgal.lattice import CompleteLattice


def _closure(sets, universe):
    fam = {frozenset(universe)} | {frozenset(s) for s in sets}
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                c = a & b
                if c not in fam:
                    fam.add(c)
                    changed = True
    return sorted(fam, key=lambda s: (len(s), sorted(s)))


def _prime(rel, A, ys):
    return frozenset(y for y in ys if all((x, y) in rel for x in A))


def _prime_inv(rel, B, xs):
    return frozenset(x for x in xs if all((x, y) in rel for y in B))


def random_pair(rng: random.Random, max_size: int = 10):
    """(P, Q, phi) with |P|, |Q| <= max_size."""
    while True:
        xs = list(range(rng.randint(1, 4)))
        ys = list(range(rng.randint(1, 4)))
        rel = {(x, y) for x in xs for y in ys if rng.random() < 0.5}
        # every extent is an intersection of attribute extents {y}', dually for intents
        extents = [_prime_inv(rel, {y}, xs) for y in ys]
        intents = [_prime(rel, {x}, ys) for x in xs]
        extra_p = [frozenset(x for x in xs if rng.random() < 0.5) for _ in range(rng.randint(0, 2))]
        extra_q = [frozenset(y for y in ys if rng.random() < 0.5) for _ in range(rng.randint(0, 2))]
        pset = _closure(extents + extra_p, xs)
        qset = _closure(intents + extra_q, ys)
        if len(pset) > max_size or len(qset) > max_size:
            continue
        P = CompleteLattice.from_relation(pset, lambda a, b: a <= b)
        Q = CompleteLattice.from_relation(qset, lambda a, b: a <= b)
        phi = [qset.index(_prime(rel, A, ys)) for A in pset]
        return P, Q, phi
