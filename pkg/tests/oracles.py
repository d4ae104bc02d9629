"""Brute-force reference implementations used to cross-check the library.

Nothing here calls into the stabilizer-chain or class machinery; elements are
plain image tuples and products are computed point by point.
"""
from __future__ import annotations

import itertools
from collections import deque
from math import gcd

import numpy as np


def mul(p, q):
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conj(x, g):
    return mul(mul(inv(g), x), g)


def closure(gens, degree):
    """All products of the generators, by breadth-first search."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mul(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def conjugation_orbits(G_elems, N_elems):
    """Orbits of N under conjugation by every element of G, vectorized over N."""
    N_arr = np.array(sorted(N_elems), dtype=np.int32)
    lookup = {tuple(r): k for k, r in enumerate(N_arr.tolist())}
    parent = list(range(len(N_arr)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in G_elems:
        g = np.array(g)
        ginv = np.argsort(g)
        images = g[N_arr[:, ginv]]  # x^g as rows
        for k, row in enumerate(images.tolist()):
            a, b = find(k), find(lookup[tuple(row)])
            if a != b:
                parent[a] = b
    groups = {}
    for k in range(len(N_arr)):
        groups.setdefault(find(k), set()).add(tuple(N_arr[k].tolist()))
    return [frozenset(s) for s in groups.values()]


def element_order(x):
    ident = tuple(range(len(x)))
    k, y = 1, x
    while y != ident:
        y = mul(y, x)
        k += 1
    return k


def is_normal_set(H, G_gens):
    return all(conj(h, g) in H for h in H for g in G_gens)


class TableGroup:
    """A finite group given by its elements and a brute-force multiplication table."""

    def __init__(self, elems):
        self.elems = sorted(elems)
        self.index = {e: k for k, e in enumerate(self.elems)}
        n = len(self.elems)
        self.table = [[self.index[mul(a, b)] for b in self.elems] for a in self.elems]
        self.inv = [self.index[inv(a)] for a in self.elems]
        self.identity = self.index[tuple(range(len(self.elems[0])))]
        self.n = n

    def closure(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                row = self.table[a]
                for g in gens:
                    b = row[g]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def all_subgroups(self):
        """Every subgroup, reached by adjoining one element at a time to smaller ones."""
        found = {frozenset([self.identity]): []}
        work = [frozenset([self.identity])]
        while work:
            H = work.pop()
            gens = found[H]
            for g in range(self.n):
                if g in H:
                    continue
                K = self.closure(gens + [g])
                if K not in found:
                    found[K] = gens + [g]
                    work.append(K)
        return set(found)

    def is_normal(self, H):
        return all(self.conj_set(H, g) == set(H) for g in range(self.n))

    def conj_set(self, H, g):
        t, gi = self.table, self.inv[g]
        return {t[t[gi][h]][g] for h in H}


def normal_subgroups_brute(elems):
    T = TableGroup(elems)
    return {frozenset(T.elems[k] for k in H) for H in T.all_subgroups() if T.is_normal(H)}


def frobenius_kernel_by_definition(elems):
    """Kernel of N as a Frobenius group via a malnormal complement, or None.

    Frobenius complements have cyclic or generalized-quaternion Sylow
    subgroups, so on small groups they are 2-generated; one generator may be
    taken up to conjugacy.
    """
    T = TableGroup(elems)
    reps = [T.index[min(c)] for c in conjugation_orbits(T.elems, T.elems)]
    subgroups = set()
    for a in reps:
        for b in range(T.n):
            subgroups.add(T.closure([a, b]))
    for H in sorted(subgroups, key=lambda h: (len(h), sorted(h))):
        if len(H) in (1, T.n) or T.n % len(H):
            continue
        if all(len(T.conj_set(H, g) & H) == 1 for g in range(T.n) if g not in H):
            covered = set()
            for g in range(T.n):
                covered |= T.conj_set(H, g)
            kernel = (set(range(T.n)) - covered) | {T.identity}
            return frozenset(T.elems[k] for k in kernel)
    return None


def cyclic_sylow_count(elems, p):
    """Number of Sylow p-subgroups when they are cyclic: generators of order p^k, k maximal."""
    n = len(elems)
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    generators = sum(1 for x in elems if element_order(x) == pk)
    return generators // (pk - pk // p)


def coprime(a, b):
    return gcd(a, b) == 1
