"""Permutations, permutation groups, and conjugation machinery.

A :class:`PermGroup` carries a deterministic stabilizer chain built by
Schreier-Sims; each new base point is the least point moved by the element
that forced the extension. Everything element-level (conjugacy classes,
centralizers, quotients) goes through an explicit enumeration of the group,
stored lexicographically sorted as a numpy array so that bulk composition and
lookup stay vectorized.

Composition convention: ``p * q`` applies ``p`` first, then ``q``, and
conjugation is ``x ** g = g^-1 * x * g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import primes_of

DEGREE_CAP = 4096
ENUM_CAP = 10**6
TABLE_CAP = 5000


class GroupError(Exception):
    """Base class for errors raised by the group engine."""


class PermutationError(GroupError, ValueError):
    pass


class DegreeMismatch(GroupError, ValueError):
    pass


class TooLargeError(GroupError):
    pass


class NotMemberError(GroupError, ValueError):
    pass


class NotNormalError(GroupError, ValueError):
    """Raised with a witness: conjugating ``element`` by ``conjugator`` leaves the subgroup."""

    def __init__(self, conjugator: Permutation, element: Permutation, what: str = "subgroup"):
        self.conjugator = conjugator
        self.element = element
        super().__init__(
            f"{what} is not normal: {element} conjugated by {conjugator} "
            f"gives {element ** conjugator}, which is outside it"
        )


_IDENTITY: dict[int, tuple[int, ...]] = {}


def _identity_images(n: int) -> tuple[int, ...]:
    ident = _IDENTITY.get(n)
    if ident is None:
        ident = _IDENTITY[n] = tuple(range(n))
    return ident


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise PermutationError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"images are not a bijection on 0..{len(images) - 1}: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        obj = object.__new__(cls)
        obj.images = images
        obj._hash = hash(images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(_identity_images(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise PermutationError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._trusted(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int | Permutation) -> Permutation:
        if isinstance(k, Permutation):
            return k.inverse() * self * k
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Permutation.identity(self.degree)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == _identity_images(len(self.images))

    def commutes_with(self, other: Permutation) -> bool:
        a, b = self.images, other.images
        return all(b[a[i]] == a[b[i]] for i in range(len(a)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if len(p.images) != len(q.images):
        raise DegreeMismatch(f"cannot compose degree {p.degree} with degree {q.degree}")
    qi = q.images
    return Permutation._trusted(tuple([qi[i] for i in p.images]))


# ---------------------------------------------------------------- bitsets
# Subsets of an enumerated group are Python ints over the element index.

def bits_from_indices(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << int(i)
    return out


def bits_from_mask(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_from_bits(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def indices_of_bits(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(mask_from_bits(bits, n))


# -------------------------------------------------------- stabilizer chain

@dataclass(frozen=True)
class StabilizerChain:
    base: tuple[int, ...]
    transversals: tuple[dict, ...]  # base image -> coset representative
    strong_generators: tuple[Permutation, ...]
    inverse_transversals: tuple[dict, ...] = ()

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)


def _first_moved(g: Permutation, skip: Sequence[int] = ()) -> int:
    for i, j in enumerate(g.images):
        if i != j and i not in skip:
            return i
    raise ValueError("identity moves no point")


def _orbit_transversal(degree: int, point: int, gens: Sequence[Permutation]) -> dict:
    trans = {point: Permutation.identity(degree)}
    queue = [point]
    for beta in queue:
        u = trans[beta]
        for s in gens:
            gamma = s.images[beta]
            if gamma not in trans:
                trans[gamma] = u * s
                queue.append(gamma)
    return trans


def _sift(g: Permutation, base, inverse_transversals, start: int = 0):
    for level in range(start, len(base)):
        beta = g.images[base[level]]
        u_inv = inverse_transversals[level].get(beta)
        if u_inv is None:
            return g, level
        g = g * u_inv
    return g, len(base)


def _inverted(trans: dict) -> dict:
    return {b: u.inverse() for b, u in trans.items()}


def schreier_sims(degree: int, generators: Sequence[Permutation]) -> StabilizerChain:
    """Deterministic Schreier-Sims over all Schreier generators."""
    gens = [g for g in generators if not g.is_identity()]
    if not gens:
        return StabilizerChain((), (), ())
    base: list[int] = []
    for g in gens:
        if all(g.images[b] == b for b in base):
            base.append(_first_moved(g, base))
    strong = list(gens)
    level_gens = [[s for s in strong if all(s.images[b] == b for b in base[:i])] for i in range(len(base))]
    trans = [_orbit_transversal(degree, base[i], level_gens[i]) for i in range(len(base))]
    inv = [_inverted(t) for t in trans]

    i = len(base) - 1
    while i >= 0:
        extended = False
        for beta, u in list(trans[i].items()):
            for s in level_gens[i]:
                gamma = s.images[beta]
                g = u * s * inv[i][gamma]
                if g.is_identity():
                    continue
                h, j = _sift(g, base, inv, i + 1)
                if j < len(base) or not h.is_identity():
                    if j == len(base):
                        base.append(_first_moved(h, base))
                        level_gens.append([])
                        trans.append({})
                        inv.append({})
                    strong.append(h)
                    for lvl in range(i + 1, j + 1):
                        level_gens[lvl].append(h)
                        trans[lvl] = _orbit_transversal(degree, base[lvl], level_gens[lvl])
                        inv[lvl] = _inverted(trans[lvl])
                    i = j
                    extended = True
                    break
            if extended:
                break
        if not extended:
            i -= 1
    return StabilizerChain(tuple(base), tuple(trans), tuple(strong), tuple(inv))


# ------------------------------------------------------------------ groups

class PermGroup:
    """A finitely generated permutation group with a cached stabilizer chain.

    Element enumeration and the Cayley table are computed on first use and
    cached; they refuse to run above ``enum_cap`` / ``TABLE_CAP`` elements.
    Subgroups are ordinary ``PermGroup`` instances of the same degree.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), *, enum_cap: int = ENUM_CAP):
        if not 1 <= degree <= DEGREE_CAP:
            raise GroupError(f"degree must lie in 1..{DEGREE_CAP}, got {degree}")
        gens = tuple(generators)
        for k, g in enumerate(gens):
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise DegreeMismatch(f"generator {k} has degree {g.degree}, group degree is {degree}")
        self.degree = degree
        self.generators = tuple(g if isinstance(g, Permutation) else Permutation(g) for g in gens)
        self.enum_cap = enum_cap
        self.chain = schreier_sims(degree, self.generators)
        self.order = self.chain.order

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order} gens={len(self.generators)}>"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"element of degree {p.degree} tested against group of degree {self.degree}")
        h, level = _sift(p, self.chain.base, self.chain.inverse_transversals)
        return level == len(self.chain.base) and h.is_identity()

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a.commutes_with(b) for i, a in enumerate(gens) for b in gens[i + 1:])

    # -- enumeration ------------------------------------------------------

    def _require_enumerable(self) -> None:
        if self.order > self.enum_cap:
            raise TooLargeError(
                f"group of order {self.order} is too large to enumerate (enumeration cap {self.enum_cap})"
            )

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        """All elements, sorted lexicographically by image tuple."""
        self._require_enumerable()
        cur = [self.identity]
        for trans in reversed(self.chain.transversals):
            reps = [trans[b] for b in sorted(trans)]
            cur = [x * u for x in cur for u in reps]
        cur.sort()
        return tuple(cur)

    @cached_property
    def element_array(self) -> np.ndarray:
        arr = np.array([e.images for e in self.elements], dtype=np.int32)
        arr.setflags(write=False)
        return arr

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def index_of(self, p: Permutation) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise NotMemberError(f"{p} is not an element of {self!r}") from None

    @cached_property
    def _keying(self):
        base = np.array(self.chain.base, dtype=np.intp)
        if len(base) and float(self.degree) ** len(base) < 2.0**62:
            radix = self.degree ** np.arange(len(base), dtype=np.int64)
            keys = self.element_array[:, base].astype(np.int64) @ radix
            order = np.argsort(keys, kind="stable")
            return base, radix, keys[order], order
        return base, None, None, None

    def _keys(self, base_images: np.ndarray) -> np.ndarray:
        _, radix, _, _ = self._keying
        return base_images.astype(np.int64) @ radix

    def locate(self, rows: np.ndarray, check: bool = True) -> np.ndarray:
        """Element indices of the permutations in ``rows`` (-1 where absent)."""
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        if self.order == 1:
            ident = np.arange(self.degree)
            return np.where((rows == ident).all(axis=1), 0, -1)
        base, radix, skeys, order = self._keying
        if radix is None:
            lookup = self.index
            return np.array([lookup.get(Permutation._trusted(tuple(int(v) for v in r)), -1) for r in rows])
        keys = self._keys(rows[:, base])
        pos = np.clip(np.searchsorted(skeys, keys), 0, len(skeys) - 1)
        found = skeys[pos] == keys
        idx = order[pos]
        if check:
            found &= (self.element_array[idx] == rows).all(axis=1)
        return np.where(found, idx, -1)

    @cached_property
    def inverse_index(self) -> np.ndarray:
        return self.locate(np.argsort(self.element_array, axis=1), check=False)

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([e.order() for e in self.elements], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table: ``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        n = self.order
        if n > TABLE_CAP:
            raise TooLargeError(f"Cayley table needs order <= {TABLE_CAP}, group has order {n}")
        E = self.element_array
        base, radix, skeys, order = self._keying
        out = np.empty((n, n), dtype=np.int32)
        if radix is None:
            for j in range(n):
                out[:, j] = self.locate(E[j][E], check=False)
            return out
        at_base = E[:, base]
        for j in range(n):
            keys = self._keys(E[j][at_base])
            out[:, j] = order[np.searchsorted(skeys, keys)]
        out.setflags(write=False)
        return out

    # -- subsets of an enumerated group --------------------------------

    def members(self, H: PermGroup) -> int:
        """Bitset (over this group's element index) of the elements of ``H``."""
        if H.degree != self.degree:
            raise DegreeMismatch("subgroup degree differs from group degree")
        idx = self.locate(H.element_array)
        if (idx < 0).any():
            bad = H.elements[int(np.flatnonzero(idx < 0)[0])]
            raise NotMemberError(f"{bad} lies in the subgroup but not in the group")
        return bits_from_indices(idx.tolist())

    def subgroup(self, bits: int) -> PermGroup:
        """The subgroup whose elements are the indices set in ``bits``; generators picked greedily."""
        idx = indices_of_bits(bits, self.order)
        target = len(idx)
        H = PermGroup(self.degree, (), enum_cap=self.enum_cap)
        gens: list[Permutation] = []
        for i in idx:
            if H.order == target:
                break
            e = self.elements[int(i)]
            if not H.contains(e):
                gens.append(e)
                H = PermGroup(self.degree, gens, enum_cap=self.enum_cap)
        if H.order != target:
            raise GroupError(f"index set of size {target} is not a subgroup (generates order {H.order})")
        return H

    def closure(self, gen_indices: Iterable[int], start: int = 0) -> int:
        """Bitset of the subgroup generated by the given elements (plus the bitset ``start``)."""
        gens = sorted(set(int(g) for g in gen_indices) | set(indices_of_bits(start, self.order).tolist()))
        if self.order <= TABLE_CAP:
            T = self.table
            ident = self.index_of(self.identity)
            seen = np.zeros(self.order, dtype=bool)
            seen[ident] = True
            frontier = np.array([ident])
            if not gens:
                return bits_from_mask(seen)
            g = np.array(gens)
            while frontier.size:
                nxt = np.unique(T[np.ix_(frontier, g)])
                nxt = nxt[~seen[nxt]]
                seen[nxt] = True
                frontier = nxt
            return bits_from_mask(seen)
        H = PermGroup(self.degree, [self.elements[i] for i in gens], enum_cap=self.enum_cap)
        return self.members(H)

    def product_bits(self, a: int, b: int) -> int:
        """Bitset of the element-wise product set ``{x * y : x in a, y in b}``."""
        ia = indices_of_bits(a, self.order)
        ib = indices_of_bits(b, self.order)
        if not ia.size or not ib.size:
            return 0
        if self.order <= TABLE_CAP:
            return bits_from_indices(np.unique(self.table[np.ix_(ia, ib)]).tolist())
        E = self.element_array
        out = set()
        for i in ia:
            out.update(self.locate(E[ib][:, E[i]], check=False).tolist())
        return bits_from_indices(out)

    def inverse_bits(self, a: int) -> int:
        return bits_from_indices(self.inverse_index[indices_of_bits(a, self.order)].tolist())

    def commuting_mask(self, x: Permutation) -> np.ndarray:
        """Boolean mask over the elements commuting with ``x``."""
        E = self.element_array
        xa = np.asarray(x.images)
        return (xa[E] == E[:, xa]).all(axis=1)

    def conjugation_index(self, g: Permutation) -> np.ndarray:
        """``out[i]`` is the index of ``elements[i] ** g``; requires ``g`` to normalize this group."""
        ga = np.asarray(g.images)
        gi = np.argsort(ga)
        idx = self.locate(ga[self.element_array[:, gi]])
        if (idx < 0).any():
            x = self.elements[int(np.flatnonzero(idx < 0)[0])]
            raise NotNormalError(g, x)
        return idx


def group_from_generators(degree: int, gens: Iterable[Permutation | Sequence[int]]) -> PermGroup:
    perms = []
    for k, g in enumerate(gens):
        if not isinstance(g, Permutation):
            try:
                g = Permutation(g)
            except PermutationError as err:
                raise PermutationError(f"generator {k}: {err}") from None
        perms.append(g)
    return PermGroup(degree, perms)


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup) -> tuple[Permutation, ...]:
    return G.elements


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def generate_subgroup(G: PermGroup, gens: Iterable[Permutation]) -> PermGroup:
    return PermGroup(G.degree, gens, enum_cap=G.enum_cap)


# ------------------------------------------------------- conjugacy classes

@dataclass(frozen=True)
class GClass:
    """One G-conjugacy class of elements of N."""

    representative: Permutation
    size: int
    primes: frozenset[int]
    members: int  # bitset over N's element index
    least_index: int

    @property
    def is_central(self) -> bool:
        return self.size == 1


def check_normal(G: PermGroup, N: PermGroup, what: str = "subgroup") -> None:
    """Raise unless ``N`` is a normal subgroup of ``G``; the error names a violating pair."""
    if N.degree != G.degree:
        raise DegreeMismatch(f"{what} has degree {N.degree}, group has degree {G.degree}")
    for x in N.generators:
        if not G.contains(x):
            raise NotMemberError(f"{what} generator {x} is not in the group")
    for g in G.generators:
        for x in N.generators:
            if not N.contains(x ** g):
                raise NotNormalError(g, x, what)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    try:
        check_normal(G, N)
    except (NotNormalError, NotMemberError):
        return False
    return True


def g_classes_in(G: PermGroup, N: PermGroup) -> list[GClass]:
    """Partition N into orbits under conjugation by G."""
    return list(_g_classes(G, N))


@lru_cache(maxsize=512)
def _g_classes(G: PermGroup, N: PermGroup) -> tuple[GClass, ...]:
    check_normal(G, N)
    n = N.order
    maps = [N.conjugation_index(g).tolist() for g in G.generators]
    label = [-1] * n
    orbits = []
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = len(orbits)
        orbit = [start]
        for i in orbit:
            for m in maps:
                j = m[i]
                if label[j] < 0:
                    label[j] = label[start]
                    orbit.append(j)
        orbits.append(orbit)
    classes = [
        GClass(
            representative=N.elements[min(o)],
            size=len(o),
            primes=primes_of(len(o)),
            members=bits_from_indices(o),
            least_index=min(o),
        )
        for o in orbits
    ]
    classes.sort(key=lambda c: (c.size, c.least_index))
    return tuple(classes)


def _check_member(G: PermGroup, x: Permutation) -> None:
    if x.degree != G.degree:
        raise DegreeMismatch(f"element of degree {x.degree}, group degree {G.degree}")
    if not G.contains(x):
        raise NotMemberError(f"{x} is not an element of the group")


def centralizer(G: PermGroup, x: Permutation) -> PermGroup:
    _check_member(G, x)
    if all(x.commutes_with(g) for g in G.generators):
        return G
    return G.subgroup(bits_from_mask(G.commuting_mask(x)))


def centralizer_order(G: PermGroup, x: Permutation) -> int:
    _check_member(G, x)
    return int(G.commuting_mask(x).sum())


def center(G: PermGroup) -> PermGroup:
    if G.is_abelian:
        return G
    mask = np.ones(G.order, dtype=bool)
    for g in G.generators:
        mask &= G.commuting_mask(g)
    return G.subgroup(bits_from_mask(mask))


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    """Smallest subgroup containing ``S`` and closed under conjugation by G."""
    gens = []
    for s in S:
        _check_member(G, s)
        if not s.is_identity():
            gens.append(s)
    H = PermGroup(G.degree, gens, enum_cap=G.enum_cap)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for h in list(H.generators):
                c = h ** g
                if not H.contains(c):
                    gens.append(c)
                    H = PermGroup(G.degree, gens, enum_cap=G.enum_cap)
                    changed = True
    return reduced_generators(H)


def reduced_generators(H: PermGroup) -> PermGroup:
    """The same group, regenerated from a greedily pruned generator list."""
    kept: list[Permutation] = []
    K = PermGroup(H.degree, (), enum_cap=H.enum_cap)
    for g in H.generators:
        if K.order == H.order:
            break
        if not K.contains(g):
            kept.append(g)
            K = PermGroup(H.degree, kept, enum_cap=H.enum_cap)
    return K if len(kept) < len(H.generators) else H


@dataclass(frozen=True)
class Quotient:
    """``G/K`` as the action of G on the right cosets of K."""

    group: PermGroup
    coset_of: np.ndarray  # coset id of each element of G
    reps: tuple[int, ...]  # element index of a representative for each coset
    parent: PermGroup

    def project(self, x: Permutation) -> Permutation:
        G = self.parent
        i = G.index_of(x)
        return self._project_index(i)

    def _project_index(self, i: int) -> Permutation:
        T = self.parent.table if self.parent.order <= TABLE_CAP else None
        if T is not None:
            return Permutation._trusted(tuple(int(self.coset_of[T[r, i]]) for r in self.reps))
        G = self.parent
        x = G.elements[i]
        rows = np.array([(G.elements[r] * x).images for r in self.reps])
        return Permutation._trusted(tuple(self.coset_of[G.locate(rows, check=False)].tolist()))

    def __call__(self, x: Permutation) -> Permutation:
        return self.project(x)


def quotient(G: PermGroup, K: PermGroup) -> Quotient:
    check_normal(G, K)
    n = G.order
    E = G.element_array
    KE = K.element_array
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for i in range(n):
        if coset_of[i] >= 0:
            continue
        coset_of[G.locate(E[i][KE], check=False)] = len(reps)  # K * e_i
        reps.append(i)
    q = Quotient(PermGroup(1, ()), coset_of, tuple(reps), G)
    gens = [q.project(g) for g in G.generators]
    Q = PermGroup(len(reps), [g for g in gens if not g.is_identity()], enum_cap=G.enum_cap)
    return Quotient(Q, coset_of, tuple(reps), G)


def class_size_multiset(classes: Sequence[GClass]) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in classes:
        out[c.size] = out.get(c.size, 0) + 1
    return dict(sorted(out.items()))


Projection = Callable[[Permutation], Permutation]
