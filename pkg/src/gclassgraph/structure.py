"""Subgroup structure used by the theorem checks.

Everything here works on enumerated groups and represents subsets as bitsets
over the group's element index (see :mod:`gclassgraph.perm`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .arith import is_pi_number, pi_part, primes_of
from .perm import (
    PermGroup,
    Permutation,
    bits_from_indices,
    bits_from_mask,
    center,
    g_classes_in,
    indices_of_bits,
    is_normal,
    mask_from_bits,
    normal_closure,
    quotient,
    reduced_generators,
)

__all__ = [
    "primes_of",
    "primary_decomposition",
    "sylow",
    "normalizer",
    "normal_subgroups",
    "o_pi",
    "is_direct_factorization",
    "frobenius_kernel",
    "find_abelian_complement",
    "pa_decompositions",
    "classify_structure",
    "StructureReport",
    "derived_subgroup",
    "is_solvable",
]

COMPLEMENT_BUDGET = 20000


def primary_decomposition(x: Permutation, G: Optional[PermGroup] = None) -> list[tuple[int, Permutation]]:
    """Split ``x`` into commuting prime-power-order powers of itself, one per prime of its order."""
    if G is not None and not G.contains(x):
        raise ValueError(f"{x} is not in the group")
    n = x.order()
    parts = []
    for p in sorted(primes_of(n)):
        q = pi_part(n, (p,))
        m = n // q
        e = m * pow(m, -1, q) if q > 1 else 0
        parts.append((p, x ** e))
    return parts


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """All g in G with ``H ** g == H``."""
    hbits = G.members(H)
    hmask = mask_from_bits(hbits, G.order)
    E = G.element_array
    Einv = np.argsort(E, axis=1)
    keep = np.ones(G.order, dtype=bool)
    for h in H.generators:
        # row i is h ** e_i = e_i^-1 h e_i
        conj = np.take_along_axis(E, np.asarray(h.images)[Einv], axis=1)
        keep &= hmask[G.locate(conj, check=False)]
    if keep.all():
        return G
    return G.subgroup(bits_from_mask(keep))


def sylow(G: PermGroup, p: int) -> PermGroup:
    """A Sylow p-subgroup, grown one p-element of the normalizer at a time."""
    target = pi_part(G.order, (p,))
    P = PermGroup(G.degree, (), enum_cap=G.enum_cap)
    orders = G.element_orders
    p_elt = np.array([is_pi_number(int(o), (p,)) for o in orders])
    while P.order < target:
        NP = normalizer(G, P)
        cand = mask_from_bits(G.members(NP), G.order) & p_elt & ~mask_from_bits(G.members(P), G.order)
        i = int(np.flatnonzero(cand)[0])
        P = PermGroup(G.degree, P.generators + (G.elements[i],), enum_cap=G.enum_cap)
    return P


def _reduced(G: PermGroup, gens: list[Permutation]) -> PermGroup:
    return reduced_generators(PermGroup(G.degree, gens, enum_cap=G.enum_cap))


@lru_cache(maxsize=256)
def _normal_lattice(N: PermGroup) -> tuple[tuple[int, tuple[Permutation, ...]], ...]:
    classes = g_classes_in(N, N)
    found: dict[int, tuple[Permutation, ...]] = {}
    for c in classes:
        H = normal_closure(N, [c.representative])
        bits = N.members(H)
        found.setdefault(bits, H.generators)
    work = list(found)
    while work:
        a = work.pop()
        for b in list(found):
            gens = found[a] + found[b]
            j = N.closure([N.index_of(g) for g in gens])
            if j not in found:
                found[j] = gens
                work.append(j)
    items = sorted(found.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
    return tuple(items)


def normal_subgroups(N: PermGroup) -> list[PermGroup]:
    """All normal subgroups, as the join-closure of normal closures of class representatives."""
    return [_reduced(N, list(gens)) for _, gens in _normal_lattice(N)]


def normal_subgroup_bits(N: PermGroup) -> list[int]:
    return [bits for bits, _ in _normal_lattice(N)]


@lru_cache(maxsize=1024)
def _o_pi(N: PermGroup, pi: frozenset[int]) -> PermGroup:
    gens = []
    for c in g_classes_in(N, N):
        if c.representative.is_identity():
            continue
        if not is_pi_number(c.representative.order(), pi):
            continue
        H = normal_closure(N, [c.representative])
        if is_pi_number(H.order, pi):
            gens.append(c.representative)
    return normal_closure(N, gens)


def o_pi(N: PermGroup, pi: Iterable[int]) -> PermGroup:
    """Largest normal pi-subgroup."""
    return _o_pi(N, frozenset(pi))


def pi_complement_set(N: PermGroup, pi: Iterable[int]) -> frozenset[int]:
    return primes_of(N.order) - frozenset(pi)


def is_direct_factorization(N: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    """True iff A, B are normal in N, meet trivially and ``|A||B| = |N|``."""
    if A.order * B.order != N.order:
        return False
    if not (is_normal(N, A) and is_normal(N, B)):
        return False
    return (N.members(A) & N.members(B)).bit_count() == 1


def centralizer_bits(N: PermGroup, x: Permutation) -> int:
    return bits_from_mask(N.commuting_mask(x))


def frobenius_kernel(N: PermGroup) -> Optional[PermGroup]:
    """The Frobenius kernel of N, if N is a Frobenius group.

    A proper nontrivial normal K is accepted when every non-identity k in K
    has ``C_N(k) <= K``; it suffices to test N-class representatives in K.
    """
    lattice = _normal_lattice(N)
    if len(lattice) < 3:
        return None
    classes = g_classes_in(N, N)
    for bits, gens in reversed(lattice[1:-1]):
        reps = [c.representative for c in classes if c.members & bits and not c.representative.is_identity()]
        if all(centralizer_bits(N, r) & ~bits == 0 for r in reps):
            return _reduced(N, list(gens))
    return None


def frobenius_summary(N: PermGroup) -> Optional[dict]:
    """Kernel and complement data when N is Frobenius; the complement is isomorphic to N/K."""
    K = frobenius_kernel(N)
    if K is None:
        return None
    return {
        "kernel_order": K.order,
        "kernel_abelian": K.is_abelian,
        "complement_order": N.order // K.order,
        "complement_abelian": quotient_is_abelian(N, K),
    }


def find_abelian_complement(
    N: PermGroup, K: PermGroup, Z: PermGroup, budget: int = COMPLEMENT_BUDGET, depth: int = 3
) -> tuple[Optional[PermGroup], bool]:
    """Search for an abelian H with Z <= H, H meet K = Z and HK = N.

    Candidates are generated by Z plus at most ``depth`` further elements,
    tried in element order. Returns ``(H, False)`` on success and
    ``(None, exhausted)`` otherwise, where ``exhausted`` tells whether the
    budget ran out before the search space did.
    """
    kbits = N.members(K)
    zbits = N.members(Z)
    target = N.order * Z.order // K.order
    if (N.order * Z.order) % K.order:
        return None, False
    outside = [int(i) for i in indices_of_bits(((1 << N.order) - 1) & ~kbits, N.order)]
    seen: set[int] = set()
    spent = 0
    E = N.elements

    def grow(hbits: int, extra: list[int], level: int):
        nonlocal spent
        if hbits.bit_count() == target:
            return hbits
        if level == depth:
            return None
        for i in outside:
            if hbits >> i & 1:
                continue
            x = E[i]
            if not all(x.commutes_with(E[j]) for j in extra):
                continue
            spent += 1
            if spent > budget:
                raise _BudgetExhausted
            nb = N.closure(extra + [i], start=zbits)
            if nb in seen or nb & kbits != zbits or nb.bit_count() > target or target % nb.bit_count():
                continue
            seen.add(nb)
            got = grow(nb, extra + [i], level + 1)
            if got is not None:
                return got
        return None

    try:
        got = grow(zbits, [], 0)
    except _BudgetExhausted:
        return None, True
    if got is None:
        return None, False
    return N.subgroup(got), False


class _BudgetExhausted(Exception):
    pass


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [a.inverse() * b.inverse() * a * b for a in G.generators for b in G.generators]
    return normal_closure(G, comms)


def is_solvable(G: PermGroup) -> bool:
    H = G
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def quotient_is_abelian(N: PermGroup, K: PermGroup) -> bool:
    return all(K.contains(a.inverse() * b.inverse() * a * b) for a in N.generators for b in N.generators)


@dataclass
class StructureReport:
    """Which branch of the two-way structural dichotomy a group falls into."""

    kind: str  # quasi_frobenius_abelian | p_group_times_central | neither | inconclusive
    p: Optional[int] = None
    P_part: Optional[PermGroup] = None
    A_part: Optional[PermGroup] = None
    kernel: Optional[PermGroup] = None
    complement: Optional[PermGroup] = None
    center_order: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.p is not None:
            d["p"] = self.p
        for name in ("P_part", "A_part", "kernel", "complement"):
            H = getattr(self, name)
            if H is not None:
                d[name + "_order"] = H.order
                d[name + "_abelian"] = H.is_abelian
        if self.center_order is not None:
            d["center_order"] = self.center_order
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def pa_decompositions(N: PermGroup, prefer: Iterable[int] = ()) -> list[tuple[Optional[int], PermGroup, PermGroup]]:
    """Every ``(p, P, A)`` with P a normal Sylow p-subgroup and A the p'-part of Z(N), ``N = P x A``.

    Primes in ``prefer`` come first, then the rest, each group ascending.
    The trivial group yields ``(None, 1, N)``.
    """
    if N.order == 1:
        return [(None, N, N)]
    Z = center(N)
    primes = sorted(primes_of(N.order))
    pref = sorted(set(prefer) & set(primes))
    out = []
    for p in pref + [q for q in primes if q not in pref]:
        rest = primes_of(N.order) - {p}
        if pi_part(Z.order, rest) != pi_part(N.order, rest):
            continue
        P = sylow(N, p)
        if not is_normal(N, P):
            continue
        zmask = mask_from_bits(N.members(Z), N.order)
        pprime = np.array([is_pi_number(int(o), rest) for o in N.element_orders])
        A = N.subgroup(bits_from_mask(zmask & pprime))
        out.append((p, P, A))
    return out


def preimage(N: PermGroup, q, Kbar: PermGroup) -> PermGroup:
    keep = [i for i, e in enumerate(N.elements) if Kbar.contains(q.project(e))]
    return N.subgroup(bits_from_indices(keep))


@lru_cache(maxsize=512)
def quasi_frobenius_report(N: PermGroup) -> StructureReport:
    """Test whether N/Z(N) is Frobenius with abelian kernel and complement preimages."""
    Z = center(N)
    notes = []
    if Z.order == N.order:
        return StructureReport("neither", center_order=Z.order, notes=["abelian: N/Z(N) is trivial"])
    if Z.order == 1:
        Q, project = N, None
    else:
        q = quotient(N, Z)
        Q, project = q.group, q
    Kbar = frobenius_kernel(Q)
    if Kbar is None:
        return StructureReport("neither", center_order=Z.order, notes=["N/Z(N) is not a Frobenius group"])
    K = Kbar if project is None else preimage(N, project, Kbar)
    image_conv = Kbar.is_abelian and quotient_is_abelian(Q, Kbar)
    if not K.is_abelian:
        notes.append("kernel preimage is non-abelian")
        notes.append(f"image convention {'holds' if image_conv else 'fails'}")
        return StructureReport("neither", kernel=K, center_order=Z.order, notes=notes)
    if not quotient_is_abelian(N, K):
        notes.append("N/K is non-abelian, so no complement preimage can be abelian")
        notes.append(f"image convention {'holds' if image_conv else 'fails'}")
        return StructureReport("neither", kernel=K, center_order=Z.order, notes=notes)
    H, exhausted = find_abelian_complement(N, K, Z)
    if H is None:
        if exhausted:
            notes.append("complement search budget exhausted")
        else:
            notes.append("no complement preimage found within 3 generators over Z(N)")
        return StructureReport("inconclusive", kernel=K, center_order=Z.order, notes=notes)
    notes.append("convention: preimages of kernel and complement are abelian")
    return StructureReport("quasi_frobenius_abelian", kernel=K, complement=H, center_order=Z.order, notes=notes)


def classify_structure(N: PermGroup, prefer: Iterable[int] = ()) -> StructureReport:
    """Place N in the P x A branch (tried first) or the quasi-Frobenius branch.

    ``prefer`` reorders the primes tried for the P x A branch; by default
    the smallest prime that works is reported.
    """
    decomps = pa_decompositions(N, prefer)
    if decomps:
        p, P, A = decomps[0]
        return StructureReport(
            "p_group_times_central", p=p, P_part=P, A_part=A, center_order=center(N).order
        )
    return quasi_frobenius_report(N)
