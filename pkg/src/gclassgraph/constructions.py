"""Concrete groups: the catalog families, affine and semilinear groups, and the example pairs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .perm import GroupError, PermGroup, Permutation, check_normal
from .structure import normalizer, sylow

Matrix = tuple[tuple[int, ...], ...]

CATALOG = {
    "cyclic": "cyclic group of order n on n points",
    "dihedral": "dihedral group of order n (n even) on n/2 points",
    "symmetric": "symmetric group S_n",
    "alternating": "alternating group A_n",
    "elementary_abelian": "(Z_p)^k as k disjoint p-cycles",
    "quaternion8": "quaternion group Q8, regular action",
}


@dataclass
class GroupPair:
    G: PermGroup
    N: PermGroup
    label: str
    named: dict[str, PermGroup] = field(default_factory=dict)

    def __post_init__(self):
        check_normal(self.G, self.N)


# ---------------------------------------------------------------- catalog

def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    if n == 1:
        return PermGroup(1)
    return PermGroup(n, [Permutation.from_cycles(n, range(n))])


def dihedral(n: int) -> PermGroup:
    if n < 2 or n % 2:
        raise GroupError(f"dihedral group order must be even and >= 2, got {n}")
    m = n // 2
    if m == 1:
        return cyclic(2)
    if m == 2:
        return PermGroup(4, [Permutation.from_cycles(4, (0, 1)), Permutation.from_cycles(4, (2, 3))])
    rot = Permutation.from_cycles(m, range(m))
    ref = Permutation([(-i) % m for i in range(m)])
    return PermGroup(m, [rot, ref])


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n == 1:
        return PermGroup(1)
    if n == 2:
        return PermGroup(2, [Permutation.from_cycles(2, (0, 1))])
    return PermGroup(n, [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, range(n))])


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise GroupError("alternating group needs n >= 1")
    if n < 3:
        return PermGroup(n)
    return PermGroup(n, [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)])


def elementary_abelian(p: int, k: int) -> PermGroup:
    if p < 2 or k < 1 or any(p % d == 0 for d in range(2, p)):
        raise GroupError(f"elementary_abelian needs a prime p and k >= 1, got p={p}, k={k}")
    deg = p * k
    return PermGroup(deg, [Permutation.from_cycles(deg, range(i * p, (i + 1) * p)) for i in range(k)])


def _hamilton(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    a1, b1, c1, d1 = a
    a2, b2, c2, d2 = b
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quaternion8() -> PermGroup:
    """Q8 = {+-1, +-i, +-j, +-k} acting on itself by right multiplication."""
    units = []
    for axis in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))

    def right(g: tuple[int, ...]) -> Permutation:
        return Permutation([units.index(_hamilton(x, g)) for x in units])

    return PermGroup(8, [right(units[2]), right(units[4])])


def catalog_build(name: str, *params: int) -> PermGroup:
    builders: dict[str, Callable[..., PermGroup]] = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "symmetric": symmetric,
        "alternating": alternating,
        "elementary_abelian": elementary_abelian,
        "quaternion8": quaternion8,
    }
    if name not in builders:
        raise GroupError(f"unknown catalog group {name!r}; known: {', '.join(sorted(builders))}")
    try:
        return builders[name](*params)
    except TypeError as err:
        raise GroupError(f"bad parameters for {name}: {params}") from err


# --------------------------------------------------------- matrix groups

def _det_mod_p(M: Matrix, p: int) -> int:
    A = [list(r) for r in M]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            f = A[r][c] * inv % p
            for k in range(c, n):
                A[r][k] = (A[r][k] - f * A[c][k]) % p
    return det % p


@dataclass(frozen=True)
class MatrixGroupSpec:
    """Generators of a subgroup of GL(k, p), acting on column vectors."""

    p: int
    k: int
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        for M in self.generators:
            if len(M) != self.k or any(len(r) != self.k for r in M):
                raise GroupError(f"matrix {M} is not {self.k}x{self.k}")
            if _det_mod_p(M, self.p) == 0:
                raise GroupError(f"matrix {M} is singular mod {self.p}")


def _vectors(p: int, k: int) -> list[tuple[int, ...]]:
    # point index = sum v[i] * p**i
    return [tuple((n // p**i) % p for i in range(k)) for n in range(p**k)]


def _point(v: Sequence[int], p: int) -> int:
    return sum((x % p) * p**i for i, x in enumerate(v))


def linear_permutation(M: Matrix, p: int) -> Permutation:
    k = len(M)
    return Permutation._trusted(tuple(
        _point([sum(M[r][c] * v[c] for c in range(k)) for r in range(k)], p) for v in _vectors(p, k)
    ))


def translation_permutation(b: Sequence[int], p: int) -> Permutation:
    k = len(b)
    return Permutation._trusted(tuple(_point([v[i] + b[i] for i in range(k)], p) for v in _vectors(p, k)))


def permutation_matrix(g: Permutation, p: int, k: int) -> Matrix:
    """Recover the matrix of a linear permutation from the images of the unit vectors."""
    cols = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        img = g.images[_point(e, p)]
        cols.append([(img // p**r) % p for r in range(k)])
    return tuple(tuple(cols[c][r] for c in range(k)) for r in range(k))


def translations(p: int, k: int) -> list[Permutation]:
    out = []
    for i in range(k):
        b = [0] * k
        b[i] = 1
        out.append(translation_permutation(b, p))
    return out


def affine_semidirect(p: int, k: int, H: MatrixGroupSpec | Sequence[Matrix]) -> GroupPair:
    """``V x| H`` acting on the p^k affine points by ``v -> M v + b``; N is the translation subgroup V."""
    if not isinstance(H, MatrixGroupSpec):
        H = MatrixGroupSpec(p, k, tuple(tuple(tuple(r) for r in M) for M in H))
    if H.p != p or H.k != k:
        raise GroupError("matrix spec does not match p, k")
    deg = p**k
    T = translations(p, k)
    lin = [linear_permutation(M, p) for M in H.generators]
    G = PermGroup(deg, T + [g for g in lin if not g.is_identity()])
    V = PermGroup(deg, T)
    return GroupPair(G, V, f"AGL-type {p}^{k}", {"V": V, "G": G})


# ----------------------------------------------------- direct products

def shift(g: Permutation, offset: int, degree: int) -> Permutation:
    img = list(range(degree))
    for i, j in enumerate(g.images):
        img[offset + i] = offset + j
    return Permutation._trusted(tuple(img))


def direct_product(G1: PermGroup, G2: PermGroup):
    """``G1 x G2`` on the disjoint union of the point sets, with the two embeddings."""
    deg = G1.degree + G2.degree

    def embed1(g: Permutation) -> Permutation:
        return shift(g, 0, deg)

    def embed2(g: Permutation) -> Permutation:
        return shift(g, G1.degree, deg)

    G = PermGroup(deg, [embed1(g) for g in G1.generators] + [embed2(g) for g in G2.generators])
    return G, embed1, embed2


# ------------------------------------------------------ semilinear F_8

F8_MODULUS = 0b1011  # x^3 + x + 1


def f8_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= F8_MODULUS
    return out


def agl_semilinear(q: int = 8) -> GroupPair:
    """The semilinear affine maps ``x -> a * x^(2^i) + b`` of F_8, with A the translations."""
    if q != 8:
        raise GroupError(f"only q = 8 is supported, got {q}")
    mult = Permutation([f8_mul(2, x) for x in range(8)])
    frob = Permutation([f8_mul(x, x) for x in range(8)])
    trans = [Permutation([x ^ b for x in range(8)]) for b in (1, 2, 4)]
    G = PermGroup(8, trans + [mult, frob])
    A = PermGroup(8, trans)
    return GroupPair(G, A, "agl1:8", {"A": A, "G": G})


# ------------------------------------------------ SL(2,5) acting on F_11^2

# First success of ``search_sl25_in_sl211``; rows of 2x2 matrices over F_11.
SL25_GENERATORS: tuple[Matrix, Matrix] = (((0, 1), (10, 0)), ((0, 2), (5, 1)))


def _mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    return tuple(
        tuple(sum(A[r][t] * B[t][c] for t in range(len(B))) % p for c in range(len(B[0]))) for r in range(len(A))
    )


def _matrix_closure(gens: Sequence[Matrix], p: int, limit: int) -> Optional[set]:
    ident = tuple(tuple(int(r == c) for c in range(len(gens[0]))) for r in range(len(gens[0])))
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = _mat_mul(x, g, p)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    return None
                queue.append(y)
    return seen


def sl2_elements(p: int) -> list[Matrix]:
    return [
        ((a, b), (c, d))
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p == 1
    ]


def search_sl25_in_sl211() -> tuple[Matrix, Matrix]:
    """First pair (A of order 4, B of trace 1) in SL(2,11), in lexicographic order,
    generating a group of order 120 with no non-identity element fixing a nonzero vector."""
    p = 11
    sl = sl2_elements(p)
    fours = [M for M in sl if (M[0][0] + M[1][1]) % p == 0]
    sixes = [M for M in sl if (M[0][0] + M[1][1]) % p == 1]
    for A in fours:
        for B in sixes:
            H = _matrix_closure([A, B], p, 120)
            if H is None or len(H) != 120:
                continue
            # M fixes a nonzero vector iff det(M - I) = 2 - trace(M) = 0
            if all((M[0][0] + M[1][1]) % p != 2 for M in H if M != ((1, 0), (0, 1))):
                return A, B
    raise GroupError("no fixed-point-free SL(2,5) found in SL(2,11)")


def example1_pair(generators: Optional[tuple[Matrix, Matrix]] = None) -> GroupPair:
    """K = F_11^2 extended by the normalizer of a Sylow 5-subgroup of a Frobenius SL(2,5)."""
    p = 11
    A, B = generators or SL25_GENERATORS
    H = PermGroup(p * p, [linear_permutation(A, p), linear_permutation(B, p)])
    if H.order != 120:
        raise GroupError(f"SL(2,5) generators give order {H.order}")
    P = sylow(H, 5)
    NP = normalizer(H, P)
    T = translations(p, 2)
    G = PermGroup(p * p, T + list(NP.generators))
    N = PermGroup(p * p, T + list(P.generators))
    K = PermGroup(p * p, T)
    return GroupPair(G, N, "ex1", {"N": N, "K": K, "G": G, "H": H, "P": P, "NP": NP})


# ------------------------------------------------ diameter-three composite

H54_MATRICES: tuple[Matrix, Matrix] = (((1, 1), (0, 1)), ((2, 0), (0, 1)))


def affine54() -> GroupPair:
    pair = affine_semidirect(3, 2, H54_MATRICES)
    pair.label = "aff54"
    return pair


def example2_composite() -> GroupPair:
    """``(F_3^2 x| H) x AGammaL(1,8)`` with N the product of the two translation subgroups."""
    left = affine54()
    right = agl_semilinear(8)
    G, e1, e2 = direct_product(left.G, right.G)
    N = PermGroup(G.degree, [e1(g) for g in left.N.generators] + [e2(g) for g in right.N.generators])
    P = PermGroup(G.degree, [e1(g) for g in left.N.generators])
    A = PermGroup(G.degree, [e2(g) for g in right.N.generators])
    return GroupPair(G, N, "ex2", {"N": N, "P": P, "A": A, "G": G})


# ----------------------------------------------------------- corpus

def _affine(p: int, k: int, mats, label: str) -> tuple[str, PermGroup]:
    return label, affine_semidirect(p, k, mats).G


def builtin_groups() -> list[tuple[str, PermGroup]]:
    """Labelled groups that make up the default verification corpus."""
    out: list[tuple[str, PermGroup]] = []
    for n in (1, 2, 3, 4, 6, 8, 12):
        out.append((f"cyc:{n}", cyclic(n)))
    for n in (6, 8, 10, 12, 14, 16, 18, 20, 24):
        out.append((f"dih:{n}", dihedral(n)))
    for n in (2, 3, 4, 5):
        out.append((f"sym:{n}", symmetric(n)))
    for n in (4, 5):
        out.append((f"alt:{n}", alternating(n)))
    for p, k in ((2, 2), (2, 3), (3, 2), (5, 2)):
        out.append((f"ea:{p},{k}", elementary_abelian(p, k)))
    out.append(("q8", quaternion8()))
    out.append(("agl1:8", agl_semilinear(8).G))
    out.append(("aff54", affine54().G))
    q8_over_3 = (((0, 2), (1, 0)), ((1, 1), (1, 2)))  # Q8 in SL(2,3)
    q8_over_5 = (((0, 4), (1, 0)), ((2, 0), (0, 3)))
    out += [
        _affine(5, 1, [((2,),)], "AGL(1,5)"),
        _affine(7, 1, [((2,),)], "F7:C3"),
        _affine(7, 1, [((3,),)], "AGL(1,7)"),
        _affine(11, 1, [((3,),)], "F11:C5"),
        _affine(3, 2, q8_over_3, "F9:Q8"),
        _affine(3, 2, [((0, 2), (1, 0)), ((1, 1), (0, 1))], "F9:SL(2,3)"),
        _affine(3, 2, [((0, 2), (1, 0))], "F9:C4"),
        _affine(5, 2, [((2, 0), (0, 3))], "F25:C4"),
    ]
    out.append(_affine(5, 2, q8_over_5, "F25:Q8"))
    out.append(_affine(5, 2, [((0, 4), (1, 4))], "F25:C3"))
    ex1 = example1_pair()
    out.append(("ex1:N", ex1.N))
    out.append(("ex1:SL(2,5)", ex1.named["H"]))
    s3 = symmetric(3)
    for label, (A, B) in {
        "sym:3 x sym:3": (s3, s3),
        "sym:3 x cyc:2": (s3, cyclic(2)),
        "sym:3 x cyc:3": (s3, cyclic(3)),
        "q8 x cyc:3": (quaternion8(), cyclic(3)),
        "alt:4 x cyc:2": (alternating(4), cyclic(2)),
        "dih:8 x cyc:3": (dihedral(8), cyclic(3)),
        "sym:4 x cyc:2": (symmetric(4), cyclic(2)),
    }.items():
        out.append((label, direct_product(A, B)[0]))
    return out


def builtin_pairs() -> list[GroupPair]:
    """The example pairs that are always part of a verification run."""
    return [example1_pair(), example2_composite(), agl_semilinear(8), affine54()]
