import itertools

import numpy as np
import pytest

from gclassgraph.constructions import cyclic, symmetric
from gclassgraph.perm import (
    DegreeMismatch,
    NotMemberError,
    NotNormalError,
    PermGroup,
    Permutation,
    PermutationError,
    TooLargeError,
    center,
    centralizer,
    centralizer_order,
    check_normal,
    class_size_multiset,
    g_classes_in,
    generate_subgroup,
    indices_of_bits,
    normal_closure,
    quotient,
    trivial_group,
)

import oracles

c = Permutation.from_cycles


def test_permutation_rejects_non_bijection():
    with pytest.raises(PermutationError):
        Permutation([0, 0, 1])
    with pytest.raises(PermutationError):
        Permutation([])


def test_compose_order_and_inverse():
    a, b = c(3, (0, 1)), c(3, (1, 2))
    ab = a * b
    # a first: 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
    assert ab.images == (2, 0, 1)
    assert ab.images == oracles.mul(a.images, b.images)
    ident = Permutation.identity(3)
    assert ident * ab == ab and ab * ab.inverse() == ident


def test_s3_multiplication_matches_brute_force_table():
    elems = sorted(itertools.permutations(range(3)))
    for p, q in itertools.product(elems, repeat=2):
        assert (Permutation(p) * Permutation(q)).images == oracles.mul(p, q)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        c(3, (0, 1)) * c(4, (0, 1))


def test_conjugation_and_powers():
    x, g = c(4, (0, 1, 2)), c(4, (2, 3))
    assert (x ** g).images == oracles.conj(x.images, g.images)
    assert x ** 3 == Permutation.identity(4)
    assert x ** -1 == x.inverse()
    assert c(6, (0, 1), (2, 3, 4)).order() == 6


def test_cycle_string():
    assert str(c(5, (3, 1, 4))) == "(1 4 3)"
    assert str(Permutation.identity(2)) == "()"


def test_group_orders():
    assert PermGroup(3, [c(3, (0, 1)), c(3, (0, 1, 2))]).order == 6
    V4 = PermGroup(4, [c(4, (0, 1), (2, 3)), c(4, (0, 2), (1, 3))])
    assert V4.order == 4 and V4.is_abelian
    assert trivial_group(5).order == 1


def test_agl8_order_and_word_membership(agl8):
    G = agl8.G
    assert G.order == 168
    brute = oracles.closure([g.images for g in G.generators], 8)
    assert len(brute) == 168
    assert {e.images for e in G.elements} == brute
    rng = np.random.default_rng(7)
    for _ in range(50):
        word = rng.integers(0, len(G.generators), size=12)
        w = Permutation.identity(8)
        for k in word:
            w = w * G.generators[k]
        assert w in G


def test_membership():
    A3 = PermGroup(3, [c(3, (0, 1, 2))])
    assert Permutation.identity(3) in A3
    assert c(3, (0, 1)) not in A3
    with pytest.raises(DegreeMismatch):
        A3.contains(c(4, (0, 1)))


def test_elements_sorted_and_indexed():
    S3 = symmetric(3)
    elems = S3.elements
    assert len(elems) == 6 == len(set(elems))
    assert list(elems) == sorted(elems)
    for k, e in enumerate(elems):
        assert S3.index_of(e) == k
    assert trivial_group(3).elements == (Permutation.identity(3),)


def test_enumeration_cap():
    G = PermGroup(8, [c(8, range(8)), c(8, (0, 1))], enum_cap=1000)
    assert G.order == 40320
    with pytest.raises(TooLargeError):
        G.elements


def test_table_matches_composition():
    G = symmetric(4)
    E = G.elements
    for i in range(0, 24, 5):
        for j in range(24):
            assert E[G.table[i, j]] == E[i] * E[j]


def test_s3_classes():
    S3 = symmetric(3)
    classes = g_classes_in(S3, S3)
    assert class_size_multiset(classes) == {1: 1, 2: 1, 3: 1}
    assert classes[1].representative == c(3, (0, 1, 2))  # images (1, 2, 0) sort first
    assert [cl.primes for cl in classes] == [frozenset(), frozenset({2}), frozenset({3})]


def test_abelian_group_classes_are_singletons():
    G = cyclic(12)
    assert {cl.size for cl in g_classes_in(G, G)} == {1}


def test_classes_reject_non_normal():
    S3 = symmetric(3)
    with pytest.raises(NotNormalError) as err:
        g_classes_in(S3, PermGroup(3, [c(3, (0, 1))]))
    x, g = err.value.element, err.value.conjugator
    assert x ** g not in PermGroup(3, [c(3, (0, 1))])


def test_check_normal_non_member():
    with pytest.raises(NotMemberError):
        check_normal(PermGroup(3, [c(3, (0, 1, 2))]), PermGroup(3, [c(3, (0, 1))]))


def test_centralizers(ex1):
    S3 = symmetric(3)
    assert centralizer(S3, Permutation.identity(3)).order == 6
    assert centralizer_order(S3, c(3, (0, 1, 2))) == 3
    y = next(e for e in ex1.N.generators if e.order() == 5)
    assert centralizer_order(ex1.G, y) == 10


def test_centers(q8):
    assert center(cyclic(6)).order == 6
    assert center(symmetric(3)).order == 1
    assert center(q8).order == 2


def test_generate_subgroup():
    S3 = symmetric(3)
    assert generate_subgroup(S3, []).order == 1
    assert generate_subgroup(S3, [c(3, (0, 1, 2))]).order == 3
    assert generate_subgroup(S3, [c(3, (1, 2))]).order == 2
    assert normal_closure(S3, [c(3, (1, 2))]).order == 6
    assert normal_closure(S3, [c(3, (0, 1, 2))]).order == 3


def test_quotients(q8):
    S3 = symmetric(3)
    assert quotient(S3, S3).group.order == 1
    assert quotient(S3, S3).group.degree == 1
    assert quotient(S3, PermGroup(3, [c(3, (0, 1, 2))])).group.order == 2
    Q = quotient(q8, center(q8)).group
    assert Q.order == 4
    assert all(e.order() <= 2 for e in Q.elements)


def test_quotient_projection_is_homomorphism(q8):
    q = quotient(q8, center(q8))
    E = q8.elements
    for a in E:
        for b in E:
            assert q(a * b) == q(a) * q(b)


def test_class_bitsets_partition(ex1):
    classes = g_classes_in(ex1.G, ex1.N)
    union = 0
    for cl in classes:
        assert union & cl.members == 0
        union |= cl.members
        assert len(indices_of_bits(cl.members, ex1.N.order)) == cl.size
    assert union == (1 << ex1.N.order) - 1
