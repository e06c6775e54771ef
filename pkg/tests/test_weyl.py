import random
from fractions import Fraction as Q

import pytest

from weylstrat.rootsys import vec_neg, vec_scale
from weylstrat.weyl import expected_group_order
from conftest import system


@pytest.mark.parametrize(
    "family,rank,order",
    [("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("A", 4, 120),
     ("B", 2, 8), ("B", 3, 48), ("C", 2, 8), ("C", 3, 48), ("D", 4, 192)],
)
def test_group_orders(family, rank, order):
    rs, wg = system(family, rank)
    assert len(wg) == order == expected_group_order(rs)


def test_sign_is_homomorphism():
    rng = random.Random(3)
    for family, rank in [("A", 2), ("B", 2), ("D", 4)]:
        rs, wg = system(family, rank)
        for g in wg.generators:
            assert g.sign == -1
        for i in range(len(rs.roots)):
            assert wg.reflection(i).sign == -1
        for _ in range(50):
            a = wg.elements[rng.randrange(len(wg))]
            b = wg.elements[rng.randrange(len(wg))]
            assert wg.compose(a, b).sign == a.sign * b.sign


def test_reflection_basics():
    rs, wg = system("C", 2)
    alpha, beta = rs.simple_roots
    assert rs.reflect(alpha, alpha) == vec_neg(alpha)
    # sigma_alpha(beta) = beta + 2 alpha = the long root at the top of the string
    expected = tuple(b + 2 * a for a, b in zip(alpha, beta))
    assert rs.reflect(alpha, beta) == expected
    # fixes the orthogonal hyperplane
    orth = (Q(1), Q(1))
    assert rs.pairing(alpha, orth) == 0
    assert rs.reflect(alpha, orth) == orth
    with pytest.raises(ValueError):
        rs.reflect((Q(3), Q(0)), alpha)


@pytest.mark.parametrize("family,rank", [("A", 2), ("C", 2)])
def test_conjugation_relation(family, rank):
    # sigma_{w(a)} = w sigma_a w^-1 as root permutations, for all w and simple a
    rs, wg = system(family, rank)
    for w in wg.elements:
        winv = wg.inverse(w)
        for i in rs.simple_indices:
            lhs = wg.reflection(w.perm[i])
            rhs = wg.compose(w, wg.compose(wg.reflection(i), winv))
            assert lhs is rhs


def test_orbits():
    rs, wg = system("A", 1)
    assert wg.orbit_labels((0,)) == [(0,)]
    assert wg.orbit_labels((2,)) == [(-2,), (2,)]
    rs2, wg2 = system("A", 2)
    assert len(wg2.orbit(rs2.delta)) == 6  # delta is regular


def test_orbit_sizes_divide_group_order():
    rng = random.Random(11)
    for family, rank in [("A", 2), ("B", 2), ("B", 3)]:
        rs, wg = system(family, rank)
        for _ in range(50):
            labels = tuple(rng.randint(-4, 4) for _ in range(rank))
            orb = wg.orbit_labels(labels)
            assert len(wg) % len(orb) == 0
            dominants = [l for l in orb if all(x >= 0 for x in l)]
            assert len(dominants) == 1


def test_dominant_representative():
    rs, wg = system("A", 1)
    d, w = wg.dominant_representative(rs.from_labels([-2]))
    assert rs.to_labels(d) == (2,) and w.sign == -1
    d, w = wg.dominant_representative(rs.from_labels([3]))
    assert rs.to_labels(d) == (3,) and w is wg.identity

    rs2, wg2 = system("A", 2)
    d, w = wg2.dominant_representative(vec_scale(-1, rs2.delta))
    assert d == rs2.delta
    assert w.apply_labels((-1, -1)) == (1, 1)
    assert w.sign == -1  # longest element of A2 has odd length


def test_dominant_data_regularity():
    _, wg = system("B", 2)
    dom, sign, regular = wg.dominant_data((-1, 0))
    assert not regular
    dom, sign, regular = wg.dominant_data((-1, -2))
    assert regular and all(x > 0 for x in dom)


def test_setwise_stabilizer():
    rs, wg = system("A", 2)
    assert len(wg.setwise_stabilizer([])) == len(wg)
    assert len(wg.setwise_stabilizer(range(len(rs.roots)))) == len(wg)
    i = rs.simple_indices[0]
    stab = wg.setwise_stabilizer({i, rs.negative_index(i)})
    assert len(stab) == 2


def test_coset_representatives():
    rs, wg = system("A", 2)
    assert wg.coset_representatives(wg.elements) == [wg.identity]
    assert len(wg.coset_representatives([wg.identity])) == len(wg)
    i = rs.simple_indices[0]
    stab = wg.setwise_stabilizer({i, rs.negative_index(i)})
    reps = wg.coset_representatives(stab)
    assert len(reps) == 3
    assert wg.identity in reps
    # pairwise distinct right cosets
    cosets = [frozenset(wg.compose(h, r).index for h in stab) for r in reps]
    assert len(set(cosets)) == 3
    with pytest.raises(ValueError):
        wg.coset_representatives([wg.generators[0]])  # not closed
