from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsors.gammagroup import (GammaGroup, all_actions, first_nontrivial_action,
                                is_equivariant_hom, quotient_gamma_group, trivial_action)
from torsors.gammasets import (GammaSet, GObject, coset_object, conjugation_object,
                               disjoint_union, equivariant_isoms, find_isomorphism, fixed_points,
                               forget_gamma, gamma_set_isomorphism, is_geometrically_connected,
                               is_isomorphism, orbit_space, orbits, point_object, product_object,
                               regular_object, relabel, stabilizer)
from torsors.groups import GroupError, Subgroup, center, cyclic, symmetric
from torsors.suites import gamma_group, gamma_group_keys

KEYS = gamma_group_keys(("Z2", "Z3", "S3"), ("Z2", "Z3", "V4", "S3"))


def brute_isoms(a: GObject, b: GObject):
    out = []
    for f in permutations(range(b.size)):
        if len(f) == a.size and is_isomorphism(f, a, b):
            out.append(f)
    return out


def test_action_counts():
    # actions of Z2 on Z3 are homs Z2 -> Aut(Z3) = Z2; on S3, homs Z2 -> Aut(S3) = S3
    assert len(all_actions(cyclic(2), cyclic(3))) == 2
    assert len(all_actions(cyclic(2), symmetric(3))) == 4
    assert all_actions(cyclic(2), cyclic(3))[0].is_trivial_action
    assert first_nontrivial_action(cyclic(2), cyclic(2)) is None


def test_inversion_action():
    gg = first_nontrivial_action(cyclic(2), cyclic(3))
    assert gg.act == ((0, 1, 2), (0, 2, 1))
    assert gg.validate() is gg


def test_bad_action_rejected():
    with pytest.raises(GroupError, match="not an automorphism"):
        GammaGroup(cyclic(2), cyclic(3), ((0, 1, 2), (1, 0, 2))).validate()
    with pytest.raises(GroupError, match="identity"):
        GammaGroup(cyclic(2), cyclic(3), ((0, 2, 1), (0, 1, 2))).validate()


def test_quotient_gamma_group_is_equivariant():
    gg = first_nontrivial_action(cyclic(2), symmetric(3))
    a3 = Subgroup(gg.g, (0, 3, 4))
    q, theta = quotient_gamma_group(gg, a3)
    assert q.g.order == 2
    assert is_equivariant_hom(gg, q, theta)


@pytest.mark.parametrize("key", KEYS)
def test_standard_objects_are_equivariant(key):
    gg = gamma_group(*key)
    for obj in (regular_object(gg), point_object(gg), conjugation_object(gg),
                coset_object(gg, center(gg.g))):
        obj.validate()


@pytest.mark.parametrize("key", KEYS)
def test_isomorphism_search_matches_brute_force(key):
    gg = gamma_group(*key)
    reg = regular_object(gg)
    objs = [reg, conjugation_object(gg), disjoint_union(reg, point_object(gg))]
    for a in objs:
        if a.size > 7:
            continue
        assert equivariant_isoms(a, a) == brute_isoms(a, a)


@pytest.mark.parametrize("key", KEYS)
def test_regular_automorphisms_are_fixed_right_translations(key):
    # oracle: x -> x h commutes with left translation, and with Gamma iff h is fixed
    gg = gamma_group(*key)
    g = gg.g
    fixed = [h for h in g.elements if all(a[h] == h for a in gg.act)]
    want = sorted(tuple(g.mul(x, h) for x in g.elements) for h in fixed)
    assert equivariant_isoms(regular_object(gg), regular_object(gg)) == want


def test_relabelled_object_is_isomorphic():
    gg = first_nontrivial_action(cyclic(2), symmetric(3))
    reg = regular_object(gg)
    sigma = (3, 5, 0, 1, 4, 2)
    other = relabel(reg, sigma)
    f = find_isomorphism(reg, other)
    assert f is not None and is_isomorphism(f, reg, other)


def test_orbits_fixed_points_stabilizers():
    s3 = symmetric(3)
    # S3 acting on itself by conjugation
    conj = GammaSet(s3, tuple(tuple(s3.conj(a, x) for x in s3.elements) for a in s3.elements))
    assert orbits(conj) == [[0], [1, 2, 5], [3, 4]]
    assert fixed_points(conj) == [0]
    assert stabilizer(conj, 3).members == (0, 3, 4)


@given(st.sampled_from(KEYS), st.data())
@settings(max_examples=40, deadline=None)
def test_orbit_stabilizer(key, data):
    gg = gamma_group(*key)
    s = regular_object(gg).base
    x = data.draw(st.integers(0, s.size - 1))
    orb = next(o for o in orbits(s) if x in o)
    assert len(orb) * stabilizer(s, x).order == gg.gamma.order


def test_geometric_connectedness():
    z4 = cyclic(4)
    s = GammaSet(z4, tuple(tuple((i + a) % 4 for i in range(4)) for a in range(4)))
    assert is_geometrically_connected(s, Subgroup(z4, (0, 1, 2, 3)))
    assert not is_geometrically_connected(s, Subgroup(z4, (0, 2)))


def test_forget_gamma_and_product():
    gg = trivial_action(cyclic(2), cyclic(3))
    reg = regular_object(gg)
    assert forget_gamma(reg).gamma.order == 1
    prod = product_object(reg, reg).validate()
    assert prod.size == 9
    assert len(orbits(GammaSet(gg.g, prod.gaction))) == 3


def test_orbit_space_of_regular_is_cosets():
    gg = trivial_action(cyclic(2), symmetric(3))
    a3 = Subgroup(gg.g, (0, 3, 4))
    quot, proj = orbit_space(regular_object(gg), a3)
    assert quot.size == 2
    assert gamma_set_isomorphism(quot.base, coset_object(gg, a3).base) is not None
    assert len(set(proj)) == 2


def test_mismatched_objects_rejected():
    a = regular_object(trivial_action(cyclic(2), cyclic(3)))
    b = regular_object(first_nontrivial_action(cyclic(2), cyclic(3)))
    with pytest.raises(GroupError, match="different"):
        find_isomorphism(a, b)
