from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (all_homs, automorphism_count, center_order, centralizer_order, close_perms,
                     conj_classes, subgroup_count)
from torsors.groups import (FiniteGroup, GroupError, GroupHom, Subgroup, alternating, automorphisms,
                            center, centralizer, closure, conjugacy_classes, count_cyclic_homs,
                            cyclic, dihedral, direct_product, dump_group, enumerate_homs,
                            from_permutations, generated_subgroup, identity_hom, load_group,
                            normality_witness, parse_cycles, permutations_of, quaternion, quotient,
                            subgroups, symmetric, trivial_group)
from torsors.suites import GROUP_BUILDERS, named_group

ALL = sorted(GROUP_BUILDERS)


def test_s3_element_order_and_labels():
    s3 = symmetric(3)
    # oracle: the same closure written independently, sorted by image tuple
    assert permutations_of(s3) == tuple(close_perms([(1, 0, 2), (1, 2, 0)]))
    assert s3.labels == ("()", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)")


def test_s3_product_convention():
    s3 = symmetric(3)
    perms = permutations_of(s3)
    for a in s3.elements:
        for b in s3.elements:
            assert perms[s3.mul(a, b)] == tuple(perms[a][i] for i in perms[b])


@pytest.mark.parametrize("name", ALL)
def test_tables_are_groups(name):
    g = named_group(name)
    g.validate()
    assert all(g.mul(a, g.inv(a)) == 0 for a in g.elements)


@pytest.mark.parametrize("name", ALL)
def test_conjugacy_classes_match_oracle(name):
    g = named_group(name)
    assert conjugacy_classes(g) == conj_classes(g.table)


@pytest.mark.parametrize("name", ALL)
def test_centralizers_and_center_match_oracle(name):
    g = named_group(name)
    assert center(g).order == center_order(g.table)
    for x in g.elements:
        assert centralizer(g, x).order == centralizer_order(g.table, x)


def test_known_class_counts():
    # S3 has 3 classes; Q8 and D4 have 5; each has a center of the stated size
    assert [len(conjugacy_classes(g)) for g in (symmetric(3), quaternion(), dihedral(4))] == [3, 5, 5]
    assert [center(g).order for g in (symmetric(3), quaternion(), dihedral(4))] == [1, 2, 2]
    assert conjugacy_classes(symmetric(3)) == [(0,), (1, 2, 5), (3, 4)]


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "V4", "S3", "Z6", "D4", "Q8"])
def test_subgroup_count_matches_oracle(name):
    g = named_group(name)
    subs = subgroups(g)
    assert len(subs) == subgroup_count(g.table)
    assert len({s.members for s in subs}) == len(subs)


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "V4", "S3", "Z6", "D4", "Q8", "Z2^3"])
def test_automorphism_count_matches_oracle(name):
    g = named_group(name)
    assert len(automorphisms(g)) == automorphism_count(g.table)


@pytest.mark.parametrize("src,dst", [("Z2", "S3"), ("Z3", "S3"), ("V4", "D4"), ("S3", "Z2"),
                                     ("Q8", "V4"), ("Z4", "Q8"), ("S3", "S3")])
def test_enumerate_homs_matches_oracle(src, dst):
    g, h = named_group(src), named_group(dst)
    got = [f.map for f in enumerate_homs(g, h)]
    assert got == sorted(all_homs(g.table, h.table))


def test_hom_counts_from_s3():
    # Z2 -> S3: identity plus one per involution; automorphisms of S3 are inner
    assert len(enumerate_homs(cyclic(2), symmetric(3))) == 4
    assert len(automorphisms(symmetric(3))) == 6


@given(st.integers(1, 12), st.integers(1, 12))
@settings(max_examples=40, deadline=None)
def test_cyclic_hom_count_is_gcd(n, m):
    assert count_cyclic_homs(n, m) == gcd(n, m)
    assert len(enumerate_homs(cyclic(n), cyclic(m))) == gcd(n, m)


def test_enumerate_homs_filters():
    s3 = symmetric(3)
    assert len(enumerate_homs(cyclic(3), s3, injective=True)) == 2
    assert len(enumerate_homs(s3, cyclic(2), surjective=True)) == 1


def test_quotient_by_a3():
    s3 = symmetric(3)
    a3 = Subgroup(s3, (0, 3, 4))
    q, proj = quotient(s3, a3)
    assert q.order == 2
    assert proj.kernel().members == (0, 3, 4)
    assert proj.is_surjective


def test_normality():
    s3 = symmetric(3)
    assert Subgroup(s3, (0, 3, 4)).is_normal()
    k = Subgroup(s3, (0, 1))
    assert not k.is_normal()
    g, x = normality_witness(k)
    assert s3.conj(g, x) not in k.members


def test_alternating_and_dihedral_orders():
    assert alternating(4).order == 12
    assert dihedral(4).order == 8
    assert symmetric(4).order == 24


def test_closure_and_generated_subgroup():
    s3 = symmetric(3)
    assert sorted(closure(s3, [3])) == [0, 3, 4]
    assert generated_subgroup(s3, [1, 3]).order == 6


def test_direct_product_order_and_abelian():
    p = direct_product(cyclic(2), cyclic(3))
    assert p.order == 6 and p.is_abelian


def test_bad_tables_rejected():
    with pytest.raises(GroupError, match="identity"):
        FiniteGroup(((1, 0), (0, 1))).validate()
    with pytest.raises(GroupError, match="row not a permutation"):
        FiniteGroup(((0, 1), (1, 1))).validate()
    # a Latin square with identity that is not associative
    table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupError, match="not associative"):
        FiniteGroup(table).validate()


def test_order_cap(monkeypatch):
    monkeypatch.setenv("TORSOR_MAX_ORDER", "4")
    with pytest.raises(GroupError, match="exceeds cap"):
        cyclic(6).validate()
    with pytest.raises(GroupError, match="exceeds cap"):
        from_permutations([(1, 0, 2), (1, 2, 0)])


def test_parse_cycles():
    assert parse_cycles("(1 2 3)", 3) == (1, 2, 0)
    assert parse_cycles("()", 2) == (0, 1)
    # right to left: (2 3) first, so 1->2, 2->3, 3->1
    assert parse_cycles("(1 2)(2 3)", 3) == (1, 2, 0)
    with pytest.raises(GroupError):
        parse_cycles("(1 4)", 3)


@pytest.mark.parametrize("name", ALL)
def test_dump_load_round_trip(name):
    g = named_group(name)
    h = load_group(dump_group(g))
    assert h == g and h.name == g.name


def test_perm_dialect():
    text = "# S3\ngroup S3 degree 3\ngens\n(1 2)\n(1 2 3)\n"
    assert load_group(text) == symmetric(3)


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("group G size 2\n", "line 1"),
    ("group G order 2\ntable\n0 1\n", "line"),
    ("group G order x\n", "not an integer"),
    ("group G degree 3\ngens\n(1 5)\n", "line 3"),
])
def test_load_group_errors(text, msg):
    with pytest.raises(GroupError, match=msg):
        load_group(text)


def test_hom_validation_and_composition():
    s3 = symmetric(3)
    with pytest.raises(GroupError):
        GroupHom(cyclic(2), s3, (0, 3)).validate()
    ident = identity_hom(s3)
    assert ident.compose(ident) == ident
    assert ident.is_injective and ident.is_surjective
    assert trivial_group().order == 1


@given(st.sampled_from(ALL), st.data())
@settings(max_examples=60, deadline=None)
def test_inverse_and_power_laws(name, data):
    g = named_group(name)
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert g.inv(g.mul(a, b)) == g.mul(g.inv(b), g.inv(a))
    assert g.power(a, g.element_order(a)) == 0
    assert g.order % g.element_order(a) == 0
