import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_homs, center_order, inverse
from torsors.covers import (CoverSpec, component_has_point, decomposition_components,
                            double_point_test, galois_embedding_test, nongalois_oracle,
                            nongalois_test, pac_census, sections, specialization,
                            specialization_exists_oracle, specialization_exists_twisted,
                            star_condition, target_cocycle, twisted_cover)
from torsors.groups import (GroupError, GroupHom, Subgroup, cyclic, enumerate_homs, identity_hom,
                            symmetric)
from torsors.suites import COVER_NAMES, cover_targets, named_cover


def brute_sections(cover):
    return [s for s in all_homs(cover.gamma.table, cover.pi.table)
            if all(cover.u.map[s[x]] == x for x in cover.gamma.elements)]


def conjugate(g, a, b):
    """Some h with b(x) = h^-1 a(x) h for all x, by search over tables."""
    t = g.table
    return any(all(b[x] == t[t[inverse(t, h)][a[x]]][h] for x in range(len(a)))
               for h in range(len(t)))


def brute_exists(cover, psi):
    return any(conjugate(cover.g, tuple(cover.phi.map[y] for y in s), psi.c)
               for s in brute_sections(cover))


@pytest.mark.parametrize("name", COVER_NAMES)
def test_sections_match_oracle(name):
    cover = named_cover(name)
    assert [sp.s.map for sp in sections(cover)] == brute_sections(cover)


def test_covers_without_sections():
    # Z4 -> Z2 and Q8 -> Z2 do not split
    assert sections(named_cover("Z4/mod2")) == []
    assert sections(named_cover("Q8/Z2")) == []


def test_s3_sign_cover_frozen_values():
    cover = named_cover("S3/sign")
    assert len(sections(cover)) == 3
    assert len(sections(cover, up_to_conjugacy=True)) == 1
    assert cover.gbar.members == (0, 3, 4)
    assert [specialization(cover, sp).c for sp in sections(cover)] == [(0, 1), (0, 2), (0, 5)]
    trivial = target_cocycle(cover, (0, 0))
    transposition = target_cocycle(cover, (0, 1))
    assert not star_condition(cover, trivial)
    assert star_condition(cover, transposition)
    assert specialization_exists_twisted(cover, trivial) is None
    assert specialization_exists_twisted(cover, transposition).s.map == (0, 1)
    dec = decomposition_components(cover, transposition)
    assert [len(c.points) for c in dec.components] == [3, 3] and dec.remainder == []
    assert pac_census(cover, transposition) == 3


@pytest.mark.parametrize("name", COVER_NAMES)
def test_twisted_cover_formula(name):
    cover = named_cover(name)
    g = cover.g
    for psi in cover_targets(cover)[:6]:
        tc = twisted_cover(cover, psi)
        for p in cover.pi.elements:
            for x in g.elements:
                want = g.mul(g.mul(cover.phi.map[p], x), g.inv(psi.c[cover.u.map[p]]))
                assert tc.action[p][x] == want


@pytest.mark.parametrize("name", COVER_NAMES)
def test_twisting_lemma_against_brute_force(name):
    cover = named_cover(name)
    for psi in cover_targets(cover):
        want = brute_exists(cover, psi)
        assert (specialization_exists_twisted(cover, psi) is not None) == want
        assert (specialization_exists_oracle(cover, psi) is not None) == want


@pytest.mark.parametrize("name", COVER_NAMES)
def test_decomposition_counts(name):
    cover = named_cover(name)
    q, _ = cover.scalar_quotient
    for psi in cover_targets(cover):
        if not star_condition(cover, psi):
            with pytest.raises(GroupError, match="star"):
                decomposition_components(cover, psi)
            continue
        dec = decomposition_components(cover, psi)
        assert len(dec.components) == center_order(q.table)
        assert all(c.pi_stable and c.geometrically_connected for c in dec.components)
        has_point = any(component_has_point(cover, c, dec.twisted) for c in dec.components)
        assert has_point == brute_exists(cover, psi)


@pytest.mark.parametrize("name", ["S3/sign", "D4/Z2xZ2", "V4/proj"])
def test_double_points(name):
    cover = named_cover(name)
    secs = sections(cover)
    for s in secs:
        for t in secs:
            want = conjugate(cover.g, specialization(cover, s).c, specialization(cover, t).c)
            assert double_point_test(cover, s, t) == want


def test_nongalois_s3_frozen():
    cover = named_cover("S3/sign")
    nu = identity_hom(cover.g)
    s3 = cover.g
    yes = GroupHom(cover.gamma, s3, (0, 1))
    no = GroupHom(cover.gamma, s3, (0, 0))
    assert nongalois_test(cover, nu, yes).isomorphic
    assert not nongalois_test(cover, nu, no).isomorphic
    assert nongalois_oracle(cover, nu, no) is None


def test_nongalois_rejects_non_injective_nu():
    cover = named_cover("S3/sign")
    nu = GroupHom(cover.g, symmetric(3), (0,) * 6)
    with pytest.raises(GroupError, match="injective"):
        nongalois_test(cover, nu, GroupHom(cover.gamma, symmetric(3), (0, 0)))


@pytest.mark.parametrize("name", ["S3/sign", "Z6/mod2", "V4/proj", "S3xZ2/full"])
def test_galois_embedding_conditions_agree(name):
    cover = named_cover(name)
    for h in enumerate_homs(cover.gamma, cover.g):
        img = sorted(set(h.map))
        hg, inc = Subgroup(cover.g, tuple(img)).as_group()
        back = {y: x for x, y in enumerate(inc.map)}
        res = galois_embedding_test(cover, GroupHom(cover.gamma, hg, tuple(back[y] for y in h.map)))
        assert len(set(res.conditions)) == 1


def test_cover_validation():
    s3 = symmetric(3)
    z2 = cyclic(2)
    with pytest.raises(GroupError, match="surjective"):
        CoverSpec(s3, GroupHom(s3, z2, (0,) * 6), identity_hom(s3)).validate()


@given(st.sampled_from(COVER_NAMES), st.data())
@settings(max_examples=40, deadline=None)
def test_conjugating_target_keeps_answer(name, data):
    cover = named_cover(name)
    targets = cover_targets(cover)
    psi = targets[data.draw(st.integers(0, len(targets) - 1))]
    h = data.draw(st.integers(0, cover.g.order - 1))
    g = cover.g
    other = target_cocycle(cover, tuple(g.mul(g.mul(g.inv(h), x), h) for x in psi.c))
    assert star_condition(cover, other) == star_condition(cover, psi)
    assert ((specialization_exists_twisted(cover, other) is None)
            == (specialization_exists_twisted(cover, psi) is None))
