"""Exhaustive verification suites over small groups.

A suite is split into units (one per Gamma-group, cover, ...).  Units are
identified by plain tuples so they can be shipped to worker processes; every
worker rebuilds the corpus deterministically, and results are merged in unit
order, so the report does not depend on the number of workers.
"""

from __future__ import annotations

import multiprocessing
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .covers import (CoverSpec, component_has_point, decomposition_components, double_point_test,
                     galois_embedding_test, nongalois_oracle, nongalois_test, pac_census,
                     sections, specialization, specialization_exists_oracle,
                     specialization_exists_twisted, star_condition, target_cocycle,
                     twisted_cover, fiber)
from .gammagroup import GammaGroup, first_nontrivial_action, quotient_gamma_group, trivial_action
from .gammasets import (GObject, coset_object, disjoint_union, find_isomorphism, fixed_points,
                        is_morphism, orbits, point_object, regular_object, stabilizer)
from .groups import (FiniteGroup, GroupHom, Subgroup, alternating, center, centralizer,
                     conjugacy_classes, cyclic, dihedral, direct_product, enumerate_homs,
                     identity_hom, permutations_of, projections, quaternion, quotient, subgroups,
                     symmetric, trivial_group)
from .torsors import (Cocycle, contracted_product, cocycles, find_torsor_isomorphism,
                      find_torsor_isomorphism_fast, h1, hom_cocycle, identification,
                      inner_form, inverse_left_cocycle, inverse_torsor, is_left_cocycle,
                      left_cocycle, product_identification, product_left_cocycle,
                      torsor_from_cocycle, trivial_cocycle, trivial_torsor,
                      twisted_conjugate_equiv)
from .twisting import (TwistReport, check_composition, check_functoriality, check_inverse_twist,
                       check_isom_is_contracted_product, check_reconstruction, g_automorphisms,
                       h1_twist_bijection, local_forms, self_twist_decomposition, twist_bitorsor,
                       twist_torsor, verify_base_change, verify_functor_orbit_space,
                       verify_functor_square, verify_quotient, verify_twist_torsor)
from .covers import quotient_partiel_check

# ---------------------------------------------------------------------------
# groups of order at most 8, one per isomorphism class


def _v4() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2), "V4")


GROUP_BUILDERS: dict[str, Callable[[], FiniteGroup]] = {
    "1": trivial_group,
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "V4": _v4,
    "Z5": lambda: cyclic(5),
    "Z6": lambda: cyclic(6),
    "S3": lambda: symmetric(3),
    "Z7": lambda: cyclic(7),
    "Z8": lambda: cyclic(8),
    "Z4xZ2": lambda: direct_product(cyclic(4), cyclic(2), "Z4xZ2"),
    "Z2^3": lambda: direct_product(_v4(), cyclic(2), "Z2^3"),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
}

SMALL_GAMMAS = ("1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3")
SMALL_GROUPS = tuple(GROUP_BUILDERS)


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    return GROUP_BUILDERS[name]()


@lru_cache(maxsize=None)
def gamma_group(gamma: str, g: str, action: int) -> Optional[GammaGroup]:
    """Action 0 is trivial, action 1 the first nontrivial one (or None)."""
    gam, grp = named_group(gamma), named_group(g)
    if action == 0:
        return trivial_action(gam, grp)
    return first_nontrivial_action(gam, grp)


def gamma_group_keys(gammas: Iterable[str], groups: Iterable[str]) -> list[tuple[str, str, int]]:
    keys = []
    for gam in gammas:
        for g in groups:
            for a in (0, 1):
                if gamma_group(gam, g, a) is not None:
                    keys.append((gam, g, a))
    return keys


def _label(key) -> str:
    return f"gamma={key[0]} group={key[1]} action={key[2]}"


@lru_cache(maxsize=None)
def _cocycles(gg: GammaGroup) -> tuple[Cocycle, ...]:
    return tuple(cocycles(gg))


def object_corpus(gg: GammaGroup) -> list[tuple[str, GObject]]:
    """Point, regular, regular + point, and G/Z(G) when it is a proper quotient."""
    reg = regular_object(gg)
    pt = point_object(gg)
    objs = [("point", pt), ("regular", reg), ("regular+point", disjoint_union(reg, pt))]
    z = center(gg.g)
    if 1 < z.order < gg.g.order:
        objs.append(("cosets-of-center", coset_object(gg, z)))
    return objs


def _normal_stable_subgroups(gg: GammaGroup) -> list[Subgroup]:
    return [k for k in subgroups(gg.g) if k.is_normal() and gg.is_stable(k)]


# ---------------------------------------------------------------------------
# the twisting functor


def run_theorem(key) -> list[TwistReport]:
    gg = gamma_group(*key)
    reps = {cid: TwistReport(cid) for cid in
            ("twist-isom-torsor", "twist-inverse", "twist-composition",
             "twist-reconstruction", "twist-functoriality")}
    cs = _cocycles(gg)
    inner = {c.c: _cocycles(inner_form(c)) for c in cs}
    objs = object_corpus(gg)
    for name, xi in objs:
        for c in cs:
            lab = f"{_label(key)} object={name} c={list(c.c)}"
            reps["twist-isom-torsor"].record(lab, check_isom_is_contracted_product(xi, c))
            reps["twist-inverse"].record(lab, check_inverse_twist(xi, c))
            for c2 in inner[c.c]:
                reps["twist-composition"].record(f"{lab} c2={list(c2.c)}",
                                                 check_composition(xi, c, c2))
        aut = g_automorphisms(xi)
        for i, xi2 in enumerate(local_forms(xi)):
            reps["twist-reconstruction"].record(f"{_label(key)} object={name} form={i}",
                                                check_reconstruction(xi, xi2, aut))
    # every G-map from the regular object to another corpus object, via the image of 1
    reg = objs[1][1]
    for name, target in objs:
        for y in target.points:
            f = tuple(target.gaction[g][y] for g in gg.g.elements)
            if not is_morphism(f, reg, target):
                continue
            for c in cs:
                ok = check_functoriality(reg, target, f, c)
                reps["twist-functoriality"].record(
                    f"{_label(key)} map=regular->{name}@{y} c={list(c.c)}", f if ok else None)
    return list(reps.values())


def run_properties(key) -> list[TwistReport]:
    gg = gamma_group(*key)
    base = TwistReport("twist-base-change")
    quot = TwistReport("twist-quotient")
    image = TwistReport("twist-functor-image")
    gsubs = subgroups(gg.gamma)
    ks = _normal_stable_subgroups(gg)
    reg = regular_object(gg)
    for c in _cocycles(gg):
        for _, xi in object_corpus(gg):
            for sub in gsubs:
                base.merge(verify_base_change(c, xi, sub))
            image.merge(verify_functor_square(c, xi))
        for k in ks:
            image.merge(verify_functor_orbit_space(c, reg, k))
            qgg, _ = quotient_gamma_group(gg, k)
            quot.merge(verify_quotient(c, k, regular_object(qgg)))
            quot.merge(verify_quotient(c, k, point_object(qgg)))
    for r in (base, quot, image):
        r.witnesses = [(f"{_label(key)} {lab}", w) for lab, w in r.witnesses]
        r.failures = [(f"{_label(key)} {lab}", w) for lab, w in r.failures]
    return [base, quot, image]


# ---------------------------------------------------------------------------
# torsor corollaries


def run_corollaries(key) -> list[TwistReport]:
    gg = gamma_group(*key)
    torsor_twist = TwistReport("torsor-twist")
    inverse_isom = TwistReport("inverse-is-isom")
    isom_twist = TwistReport("isom-is-twist")
    partial = TwistReport("partial-quotient")
    cs = _cocycles(gg)
    triv = trivial_torsor(gg)
    ks = _normal_stable_subgroups(gg)
    for c in cs:
        p = torsor_from_cocycle(c)
        lab = f"{_label(key)} c={list(c.c)}"
        for r in _cocycles(p.left):
            lhs = twist_bitorsor(p, r)
            rhs = contracted_product(torsor_from_cocycle(r), p)
            torsor_twist.record(f"{lab} r={list(r.c)}", find_torsor_isomorphism_fast(lhs, rhs))
        inverse_isom.record(lab, find_torsor_isomorphism(twist_torsor(p, triv), inverse_torsor(p),
                                                         with_left=True))
        for c2 in cs:
            q = torsor_from_cocycle(c2)
            rep = verify_twist_torsor(p, q)
            for sub_lab, w in rep.witnesses:
                isom_twist.record(f"{lab} c2={list(c2.c)} {sub_lab}", w)
            for sub_lab, w in rep.failures:
                isom_twist.fail(f"{lab} c2={list(c2.c)} {sub_lab}", w)
            for k in ks:
                if k.order in (1, gg.g.order) and c2.c != c.c:
                    continue
                try:
                    sub = quotient_partiel_check(p, q, k)
                except ValueError:
                    continue
                for sub_lab, w in sub.witnesses:
                    partial.record(f"{lab} c2={list(c2.c)} K={list(k.members)} {sub_lab}", w)
                for sub_lab, w in sub.failures:
                    partial.fail(f"{lab} c2={list(c2.c)} K={list(k.members)} {sub_lab}", w)
    return [torsor_twist, inverse_isom, isom_twist, partial]


# ---------------------------------------------------------------------------
# cocycle algebra and H^1

ALGEBRA_GAMMAS = ("Z2", "S3")
ALGEBRA_GROUPS = ("Z3", "S3", "D4")


def run_cocycles(key) -> list[TwistReport]:
    """Cocycle formulas for products and inverses against the quotient-set construction."""
    gg = gamma_group(*key)
    prod = TwistReport("cocycle-product-formula")
    inv = TwistReport("cocycle-inverse-formula")
    inv_prod = TwistReport("inverse-of-product")
    assoc = TwistReport("contracted-associativity")
    cs = _cocycles(gg)
    for c1 in cs:
        p = torsor_from_cocycle(c1)
        a_p, u_p = left_cocycle(p), identification(p)
        p0 = inverse_torsor(p)
        lab = f"{_label(key)} c1={list(c1.c)}"
        a0 = left_cocycle(p0)
        ok = (a0 == inverse_left_cocycle(a_p, u_p) and identification(p0) == u_p.inverse()
              and is_left_cocycle(p0.left, a0))
        inv.record(lab, a0 if ok else None)
        for c2 in cs:
            q = inverse_torsor(torsor_from_cocycle(c2))
            pq = contracted_product(p, q)
            a_pq = left_cocycle(pq)
            expect = product_left_cocycle(a_p, u_p, left_cocycle(q))
            ok = (a_pq == expect and identification(pq) == product_identification(u_p, identification(q))
                  and is_left_cocycle(pq.left, a_pq))
            lab2 = f"{lab} c2={list(c2.c)}"
            prod.record(lab2, a_pq if ok else None)
            lhs = inverse_torsor(pq)
            rhs = contracted_product(inverse_torsor(q), inverse_torsor(p))
            inv_prod.record(lab2, find_torsor_isomorphism(lhs, rhs, with_left=True))
            r = torsor_from_cocycle(c2)
            lhs = contracted_product(pq, r)
            rhs = contracted_product(p, contracted_product(q, r))
            assoc.record(lab2, find_torsor_isomorphism(lhs, rhs, with_left=True))
    return [prod, inv, inv_prod, assoc]


H1_COUNTS = (
    (("Z2", "S3", 0), 2),
    (("S3", "S3", 0), 3),
    (("Z2", "Z3", 1), 1),
)


def run_h1(key) -> list[TwistReport]:
    """Twisted conjugacy against isomorphism of torsors, both directions, all pairs."""
    gg = gamma_group(*key)
    rep = TwistReport("h1-torsor-classes")
    cs = _cocycles(gg)
    torsors = [torsor_from_cocycle(c) for c in cs]
    classes = h1(gg)
    cls_of = {}
    for i, k in enumerate(classes):
        for m in k.members:
            cls_of[m] = i
    triv = cls_of[trivial_cocycle(gg).c]
    for i, c1 in enumerate(cs):
        for j, c2 in enumerate(cs):
            conj = twisted_conjugate_equiv(c1, c2) is not None
            iso = find_torsor_isomorphism(torsors[i], torsors[j]) is not None
            same = cls_of[c1.c] == cls_of[c2.c]
            fixed = bool(fixed_points(torsors[i].base)) == (cls_of[c1.c] == triv)
            rep.record(f"{_label(key)} c1={list(c1.c)} c2={list(c2.c)}",
                       (conj, iso) if conj == iso == same and fixed else None)
    if sum(k.size for k in classes) != len(cs):
        rep.fail(_label(key), "class sizes do not sum to the cocycle count")
    reps = [rep]
    for k, want in H1_COUNTS:
        if k == tuple(key):
            counts = TwistReport("h1-counts")
            counts.record(f"{_label(key)} classes={len(classes)} expected={want}",
                          len(classes) if len(classes) == want else None)
            reps.append(counts)
    return reps


def run_h1_diagram(key) -> list[TwistReport]:
    gg = gamma_group(*key)
    rep = TwistReport("h1-inner-form-bijection")
    u = target = None
    if key[1] == "S3":
        grp = gg.g
        a3 = Subgroup(grp, tuple(x for x in grp.elements
                                 if permutations_of(grp)[x] in set(permutations_of(alternating(3)))))
        target, u = quotient_gamma_group(gg, a3)
    for c in _cocycles(gg):
        sub = h1_twist_bijection(c, u, target)
        for lab, w in sub.witnesses:
            rep.record(f"{_label(key)} c={list(c.c)} {lab}", w)
        for lab, w in sub.failures:
            rep.fail(f"{_label(key)} c={list(c.c)} {lab}", w)
    return [rep]


# ---------------------------------------------------------------------------
# self-twist of a Galois extension

SELF_TWIST_GROUPS = ("Z3", "S3", "Q8", "D4")


def run_selftwist(name) -> list[TwistReport]:
    rep = TwistReport("self-twist")
    g = named_group(name)
    c = hom_cocycle(trivial_action(g, g), identity_hom(g))
    res = self_twist_decomposition(c)
    classes = conjugacy_classes(g)
    orbs = [tuple(o) for o, _ in res.components]
    rep.record(f"group={name} components={len(orbs)} classes={len(classes)}",
               len(orbs) if sorted(orbs) == sorted(classes) else None)
    for cls in classes:
        orb_stabs = [stabilizer(res.torsor.base, x).order for x in cls]
        want = centralizer(g, cls[0]).order
        rep.record(f"group={name} class={cls[0]} stabilizer={orb_stabs[0]} centralizer={want}",
                   want if all(o == want for o in orb_stabs) else None)
    z = center(g).order
    rep.record(f"group={name} fixed={res.fixed_count} center={z}",
               z if res.fixed_count == z else None)
    return [rep]


# ---------------------------------------------------------------------------
# covers


def _sign(n: int) -> tuple[FiniteGroup, GroupHom]:
    s = symmetric(n)
    even = set(permutations_of(alternating(n)))
    return s, GroupHom(s, cyclic(2), tuple(0 if p in even else 1 for p in permutations_of(s)))


def _quotient_by(g: FiniteGroup, members) -> GroupHom:
    return quotient(g, Subgroup(g, tuple(members)))[1]


def _rotations(d: FiniteGroup) -> list[int]:
    n = len(permutations_of(d)[0])
    rots = {tuple((i + k) % n for i in range(n)) for k in range(n)}
    return [x for x, p in enumerate(permutations_of(d)) if p in rots]


def _build_cover(name: str) -> CoverSpec:
    z2, z3 = cyclic(2), cyclic(3)
    if name == "S3/sign":
        s3, sign = _sign(3)
        return CoverSpec(s3, sign, identity_hom(s3), name)
    if name == "Z4/mod2":
        z4 = cyclic(4)
        return CoverSpec(z4, GroupHom(z4, z2, (0, 1, 0, 1)), identity_hom(z4), name)
    if name == "Q8/Z2":
        q8 = quaternion()
        return CoverSpec(q8, _quotient_by(q8, (0, 1, 2, 3)), identity_hom(q8), name)
    if name == "D4/Z2xZ2":
        d4 = dihedral(4)
        return CoverSpec(d4, _quotient_by(d4, center(d4).members), identity_hom(d4), name)
    if name == "S3xZ2/constant-field":
        s3 = symmetric(3)
        prod = direct_product(s3, z2)
        p1, p2 = projections(s3, z2, prod)
        return CoverSpec(prod, p2, p1, name)
    if name == "S3xZ2/full":
        s3 = symmetric(3)
        prod = direct_product(s3, z2)
        _, p2 = projections(s3, z2, prod)
        return CoverSpec(prod, p2, identity_hom(prod), name)
    if name == "D4/rotations":
        d4 = dihedral(4)
        return CoverSpec(d4, _quotient_by(d4, _rotations(d4)), identity_hom(d4), name)
    if name == "S4/S3":
        s4, sign = _sign(4)
        v4 = [x for x, p in enumerate(permutations_of(s4))
              if p in {(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)}]
        return CoverSpec(s4, sign, _quotient_by(s4, v4), name)
    if name == "Z6/mod2":
        z6 = cyclic(6)
        return CoverSpec(z6, GroupHom(z6, z2, tuple(x % 2 for x in range(6))), identity_hom(z6), name)
    if name == "Z6/Z3-constant":
        z6 = cyclic(6)
        return CoverSpec(z6, GroupHom(z6, z2, tuple(x % 2 for x in range(6))),
                         GroupHom(z6, z3, tuple(x % 3 for x in range(6))), name)
    if name == "V4/proj":
        v4 = _v4()
        p1, _ = projections(z2, z2, v4)
        return CoverSpec(v4, p1, identity_hom(v4), name)
    if name == "V4/sum":
        v4 = _v4()
        p1, _ = projections(z2, z2, v4)
        return CoverSpec(v4, p1, GroupHom(v4, z2, (0, 1, 1, 0)), name)
    if name == "S3xZ3/Z3":
        s3 = symmetric(3)
        prod = direct_product(s3, z3)
        p1, p2 = projections(s3, z3, prod)
        return CoverSpec(prod, p2, p1, name)
    if name == "S3/trivial-gamma":
        s3 = symmetric(3)
        one = trivial_group()
        return CoverSpec(s3, GroupHom(s3, one, (0,) * 6), identity_hom(s3), name)
    raise KeyError(name)


COVER_NAMES = ("S3/sign", "Z4/mod2", "Q8/Z2", "D4/Z2xZ2", "S3xZ2/constant-field", "S3xZ2/full",
               "D4/rotations", "S4/S3", "Z6/mod2", "Z6/Z3-constant", "V4/proj", "V4/sum",
               "S3xZ3/Z3", "S3/trivial-gamma")


@lru_cache(maxsize=None)
def named_cover(name: str) -> CoverSpec:
    return _build_cover(name).validate()


def cover_targets(cover: CoverSpec) -> list[Cocycle]:
    return [target_cocycle(cover, h.map) for h in enumerate_homs(cover.gamma, cover.g)]


def run_specialization(name) -> list[TwistReport]:
    cover = named_cover(name)
    lemma = TwistReport("twisting-lemma")
    fibers = TwistReport("twisted-cover-fibers")
    invariance = TwistReport("star-invariance")
    conj = TwistReport("conjugate-sections")
    double = TwistReport("double-point")
    g = cover.g
    secs = sections(cover)
    for psi in cover_targets(cover):
        lab = f"cover={name} psi={list(psi.c)}"
        oracle = specialization_exists_oracle(cover, psi)
        twisted = specialization_exists_twisted(cover, psi)
        same = (oracle is None) == (twisted is None) and (oracle is None or oracle.s == twisted.s)
        lemma.record(lab, ("exists" if oracle else "absent") if same else None)
        tc = twisted_cover(cover, psi)
        direct = tuple(tuple(g.mul(g.mul(cover.phi.map[p], x), g.inv(psi.c[cover.u.map[p]]))
                             for x in g.elements) for p in cover.pi.elements)
        fibers.record(f"{lab} formula", "equal" if tc.action == direct else None)
        for sp in secs:
            expect = twist_torsor(torsor_from_cocycle(psi),
                                  torsor_from_cocycle(specialization(cover, sp))).base.action
            fibers.record(f"{lab} s={list(sp.s.map)}",
                          "equal" if fiber(tc, sp).action == expect else None)
        star = star_condition(cover, psi)
        for h in g.elements:
            other = Cocycle(psi.gg, tuple(g.mul(g.mul(g.inv(h), x), h) for x in psi.c))
            o_tw = specialization_exists_twisted(cover, other)
            agree = star_condition(cover, other) == star and (o_tw is None) == (twisted is None)
            invariance.record(f"{lab} by={h}", "agree" if agree else None)
    pi = cover.pi
    for sp in secs:
        for p in cover.pibar.members:
            moved = tuple(pi.conj(p, y) for y in sp.s.map)
            other = next(t for t in secs if t.s.map == moved)
            w = twisted_conjugate_equiv(specialization(cover, sp), specialization(cover, other))
            conj.record(f"cover={name} s={list(sp.s.map)} by={p}", w)
        for t in secs:
            expect = twisted_conjugate_equiv(specialization(cover, sp),
                                             specialization(cover, t)) is not None
            got = double_point_test(cover, sp, t)
            double.record(f"cover={name} s={list(sp.s.map)} t={list(t.s.map)}",
                          got if got == expect else None)
    return [lemma, fibers, invariance, conj, double]


def run_decomposition(name) -> list[TwistReport]:
    cover = named_cover(name)
    dec_rep = TwistReport("decomposition")
    points = TwistReport("decomposition-points")
    census = TwistReport("pac-census")
    q, _ = cover.scalar_quotient
    zq = center(q).order
    for psi in cover_targets(cover):
        lab = f"cover={name} psi={list(psi.c)}"
        if not star_condition(cover, psi):
            continue
        dec = decomposition_components(cover, psi)
        comps = dec.components
        ok = (len(comps) == zq and all(c.pi_stable and c.geometrically_connected for c in comps)
              and (not dec.remainder) == q.is_abelian)
        dec_rep.record(lab, [len(c.points) for c in comps] if ok else None)
        exists = specialization_exists_oracle(cover, psi) is not None
        with_point = any(component_has_point(cover, c, dec.twisted) is not None for c in comps)
        points.record(lab, exists if exists == with_point else None)
        n = pac_census(cover, psi)
        census.record(f"{lab} count={n}", n if (n > 0) == exists else None)
    return [dec_rep, points, census]


def _perm_embedding(g: FiniteGroup, n: int) -> GroupHom:
    sn = symmetric(n)
    index = {p: i for i, p in enumerate(permutations_of(sn))}
    return GroupHom(g, sn, tuple(index[p] for p in permutations_of(g)))


def _nongalois_case(name: str) -> tuple[CoverSpec, GroupHom]:
    if name == "S3/sign@3":
        cover = named_cover("S3/sign")
        return cover, _perm_embedding(cover.g, 3)
    if name == "Z6/Z3-constant@3":
        cover = named_cover("Z6/Z3-constant")
        sn = symmetric(3)
        index = {p: i for i, p in enumerate(permutations_of(sn))}
        # the generator 1 of Z3 goes to the 3-cycle (1 2 3)
        cyc = (1, 2, 0)
        powers = [(0, 1, 2), cyc, (2, 0, 1)]
        return cover, GroupHom(cover.g, sn, tuple(index[p] for p in powers)).validate()
    if name == "D4/rotations@4":
        cover = named_cover("D4/rotations")
        return cover, _perm_embedding(cover.g, 4)
    if name == "Z4/mod2@4":
        cover = named_cover("Z4/mod2")
        sn = symmetric(4)
        index = {p: i for i, p in enumerate(permutations_of(sn))}
        powers = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)]
        return cover, GroupHom(cover.g, sn, tuple(index[p] for p in powers)).validate()
    raise KeyError(name)


NONGALOIS_CASES = ("S3/sign@3", "Z6/Z3-constant@3", "D4/rotations@4", "Z4/mod2@4")


def run_nongalois(name) -> list[TwistReport]:
    rep = TwistReport("nongalois-lemma")
    cover, nu = _nongalois_case(name)
    for psi_prime in enumerate_homs(cover.gamma, nu.target):
        res = nongalois_test(cover, nu, psi_prime)
        oracle = nongalois_oracle(cover, nu, psi_prime)
        rep.record(f"case={name} psi'={list(psi_prime.map)}",
                   res.isomorphic if res.isomorphic == (oracle is not None) else None)
    return [rep]


def run_galois_embedding(name) -> list[TwistReport]:
    rep = TwistReport("galois-embedding")
    cover = named_cover(name)
    seen = set()
    for h in enumerate_homs(cover.gamma, cover.g):
        img = tuple(sorted(set(h.map)))
        if img in seen:
            continue
        seen.add(img)
        sub = Subgroup(cover.g, img)
        hg, inc = sub.as_group()
        back = {y: x for x, y in enumerate(inc.map)}
        psi_h = GroupHom(cover.gamma, hg, tuple(back[y] for y in h.map))
        res = galois_embedding_test(cover, psi_h)
        rep.record(f"cover={name} H={list(img)} conditions={list(res.conditions)}",
                   res.conditions if len(set(res.conditions)) == 1 else None)
    return [rep]


# ---------------------------------------------------------------------------
# registry and runner


def _theorem_units():
    return gamma_group_keys(SMALL_GAMMAS, SMALL_GROUPS)


def _algebra_units():
    return gamma_group_keys(ALGEBRA_GAMMAS, ALGEBRA_GROUPS)


def _h1_units():
    keys = _algebra_units()
    for k, _ in H1_COUNTS:
        if k not in keys:
            keys.append(k)
    return keys


SUITES: dict[str, tuple[Callable[[], list], Callable]] = {
    "theorem": (_theorem_units, run_theorem),
    "properties": (_algebra_units, run_properties),
    "corollaries": (_algebra_units, run_corollaries),
    "cocycles": (_algebra_units, run_cocycles),
    "h1": (_h1_units, run_h1),
    "h1-diagram": (_algebra_units, run_h1_diagram),
    "selftwist": (lambda: list(SELF_TWIST_GROUPS), run_selftwist),
    "specialization": (lambda: list(COVER_NAMES), run_specialization),
    "decomposition": (lambda: list(COVER_NAMES), run_decomposition),
    "nongalois": (lambda: list(NONGALOIS_CASES), run_nongalois),
    "galois-embedding": (lambda: list(COVER_NAMES), run_galois_embedding),
}


def suite_names(name: str) -> list[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [name]


def _run_unit(task):
    suite, key = task
    return SUITES[suite][1](key)


def _within_cap(task, cap: int) -> bool:
    suite, key = task
    if isinstance(key, tuple) and len(key) == 3:
        return named_group(key[0]).order <= cap and named_group(key[1]).order <= cap
    if suite in ("specialization", "decomposition", "galois-embedding"):
        return named_cover(key).pi.order <= cap
    if suite == "nongalois":
        cover, nu = _nongalois_case(key)
        return max(cover.pi.order, nu.target.order) <= cap
    return named_group(key).order <= cap


def run_suites(name: str, jobs: int = 1, max_order: Optional[int] = None) -> list[TwistReport]:
    """Run a suite (or ``all``) and merge unit reports per claim, in first-seen order."""
    tasks = [(s, key) for s in suite_names(name) for key in SUITES[s][0]()]
    if max_order is not None:
        tasks = [t for t in tasks if _within_cap(t, max_order)]
    if jobs > 1 and len(tasks) > 1:
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:
            ctx = multiprocessing.get_context()
        with ctx.Pool(jobs) as pool:
            results = pool.map(_run_unit, tasks, chunksize=1)
    else:
        results = [_run_unit(t) for t in tasks]
    merged: dict[str, TwistReport] = {}
    for reps in results:
        for r in reps:
            if r.claim not in merged:
                merged[r.claim] = TwistReport(r.claim)
            merged[r.claim].merge(r)
    return list(merged.values())
