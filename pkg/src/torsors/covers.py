"""Galois covers modeled by finite quotients of the fundamental group.

A cover is the datum ``u: Pi ->> Gamma`` (Gamma is the Galois group of the
base field) and ``phi: Pi ->> G``.  The geometric part of Pi is ``ker u``;
its image under phi is the geometric Galois group ``Gbar``.  Rational points
are modeled as group-theoretic sections of ``u`` and the specialization at a
section ``s`` is the homomorphism ``phi o s``.

All targets ``psi`` are cocycles for G with trivial Gamma-action, that is
homomorphisms Gamma -> G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .gammagroup import GammaGroup, trivial_action
from .gammasets import GammaSet, fixed_points, is_geometrically_connected, orbits_of, pullback
from .groups import (FiniteGroup, GroupError, GroupHom, Subgroup, center, enumerate_homs,
                     identity_hom, quotient)
from .torsors import (Cocycle, Torsor, cocycle_from_torsor, pushforward, torsor_from_cocycle,
                      twisted_conjugate_equiv)
from .twisting import TwistReport, twist_torsor


@dataclass(frozen=True, eq=False)
class CoverSpec:
    pi: FiniteGroup
    u: GroupHom
    phi: GroupHom
    name: str = "cover"

    @property
    def gamma(self) -> FiniteGroup:
        return self.u.target

    @property
    def g(self) -> FiniteGroup:
        return self.phi.target

    @property
    def pibar(self) -> Subgroup:
        return self.u.kernel()

    @property
    def gbar(self) -> Subgroup:
        return Subgroup(self.g, sorted({self.phi.map[x] for x in self.pibar.members}))

    @property
    def scalar_quotient(self) -> tuple[FiniteGroup, GroupHom]:
        """``(G/Gbar, v)``."""
        if "_quot" not in self.__dict__:
            self.__dict__["_quot"] = quotient(self.g, self.gbar)
        return self.__dict__["_quot"]

    @property
    def v(self) -> GroupHom:
        return self.scalar_quotient[1]

    @property
    def lam(self) -> GroupHom:
        """Lambda: Gamma -> G/Gbar with ``Lambda o u = v o phi``."""
        q, v = self.scalar_quotient
        m = [-1] * self.gamma.order
        for x in self.pi.elements:
            y = v.map[self.phi.map[x]]
            g = self.u.map[x]
            if m[g] not in (-1, y):
                raise GroupError("v o phi does not factor through u")
            m[g] = y
        return GroupHom(self.gamma, q, tuple(m))

    @property
    def trivial_gg(self) -> GammaGroup:
        return trivial_action(self.gamma, self.g)

    def validate(self) -> "CoverSpec":
        self.u.validate()
        self.phi.validate()
        if self.u.source != self.pi or self.phi.source != self.pi:
            raise GroupError("u and phi must both start at Pi")
        if not self.u.is_surjective:
            raise GroupError("u: Pi -> Gamma is not surjective")
        if not self.phi.is_surjective:
            raise GroupError("phi: Pi -> G is not surjective")
        self.lam.validate()
        return self

    def __repr__(self):
        return f"CoverSpec({self.name}: {self.pi.name} -> {self.gamma.name}, {self.g.name})"


@dataclass(frozen=True)
class SectionPoint:
    cover: CoverSpec
    s: GroupHom

    def validate(self) -> "SectionPoint":
        self.s.validate()
        if any(self.cover.u.map[self.s.map[x]] != x for x in self.cover.gamma.elements):
            raise GroupError("not a section of u")
        return self


def target_cocycle(cover: CoverSpec, hom_table) -> Cocycle:
    """A target torsor for the cover, given as a hom table Gamma -> G."""
    return Cocycle(cover.trivial_gg, tuple(hom_table))


def _check_target(cover: CoverSpec, psi: Cocycle) -> None:
    if psi.gg != cover.trivial_gg:
        raise GroupError("target cocycle must be a hom Gamma -> G with trivial action")


# ---------------------------------------------------------------------------
# sections and specializations


def sections(cover: CoverSpec, up_to_conjugacy: bool = False) -> list[SectionPoint]:
    """Homomorphic sections of u, sorted; optionally one per Pibar-conjugacy orbit."""
    if "_sections" not in cover.__dict__:
        homs = enumerate_homs(cover.gamma, cover.pi,
                              composed_with=(cover.u, identity_hom(cover.gamma)))
        cover.__dict__["_sections"] = [SectionPoint(cover, h) for h in homs]
    found = cover.__dict__["_sections"]
    if not up_to_conjugacy:
        return list(found)
    pi = cover.pi
    seen = set()
    out = []
    for sp in found:
        if sp.s.map in seen:
            continue
        out.append(sp)
        for p in cover.pibar.members:
            seen.add(tuple(pi.conj(p, y) for y in sp.s.map))
    return out


def specialization(cover: CoverSpec, s: SectionPoint) -> Cocycle:
    return Cocycle(cover.trivial_gg, tuple(cover.phi.map[y] for y in s.s.map))


def star_condition(cover: CoverSpec, psi: Cocycle) -> bool:
    """v o psi is conjugate in G/Gbar to Lambda."""
    _check_target(cover, psi)
    q, v = cover.scalar_quotient
    qgg = trivial_action(cover.gamma, q)
    return twisted_conjugate_equiv(Cocycle(qgg, cover.lam.map),
                                   Cocycle(qgg, tuple(v.map[x] for x in psi.c))) is not None


def specialization_exists_oracle(cover: CoverSpec, psi: Cocycle) -> Optional[SectionPoint]:
    """First section whose specialization is cohomologous to psi."""
    _check_target(cover, psi)
    for sp in sections(cover):
        if twisted_conjugate_equiv(specialization(cover, sp), psi) is not None:
            return sp
    return None


# ---------------------------------------------------------------------------
# the twisted cover


def cover_torsor(cover: CoverSpec) -> Torsor:
    """The G-torsor of the cover over Pi: the torsor of the cocycle phi."""
    return torsor_from_cocycle(Cocycle(trivial_action(cover.pi, cover.g), cover.phi.map))


def constant_torsor(cover: CoverSpec, psi: Cocycle) -> Torsor:
    """The target torsor pulled back to the cover's base: cocycle psi o u."""
    return torsor_from_cocycle(Cocycle(trivial_action(cover.pi, cover.g),
                                       tuple(psi.c[cover.u.map[x]] for x in cover.pi.elements)))


def twisted_cover(cover: CoverSpec, psi: Cocycle) -> GammaSet:
    """Isom_G(P_U, Q) as a Pi-set on the points of G.

    Point g is the isomorphism sending the base point of P_U to g, so
    ``pi . g = phi(pi) g psi(u(pi))^-1``.
    """
    _check_target(cover, psi)
    return twist_torsor(constant_torsor(cover, psi), cover_torsor(cover)).base


def fiber(tc: GammaSet, s: SectionPoint) -> GammaSet:
    """Pullback of a Pi-set along a section: a Gamma-set."""
    return pullback(tc, s.s)


def specialization_exists_twisted(cover: CoverSpec, psi: Cocycle) -> Optional[SectionPoint]:
    """First section whose fiber of the twisted cover has a Gamma-fixed point."""
    tc = twisted_cover(cover, psi)
    for sp in sections(cover):
        if fixed_points(fiber(tc, sp)):
            return sp
    return None


# ---------------------------------------------------------------------------
# components indexed by the center of G/Gbar


@dataclass
class Component:
    gamma: int
    points: list[int]
    geometrically_connected: bool
    pi_stable: bool


@dataclass
class Decomposition:
    components: list[Component]
    remainder: list[int]
    twisted: GammaSet
    w: int = 0


def decomposition_components(cover: CoverSpec, psi: Cocycle) -> Decomposition:
    """Split the twisted cover by the value ``t = v(g) w^-1`` in G/Gbar.

    Here ``w`` conjugates Lambda into v o psi.  Pi acts on t by conjugation
    through Lambda, so t is Pi-invariant exactly for central t.  Points with a
    non-central t form the remainder (empty when G/Gbar is abelian).
    """
    if not star_condition(cover, psi):
        raise GroupError("condition (star) fails: v o psi is not conjugate to Lambda")
    q, v = cover.scalar_quotient
    qgg = trivial_action(cover.gamma, q)
    w = twisted_conjugate_equiv(Cocycle(qgg, cover.lam.map),
                                Cocycle(qgg, tuple(v.map[x] for x in psi.c)))
    tc = twisted_cover(cover, psi)
    winv = q.inv(w)
    t_of = [q.mul(v.map[g], winv) for g in cover.g.elements]
    pibar = cover.pibar
    comps = []
    for z in center(q).members:
        pts = [g for g in cover.g.elements if t_of[g] == z]
        ptset = set(pts)
        stable = all(tc.action[p][x] in ptset for p in cover.pi.elements for x in pts)
        connected = False
        if stable and pts:
            gens = [tuple(tc.action[p][x] for x in pts) for p in pibar.members]
            index = {x: i for i, x in enumerate(pts)}
            gens = [tuple(index[y] for y in perm) for perm in gens]
            connected = len(orbits_of(gens, len(pts))) == 1
        comps.append(Component(z, pts, connected, stable))
    central = set(center(q).members)
    rest = [g for g in cover.g.elements if t_of[g] not in central]
    return Decomposition(comps, rest, tc, w)


def component_has_point(cover: CoverSpec, comp: Component, tc: GammaSet) -> Optional[SectionPoint]:
    """A section under which some point of the component is Gamma-fixed."""
    pts = set(comp.points)
    for sp in sections(cover):
        if pts.intersection(fixed_points(fiber(tc, sp))):
            return sp
    return None


def pac_census(cover: CoverSpec, psi: Cocycle) -> int:
    """Number of sections whose specialization is cohomologous to psi."""
    if not star_condition(cover, psi):
        raise GroupError("condition (star) fails: v o psi is not conjugate to Lambda")
    return sum(1 for sp in sections(cover)
               if twisted_conjugate_equiv(specialization(cover, sp), psi) is not None)


# ---------------------------------------------------------------------------
# two points at once


def double_point_set(cover: CoverSpec, s: SectionPoint, t: SectionPoint) -> GammaSet:
    """Fiber of the self-twisted torsor at (s, t): ``gamma . g = phi(s gamma) g phi(t gamma)^-1``."""
    gg = cover.trivial_gg
    p_t = torsor_from_cocycle(specialization(cover, t))
    p_s = torsor_from_cocycle(specialization(cover, s))
    if p_t.right != gg:
        raise GroupError("internal: specialization over wrong group")
    return twist_torsor(p_t, p_s).base


def double_point_test(cover: CoverSpec, s: SectionPoint, t: SectionPoint) -> bool:
    return bool(fixed_points(double_point_set(cover, s, t)))


# ---------------------------------------------------------------------------
# partial quotients


def _orbit_classes(p: Torsor, k: Subgroup) -> tuple[list[int], list[list[int]]]:
    cls = [-1] * p.size
    orbs: list[list[int]] = []
    for x in p.points:
        if cls[x] < 0:
            orb = sorted({p.ract[a][x] for a in k.members})
            for y in orb:
                cls[y] = len(orbs)
            orbs.append(orb)
    return cls, orbs


def _right_isos(p1: Torsor, p2: Torsor) -> list[tuple[int, ...]]:
    """All right-G-equivariant bijections (Gamma ignored)."""
    pos = p1.position(0)
    return [tuple(p2.ract[pos[x]][y] for x in p1.points) for y in p2.points]


def quotient_partiel_check(p1: Torsor, p2: Torsor, k: Subgroup) -> TwistReport:
    """Compare the fiber of Isom_G(P1, P2) over each Gamma-invariant s in
    Isom_{G/K}(R, R) with K-isomorphisms of fibers over R lying over s.

    R is P1/K, identified with P2/K through a Gamma-equivariant isomorphism
    of quotient torsors.  For each s the map ``(r, f) -> (r, f restricted to
    the fiber of r)`` must be a Gamma-equivariant bijection from
    ``R x fiber(s)`` onto pairs (r, K-isomorphism of the fibers over r and s(r)).
    """
    rep = TwistReport("partial-quotient")
    if p1.right != p2.right:
        raise GroupError("group mismatch: torsors under different Gamma-groups")
    grp = p1.right.g
    if not k.is_normal():
        raise GroupError("subgroup not normal")
    cls1, orbs1 = _orbit_classes(p1, k)
    cls2, orbs2 = _orbit_classes(p2, k)
    n_r = len(orbs1)
    # G acts on R through G/K; R-maps are determined by the image of class 0
    def r_perm(p, cls, orbs, g):
        return tuple(cls[p.ract[g][o[0]]] for o in orbs)

    def r_gamma(p, cls, orbs, c):
        return tuple(cls[p.act(c, o[0])] for o in orbs)

    rho = None
    for y in range(n_r):
        # candidate R-map sending class 0 of P1 to class y of P2
        pos = p1.position(orbs1[0][0])
        m = [-1] * n_r
        ok = True
        for x in p1.points:
            img = cls2[p2.ract[pos[x]][orbs2[y][0]]]
            if m[cls1[x]] not in (-1, img):
                ok = False
                break
            m[cls1[x]] = img
        if not ok:
            continue
        if all(m[r_gamma(p1, cls1, orbs1, c)[r]] == r_gamma(p2, cls2, orbs2, c)[m[r]]
               for c in p1.gamma.elements for r in range(n_r)):
            rho = m
            break
    if rho is None:
        raise GroupError("no common quotient: P1/K and P2/K are not isomorphic")
    rho_inv = [0] * n_r
    for a, b in enumerate(rho):
        rho_inv[b] = a
    # projection of P2 onto R = P1/K
    pr2 = [rho_inv[cls2[x]] for x in p2.points]
    pr1 = cls1
    # Isom_{G/K}(R, R): maps r0 -> r, as permutations of R
    r_maps = []
    g_on_r = {}
    for g in grp.elements:
        g_on_r[g] = r_perm(p1, cls1, orbs1, g)
    for r in range(n_r):
        m = [-1] * n_r
        for g in grp.elements:
            m[g_on_r[g][0]] = g_on_r[g][r]
        r_maps.append(tuple(m))
    gam_r = [r_gamma(p1, cls1, orbs1, c) for c in p1.gamma.elements]

    def conj_r(c, s):
        a = gam_r[c]
        inv = [0] * n_r
        for x, y in enumerate(a):
            inv[y] = x
        return tuple(a[s[inv[x]]] for x in range(n_r))

    invariant = [s for s in r_maps if all(conj_r(c, s) == s for c in p1.gamma.generators)]
    isos = _right_isos(p1, p2)
    for s in invariant:
        fib = [f for f in isos if all(pr2[f[x]] == s[pr1[x]] for x in p1.points)]
        pairs = set()
        injective = True
        for r in range(n_r):
            for f in fib:
                key = (r, tuple((x, f[x]) for x in orbs1[r]))
                if key in pairs:
                    injective = False
                pairs.add(key)
        # every K-isomorphism between fiber(r) and fiber(s(r))
        targets = set()
        for r in range(n_r):
            src = orbs1[r]
            dst = [y for y in p2.points if pr2[y] == s[r]]
            for y in dst:
                m = tuple((p1.ract[a][src[0]], p2.ract[a][y]) for a in k.members)
                targets.add((r, tuple(sorted(m))))
        surjective = targets == pairs
        # Gamma acts on pairs by conjugation; both sides must be stable
        stable = True
        for c in p1.gamma.generators:
            for r, graph in pairs:
                img = (gam_r[c][r], tuple(sorted((p1.act(c, x), p2.act(c, y)) for x, y in graph)))
                if img not in pairs:
                    stable = False
        ok = injective and surjective and stable and len(fib) == k.order
        label = f"s={list(s)}"
        rep.record(label, {"fiber": len(fib), "pairs": len(pairs)} if ok else None)
    return rep


# ---------------------------------------------------------------------------
# embeddings of a Galois group


def _image_group(hom_table, target: FiniteGroup) -> tuple[FiniteGroup, GroupHom, tuple[int, ...]]:
    """(H, mu: H -> target, psi: Gamma -> H) for the image of a hom table."""
    h = Subgroup(target, sorted(set(hom_table)))
    hg, mu = h.as_group()
    back = {y: x for x, y in enumerate(mu.map)}
    return hg, mu, tuple(back[y] for y in hom_table)


def _conjugate_homs(a: tuple[int, ...], b: tuple[int, ...], target: FiniteGroup) -> bool:
    return any(all(target.conj(g, x) == y for x, y in zip(a, b)) for g in target.elements)


def _up_to_inner(homs: list[GroupHom], g: FiniteGroup) -> list[GroupHom]:
    seen = set()
    out = []
    for h in homs:
        if h.map in seen:
            continue
        out.append(h)
        for x in g.elements:
            seen.add(tuple(g.conj(x, y) for y in h.map))
    return out


@dataclass
class EmbeddingResult:
    conditions: tuple[bool, bool, bool]
    embeddings: list[GroupHom]
    witnesses: list[tuple[GroupHom, SectionPoint]] = field(default_factory=list)


def galois_embedding_test(cover: CoverSpec, psi_h: GroupHom) -> EmbeddingResult:
    """Can a fiber be (G:H) copies of the Galois algebra with group H?

    ``psi_h: Gamma ->> H``.  Embeddings j: H -> G with v o j surjective are
    taken up to conjugation in G.  Returns the three conditions:

    1. some section s has ker(phi o s) == ker(psi_h);
    2. some j has a rational point on the twisted cover for j o psi_h;
    3. some j and some central t in G/Gbar have a component with a rational point.
    """
    hgrp = psi_h.target
    if not psi_h.is_surjective:
        raise GroupError("psi must be surjective onto H")
    q, v = cover.scalar_quotient
    embs = [j for j in enumerate_homs(hgrp, cover.g, injective=True)
            if len({v.map[y] for y in j.map}) == q.order]
    embs = _up_to_inner(embs, cover.g)
    ker_psi = set(psi_h.kernel().members)
    cond1 = any({x for x in cover.gamma.elements if cover.phi.map[sp.s.map[x]] == 0} == ker_psi
                for sp in sections(cover))
    witnesses = []
    cond3 = False
    for j in embs:
        psi = target_cocycle(cover, [j.map[y] for y in psi_h.map])
        sp = specialization_exists_twisted(cover, psi)
        if sp is not None:
            witnesses.append((j, sp))
        if star_condition(cover, psi) and not cond3:
            dec = decomposition_components(cover, psi)
            cond3 = any(component_has_point(cover, comp, dec.twisted) is not None
                        for comp in dec.components)
    return EmbeddingResult((cond1, bool(witnesses), cond3), embs, witnesses)


# ---------------------------------------------------------------------------
# degree-n covers that need not be Galois


@dataclass
class NonGaloisResult:
    isomorphic: bool
    embeddings: list[GroupHom]
    witnesses: list[tuple[GroupHom, SectionPoint]]


def nongalois_test(cover: CoverSpec, nu: GroupHom, psi_prime: GroupHom) -> NonGaloisResult:
    """Is some fiber of the degree-n cover ``nu o phi`` isomorphic to the algebra of ``psi_prime``?

    ``nu: G -> S_n`` and ``psi_prime: Gamma -> S_n``.  With H the image of
    psi_prime, runs over embeddings eta: H -> G (up to conjugation in G) with
    ``nu o eta`` conjugate to the inclusion of H in S_n, pushes the H-torsor
    of psi along eta and looks for a rational point on the twisted cover.
    """
    sn = nu.target
    if nu.source != cover.g:
        raise GroupError("nu must start at G")
    if not nu.is_injective:
        raise GroupError("nu is not injective")
    if psi_prime.target != sn or psi_prime.source != cover.gamma:
        raise GroupError("psi' must be a hom Gamma -> S_n")
    hgrp, mu, psi = _image_group(psi_prime.map, sn)
    if not mu.is_injective:
        raise GroupError("mu is not injective")
    embs = [eta for eta in enumerate_homs(hgrp, cover.g, injective=True)
            if _conjugate_homs(mu.map, tuple(nu.map[y] for y in eta.map), sn)]
    embs = _up_to_inner(embs, cover.g)
    h_torsor = torsor_from_cocycle(Cocycle(trivial_action(cover.gamma, hgrp), psi))
    witnesses = []
    for eta in embs:
        p_prime = pushforward(h_torsor, eta, cover.trivial_gg)
        target = cocycle_from_torsor(p_prime, 0)
        tc = twisted_cover(cover, target)
        for sp in sections(cover):
            if fixed_points(fiber(tc, sp)):
                witnesses.append((eta, sp))
    return NonGaloisResult(bool(witnesses), embs, witnesses)


def nongalois_oracle(cover: CoverSpec, nu: GroupHom, psi_prime: GroupHom) -> Optional[SectionPoint]:
    """First section with ``nu o phi o s`` conjugate in S_n to psi'."""
    sn = nu.target
    for sp in sections(cover):
        spec = tuple(nu.map[cover.phi.map[y]] for y in sp.s.map)
        if _conjugate_homs(spec, psi_prime.map, sn):
            return sp
    return None
