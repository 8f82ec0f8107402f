"""Groups carrying an action of a fixed finite group Gamma by automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groups import (FiniteGroup, GroupError, GroupHom, Subgroup, automorphisms,
                     enumerate_homs, group_from_perm_list, quotient)

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GammaGroup:
    """``act[gamma][g]`` is the image of g under the automorphism attached to gamma."""

    gamma: FiniteGroup
    g: FiniteGroup
    act: tuple[Perm, ...]

    def __eq__(self, other):
        if not isinstance(other, GammaGroup):
            return NotImplemented
        return self is other or (self.act == other.act and self.g == other.g
                                 and self.gamma == other.gamma)

    def __hash__(self):
        return hash(self.act)

    def __repr__(self):
        return f"GammaGroup({self.gamma.name} on {self.g.name})"

    def star(self, gamma: int, x: int) -> int:
        return self.act[gamma][x]

    @property
    def is_trivial_action(self) -> bool:
        ident = tuple(self.g.elements)
        return all(a == ident for a in self.act)

    def validate(self) -> "GammaGroup":
        gam, g = self.gamma, self.g
        if len(self.act) != gam.order:
            raise GroupError("action table needs one row per element of Gamma")
        ident = tuple(g.elements)
        if self.act[0] != ident:
            raise GroupError("identity of Gamma does not act trivially")
        for c, a in enumerate(self.act):
            if sorted(a) != list(ident):
                raise GroupError(f"action of {c} is not a permutation")
            for x in g.elements:
                for y in g.elements:
                    if a[g.mul(x, y)] != g.mul(a[x], a[y]):
                        raise GroupError(f"action of {c} is not an automorphism at ({x}, {y})")
        for c in gam.elements:
            for d in gam.elements:
                cd = self.act[gam.mul(c, d)]
                ac, ad = self.act[c], self.act[d]
                if any(cd[x] != ac[ad[x]] for x in g.elements):
                    raise GroupError(f"action is not a homomorphism at ({c}, {d})")
        return self

    def is_stable(self, k: Subgroup) -> bool:
        return all(a[x] in k for a in self.act for x in k.members)


def trivial_action(gamma: FiniteGroup, g: FiniteGroup) -> GammaGroup:
    ident = tuple(g.elements)
    return GammaGroup(gamma, g, (ident,) * gamma.order)


def action_from_automorphisms(gamma: FiniteGroup, g: FiniteGroup, hom: GroupHom,
                              auts: Sequence[Perm]) -> GammaGroup:
    """Gamma-group from a hom Gamma -> Aut(G), where Aut(G) elements index ``auts``."""
    return GammaGroup(gamma, g, tuple(auts[hom.map[c]] for c in gamma.elements)).validate()


def automorphism_group(g: FiniteGroup) -> tuple[FiniteGroup, tuple[Perm, ...]]:
    """Aut(G) as a group of permutations of element identifiers."""
    auts = sorted(a.map for a in automorphisms(g))
    return group_from_perm_list(auts, f"Aut({g.name})"), tuple(auts)


def all_actions(gamma: FiniteGroup, g: FiniteGroup) -> list[GammaGroup]:
    """Every Gamma-group structure on G, trivial one first, then by hom table."""
    aut, perms = automorphism_group(g)
    return [GammaGroup(gamma, g, tuple(perms[h.map[c]] for c in gamma.elements))
            for h in enumerate_homs(gamma, aut)]


def first_nontrivial_action(gamma: FiniteGroup, g: FiniteGroup) -> Optional[GammaGroup]:
    for gg in all_actions(gamma, g):
        if not gg.is_trivial_action:
            return gg
    return None


def quotient_gamma_group(gg: GammaGroup, k: Subgroup) -> tuple[GammaGroup, GroupHom]:
    """Induced Gamma-action on G/K; K must be normal and Gamma-stable."""
    if not gg.is_stable(k):
        raise GroupError("normal subgroup is not stable under Gamma")
    q, theta = quotient(gg.g, k)
    act = []
    for a in gg.act:
        row = [0] * q.order
        for x in gg.g.elements:
            row[theta.map[x]] = theta.map[a[x]]
        act.append(tuple(row))
    return GammaGroup(gg.gamma, q, tuple(act)), theta


def is_equivariant_hom(src: GammaGroup, dst: GammaGroup, hom: GroupHom) -> bool:
    m = hom.map
    return all(m[src.act[c][x]] == dst.act[c][m[x]]
               for c in src.gamma.elements for x in src.g.elements)


def restrict_gamma_group(gg: GammaGroup, inc: GroupHom) -> GammaGroup:
    """Pull the action back along a hom ``inc: Gamma' -> Gamma``."""
    return GammaGroup(inc.source, gg.g, tuple(gg.act[inc.map[c]] for c in inc.source.elements))
