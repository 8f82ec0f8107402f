"""Finite Gamma-sets and G-objects.

A finite Gamma-set stands for a finite etale algebra over a field whose
absolute Galois group surjects onto Gamma: points are the geometric points,
Gamma-orbits the connected components, fixed points the rational points.
A G-object additionally carries a Gamma-equivariant left action of a
Gamma-group G.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .gammagroup import GammaGroup, restrict_gamma_group
from .groups import FiniteGroup, GroupError, GroupHom, Subgroup, trivial_subgroup

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GammaSet:
    """``action[gamma][x]`` is gamma . x."""

    gamma: FiniteGroup
    action: tuple[Perm, ...]

    @property
    def size(self) -> int:
        return len(self.action[0])

    @property
    def points(self) -> range:
        return range(len(self.action[0]))

    def __eq__(self, other):
        if not isinstance(other, GammaSet):
            return NotImplemented
        return self.action == other.action and self.gamma == other.gamma

    def __hash__(self):
        return hash(self.action)

    def __repr__(self):
        return f"GammaSet({self.gamma.name}, size={self.size})"

    def validate(self) -> "GammaSet":
        validate_action(self.gamma, self.action, "Gamma")
        return self


def validate_action(grp: FiniteGroup, action: Sequence[Perm], what: str = "group") -> None:
    """Check that ``action`` is a left action of ``grp``."""
    if len(action) != grp.order:
        raise GroupError(f"{what} action needs {grp.order} rows, got {len(action)}")
    n = len(action[0])
    pts = list(range(n))
    for c, row in enumerate(action):
        if sorted(row) != pts:
            raise GroupError(f"{what} action of {c} is not a permutation")
    if list(action[0]) != pts:
        raise GroupError(f"identity of {what} does not act trivially")
    for c in grp.elements:
        rc = action[c]
        for d in grp.elements:
            rcd, rd = action[grp.mul(c, d)], action[d]
            for x in pts:
                if rcd[x] != rc[rd[x]]:
                    raise GroupError(f"{what} action not compatible at ({c}, {d}), point {x}")


@dataclass(frozen=True, eq=False)
class GObject:
    """A Gamma-set with a Gamma-equivariant left action of the Gamma-group ``gg``.

    Equivariance: gamma . (g . x) == (gamma * g) . (gamma . x).
    """

    base: GammaSet
    gg: GammaGroup
    gaction: tuple[Perm, ...]

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def points(self) -> range:
        return self.base.points

    @property
    def gamma(self) -> FiniteGroup:
        return self.base.gamma

    def __eq__(self, other):
        if not isinstance(other, GObject):
            return NotImplemented
        return (self.base == other.base and self.gaction == other.gaction
                and self.gg == other.gg)

    def __hash__(self):
        return hash((self.base.action, self.gaction))

    def __repr__(self):
        return f"GObject({self.gg!r}, size={self.size})"

    def validate(self) -> "GObject":
        if self.gg.gamma != self.base.gamma:
            raise GroupError("G-object: Gamma of the set and of the group differ")
        self.base.validate()
        validate_action(self.gg.g, self.gaction, "G")
        if len(self.gaction[0]) != self.size:
            raise GroupError("G-action and Gamma-action have different point counts")
        witness = equivariance_witness(self)
        if witness is not None:
            raise GroupError(f"G-action not Gamma-equivariant at (gamma, g, x) = {witness}")
        return self


def equivariance_witness(obj: GObject) -> Optional[tuple[int, int, int]]:
    act, gact, star = obj.base.action, obj.gaction, obj.gg.act
    for c in obj.gamma.elements:
        ac, sc = act[c], star[c]
        for g in obj.gg.g.elements:
            lhs_g, rhs_g = gact[g], gact[sc[g]]
            for x in obj.points:
                if ac[lhs_g[x]] != rhs_g[ac[x]]:
                    return c, g, x
    return None


# ---------------------------------------------------------------------------
# orbits and fixed points


def orbits_of(perms: Sequence[Perm], n: int) -> list[list[int]]:
    """Orbits of the group generated by ``perms`` on 0..n-1, sorted by minimum."""
    seen = [False] * n
    out = []
    for x in range(n):
        if seen[x]:
            continue
        orb = [x]
        seen[x] = True
        i = 0
        while i < len(orb):
            y = orb[i]
            for p in perms:
                z = p[y]
                if not seen[z]:
                    seen[z] = True
                    orb.append(z)
            i += 1
        out.append(sorted(orb))
    return out


def orbits(s: GammaSet) -> list[list[int]]:
    return orbits_of([s.action[c] for c in s.gamma.generators], s.size)


def fixed_points(s: GammaSet) -> list[int]:
    gens = [s.action[c] for c in s.gamma.generators]
    return [x for x in s.points if all(p[x] == x for p in gens)]


def stabilizer(s: GammaSet, x: int) -> Subgroup:
    return Subgroup(s.gamma, tuple(c for c in s.gamma.elements if s.action[c][x] == x))


def pullback(s: GammaSet, hom: GroupHom) -> GammaSet:
    """The Gamma'-set obtained through ``hom: Gamma' -> Gamma``."""
    return GammaSet(hom.source, tuple(s.action[hom.map[c]] for c in hom.source.elements))


def restrict(s: GammaSet, sub: Subgroup) -> GammaSet:
    _, inc = sub.as_group()
    return pullback(s, inc)


def is_geometrically_connected(s: GammaSet, geometric: Subgroup) -> bool:
    """True iff ``geometric`` (playing the Galois group over the separable closure
    of the constant field) acts transitively."""
    return len(orbits(restrict(s, geometric))) == 1


def pullback_object(obj: GObject, hom: GroupHom) -> GObject:
    return GObject(pullback(obj.base, hom), restrict_gamma_group(obj.gg, hom), obj.gaction)


def restrict_object(obj: GObject, sub: Subgroup) -> GObject:
    _, inc = sub.as_group()
    return pullback_object(obj, inc)


def forget_gamma(obj: GObject) -> GObject:
    """Restriction to the trivial subgroup of Gamma: base change to the separable closure."""
    return restrict_object(obj, trivial_subgroup(obj.gamma))


# ---------------------------------------------------------------------------
# equivariant bijections


def iter_bijections(n_a: int, n_b: int, pairs: Sequence[tuple[Perm, Perm]]) -> Iterator[tuple[int, ...]]:
    """Bijections f with f o pa == pb o f for every (pa, pb), in lexicographic order.

    Backtracks on orbit representatives; each choice propagates through the pairs.
    """
    if n_a != n_b:
        return
    n = n_a
    f = [-1] * n
    used = [False] * n

    def assign(x, y):
        done = []
        stack = [(x, y)]
        while stack:
            x0, y0 = stack.pop()
            if f[x0] >= 0:
                if f[x0] != y0:
                    return done, False
                continue
            if used[y0]:
                return done, False
            f[x0] = y0
            used[y0] = True
            done.append(x0)
            for pa, pb in pairs:
                stack.append((pa[x0], pb[y0]))
        return done, True

    def undo(done):
        for x0 in done:
            used[f[x0]] = False
            f[x0] = -1

    def rec(start):
        x = start
        while x < n and f[x] >= 0:
            x += 1
        if x == n:
            yield tuple(f)
            return
        for y in range(n):
            if used[y]:
                continue
            done, ok = assign(x, y)
            if ok:
                yield from rec(x + 1)
            undo(done)

    yield from rec(0)


def _pairs(a: GObject, b: GObject) -> list[tuple[Perm, Perm]]:
    pairs = [(a.base.action[c], b.base.action[c]) for c in a.gamma.generators]
    pairs += [(a.gaction[g], b.gaction[g]) for g in a.gg.g.generators]
    return pairs


def _check_same(a: GObject, b: GObject) -> None:
    if a.gg != b.gg:
        raise GroupError("objects are over different Gamma-groups")


def equivariant_isoms(a: GObject, b: GObject) -> list[tuple[int, ...]]:
    """All bijections commuting with both the Gamma- and the G-action."""
    _check_same(a, b)
    return list(iter_bijections(a.size, b.size, _pairs(a, b)))


def find_isomorphism(a: GObject, b: GObject) -> Optional[tuple[int, ...]]:
    _check_same(a, b)
    return next(iter_bijections(a.size, b.size, _pairs(a, b)), None)


def gamma_set_isomorphism(a: GammaSet, b: GammaSet) -> Optional[tuple[int, ...]]:
    pairs = [(a.action[c], b.action[c]) for c in a.gamma.generators]
    return next(iter_bijections(a.size, b.size, pairs), None)


def is_isomorphism(f: Sequence[int], a: GObject, b: GObject) -> bool:
    """Check a candidate bijection on every element (not just generators)."""
    if sorted(f) != list(b.points) or len(f) != a.size:
        return False
    for c in a.gamma.elements:
        pa, pb = a.base.action[c], b.base.action[c]
        if any(f[pa[x]] != pb[f[x]] for x in a.points):
            return False
    for g in a.gg.g.elements:
        pa, pb = a.gaction[g], b.gaction[g]
        if any(f[pa[x]] != pb[f[x]] for x in a.points):
            return False
    return True


def is_morphism(f: Sequence[int], a: GObject, b: GObject) -> bool:
    """Equivariant map (not necessarily bijective)."""
    for c in a.gamma.elements:
        pa, pb = a.base.action[c], b.base.action[c]
        if any(f[pa[x]] != pb[f[x]] for x in a.points):
            return False
    for g in a.gg.g.elements:
        pa, pb = a.gaction[g], b.gaction[g]
        if any(f[pa[x]] != pb[f[x]] for x in a.points):
            return False
    return True


# ---------------------------------------------------------------------------
# standard objects


def regular_object(gg: GammaGroup) -> GObject:
    """G acting on itself by left translation; Gamma acts through its action on G."""
    g = gg.g
    gact = tuple(tuple(g.mul(a, x) for x in g.elements) for a in g.elements)
    return GObject(GammaSet(gg.gamma, gg.act), gg, gact)


def conjugation_object(gg: GammaGroup) -> GObject:
    g = gg.g
    gact = tuple(tuple(g.conj(a, x) for x in g.elements) for a in g.elements)
    return GObject(GammaSet(gg.gamma, gg.act), gg, gact)


def point_object(gg: GammaGroup) -> GObject:
    return GObject(GammaSet(gg.gamma, ((0,),) * gg.gamma.order), gg, ((0,),) * gg.g.order)


def coset_object(gg: GammaGroup, h: Subgroup) -> GObject:
    """Left cosets G/H with left translation; H must be Gamma-stable."""
    if not gg.is_stable(h):
        raise GroupError("subgroup is not Gamma-stable")
    g = gg.g
    coset_of = [-1] * g.order
    reps = []
    for x in g.elements:
        if coset_of[x] < 0:
            for y in h.members:
                coset_of[g.mul(x, y)] = len(reps)
            reps.append(x)
    gact = tuple(tuple(coset_of[g.mul(a, r)] for r in reps) for a in g.elements)
    act = tuple(tuple(coset_of[gg.act[c][r]] for r in reps) for c in gg.gamma.elements)
    return GObject(GammaSet(gg.gamma, act), gg, gact)


def trivial_g_object(gg: GammaGroup, s: GammaSet) -> GObject:
    """A Gamma-set with trivial G-action."""
    ident = tuple(s.points)
    return GObject(s, gg, (ident,) * gg.g.order)


def disjoint_union(a: GObject, b: GObject) -> GObject:
    _check_same(a, b)
    n = a.size

    def join(p, q):
        return tuple(p) + tuple(n + y for y in q)

    act = tuple(join(p, q) for p, q in zip(a.base.action, b.base.action))
    gact = tuple(join(p, q) for p, q in zip(a.gaction, b.gaction))
    return GObject(GammaSet(a.gamma, act), a.gg, gact)


def product_object(a: GObject, b: GObject) -> GObject:
    """Diagonal actions on pairs; the pair (x, y) is the point x * |b| + y."""
    _check_same(a, b)
    m = b.size

    def pair(p, q):
        return tuple(p[i // m] * m + q[i % m] for i in range(a.size * m))

    act = tuple(pair(p, q) for p, q in zip(a.base.action, b.base.action))
    gact = tuple(pair(p, q) for p, q in zip(a.gaction, b.gaction))
    return GObject(GammaSet(a.gamma, act), a.gg, gact)


def relabel(obj: GObject, sigma: Sequence[int]) -> GObject:
    """Transport the structure along the bijection ``x -> sigma[x]``."""
    inv = [0] * len(sigma)
    for x, y in enumerate(sigma):
        inv[y] = x

    def conj(p):
        return tuple(sigma[p[inv[y]]] for y in range(len(sigma)))

    return GObject(GammaSet(obj.gamma, tuple(conj(p) for p in obj.base.action)),
                   obj.gg, tuple(conj(p) for p in obj.gaction))


def inflate(obj: GObject, gg: GammaGroup, theta: GroupHom) -> GObject:
    """Regard an object over G/K as an object over G through ``theta: G -> G/K``."""
    return GObject(obj.base, gg, tuple(obj.gaction[theta.map[g]] for g in gg.g.elements))


def orbit_space(obj: GObject, k: Subgroup) -> tuple[GObject, tuple[int, ...]]:
    """xi/K for a normal Gamma-stable K, still as an object over G, plus the projection."""
    g = obj.gg.g
    orbs = orbits_of([obj.gaction[x] for x in k.members], obj.size)
    proj = [0] * obj.size
    for i, o in enumerate(orbs):
        for x in o:
            proj[x] = i

    def push(p):
        return tuple(proj[p[o[0]]] for o in orbs)

    act = tuple(push(p) for p in obj.base.action)
    gact = tuple(push(obj.gaction[a]) for a in g.elements)
    return GObject(GammaSet(obj.gamma, act), obj.gg, gact), tuple(proj)
