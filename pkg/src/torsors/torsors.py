"""Cocycles, torsors and bitorsors over a Gamma-group.

Conventions
-----------
A right G-torsor is a Gamma-set P with a simply transitive right action of G
satisfying ``gamma.(x.g) = (gamma.x).(gamma*g)``.  Right actions are stored as
tables ``ract[g][x] = x.g``, i.e. as left actions of the opposite group, so
they share their shape with every other action table.

A cocycle is a map ``c: Gamma -> G`` with ``c(gd) = c(g) . (g * c(d))``.
The torsor of ``c`` is G itself, with ``x.g = xg`` and
``gamma.x = c(gamma) . (gamma * x)``; reading off a basepoint ``b`` through
``gamma.b = b.c(gamma)`` recovers ``c`` when ``b`` is the identity.  Moving the
basepoint to ``b.g`` replaces ``c`` by ``g^-1 c(gamma) (gamma*g)``.

A bitorsor additionally carries a commuting, simply transitive left action of
a second Gamma-group.  The torsor built from ``c`` is a bitorsor for the inner
form of ``c`` acting by left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from .gammagroup import GammaGroup, is_equivariant_hom
from .gammasets import GammaSet, GObject, iter_bijections, fixed_points
from .groups import FiniteGroup, GroupError, GroupHom

Perm = tuple[int, ...]


class CocycleError(GroupError):
    def __init__(self, msg: str, witness: Optional[tuple[int, int]] = None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Cocycle:
    gg: GammaGroup
    c: tuple[int, ...]

    def __call__(self, gamma: int) -> int:
        return self.c[gamma]

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.c == other.c and self.gg == other.gg

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Cocycle({list(self.c)})"


def cocycle_witness(gg: GammaGroup, c: Sequence[int]) -> Optional[tuple[int, int]]:
    gam, g = gg.gamma, gg.g
    if c[0] != 0:
        return 0, 0
    for x in gam.elements:
        cx, ax = c[x], gg.act[x]
        for y in gam.elements:
            if c[gam.mul(x, y)] != g.mul(cx, ax[c[y]]):
                return x, y
    return None


def validate_cocycle(gg: GammaGroup, c: Sequence[int]) -> Cocycle:
    if len(c) != gg.gamma.order:
        raise CocycleError(f"cocycle table needs {gg.gamma.order} entries, got {len(c)}")
    if any(not 0 <= v < gg.g.order for v in c):
        raise CocycleError("cocycle value out of range")
    w = cocycle_witness(gg, c)
    if w is not None:
        raise CocycleError(f"cocycle condition fails at {w}", w)
    return Cocycle(gg, tuple(c))


def trivial_cocycle(gg: GammaGroup) -> Cocycle:
    return Cocycle(gg, (0,) * gg.gamma.order)


def hom_cocycle(gg: GammaGroup, hom: GroupHom) -> Cocycle:
    """For a trivial action a cocycle is the same thing as a homomorphism."""
    return validate_cocycle(gg, hom.map)


def _gamma_steps(gam: FiniteGroup) -> list[tuple[int, int, int]]:
    steps, seen, frontier = [], {0}, [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gam.generators:
                y = gam.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    steps.append((x, s, y))
        frontier = nxt
    return steps


def iter_cocycles(gg: GammaGroup, brute: bool = False) -> Iterator[Cocycle]:
    """Every cocycle, in lexicographic order of tables.

    The default mode chooses values on generators of Gamma and extends along
    a spanning tree; ``brute=True`` tries all |G|^(|Gamma|-1) tables instead.
    """
    gam, g = gg.gamma, gg.g
    if brute:
        for vals in product(g.elements, repeat=gam.order - 1):
            c = (0,) + vals
            if cocycle_witness(gg, c) is None:
                yield Cocycle(gg, c)
        return
    gens = gam.generators
    steps = _gamma_steps(gam)
    found = []
    for vals in product(g.elements, repeat=len(gens)):
        c = [0] * gam.order
        on_gen = dict(zip(gens, vals))
        for x, s, y in steps:
            c[y] = g.mul(c[x], gg.act[x][on_gen[s]])
        ok = all(c[gam.mul(x, s)] == g.mul(c[x], gg.act[x][on_gen[s]])
                 for x in gam.elements for s in gens)
        if ok:
            found.append(tuple(c))
    for c in sorted(found):
        yield Cocycle(gg, c)


def cocycles(gg: GammaGroup, brute: bool = False) -> list[Cocycle]:
    return list(iter_cocycles(gg, brute))


# ---------------------------------------------------------------------------
# twisted conjugacy and H^1


def twisted_conjugate(c: Cocycle, g: int) -> Cocycle:
    """gamma -> g^-1 c(gamma) (gamma * g)"""
    grp, act = c.gg.g, c.gg.act
    gi = grp.inv(g)
    return Cocycle(c.gg, tuple(grp.mul(grp.mul(gi, c.c[x]), act[x][g]) for x in c.gg.gamma.elements))


def twisted_conjugate_equiv(c1: Cocycle, c2: Cocycle) -> Optional[int]:
    """Some g with c2(gamma) = g^-1 c1(gamma) (gamma*g), or None."""
    if c1.gg != c2.gg:
        raise GroupError("cocycles over different Gamma-groups")
    grp, act = c1.gg.g, c1.gg.act
    for g in grp.elements:
        gi = grp.inv(g)
        if all(c2.c[x] == grp.mul(grp.mul(gi, c1.c[x]), act[x][g]) for x in c1.gg.gamma.elements):
            return g
    return None


@dataclass(frozen=True)
class H1Class:
    representative: Cocycle
    size: int
    members: tuple[tuple[int, ...], ...]


def h1(gg: GammaGroup, brute: bool = False) -> list[H1Class]:
    """H^1(Gamma, G): cocycles partitioned by twisted conjugacy.

    Classes are ordered by size, then by the lexicographically least
    representative.
    """
    all_c = [z.c for z in iter_cocycles(gg, brute)]
    index = {c: i for i, c in enumerate(all_c)}
    cls_of = [-1] * len(all_c)
    classes: list[list[tuple[int, ...]]] = []
    for i, c in enumerate(all_c):
        if cls_of[i] >= 0:
            continue
        members = sorted({twisted_conjugate(Cocycle(gg, c), g).c for g in gg.g.elements})
        for m in members:
            cls_of[index[m]] = len(classes)
        classes.append(members)
    out = [H1Class(Cocycle(gg, m[0]), len(m), tuple(m)) for m in classes]
    out.sort(key=lambda k: (k.size, k.representative.c))
    return out


def class_index(classes: Sequence[H1Class], c: Cocycle) -> int:
    for i, k in enumerate(classes):
        if c.c in k.members:
            return i
    raise GroupError("cocycle not found in any class")


def inner_form(c: Cocycle) -> GammaGroup:
    """G with the Gamma-action gamma -> c(gamma) (gamma*g) c(gamma)^-1."""
    cached = c.__dict__.get("_inner")
    if cached is not None:
        return cached
    grp, gg = c.gg.g, c.gg
    act = []
    for x in gg.gamma.elements:
        cx, a = c.c[x], gg.act[x]
        act.append(tuple(grp.conj(cx, a[g]) for g in grp.elements))
    result = GammaGroup(gg.gamma, grp, tuple(act))
    c.__dict__["_inner"] = result
    return result


def push_cocycle(c: Cocycle, hom: GroupHom, target: GammaGroup) -> Cocycle:
    if not is_equivariant_hom(c.gg, target, hom):
        raise GroupError("hom is not Gamma-equivariant")
    return Cocycle(target, tuple(hom.map[v] for v in c.c))


# ---------------------------------------------------------------------------
# torsors


@dataclass(frozen=True, eq=False)
class Torsor:
    """Right torsor under ``right``; optionally also a left action of ``left``.

    ``ract[g][x] = x.g`` and ``lact[h][x] = h.x``.  When the left action is
    simply transitive as well the value is a bitorsor.
    """

    base: GammaSet
    right: GammaGroup
    ract: tuple[Perm, ...]
    left: Optional[GammaGroup] = None
    lact: Optional[tuple[Perm, ...]] = None

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def points(self) -> range:
        return self.base.points

    @property
    def gamma(self) -> FiniteGroup:
        return self.base.gamma

    def __repr__(self):
        lft = f"{self.left.g.name}, " if self.left else ""
        return f"Torsor(({lft}{self.right.g.name}), size={self.size})"

    def act(self, gamma: int, x: int) -> int:
        return self.base.action[gamma][x]

    def position(self, basepoint: int = 0) -> list[int]:
        """pos[y] = the unique g with basepoint.g == y."""
        pos = [-1] * self.size
        for g in self.right.g.elements:
            pos[self.ract[g][basepoint]] = g
        return pos

    @property
    def is_bitorsor(self) -> bool:
        if self.left is None or self.lact is None:
            return False
        return all(len({self.lact[h][x] for h in self.left.g.elements}) == self.size
                   for x in self.points) and self.left.g.order == self.size

    def validate(self) -> "Torsor":
        g = self.right.g
        if self.right.gamma != self.gamma:
            raise GroupError("torsor and group have different Gamma")
        if g.order != self.size:
            raise GroupError("torsor size differs from group order")
        for x in self.points:
            if len({self.ract[a][x] for a in g.elements}) != self.size:
                raise GroupError(f"right action not simply transitive at point {x}")
        for a in g.elements:
            for b in g.elements:
                ab = self.ract[g.mul(a, b)]
                ra, rb = self.ract[a], self.ract[b]
                if any(ab[x] != rb[ra[x]] for x in self.points):
                    raise GroupError(f"not a right action at ({a}, {b})")
        for c in self.gamma.elements:
            ac, sc = self.base.action[c], self.right.act[c]
            for a in g.elements:
                ra, rsa = self.ract[a], self.ract[sc[a]]
                if any(ac[ra[x]] != rsa[ac[x]] for x in self.points):
                    raise GroupError(f"right action not Gamma-equivariant at ({c}, {a})")
        self.base.validate()
        if self.left is not None:
            h = self.left.g
            for c in self.gamma.elements:
                ac, sc = self.base.action[c], self.left.act[c]
                for a in h.elements:
                    la, lsa = self.lact[a], self.lact[sc[a]]
                    if any(ac[la[x]] != lsa[ac[x]] for x in self.points):
                        raise GroupError(f"left action not Gamma-equivariant at ({c}, {a})")
            for a in h.elements:
                la = self.lact[a]
                for b in g.elements:
                    rb = self.ract[b]
                    if any(la[rb[x]] != rb[la[x]] for x in self.points):
                        raise GroupError(f"left and right actions do not commute at ({a}, {b})")
        return self


Bitorsor = Torsor


def _regular_perms(grp: FiniteGroup, left: bool) -> tuple[Perm, ...]:
    if left:
        return tuple(tuple(grp.mul(a, x) for x in grp.elements) for a in grp.elements)
    return tuple(tuple(grp.mul(x, a) for x in grp.elements) for a in grp.elements)


def torsor_from_cocycle(c: Cocycle) -> Torsor:
    """The (inner form, G)-bitorsor of ``c`` with underlying set G."""
    gg, grp = c.gg, c.gg.g
    action = tuple(tuple(grp.mul(c.c[x], gg.act[x][y]) for y in grp.elements)
                   for x in gg.gamma.elements)
    return Torsor(GammaSet(gg.gamma, action), gg, _regular_perms(grp, False),
                  inner_form(c), _regular_perms(grp, True))


def trivial_torsor(gg: GammaGroup) -> Torsor:
    return torsor_from_cocycle(trivial_cocycle(gg))


def cocycle_from_torsor(p: Torsor, basepoint: int = 0) -> Cocycle:
    """c(gamma) is the g with gamma.b == b.g."""
    pos = p.position(basepoint)
    return Cocycle(p.right, tuple(pos[p.act(x, basepoint)] for x in p.gamma.elements))


def left_cocycle(p: Torsor, basepoint: int = 0) -> tuple[int, ...]:
    """a(gamma) in the left group with gamma.b == a(gamma).b.

    Satisfies a(gd) = (g * a(d)) . a(g).
    """
    if p.left is None:
        raise GroupError("torsor has no left structure")
    pos = {p.lact[h][basepoint]: h for h in p.left.g.elements}
    return tuple(pos[p.act(x, basepoint)] for x in p.gamma.elements)


def identification(p: Torsor, basepoint: int = 0) -> GroupHom:
    """u: right group -> left group with b.g == u(g).b."""
    if p.left is None:
        raise GroupError("torsor has no left structure")
    pos = {p.lact[h][basepoint]: h for h in p.left.g.elements}
    return GroupHom(p.right.g, p.left.g,
                    tuple(pos[p.ract[g][basepoint]] for g in p.right.g.elements))


def as_bitorsor(p: Torsor, basepoint: int = 0) -> Torsor:
    """Attach the automorphism group (inner form at ``basepoint``) as left action."""
    c = cocycle_from_torsor(p, basepoint)
    grp = p.right.g
    pos = p.position(basepoint)
    lact = tuple(tuple(p.ract[grp.mul(h, pos[y])][basepoint] for y in p.points)
                 for h in grp.elements)
    return Torsor(p.base, p.right, p.ract, inner_form(c), lact)


def inverse_torsor(p: Torsor) -> Torsor:
    """P^0: same points, y * g := g^-1 . y on the right and h * y := y . h^-1 on the left."""
    if p.left is None:
        p = as_bitorsor(p)
    lg, rg = p.left.g, p.right.g
    ract = tuple(p.lact[lg.inv(h)] for h in lg.elements)
    lact = tuple(p.ract[rg.inv(g)] for g in rg.elements)
    return Torsor(p.base, p.left, ract, p.right, lact)


def contracted_product(p: Torsor, q: Torsor) -> Torsor:
    """P ^H Q: the quotient of P x Q by (y.h, z) ~ (y, h.z).

    ``p.right`` must equal ``q.left``.  Classes are numbered by their least
    pair index ``y*|Q| + z``, so the class of (0, 0) is point 0.
    """
    if q.left is None or p.right != q.left:
        raise GroupError("group mismatch in contracted product")
    h = p.right.g
    nq = q.size
    n = p.size * nq
    cls = [-1] * n
    count = 0
    for start in range(n):
        if cls[start] >= 0:
            continue
        y, z = divmod(start, nq)
        for a in h.elements:
            # (y.a, a^-1.z) is equivalent to (y, z)
            cls[p.ract[a][y] * nq + q.lact[h.inv(a)][z]] = count
        count += 1

    # class k is represented by its least pair; the induced map is well defined
    reps = [0] * count
    for idx in range(n - 1, -1, -1):
        reps[cls[idx]] = idx
    rep_pairs = [divmod(idx, nq) for idx in reps]

    def induced(fp, fq):
        return tuple(cls[fp[y] * nq + fq[z]] for y, z in rep_pairs)

    ident_p, ident_q = tuple(p.points), tuple(q.points)
    action = tuple(induced(p.base.action[c], q.base.action[c]) for c in p.gamma.elements)
    ract = tuple(induced(ident_p, q.ract[k]) for k in q.right.g.elements)
    left, lact = None, None
    if p.left is not None:
        left = p.left
        lact = tuple(induced(p.lact[a], ident_q) for a in p.left.g.elements)
    return Torsor(GammaSet(p.gamma, action), q.right, ract, left, lact)


def hom_bimodule(u: GroupHom, src: GammaGroup, dst: GammaGroup) -> Torsor:
    """G1 as a right G1-torsor with left G-action through ``u: G -> G1``."""
    if not is_equivariant_hom(src, dst, u):
        raise GroupError("hom is not Gamma-equivariant")
    g1 = dst.g
    lact = tuple(tuple(g1.mul(u.map[a], x) for x in g1.elements) for a in src.g.elements)
    return Torsor(GammaSet(dst.gamma, dst.act), dst, _regular_perms(g1, False), src, lact)


def pushforward(p: Torsor, u: GroupHom, dst: GammaGroup) -> Torsor:
    """P ^G G1 along ``u``."""
    return contracted_product(p, hom_bimodule(u, p.right, dst))


def torsor_isomorphisms(p: Torsor, q: Torsor, with_left: bool = False) -> Iterator[tuple[int, ...]]:
    """Gamma-equivariant, right-equivariant (optionally left-equivariant) bijections."""
    if p.right != q.right:
        raise GroupError("torsors under different groups")
    pairs = [(p.base.action[c], q.base.action[c]) for c in p.gamma.generators]
    pairs += [(p.ract[g], q.ract[g]) for g in p.right.g.generators]
    if with_left:
        if p.left is None or q.left is None or p.left != q.left:
            raise GroupError("left groups differ")
        pairs += [(p.lact[h], q.lact[h]) for h in p.left.g.generators]
    return iter_bijections(p.size, q.size, pairs)


def find_torsor_isomorphism(p: Torsor, q: Torsor, with_left: bool = False) -> Optional[tuple[int, ...]]:
    """First isomorphism in lexicographic order (generic backtracking search)."""
    return next(torsor_isomorphisms(p, q, with_left), None)


def find_torsor_isomorphism_fast(p: Torsor, q: Torsor) -> Optional[tuple[int, ...]]:
    """Right-equivariant maps are fixed by the image of one point; try each image."""
    if p.right != q.right:
        raise GroupError("torsors under different groups")
    c_p = cocycle_from_torsor(p, 0).c
    for y in q.points:
        # gamma-equivariance at the basepoint forces gamma.y == y.c_P(gamma)
        if all(q.act(x, y) == q.ract[c_p[x]][y] for x in p.gamma.elements):
            f = torsor_map_from_point(p, q, y)
            if is_torsor_isomorphism(f, p, q):
                return f
    return None


def torsor_map_from_point(p: Torsor, q: Torsor, y: int, basepoint: int = 0) -> tuple[int, ...]:
    """The right-equivariant map sending ``basepoint`` to ``y``."""
    pos = p.position(basepoint)
    return tuple(q.ract[pos[x]][y] for x in p.points)


def is_torsor_isomorphism(f: Sequence[int], p: Torsor, q: Torsor) -> bool:
    if sorted(f) != list(q.points):
        return False
    for c in p.gamma.elements:
        pa, qa = p.base.action[c], q.base.action[c]
        if any(f[pa[x]] != qa[f[x]] for x in p.points):
            return False
    for g in p.right.g.elements:
        pa, qa = p.ract[g], q.ract[g]
        if any(f[pa[x]] != qa[f[x]] for x in p.points):
            return False
    return True


def opposite_group(g: FiniteGroup) -> FiniteGroup:
    table = tuple(tuple(g.table[b][a] for b in g.elements) for a in g.elements)
    return FiniteGroup(table, g.name + "^op", g.labels)


def as_gobject(p: Torsor) -> GObject:
    """The right action as a left action of the opposite Gamma-group."""
    op = GammaGroup(p.right.gamma, opposite_group(p.right.g), p.right.act)
    return GObject(p.base, op, p.ract)


def has_fixed_point(p: Torsor) -> bool:
    return bool(fixed_points(p.base))


# ---------------------------------------------------------------------------
# cocycle formulas for products and inverses


def product_left_cocycle(a_p: Sequence[int], u_p: GroupHom, a_q: Sequence[int]) -> tuple[int, ...]:
    """Left cocycle of P ^H Q at (b_P, b_Q): gamma -> a_P(gamma) . u_P(a_Q(gamma))."""
    grp = u_p.target
    return tuple(grp.mul(x, u_p.map[y]) for x, y in zip(a_p, a_q))


def product_identification(u_p: GroupHom, v_q: GroupHom) -> GroupHom:
    return u_p.compose(v_q)


def inverse_left_cocycle(a_p: Sequence[int], u_p: GroupHom) -> tuple[int, ...]:
    """Left cocycle of P^0 at b: gamma -> u_P^-1(a_P(gamma)^-1)."""
    inv = u_p.inverse()
    grp = u_p.target
    return tuple(inv.map[grp.inv(x)] for x in a_p)


def is_left_cocycle(gg: GammaGroup, a: Sequence[int]) -> bool:
    """a(gd) == (g * a(d)) . a(g)"""
    gam, grp = gg.gamma, gg.g
    return all(a[gam.mul(x, y)] == grp.mul(gg.act[x][a[y]], a[x])
               for x in gam.elements for y in gam.elements)
