"""Finite groups given by Cayley tables.

Elements are dense integer identifiers ``0..order-1`` and ``0`` is always the
identity.  Everything above this module talks about elements only through
these identifiers.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

DEFAULT_MAX_ORDER = 512

Table = tuple[tuple[int, ...], ...]
Perm = tuple[int, ...]


class GroupError(ValueError):
    """Raised for malformed or non-group input."""


def max_order() -> int:
    return int(os.environ.get("TORSOR_MAX_ORDER", DEFAULT_MAX_ORDER))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group stored as a Cayley table ``table[a][b] = a*b``."""

    table: Table
    name: str = "G"
    labels: Optional[tuple[str, ...]] = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        t = self.table
        return t[t[g][x]][self.inverses[g]]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the smallest element not yet generated."""
        gens: list[int] = []
        span = {0}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = set(closure(self, gens))
        return tuple(gens)

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(a)):
            x = self.table[x][a]
        return x

    def validate(self) -> "FiniteGroup":
        validate_table(self.table)
        return self


def validate_table(table: Sequence[Sequence[int]]) -> None:
    """Check the group axioms; raises GroupError carrying a witness."""
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    if n > max_order():
        raise GroupError(f"group order {n} exceeds cap {max_order()}")
    full = set(range(n))
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {i} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise GroupError(f"row not a permutation, row {i}")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupError(f"column not a permutation, column {j}")
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise GroupError(f"0 is not a two-sided identity: fails at {x}")
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rab = table[ab]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise GroupError(f"not associative at ({a}, {b}, {c})")


def closure(g: FiniteGroup, gens: Iterable[int]) -> list[int]:
    """Sorted list of the subgroup generated by ``gens``."""
    gens = list(gens)
    seen = {0}
    frontier = [0]
    t = g.table
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = t[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# homomorphisms and subgroups


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.order:
            raise GroupError("hom table has wrong length")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.map == other.map and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"GroupHom({self.source.name}->{self.target.name}, {list(self.map)})"

    def validate(self) -> "GroupHom":
        s, t, m = self.source.table, self.target.table, self.map
        if m[0] != 0:
            raise GroupError("hom does not send identity to identity")
        for x in self.source.elements:
            for y in self.source.elements:
                if m[s[x][y]] != t[m[x]][m[y]]:
                    raise GroupError(f"not a homomorphism at ({x}, {y})")
        return self

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self o first"""
        return GroupHom(first.source, self.target, tuple(self.map[x] for x in first.map))

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def kernel(self) -> "Subgroup":
        return Subgroup(self.source, tuple(x for x in self.source.elements if self.map[x] == 0))

    def image(self) -> "Subgroup":
        return Subgroup(self.target, tuple(sorted(set(self.map))))

    def inverse(self) -> "GroupHom":
        if not (self.is_injective and self.is_surjective):
            raise GroupError("hom is not bijective")
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return GroupHom(self.target, self.source, tuple(inv))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements))


def trivial_hom(g: FiniteGroup, h: FiniteGroup) -> GroupHom:
    return GroupHom(g, h, (0,) * g.order)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.members == other.members and self.parent == other.parent

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Subgroup(of {self.parent.name}, {list(self.members)})"

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def validate(self) -> "Subgroup":
        g = self.parent
        if 0 not in self:
            raise GroupError("subgroup does not contain the identity")
        for a in self.members:
            if g.inv(a) not in self:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in self.members:
                if g.mul(a, b) not in self:
                    raise GroupError(f"subgroup not closed under product at ({a}, {b})")
        return self

    def is_normal(self) -> bool:
        return normality_witness(self) is None

    @cached_property
    def _as_group(self) -> tuple[FiniteGroup, GroupHom]:
        g = self.parent
        index = {x: i for i, x in enumerate(self.members)}
        table = tuple(tuple(index[g.mul(a, b)] for b in self.members) for a in self.members)
        labels = tuple(g.label(x) for x in self.members) if g.labels else None
        sub = FiniteGroup(table, f"{g.name}_sub{self.order}", labels)
        return sub, GroupHom(sub, g, self.members)

    def as_group(self) -> tuple[FiniteGroup, GroupHom]:
        """The subgroup as a standalone group plus its inclusion."""
        return self._as_group


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (0,))


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, tuple(closure(g, gens)))


def subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, members)."""
    found = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            for x in g.elements:
                if x in members:
                    continue
                new = tuple(closure(g, members + (x,)))
                if new not in found:
                    found.add(new)
                    nxt.append(new)
        frontier = nxt
    return [Subgroup(g, m) for m in sorted(found, key=lambda m: (len(m), m))]


def normality_witness(k: Subgroup) -> Optional[tuple[int, int]]:
    """A pair (g, x) with x in K and g x g^-1 not in K, or None if K is normal."""
    g = k.parent
    for x in k.members:
        for a in g.elements:
            if g.conj(a, x) not in k:
                return a, x
    return None


# ---------------------------------------------------------------------------
# conjugacy structure


def conjugacy_classes(g: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes, each sorted; the representative is the first entry."""
    seen: set[int] = set()
    classes = []
    for x in g.elements:
        if x in seen:
            continue
        cls = tuple(sorted({g.conj(a, x) for a in g.elements}))
        seen.update(cls)
        classes.append(cls)
    return classes


def centralizer(g: FiniteGroup, x: int) -> Subgroup:
    t = g.table
    return Subgroup(g, tuple(a for a in g.elements if t[a][x] == t[x][a]))


def center(g: FiniteGroup) -> Subgroup:
    t = g.table
    return Subgroup(g, tuple(a for a in g.elements
                             if all(t[a][b] == t[b][a] for b in g.elements)))


def quotient(g: FiniteGroup, k: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """G/K on cosets (ordered by their minimal element) with the canonical map."""
    w = normality_witness(k)
    if w is not None:
        a, x = w
        raise GroupError(f"subgroup not normal: {a} * {x} * {a}^-1 = {g.conj(a, x)} not in K")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in g.elements:
        if coset_of[x] < 0:
            for y in k.members:
                coset_of[g.mul(x, y)] = len(reps)
            reps.append(x)
    table = tuple(tuple(coset_of[g.mul(a, b)] for b in reps) for a in reps)
    labels = tuple(g.label(r) + "K" for r in reps) if g.labels else None
    q = FiniteGroup(table, f"{g.name}/{k.order}", labels)
    return q, GroupHom(g, q, tuple(coset_of))


# ---------------------------------------------------------------------------
# homomorphism enumeration


def _words(g: FiniteGroup) -> list[tuple[int, int, int]]:
    """BFS spanning tree over the generators: triples (x, s, x*s)."""
    steps = []
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in g.generators:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    steps.append((x, s, y))
        frontier = nxt
    return steps


def extend_on_generators(g: FiniteGroup, h: FiniteGroup, images: dict[int, int]) -> Optional[tuple[int, ...]]:
    """The hom G -> H with the given generator images, or None if none exists."""
    m = [-1] * g.order
    m[0] = 0
    for x, s, y in _words(g):
        m[y] = h.mul(m[x], images[s])
    gt, ht = g.table, h.table
    for x in g.elements:
        mx = m[x]
        for s in g.generators:
            if m[gt[x][s]] != ht[mx][images[s]]:
                return None
    return tuple(m)


def enumerate_homs(
    g: FiniteGroup,
    h: FiniteGroup,
    *,
    injective: bool = False,
    surjective: bool = False,
    composed_with: Optional[tuple[GroupHom, GroupHom]] = None,
) -> list[GroupHom]:
    """All homomorphisms G -> H meeting the constraints, sorted by map table.

    ``composed_with=(f, required)`` keeps only homs ``m`` with ``f o m == required``.
    """
    gens = g.generators
    choices = []
    for s in gens:
        o = g.element_order(s)
        cands = [y for y in h.elements if o % h.element_order(y) == 0]
        if composed_with is not None:
            f, req = composed_with
            cands = [y for y in cands if f.map[y] == req.map[s]]
        choices.append(cands)
    found = []
    for imgs in product(*choices):
        m = extend_on_generators(g, h, dict(zip(gens, imgs)))
        if m is None:
            continue
        if injective and len(set(m)) != g.order:
            continue
        if surjective and len(set(m)) != h.order:
            continue
        if composed_with is not None:
            f, req = composed_with
            if any(f.map[m[x]] != req.map[x] for x in g.elements):
                continue
        found.append(m)
    found.sort()
    return [GroupHom(g, h, m) for m in found]


def automorphisms(g: FiniteGroup) -> list[GroupHom]:
    return enumerate_homs(g, g, injective=True)


def count_cyclic_homs(n: int, m: int) -> int:
    """Number of homs Z/n -> Z/m, i.e. elements x of Z/m with n*x = 0."""
    return gcd(n, m)


# ---------------------------------------------------------------------------
# constructions


def from_permutations(gens: Sequence[Perm], name: str = "G", degree: Optional[int] = None) -> FiniteGroup:
    """Close a set of permutations (0-based image tuples) into a Cayley table.

    Elements are ordered lexicographically by image tuple, so the identity is 0.
    """
    if degree is None:
        degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(p[i] for i in s)  # p o s
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > max_order():
                        raise GroupError(f"group order exceeds cap {max_order()}")
        frontier = nxt
    perms = sorted(seen)
    return group_from_perm_list(perms, name)


def group_from_perm_list(perms: Sequence[Perm], name: str = "G") -> FiniteGroup:
    """Cayley table of a list of permutations closed under composition.

    The product is ``(a*b)(i) = a(b(i))``; ``perms[0]`` must be the identity.
    """
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(a[i] for i in b)] for b in perms) for a in perms)
    labels = tuple(cycle_string(p) for p in perms)
    grp = FiniteGroup(table, name, labels)
    grp.__dict__["permutations"] = tuple(perms)
    return grp


def permutations_of(g: FiniteGroup) -> tuple[Perm, ...]:
    """Underlying permutations of a group built by :func:`from_permutations`."""
    perms = g.__dict__.get("permutations")
    if perms is None:
        raise GroupError(f"{g.name} is not a permutation group")
    return perms


def cycle_string(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)``."""
    p = list(range(degree))
    text = text.strip()
    if text in ("", "()"):
        return tuple(p)
    if not re.fullmatch(r"(\(\s*\d+(\s*,?\s*\d+)*\s*\)\s*)+", text):
        raise GroupError(f"bad cycle notation: {text!r}")
    # cycles compose right to left
    for cyc in reversed(re.findall(r"\(([^)]*)\)", text)):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", cyc.strip()) if t]
        if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle {cyc!r} for degree {degree}")
        c = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
        p = [c.get(x, x) for x in p]
    return tuple(p)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                       f"Z{n}", tuple(str(a) for a in range(n)))


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return from_permutations([(0,)], "S1")
    gens = [tuple(list(range(1, n)) + [0]), tuple([1, 0] + list(range(2, n)))]
    return from_permutations(gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    s = symmetric(n)
    perms = permutations_of(s)
    even = [p for p in perms if _parity(p) == 0]
    return group_from_perm_list(even, f"A{n}")


def _parity(p: Perm) -> int:
    seen, par = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, ln = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            ln += 1
        par ^= (ln - 1) & 1
    return par


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, as permutations of the vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], f"D{n}")


def quaternion() -> FiniteGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit products: (a, b) -> (sign, unit) with units 1, i, j, k = 0..3
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def decode(x):
        return (1 if x % 2 == 0 else -1), x // 2

    def encode(sign, u):
        return 2 * u + (0 if sign == 1 else 1)

    table = []
    for a in range(8):
        sa, ua = decode(a)
        row = []
        for b in range(8):
            sb, ub = decode(b)
            s, u = unit[(ua, ub)]
            row.append(encode(sa * sb * s, u))
        table.append(tuple(row))
    return FiniteGroup(tuple(table), "Q8", tuple(names))


def direct_product(g: FiniteGroup, h: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """G x H with (a, b) encoded as a * |H| + b."""
    m = h.order
    table = tuple(
        tuple(g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m))
        for a in range(g.order * m)
    )
    labels = tuple(f"({g.label(a // m)},{h.label(a % m)})" for a in range(g.order * m))
    return FiniteGroup(table, name or f"{g.name}x{h.name}", labels)


def projections(g: FiniteGroup, h: FiniteGroup, prod: FiniteGroup) -> tuple[GroupHom, GroupHom]:
    m = h.order
    return (GroupHom(prod, g, tuple(x // m for x in prod.elements)),
            GroupHom(prod, h, tuple(x % m for x in prod.elements)))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), "1", ("e",))


# ---------------------------------------------------------------------------
# group-definition documents


def _strip(text: str) -> list[tuple[int, str]]:
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((no, line))
    return lines


def load_group(text: str) -> FiniteGroup:
    """Parse a group-definition document (``table`` or ``perm`` dialect)."""
    lines = _strip(text)
    if not lines:
        raise GroupError("line 1: empty group document")
    no, head = lines[0]
    toks = head.split()
    if len(toks) != 4 or toks[0] != "group" or toks[2] not in ("order", "degree"):
        raise GroupError(f"line {no}: expected 'group <name> order <n>' or 'group <name> degree <d>'")
    name = toks[1]
    try:
        n = int(toks[3])
    except ValueError:
        raise GroupError(f"line {no}: not an integer: {toks[3]!r}") from None
    rest = lines[1:]
    if toks[2] == "degree":
        if not rest or rest[0][1] != "gens":
            raise GroupError(f"line {rest[0][0] if rest else no}: expected 'gens'")
        gens = []
        for lno, line in rest[1:]:
            try:
                gens.append(parse_cycles(line, n))
            except GroupError as e:
                raise GroupError(f"line {lno}: {e}") from None
        if not gens:
            gens = [tuple(range(n))]
        return from_permutations(gens, name, n)
    labels = None
    if rest and rest[0][1].split()[0] == "elements":
        lno, line = rest[0]
        labels = tuple(line.split()[1:])
        if len(labels) != n:
            raise GroupError(f"line {lno}: expected {n} labels, got {len(labels)}")
        rest = rest[1:]
    if not rest or rest[0][1] != "table":
        raise GroupError(f"line {rest[0][0] if rest else no}: expected 'table'")
    rows = []
    for lno, line in rest[1:]:
        try:
            row = tuple(int(t) for t in line.split())
        except ValueError:
            raise GroupError(f"line {lno}: non-integer entry") from None
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise GroupError(f"line {lno}: expected {n} entries in 0..{n - 1}")
        rows.append(row)
    if len(rows) != n:
        raise GroupError(f"line {rest[-1][0]}: expected {n} table rows, got {len(rows)}")
    validate_table(rows)
    return FiniteGroup(tuple(rows), name, labels)


def dump_group(g: FiniteGroup) -> str:
    """Serialize as a ``table`` document (round-trips through load_group)."""
    out = [f"group {g.name} order {g.order}"]
    if g.labels and all(" " not in s and s for s in g.labels):
        out.append("elements " + " ".join(g.labels))
    out.append("table")
    out.extend(" ".join(str(x) for x in row) for row in g.table)
    return "\n".join(out) + "\n"
