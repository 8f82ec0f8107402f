"""Text documents for Gamma-sets, actions, cocycles, homomorphisms and covers.

Documents reference group files by path; relative paths resolve against the
directory of the referencing document.  ``#`` starts a comment line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .covers import CoverSpec
from .gammagroup import GammaGroup, trivial_action
from .gammasets import GammaSet
from .groups import FiniteGroup, GroupError, GroupHom, _strip, load_group
from .torsors import Cocycle, validate_cocycle

PathLike = Union[str, Path]


class DocumentError(GroupError):
    pass


class Loader:
    """Loads documents, caching groups by resolved path."""

    def __init__(self):
        self._groups: dict[Path, FiniteGroup] = {}
        self.read_files: list[Path] = []

    def _read(self, path: Path) -> str:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise DocumentError(f"{path}: cannot read: {e.strerror}") from None
        if path not in self.read_files:
            self.read_files.append(path)
        return text

    def group(self, path: PathLike) -> FiniteGroup:
        path = Path(path).resolve()
        if path not in self._groups:
            try:
                self._groups[path] = load_group(self._read(path))
            except DocumentError:
                raise
            except GroupError as e:
                raise DocumentError(f"{path}: {e}") from None
        return self._groups[path]

    def gamma_group(self, gamma: FiniteGroup, g: FiniteGroup, spec: str, base: Path) -> GammaGroup:
        if spec == "trivial":
            return trivial_action(gamma, g)
        return self.action(base / spec, gamma, g)

    def action(self, path: PathLike, gamma: Optional[FiniteGroup] = None,
               g: Optional[FiniteGroup] = None) -> GammaGroup:
        path = Path(path).resolve()
        return self._wrap(path, lambda text: parse_action(text, path.parent, self, gamma, g))

    def gamma_set(self, path: PathLike) -> GammaSet:
        path = Path(path).resolve()
        return self._wrap(path, lambda text: parse_gamma_set(text, path.parent, self))

    def cocycle(self, path: PathLike) -> Cocycle:
        path = Path(path).resolve()
        return self._wrap(path, lambda text: parse_cocycle(text, path.parent, self))

    def hom(self, path: PathLike, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
        path = Path(path).resolve()
        return self._wrap(path, lambda text: parse_hom(text, source, target))

    def cover(self, path: PathLike) -> CoverSpec:
        path = Path(path).resolve()
        return self._wrap(path, lambda text: parse_cover(text, path.parent, self))

    def _wrap(self, path: Path, parse):
        text = self._read(path)
        try:
            return parse(text)
        except DocumentError as e:
            if str(e).startswith(str(path.parent)):
                raise
            raise DocumentError(f"{path}: {e}") from None
        except GroupError as e:
            raise DocumentError(f"{path}: {e}") from None


def _element(grp: FiniteGroup, token: str, lno: int) -> int:
    if token.isdigit():
        x = int(token)
        if x < grp.order:
            return x
        raise DocumentError(f"line {lno}: element {x} out of range for {grp.name}")
    if grp.labels and token in grp.labels:
        return grp.labels.index(token)
    raise DocumentError(f"line {lno}: unknown element {token!r} of {grp.name}")


def _header(lines, keyword: str, keys: list[str]) -> tuple[int, dict[str, str]]:
    if not lines:
        raise DocumentError(f"line 1: empty {keyword} document")
    lno, head = lines[0]
    toks = head.split()
    if not toks or toks[0] != keyword:
        raise DocumentError(f"line {lno}: expected '{keyword}' header")
    fields = {}
    rest = toks[1:]
    if keys and keys[0] == "<name>":
        if not rest:
            raise DocumentError(f"line {lno}: missing name")
        fields["name"] = rest[0]
        rest = rest[1:]
        keys = keys[1:]
    if len(rest) != 2 * len(keys) or [rest[i] for i in range(0, len(rest), 2)] != keys:
        want = " ".join(f"{k} <{k}>" for k in keys)
        raise DocumentError(f"line {lno}: expected '{keyword} {want}'")
    for i, k in enumerate(keys):
        fields[k] = rest[2 * i + 1]
    return lno, fields


def _int_rows(body, count: int, width: int, what: str) -> list[tuple[int, ...]]:
    rows = []
    for lno, line in body:
        try:
            row = tuple(int(t) for t in line.split())
        except ValueError:
            raise DocumentError(f"line {lno}: non-integer entry") from None
        if len(row) != width or any(not 0 <= x < width for x in row):
            raise DocumentError(f"line {lno}: expected {width} entries in 0..{width - 1}")
        rows.append(row)
    if len(rows) != count:
        raise DocumentError(f"expected {count} {what} rows, got {len(rows)}")
    return rows


def _section(lines, word: str, after: int):
    rest = lines[1:]
    if not rest or rest[0][1] != word:
        raise DocumentError(f"line {rest[0][0] if rest else after}: expected '{word}'")
    return rest[1:]


def parse_action(text: str, base: Path, loader: Loader, gamma: Optional[FiniteGroup] = None,
                 g: Optional[FiniteGroup] = None) -> GammaGroup:
    lines = _strip(text)
    lno, f = _header(lines, "gammaaction", ["gamma", "group"])
    gam = loader.group(base / f["gamma"])
    grp = loader.group(base / f["group"])
    if (gamma is not None and gam != gamma) or (g is not None and grp != g):
        raise DocumentError(f"line {lno}: action groups differ from the referencing document")
    rows = _int_rows(_section(lines, "act", lno), gam.order, grp.order, "action")
    return GammaGroup(gam, grp, tuple(rows)).validate()


def parse_gamma_set(text: str, base: Path, loader: Loader) -> GammaSet:
    lines = _strip(text)
    lno, f = _header(lines, "gammaset", ["<name>", "gamma", "size"])
    gam = loader.group(base / f["gamma"])
    try:
        n = int(f["size"])
    except ValueError:
        raise DocumentError(f"line {lno}: size is not an integer") from None
    rows = _int_rows(_section(lines, "action", lno), gam.order, n, "action")
    return GammaSet(gam, tuple(rows)).validate()


def _arrow_map(body, source: FiniteGroup, target: FiniteGroup) -> tuple[int, ...]:
    m = [-1] * source.order
    for lno, line in body:
        parts = line.split("->")
        if len(parts) != 2:
            raise DocumentError(f"line {lno}: expected 'x -> y'")
        x = _element(source, parts[0].strip(), lno)
        y = _element(target, parts[1].strip(), lno)
        if m[x] != -1:
            raise DocumentError(f"line {lno}: element {x} mapped twice")
        m[x] = y
    missing = [x for x in source.elements if m[x] < 0]
    if missing:
        raise DocumentError(f"no image for element {missing[0]}")
    return tuple(m)


def parse_cocycle(text: str, base: Path, loader: Loader) -> Cocycle:
    lines = _strip(text)
    lno, f = _header(lines, "cocycle", ["gamma", "group", "action"])
    gam = loader.group(base / f["gamma"])
    grp = loader.group(base / f["group"])
    gg = loader.gamma_group(gam, grp, f["action"], base)
    return validate_cocycle(gg, _arrow_map(_section(lines, "map", lno), gam, grp))


def parse_hom(text: str, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    lines = _strip(text)
    if lines and lines[0][1].split()[0] == "hom":
        lines = lines[1:]
    return GroupHom(source, target, _arrow_map(lines, source, target)).validate()


def parse_cover(text: str, base: Path, loader: Loader) -> CoverSpec:
    lines = _strip(text)
    _, f = _header(lines, "cover", ["pi", "gamma", "u", "g", "phi"])
    if len(lines) > 1:
        raise DocumentError(f"line {lines[1][0]}: unexpected content after cover header")
    pi = loader.group(base / f["pi"])
    gam = loader.group(base / f["gamma"])
    grp = loader.group(base / f["g"])
    u = loader.hom(base / f["u"], pi, gam)
    phi = loader.hom(base / f["phi"], pi, grp)
    return CoverSpec(pi, u, phi, Path(f["pi"]).stem).validate()


# ---------------------------------------------------------------------------
# writers; every writer's output re-parses to an equal object


def dump_action(gg: GammaGroup, gamma_ref: str, group_ref: str) -> str:
    out = [f"gammaaction gamma {gamma_ref} group {group_ref}", "act"]
    out.extend(" ".join(map(str, row)) for row in gg.act)
    return "\n".join(out) + "\n"


def dump_gamma_set(s: GammaSet, name: str, gamma_ref: str) -> str:
    out = [f"gammaset {name} gamma {gamma_ref} size {s.size}", "action"]
    out.extend(" ".join(map(str, row)) for row in s.action)
    return "\n".join(out) + "\n"


def dump_cocycle(c: Cocycle, gamma_ref: str, group_ref: str, action_ref: str = "trivial") -> str:
    out = [f"cocycle gamma {gamma_ref} group {group_ref} action {action_ref}", "map"]
    out.extend(f"{x} -> {y}" for x, y in enumerate(c.c))
    return "\n".join(out) + "\n"


def dump_hom(h: GroupHom) -> str:
    out = [f"hom {h.source.name} {h.target.name}"]
    out.extend(f"{x} -> {y}" for x, y in enumerate(h.map))
    return "\n".join(out) + "\n"


def dump_cover(pi_ref: str, gamma_ref: str, u_ref: str, g_ref: str, phi_ref: str) -> str:
    return f"cover pi {pi_ref} gamma {gamma_ref} u {u_ref} g {g_ref} phi {phi_ref}\n"
