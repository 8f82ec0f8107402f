import pytest

from torsors.documents import (DocumentError, Loader, dump_action, dump_cocycle, dump_cover,
                               dump_gamma_set, dump_hom)
from torsors.gammagroup import first_nontrivial_action
from torsors.gammasets import GammaSet
from torsors.groups import cyclic, dump_group, symmetric
from torsors.torsors import cocycles


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def groups(tmp_path):
    write(tmp_path, "z2.grp", dump_group(cyclic(2)))
    write(tmp_path, "z3.grp", dump_group(cyclic(3)))
    write(tmp_path, "s3.grp", "group S3 degree 3\ngens\n(1 2)\n(1 2 3)\n")
    return tmp_path


def test_shipped_data_loads(data_dir):
    loader = Loader()
    cover = loader.cover(data_dir / "s3_sign.cover")
    assert cover.pi.order == 6 and cover.gamma.order == 2
    assert loader.cocycle(data_dir / "target_transposition.coc").c == (0, 1)
    gg = loader.action(data_dir / "z2_inverts_z3.act")
    assert gg == first_nontrivial_action(cyclic(2), cyclic(3))


def test_groups_are_cached_by_path(data_dir):
    loader = Loader()
    a = loader.group(data_dir / "s3.grp")
    loader.cover(data_dir / "s3_sign.cover")
    assert loader.group(data_dir / "s3.grp") is a
    names = [p.name for p in loader.read_files]
    assert len(names) == len(set(names))


def test_action_round_trip(groups):
    gg = first_nontrivial_action(cyclic(2), cyclic(3))
    path = write(groups, "inv.act", dump_action(gg, "z2.grp", "z3.grp"))
    assert Loader().action(path) == gg


def test_cocycle_round_trip(groups):
    gg = first_nontrivial_action(cyclic(2), symmetric(3))
    write(groups, "s3.act", dump_action(gg, "z2.grp", "s3.grp"))
    for c in cocycles(gg):
        path = write(groups, "c.coc", dump_cocycle(c, "z2.grp", "s3.grp", "s3.act"))
        assert Loader().cocycle(path) == c


def test_gamma_set_round_trip(groups):
    s = GammaSet(cyclic(2), ((0, 1, 2), (1, 0, 2)))
    path = write(groups, "s.gset", dump_gamma_set(s, "pair", "z2.grp"))
    assert Loader().gamma_set(path) == s


def test_hom_and_cover_round_trip(data_dir, groups):
    loader = Loader()
    cover = loader.cover(data_dir / "s3_sign.cover")
    write(groups, "u.hom", dump_hom(cover.u))
    write(groups, "phi.hom", dump_hom(cover.phi))
    path = write(groups, "c.cover", dump_cover("s3.grp", "z2.grp", "u.hom", "s3.grp", "phi.hom"))
    again = Loader().cover(path)
    assert again.u == cover.u and again.phi == cover.phi


def test_labels_accepted_in_maps(groups):
    text = "cocycle gamma z2.grp group s3.grp action trivial\nmap\n0 -> ()\n1 -> (1 3)\n"
    assert Loader().cocycle(write(groups, "c.coc", text)).c == (0, 5)


@pytest.mark.parametrize("text,msg", [
    ("cocycle gamma z2.grp group s3.grp\nmap\n", "line 1"),
    ("cocycle gamma z2.grp group s3.grp action trivial\nmap\n0 -> 0\n", "no image for element 1"),
    ("cocycle gamma z2.grp group s3.grp action trivial\nmap\n0 -> 0\n1 -> 9\n", "line 4"),
    ("cocycle gamma z2.grp group s3.grp action trivial\nmap\n0 -> 0\n1 -> 3\n", "cocycle condition"),
    ("cocycle gamma z2.grp group s3.grp action trivial\nmap\n0 -> 0\n0 -> 1\n", "mapped twice"),
    ("cocycle gamma missing.grp group s3.grp action trivial\nmap\n", "cannot read"),
])
def test_cocycle_errors(groups, text, msg):
    with pytest.raises(DocumentError, match=msg):
        Loader().cocycle(write(groups, "bad.coc", text))


def test_action_errors(groups):
    text = "gammaaction gamma z2.grp group z3.grp\nact\n0 1 2\n1 0 2\n"
    with pytest.raises(DocumentError, match="automorphism"):
        Loader().action(write(groups, "bad.act", text))
    text = "gammaaction gamma z2.grp group z3.grp\nact\n0 1 2\n"
    with pytest.raises(DocumentError, match="expected 2 action rows"):
        Loader().action(write(groups, "short.act", text))


def test_cover_errors(groups):
    write(groups, "bad.hom", "hom\n0 -> 0\n1 -> 0\n2 -> 0\n3 -> 0\n4 -> 0\n5 -> 0\n")
    write(groups, "id.hom", "".join(f"{x} -> {x}\n" for x in range(6)))
    path = write(groups, "bad.cover", "cover pi s3.grp gamma z2.grp u bad.hom g s3.grp phi id.hom\n")
    with pytest.raises(DocumentError, match="surjective"):
        Loader().cover(path)
    path = write(groups, "extra.cover",
                 "cover pi s3.grp gamma z2.grp u bad.hom g s3.grp phi id.hom\nmore\n")
    with pytest.raises(DocumentError, match="line 2"):
        Loader().cover(path)
