"""Command-line entry point.

Exit codes: 0 success (for ``specialize``: a specialization exists),
3 no specialization, 2 bad input or failed precondition, 1 internal error or
a failing claim.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .covers import (decomposition_components, nongalois_oracle, nongalois_test, sections,
                     specialization, specialization_exists_oracle, specialization_exists_twisted,
                     star_condition, twisted_cover)
from .documents import DocumentError, Loader
from .gammagroup import trivial_action
from .gammasets import (conjugation_object, coset_object, disjoint_union, fixed_points, orbits,
                        point_object, regular_object)
from .groups import GroupError, GroupHom, center, identity_hom
from .report import Report
from .suites import run_suites, suite_names
from .torsors import (Cocycle, find_torsor_isomorphism_fast, h1, hom_cocycle,
                      torsor_from_cocycle)
from .twisting import self_twist_decomposition, twist, twist_torsor

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_ABSENT = 0, 1, 2, 3

OBJECTS = ("regular", "point", "conjugation", "regular+point", "cosets-of-center")


class InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsors", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--maxorder", type=int, default=None,
                        help="cap on group orders (default: $TORSOR_MAX_ORDER or 512)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--up-to-conjugacy", action="store_true",
                        help="list sections up to conjugation by the geometric subgroup")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h1", parents=[common], help="nonabelian H^1 by twisted conjugacy")
    p.add_argument("--gamma", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--action", default="trivial", help="'trivial' or an action document")

    p = sub.add_parser("twist", parents=[common], help="twist a standard object by a cocycle")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--object", choices=OBJECTS, default="regular")

    p = sub.add_parser("isom", parents=[common], help="Isom_G(P, Q) for two cocycles")
    p.add_argument("--first", required=True, help="cocycle document for P")
    p.add_argument("--second", required=True, help="cocycle document for Q")

    p = sub.add_parser("selftwist", parents=[common], help="Isom_G(P, P) for a Galois torsor")
    p.add_argument("--gamma")
    p.add_argument("--group")
    p.add_argument("--cocycle", help="use this cocycle instead of the identity of G")

    p = sub.add_parser("specialize", parents=[common], help="does a fiber match the target?")
    p.add_argument("--cover", required=True)
    p.add_argument("--target", required=True, help="cocycle document Gamma -> G, trivial action")

    p = sub.add_parser("nongalois", parents=[common], help="degree-n cover fiber test")
    p.add_argument("--cover", required=True)
    p.add_argument("--sn", required=True, help="group document for S_n")
    p.add_argument("--nu", required=True, help="hom document G -> S_n")
    p.add_argument("--target", required=True, help="cocycle document Gamma -> S_n")

    p = sub.add_parser("verify", parents=[common], help="run exhaustive verification suites")
    p.add_argument("--suite", default="all")
    return parser


def _object(name: str, gg):
    if name == "regular":
        return regular_object(gg)
    if name == "point":
        return point_object(gg)
    if name == "conjugation":
        return conjugation_object(gg)
    if name == "regular+point":
        return disjoint_union(regular_object(gg), point_object(gg))
    return coset_object(gg, center(gg.g))


def cmd_h1(args, loader: Loader, rep: Report) -> int:
    gam = loader.group(args.gamma)
    grp = loader.group(args.group)
    gg = loader.gamma_group(gam, grp, args.action, Path.cwd())
    classes = h1(gg)
    rep.meta += [("gamma", gam.name), ("group", grp.name), ("action", _action_name(args.action)),
                 ("cocycles", sum(k.size for k in classes)), ("classes", len(classes))]
    for i, k in enumerate(classes):
        rep.add("class", index=i, size=k.size, rep=k.representative.c)
    return EXIT_OK


def _action_name(spec: str) -> str:
    return spec if spec == "trivial" else Path(spec).name


def cmd_twist(args, loader: Loader, rep: Report) -> int:
    c = loader.cocycle(args.cocycle)
    xi = _object(args.object, c.gg)
    tw = twist(xi, c)
    rep.meta += [("object", args.object), ("points", tw.size), ("cocycle", c.c)]
    for x in tw.base.gamma.elements:
        rep.add("action", gamma=x, images=tw.base.action[x])
    rep.add("orbits", count=len(orbits(tw.base)), sizes=[len(o) for o in orbits(tw.base)])
    rep.add("fixed", points=fixed_points(tw.base))
    return EXIT_OK


def cmd_isom(args, loader: Loader, rep: Report) -> int:
    c1 = loader.cocycle(args.first)
    c2 = loader.cocycle(args.second)
    if c1.gg != c2.gg:
        raise InputError("the two cocycles are over different Gamma-groups")
    p, q = torsor_from_cocycle(c1), torsor_from_cocycle(c2)
    iso = twist_torsor(p, q)
    fixed = fixed_points(iso.base)
    f = find_torsor_isomorphism_fast(p, q)
    rep.meta += [("first", c1.c), ("second", c2.c)]
    for x in iso.gamma.elements:
        rep.add("action", gamma=x, images=iso.base.action[x])
    rep.add("fixed", points=fixed)
    rep.add("isomorphic", value=f is not None, witness=f if f is not None else "-")
    if bool(fixed) != (f is not None):
        raise AssertionError("fixed points of Isom(P, Q) disagree with isomorphism search")
    return EXIT_OK


def cmd_selftwist(args, loader: Loader, rep: Report) -> int:
    if args.cocycle:
        c = loader.cocycle(args.cocycle)
    else:
        if not (args.gamma and args.group):
            raise InputError("selftwist needs --gamma and --group, or --cocycle")
        gam, grp = loader.group(args.gamma), loader.group(args.group)
        if gam != grp:
            raise InputError("without --cocycle, Gamma and G must be the same group")
        c = hom_cocycle(trivial_action(gam, grp), identity_hom(grp))
    res = self_twist_decomposition(c)
    rep.meta += [("gamma", c.gg.gamma.name), ("group", c.gg.g.name)]
    for i, (orb, stab) in enumerate(res.components):
        rep.add("component", index=i, size=len(orb), stabilizer=stab.order, points=orb)
    rep.add("summary", components=len(res.components),
            stabilizers=[s.order for _, s in res.components], fixed=res.fixed_count)
    return EXIT_OK


def _check_target(cover, psi: Cocycle) -> None:
    if psi.gg.gamma != cover.gamma or psi.gg.g != cover.g or not psi.gg.is_trivial_action:
        raise InputError("target must be a cocycle Gamma -> G with trivial action")


def cmd_specialize(args, loader: Loader, rep: Report) -> int:
    cover = loader.cover(args.cover)
    psi = loader.cocycle(args.target)
    _check_target(cover, psi)
    psi = Cocycle(cover.trivial_gg, psi.c)
    secs = sections(cover, args.up_to_conjugacy)
    star = star_condition(cover, psi)
    rep.meta += [("pi", cover.pi.name), ("gamma", cover.gamma.name), ("group", cover.g.name),
                 ("gbar", cover.gbar.order), ("target", psi.c)]
    for sp in secs:
        rep.add("section", map=sp.s.map, specialization=specialization(cover, sp).c)
    rep.add("star", value=star)
    found = specialization_exists_twisted(cover, psi)
    oracle = specialization_exists_oracle(cover, psi)
    if (found is None) != (oracle is None):
        raise AssertionError("twisted-cover test disagrees with the section oracle")
    if star:
        dec = decomposition_components(cover, psi)
        for comp in dec.components:
            rep.add("component", index=comp.gamma, size=len(comp.points),
                    connected=comp.geometrically_connected)
    tc = twisted_cover(cover, psi)
    rep.add("twisted", points=tc.size, orbits=len(orbits(tc)))
    if found is None:
        rep.add("result", exists=False)
        return EXIT_ABSENT
    rep.add("result", exists=True, section=found.s.map)
    return EXIT_OK


def cmd_nongalois(args, loader: Loader, rep: Report) -> int:
    cover = loader.cover(args.cover)
    sn = loader.group(args.sn)
    nu = loader.hom(args.nu, cover.g, sn)
    target = loader.cocycle(args.target)
    if target.gg.gamma != cover.gamma or target.gg.g != sn or not target.gg.is_trivial_action:
        raise InputError("target must be a cocycle Gamma -> S_n with trivial action")
    psi_prime = GroupHom(cover.gamma, sn, target.c).validate()
    res = nongalois_test(cover, nu, psi_prime)
    oracle = nongalois_oracle(cover, nu, psi_prime)
    if res.isomorphic != (oracle is not None):
        raise AssertionError("embedding test disagrees with the S_n-conjugacy oracle")
    rep.meta += [("group", cover.g.name), ("sn_order", sn.order), ("target", target.c)]
    for eta in res.embeddings:
        rep.add("embedding", map=eta.map)
    for eta, sp in res.witnesses:
        rep.add("witness", claim="fixed-point", embedding=eta.map, section=sp.s.map)
    rep.add("result", isomorphic=res.isomorphic)
    return EXIT_OK if res.isomorphic else EXIT_ABSENT


def cmd_verify(args, loader: Loader, rep: Report) -> int:
    try:
        suite_names(args.suite)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    reports = run_suites(args.suite, jobs=max(1, args.jobs), max_order=args.maxorder)
    rep.meta += [("suite", args.suite), ("maxorder", args.maxorder or "default")]
    rep.add_claims(reports)
    return EXIT_OK if all(r.passing for r in reports) else EXIT_INTERNAL


COMMANDS = {
    "h1": cmd_h1,
    "twist": cmd_twist,
    "isom": cmd_isom,
    "selftwist": cmd_selftwist,
    "specialize": cmd_specialize,
    "nongalois": cmd_nongalois,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.maxorder is not None and args.maxorder < 2:
        print("error: --maxorder must be at least 2", file=err)
        return EXIT_INPUT
    saved = os.environ.get("TORSOR_MAX_ORDER")
    if args.maxorder is not None:
        os.environ["TORSOR_MAX_ORDER"] = str(args.maxorder)
    try:
        return _execute(args, out, err)
    finally:
        # the cap is per invocation; leave in-process callers unaffected
        if saved is None:
            os.environ.pop("TORSOR_MAX_ORDER", None)
        else:
            os.environ["TORSOR_MAX_ORDER"] = saved


def _execute(args, out, err) -> int:
    loader = Loader()
    rep = Report(args.command)
    try:
        code = COMMANDS[args.command](args, loader, rep)
    except (InputError, DocumentError, GroupError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    except Exception as e:  # an invariant breach is a bug
        print(f"internal error: {type(e).__name__}: {e}", file=err)
        return EXIT_INTERNAL
    rep.inputs = list(loader.read_files)
    out.write(rep.render(args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
