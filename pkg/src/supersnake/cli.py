"""Command line surface.

Input files are JSON: {"vertices": v, "arcs": [[p,q], ...], "gamma": [s,t]}
where gamma is the oriented longest arc.  Arc labels in all outputs follow
the crossing order along gamma.  Exit codes: 0 success / all checks pass,
1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bridge, cc, snake as sn, strmod, superring as sr
from .polygon import OrientedTriangulation, TriangulationError, norm_arc, validate


class InputError(ValueError):
    pass


def load_oriented(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read triangulation file: {exc}")
    for key in ("vertices", "arcs", "gamma"):
        if key not in data:
            raise InputError(f"missing key {key!r} in triangulation file")
    try:
        v = int(data["vertices"])
        arcs = [tuple(map(int, a)) for a in data["arcs"]]
        s, t = (int(z) for z in data["gamma"])
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed triangulation file: {exc}")
    tri = validate(v, arcs)
    return OrientedTriangulation(tri, s, t)


def parse_arc(text):
    try:
        p, q = (int(z) for z in text.split(","))
    except (TypeError, ValueError, AttributeError):
        raise InputError(f"--arc expects p,q; got {text!r}")
    return (p, q)


def expr_payload(expr):
    return [
        {"coeff": t.coeff, "exp2": list(t.exp2), "thetas": [v.tri for v in t.thetas]}
        for t in expr.terms
    ]


def emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def expr_out(args, expr):
    if args.format == "json":
        emit(args, json.dumps({"terms": expr_payload(expr)}, sort_keys=True))
    else:
        emit(args, sr.canonical_string(expr))


def cover_json(frozen):
    return [[[list(a), list(b)], m] for (a, b), m in frozen]


def lattice_dot(nodes, edges, ranks, kind):
    lines = [f"graph {kind}_lattice {{"]
    for i, _ in enumerate(nodes):
        lines.append(f'  n{i} [label="{i} (rank {ranks[i]})"];')
    for i, j, lab in edges:
        lines.append(f'  n{i} -- n{j} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_validate(args, ot):
    payload = {
        "vertices": ot.v,
        "gamma": [ot.s, ot.t],
        "arcs": [
            {"label": k, "endpoints": list(ot.arc_of_label[k]),
             "direction": list(ot.arc_dir[ot.arc_of_label[k]])}
            for k in range(1, ot.n + 1)
        ],
        "triangles": [
            {"theta": i + 1, "vertices": list(tri), "positive_rank": ot.pos_rank[i + 1]}
            for i, tri in enumerate(ot.theta_tris)
        ],
        "quiver": [list(a) for a in ot.quiver_arrows],
        "fan_centres": list(ot.fan_centres),
    }
    if args.format == "json":
        emit(args, json.dumps(payload, sort_keys=True))
    else:
        lines = [f"polygon v={ot.v} gamma=({ot.s},{ot.t})"]
        for a in payload["arcs"]:
            lines.append(
                f"arc {a['label']}: ({a['endpoints'][0]},{a['endpoints'][1]}) "
                f"dir {a['direction'][0]}->{a['direction'][1]}"
            )
        for t in payload["triangles"]:
            lines.append(
                f"theta {t['theta']}: triangle {tuple(t['vertices'])} rank {t['positive_rank']}"
            )
        lines.append("quiver: " + ", ".join(f"{i}->{j}" for i, j in ot.quiver_arrows))
        emit(args, "\n".join(lines))
    return 0


def cmd_snake(args, ot):
    g = sn.build_snake(ot, parse_arc(args.arc))
    payload = {
        "faces": [t.face for t in g.tiles],
        "offsets": list(g.offsets),
        "tiles": [
            {"index": t.index, "face": t.face, "pos": list(t.pos),
             "theta_bl": t.theta_bl, "theta_tr": t.theta_tr,
             "sides": {side: lab for side, lab in t.side_labels}}
            for t in g.tiles
        ],
    }
    if args.format == "json":
        emit(args, json.dumps(payload, sort_keys=True))
    else:
        lines = [f"snake with {g.d} tiles, shape {''.join(g.offsets) or '-'}"]
        for t in payload["tiles"]:
            lines.append(
                f"tile {t['index']}: face {t['face']} at {tuple(t['pos'])} "
                f"thetas ({t['theta_bl']},{t['theta_tr']}) sides "
                + " ".join(f"{s}={l}" for s, l in sorted(t["sides"].items()))
            )
        emit(args, "\n".join(lines))
    return 0


def cmd_lattice(args, ot):
    g = sn.build_snake(ot, parse_arc(args.arc))
    if args.side == "dimer":
        lat = sn.enumerate_covers(g, args.d)
        nodes = [cover_json(n) for n in lat.nodes]
        edges, ranks = lat.edges, lat.rank
    else:
        vectors, edges, ranks = bridge.submodule_lattice(g, args.d)
        nodes = [list(vec) for vec in vectors]
    if args.format == "json":
        emit(args, json.dumps({"nodes": nodes, "edges": [list(e) for e in edges]},
                              sort_keys=True))
    else:
        emit(args, lattice_dot(nodes, edges, ranks, args.side))
    return 0


def cmd_expand(args, ot):
    expr_out(args, sn.classical_expansion(ot, parse_arc(args.arc)))
    return 0


def cmd_super_expand(args, ot):
    expr_out(args, sn.super_lambda_dimer(ot, parse_arc(args.arc)))
    return 0


def cmd_super_cc(args, ot):
    expr_out(args, cc.super_cc(ot, parse_arc(args.arc)))
    return 0


def cmd_bijection(args, ot):
    g = sn.build_snake(ot, parse_arc(args.arc))
    lat = sn.enumerate_covers(g, 2)
    pairs = []
    for node in lat.nodes:
        rank = bridge.submodule_of_cover(g, sn.thaw(node))
        pairs.append({"cover": cover_json(node), "rank": list(rank)})
    if args.format == "json":
        emit(args, json.dumps({"pairs": pairs}, sort_keys=True))
    else:
        lines = []
        for p in pairs:
            lines.append(f"rank {tuple(p['rank'])} <-> cover {p['cover']}")
        emit(args, "\n".join(lines))
    return 0


def cmd_count(args, ot):
    g = sn.build_snake(ot, parse_arc(args.arc))
    covers = len(sn.enumerate_covers(g, args.d).nodes)
    mod = strmod.module_of_arc(ot, parse_arc(args.arc))
    subs = len(strmod.submodules(ot, mod, args.d))
    emit(args, f"dimers={covers} submodules={subs} equal={'true' if covers == subs else 'false'}")
    return 0 if covers == subs else 1


def cmd_verify(args, ot=None):
    reports = [
        ("route equivalence", cc.equivalence_sweep(args.vmax, seed=args.seed)),
        ("lattice bijection", cc.bijection_sweep(max_tiles=6, d=2)),
        ("d-dimer counting", cc.counting_sweep(max_tiles=4, ds=(2, 3, 4))),
        ("super Ptolemy", cc.ptolemy_sweep(args.vmax, seed=args.seed)),
        ("positive ordering", cc.ordering_sweep(min(args.vmax + 3, 12))),
        ("index consistency", cc.index_sweep(args.vmax)),
    ]
    lines = []
    ok = True
    for title, rep in reports:
        lines.extend(rep.lines(title))
        ok = ok and rep.ok
    lines.append("verify: " + ("PASS" if ok else "FAIL"))
    emit(args, "\n".join(lines))
    return 0 if ok else 1


COMMANDS = {
    "validate": (cmd_validate, True),
    "snake": (cmd_snake, True),
    "lattice": (cmd_lattice, True),
    "expand": (cmd_expand, True),
    "super-expand": (cmd_super_expand, True),
    "super-cc": (cmd_super_cc, True),
    "bijection": (cmd_bijection, True),
    "count": (cmd_count, True),
    "verify": (cmd_verify, False),
}

NEEDS_ARC = {"snake", "lattice", "expand", "super-expand", "super-cc", "bijection", "count"}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="supersnake",
        description="Super lambda lengths in triangulated polygons, two ways.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_input) in COMMANDS.items():
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("input", help="triangulation JSON file")
        p.add_argument("--arc", help="arc endpoints p,q")
        p.add_argument("--d", type=int, default=2, help="dimer multiplicity")
        p.add_argument("--side", choices=("dimer", "module"), default="dimer")
        p.add_argument("--vmax", type=int, default=9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to this path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    fn, needs_input = COMMANDS[args.command]
    try:
        if args.command in NEEDS_ARC and args.arc is None:
            raise InputError(f"{args.command} requires --arc p,q")
        ot = load_oriented(args.input) if needs_input else None
        return fn(args, ot) if needs_input else fn(args)
    except (InputError, TriangulationError, sr.NonRepresentableRoot,
            cc.NonMonomialConfiguration) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
