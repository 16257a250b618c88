"""Command line driver: build, render, analyze and verify tilings."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .field import field_for_order, inflation_factor
from .arrangement import SymmetryIndex, get_arrangement, triangular_pattern
from .prototiles import prototile_catalog
from .substitution import Patch, derive_rules, derive_edge_words, \
    verify_face_to_face
from . import analysis, patchio, svg
from . import random as ensembles


def _out_dir(args):
    out = args.out or os.environ.get("DELTILING_OUT", ".")
    os.makedirs(out, exist_ok=True)
    return out


def _sign(s):
    if s in ("+", "1", "+1"):
        return 1
    if s in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("sign must be + or -")


def cmd_arrange(args):
    out = _out_dir(args)
    sym = SymmetryIndex(args.d, args.kappa)
    arr = get_arrangement(args.d, args.kappa)
    base = os.path.join(out, f"arrangement_d{args.d}_k{args.kappa}")
    with open(base + ".txt", "w") as fh:
        fh.write(f"deltoid tangent arrangement d={args.d} kappa={args.kappa}\n")
        fh.write(f"segments: {len(arr.segments)}\n")
        for mu in range(args.d):
            v2, v3 = arr.vertex_multiplicities(mu)
            seq = arr.subdivision_sequence(mu)
            fh.write(f"segment {mu}: v2={v2} v3={v3} subdivision={seq}\n")
        fh.write(f"elementary triangles: {len(triangular_pattern(sym))}\n")
        fh.write("vertices (exact coefficient vector / denominator, float):\n")
        for rec in arr.vertices.values():
            z = rec.z
            fh.write(f"  mult={rec.multiplicity} num={list(z.num)} "
                     f"den={z.den} float={z.cvalue():.12f}\n")
    svg.render_arrangement(args.d, args.kappa, base + ".svg",
                           polygon=(args.d % 2 == 0))
    print(f"wrote {base}.txt and {base}.svg")


def cmd_prototiles(args):
    out = _out_dir(args)
    cat = prototile_catalog(args.d)
    base = os.path.join(out, f"prototiles_d{args.d}")
    with open(base + ".txt", "w") as fh:
        fh.write(f"prototile catalog d={args.d}: {len(cat.prototiles)} tiles\n")
        for p in cat.prototiles:
            sig = " ".join(str(l) for l in p.signature)
            fh.write(f"{p.name}: kappa={p.kappa} indices={p.face.tri.idx} "
                     f"sides={p.side_classes} letters=[{sig}]\n")
    svg.render_prototile_sheet(args.d, base + ".svg")
    print(f"wrote {base}.txt and {base}.svg")


def _rules_listing(rules):
    lines = []
    for name in sorted(rules.rules):
        body = " u ".join(n for n, _ in rules.rules[name])
        lines.append(f"Phi({name}) = {body}")
    words = derive_edge_words(rules)
    for l in sorted(words, key=lambda l: (l.cls, -l.orient)):
        lines.append(f"phi({l}) = " + "".join(str(x) for x in words[l]))
    return "\n".join(lines) + "\n"


def cmd_rules(args):
    out = _out_dir(args)
    rules = derive_rules(args.d, args.p, args.sign)
    tag = "p" if args.sign > 0 else "m"
    base = os.path.join(out, f"rules_d{args.d}_p{args.p}_{tag}")
    with open(base + ".txt", "w") as fh:
        fh.write(_rules_listing(rules))
    # sheet: every inflated prototile with its dissection
    cv = svg.Canvas()
    palette = svg._shape_palette(args.d)
    iota = abs(rules.iota.cvalue())
    cell = 4.5 * iota
    cols = 6
    from .substitution import tile_corners
    for i, name in enumerate(sorted(rules.rules)):
        col, row = i % cols, i // cols
        shift = complex(col * cell, -row * cell)
        for cname, h in rules.rules[name]:
            pts = [c.cvalue() * 1.0 + shift
                   for c in tile_corners(args.d, cname, h)]
            cv.polygon(pts, fill=palette[cname], stroke="#222", width=0.02)
        rep = [c.cvalue() * iota + shift
               for c in tile_corners(args.d, name)]
        cv.polygon(rep, fill="none", stroke="#000", width=0.05)
        cv.text(sum(rep) / 3 - 0.6j * iota, name, size=0.8)
    cv.write(base + ".svg", margin=2.0)
    print(f"wrote {base}.txt and {base}.svg")


def cmd_tile(args):
    out = _out_dir(args)
    stages = [(args.p, args.sign)]
    for part in args.compose or []:
        p2, s2 = part.split(",")
        stages.append((int(p2), _sign(s2)))
    patch = Patch.single(args.d, args.seed_tile)
    manifest = {"mode": "deterministic", "d": args.d, "seed_tile":
                args.seed_tile, "stages": []}
    for step in range(args.n):
        p, sign = stages[step % len(stages)]
        patch = patch.inflate(derive_rules(args.d, p, sign))
        manifest["stages"].append({"p": p, "sign": sign})
    base = os.path.join(out, f"patch_d{args.d}_{args.seed_tile}_n{args.n}")
    patchio.export_patch(patch, base + ".json", manifest)
    svg.render_patch(patch, base + ".svg", decorations=args.decorations)
    print(f"wrote {base}.json and {base}.svg ({len(patch)} tiles)")


def cmd_random(args):
    out = _out_dir(args)
    manifest = {"mode": args.mode, "d": args.d, "rng_seed": args.rng_seed}
    highlight = []
    if args.mode == "rearrange":
        rules = derive_rules(args.d, args.p, args.sign)
        patch = Patch.single(args.d, args.seed_tile)
        for _ in range(args.n):
            patch = patch.inflate(rules)
        manifest.update(p=args.p, sign=args.sign, n=args.n, steps=args.steps,
                        seed_tile=args.seed_tile)
        patch = ensembles.rearrangement_sample(patch, args.steps,
                                               args.rng_seed)
        for site in ensembles.find_flippable(patch):
            cs = [c.cvalue() for c in site.old[0].corners(args.d)]
            ds = [c.cvalue() for c in site.old[1].corners(args.d)]
            shared = [z for z in cs if any(abs(z - w) < 1e-9 for w in ds)]
            if len(shared) == 2:
                highlight.append(tuple(shared))
    else:
        family = ensembles.random_rule_family(args.d, cap=args.cap)
        pi = family.uniform_pi()
        manifest.update(n=args.n, family_size=len(family), pi=pi,
                        cap=args.cap, seed_tile=args.seed_tile)
        patch = ensembles.random_substitution(args.seed_tile, family, pi,
                                              args.n, args.rng_seed)
    rep = verify_face_to_face(patch, decorated=False)
    if not rep.ok:
        raise AssertionError(f"ensemble sample failed the audit: {rep}")
    base = os.path.join(out, f"random_d{args.d}_{args.mode}_s{args.rng_seed}")
    patchio.export_patch(patch, base + ".json", manifest)
    svg.render_patch(patch, base + ".svg",
                     highlight_edges=highlight if args.mark_flips else ())
    print(f"wrote {base}.json and {base}.svg ({len(patch)} tiles)")


def cmd_analyze(args):
    rep = analysis.census_report(args.d)
    print(f"census d={args.d}: all_match={rep['all_match']}")
    for v in rep["variants"]:
        print(f"  kappa={v['kappa']}: triangles={v['geometric']} "
              f"closed_form={v['closed_form']} "
              f"multiplicities_ok={v['multiplicities_ok']} "
              f"subdivisions_ok={v['subdivisions_ok']}")
    ps = [args.p] if args.p else range(2, args.d // 2 + 1)
    for row in analysis.pisot_table(args.d):
        if row["p"] not in ps:
            continue
        print(f"iota_{{{args.d},{row['p']}}} = {row['value']:.6f}: "
              f"Pisot={row['pisot']} ({row['reason']})")
    for p in ps:
        rules = derive_rules(args.d, p, 1)
        lam, freq = analysis.tile_frequencies(rules)
        iota2 = abs(inflation_factor(args.d, p).cvalue()) ** 2
        top = sorted(freq.items(), key=lambda kv: -kv[1])[:4]
        head = " ".join(f"{n}:{v:.4f}" for n, v in top)
        print(f"matrix d={args.d} p={p}: lambda1={lam:.9f} "
              f"iota^2={iota2:.9f} top frequencies {head}")


def cmd_verify(args):
    patch, manifest = patchio.import_patch(args.patch)
    rep = verify_face_to_face(patch, decorated=not args.undecorated)
    print(rep)
    for problem in rep.problems:
        print("  " + problem)
    if not rep.ok:
        sys.exit(1)
    print("PASS")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="deltiling",
        description="Deltoid-tangent arrangements, triangle substitution "
                    "tilings and random ensembles.")
    ap.add_argument("--config", help="JSON file with default argument values")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output directory "
                       "(default: $DELTILING_OUT or .)")

    p = sub.add_parser("arrange", help="build a tangent-line arrangement")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--kappa", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_arrange)

    p = sub.add_parser("prototiles", help="derive the prototile catalog")
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_prototiles)

    p = sub.add_parser("rules", help="derive substitution rules")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sign", type=_sign, default=1)
    common(p)
    p.set_defaults(fn=cmd_rules)

    p = sub.add_parser("tile", help="generate a deterministic tiling patch")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sign", type=_sign, default=1)
    p.add_argument("--seed-tile", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--compose", nargs="*",
                   help="extra stages as p,sign (cycled with the first)")
    p.add_argument("--decorations", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_tile)

    p = sub.add_parser("random", help="sample a random ensemble member")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=("rearrange", "subst"), required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--sign", type=_sign, default=1)
    p.add_argument("--seed-tile", default=None)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--mark-flips", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_random)

    p = sub.add_parser("analyze", help="census, frequency and Pisot reports")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="audit a patch file")
    p.add_argument("patch")
    p.add_argument("--undecorated", action="store_true")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            for key, value in json.load(fh).items():
                if getattr(args, key, None) in (None, False):
                    setattr(args, key, value)
    if getattr(args, "seed_tile", "x") is None:
        args.seed_tile = prototile_catalog(args.d).prototiles[0].name
    try:
        args.fn(args)
    except (ValueError, patchio.SchemaError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.exit(2)


if __name__ == "__main__":
    main()
