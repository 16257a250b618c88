#!/usr/bin/env python3
"""Grow a deterministic substitution tiling and export it.

Starts from a single prototile, applies the chosen rules n times
(optionally alternating two rule sets as a multisubstitution), verifies
the result is face-to-face, and writes both the interchange JSON and an
SVG picture.
"""

import argparse
import os

from deltiling.patchio import export_patch
from deltiling.substitution import Patch, derive_rules, verify_face_to_face
from deltiling.svg import render_patch


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=14)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--second-p", type=int, default=0,
                    help="alternate with a second factor (multisubstitution)")
    ap.add_argument("--seed-tile", default="G")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--out", default="output")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    stages = [derive_rules(args.d, args.p, 1)]
    if args.second_p:
        stages.append(derive_rules(args.d, args.second_p, 1))
    patch = Patch.single(args.d, args.seed_tile)
    for k in range(args.n):
        patch = patch.inflate(stages[k % len(stages)])
        print(f"step {k + 1}: {len(patch)} tiles")
    report = verify_face_to_face(patch)
    print(f"face-to-face: {'ok' if report.ok else report.problems[:3]}; "
          f"{report.interior_edges} interior edges, "
          f"{report.boundary_edges} boundary")

    tag = f"d{args.d}_p{args.p}" + (f"x{args.second_p}" if args.second_p
                                    else "") + f"_{args.seed_tile}_n{args.n}"
    json_path = os.path.join(args.out, f"tiling_{tag}.json")
    export_patch(patch, json_path,
                 manifest={"p": args.p, "n": args.n,
                           "seed_tile": args.seed_tile})
    render_patch(patch, os.path.join(args.out, f"tiling_{tag}.svg"),
                 decorations=len(patch) <= 2000)
    print(f"wrote tiling_{tag}.json and tiling_{tag}.svg in {args.out}/")


if __name__ == "__main__":
    main()
