#!/usr/bin/env python3
"""Render tangent-line arrangements and their prototile catalogs as SVG.

Produces, for a few representative symmetry indices, the full chord
arrangement (with the inscribed polygon for even d) and a sheet of the
decorated prototiles the arrangement induces.
"""

import argparse
import os

from deltiling.arrangement import SymmetryIndex, triangular_pattern
from deltiling.svg import render_arrangement, render_prototile_sheet

CASES = [(7, 0), (8, 0), (9, 0), (9, -2), (12, 0), (12, 2), (14, 0)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="output")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    for d, kappa in CASES:
        sym = SymmetryIndex(d, kappa)
        faces = triangular_pattern(sym)
        tag = f"d{d}_k{kappa}"
        render_arrangement(d, kappa, os.path.join(args.out, f"arrangement_{tag}.svg"))
        print(f"{sym}: {len(faces)} elementary triangles "
              f"-> arrangement_{tag}.svg")
    for d in (7, 9, 14):
        path = os.path.join(args.out, f"prototiles_d{d}.svg")
        render_prototile_sheet(d, path)
        print(f"prototile sheet for d={d} -> {path}")


if __name__ == "__main__":
    main()
