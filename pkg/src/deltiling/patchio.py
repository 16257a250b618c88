"""Patch interchange format: exact, versioned, round-trip safe.

A patch file is JSON with a fixed key order.  Tile positions are stored
as exact data only: the rotation exponent r of zeta_n^r and the
translation as an integer coefficient vector over the cyclotomic power
basis with a common denominator.  A parallel "shadow" block carries float
corner coordinates for consumers that do not implement the field
arithmetic; the shadow is derived data and ignored on import.
"""

from __future__ import annotations

import json

from .field import field_for_order
from .substitution import Isometry, Patch, Tile

FORMAT = "deltoid-patch"
VERSION = 1


class SchemaError(ValueError):
    pass


def _elem_out(e):
    return {"num": list(e.num), "den": e.den}


def _elem_in(f, rec):
    try:
        return f.from_coeffs(rec["num"], rec["den"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed field element: {exc}")
    except ValueError as exc:
        raise SchemaError(str(exc))


def patch_document(patch: Patch, manifest=None, precision=12):
    f = field_for_order(patch.d)
    tiles = []
    shadow = []
    for t in patch.tiles:
        tiles.append({"name": t.name, "r": t.iso.r,
                      "t": _elem_out(t.iso.t)})
        shadow.append([[round(c.cvalue().real, precision),
                        round(c.cvalue().imag, precision)]
                       for c in t.corners(patch.d)])
    return {
        "format": FORMAT,
        "version": VERSION,
        "d": patch.d,
        "field_order": f.n,
        "field_degree": f.degree,
        "manifest": manifest or {},
        "tiles": tiles,
        "shadow": {"precision": precision, "corners": shadow},
    }


def export_patch(patch: Patch, path, manifest=None, precision=12):
    doc = patch_document(patch, manifest, precision)
    data = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    with open(path, "w") as fh:
        fh.write(data)
    return doc


def import_patch(path):
    """(patch, manifest) from a patch file; exact data only is trusted."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}")
    if doc.get("format") != FORMAT:
        raise SchemaError(f"not a {FORMAT} file")
    if doc.get("version") != VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}")
    d = doc.get("d")
    if not isinstance(d, int) or d < 5:
        raise SchemaError(f"bad symmetry order {d!r}")
    f = field_for_order(d)
    if doc.get("field_order") != f.n or doc.get("field_degree") != f.degree:
        raise SchemaError("field parameters do not match the declared d")
    tiles = []
    for rec in doc.get("tiles", []):
        try:
            name, r, t = rec["name"], rec["r"], rec["t"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed tile record: {exc}")
        if not isinstance(r, int):
            raise SchemaError(f"rotation exponent must be an integer: {r!r}")
        tiles.append(Tile(name, Isometry(r % f.n, _elem_in(f, t))))
    return Patch(d, tiles), doc.get("manifest", {})
