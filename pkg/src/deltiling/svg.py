"""Hand-rolled SVG output for arrangements, prototile sheets and patches."""

from __future__ import annotations

import cmath
import colorsys
import math

from .arrangement import get_arrangement, deltoid_point
from .prototiles import prototile_catalog, undecorated_signature
from .substitution import Patch


def _fmt(x, precision=9):
    s = f"{x:.{precision}f}".rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"


class Canvas:
    """Minimal SVG 1.1 string builder (y axis flipped to mathematical)."""

    def __init__(self, precision=9):
        self.parts = []
        self.precision = precision
        self.min_x = self.min_y = float("inf")
        self.max_x = self.max_y = float("-inf")

    def _pt(self, z):
        self.min_x = min(self.min_x, z.real)
        self.max_x = max(self.max_x, z.real)
        self.min_y = min(self.min_y, -z.imag)
        self.max_y = max(self.max_y, -z.imag)
        return f"{_fmt(z.real, self.precision)},{_fmt(-z.imag, self.precision)}"

    def polygon(self, pts, fill="none", stroke="#000", width=0.01):
        body = " ".join(self._pt(z) for z in pts)
        self.parts.append(f'<polygon points="{body}" fill="{fill}" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}" '
                          'stroke-linejoin="round"/>')

    def polyline(self, pts, stroke="#000", width=0.01):
        body = " ".join(self._pt(z) for z in pts)
        self.parts.append(f'<polyline points="{body}" fill="none" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}" '
                          'stroke-linecap="round"/>')

    def line(self, a, b, stroke="#000", width=0.01):
        self.polyline([a, b], stroke, width)

    def text(self, z, s, size=0.2):
        p = self._pt(z)
        x, y = p.split(",")
        self.parts.append(f'<text x="{x}" y="{y}" font-size="{_fmt(size)}" '
                          'text-anchor="middle" font-family="sans-serif">'
                          f"{s}</text>")

    def write(self, path, margin=0.3):
        if not self.parts:
            self.min_x = self.min_y = 0.0
            self.max_x = self.max_y = 1.0
        x0, y0 = self.min_x - margin, self.min_y - margin
        w = self.max_x - self.min_x + 2 * margin
        h = self.max_y - self.min_y + 2 * margin
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
                'width="800" height="800">\n')
        with open(path, "w") as fh:
            fh.write(head)
            for p in self.parts:
                fh.write(p + "\n")
            fh.write("</svg>\n")


def _shape_palette(d):
    """One base color per undecorated shape; tints for the variants."""
    cat = prototile_catalog(d)
    shapes = sorted({undecorated_signature(p.signature)
                     for p in cat.prototiles})
    colors = {}
    n = len(shapes)
    for i, s in enumerate(shapes):
        r, g, b = colorsys.hls_to_rgb((i / n + 0.06) % 1.0, 0.72, 0.55)
        colors[s] = (r, g, b)
    out = {}
    for p in cat.prototiles:
        r, g, b = colors[undecorated_signature(p.signature)]
        if p.name.endswith("t"):  # mirror variant: darker tint
            r, g, b = r * 0.82, g * 0.82, b * 0.82
        out[p.name] = "#%02x%02x%02x" % (round(r * 255), round(g * 255),
                                         round(b * 255))
    return out


def _deltoid_points(steps=600):
    return [2 * cmath.exp(1j * t) + cmath.exp(-2j * t)
            for t in (2 * math.pi * k / steps for k in range(steps + 1))]


def render_arrangement(d, kappa, path, polygon=True, labels=False):
    """The deltoid, its tangent chords, and (even d) the inscribed q-gon."""
    arr = get_arrangement(d, kappa)
    cv = Canvas()
    cv.polyline(_deltoid_points(), stroke="#888", width=0.012)
    for i, seg in enumerate(arr.segments):
        a, b = seg.start.cvalue(), seg.end.cvalue()
        cv.line(a, b, stroke="#000", width=0.008)
        if labels:
            cv.text(a + (b - a) * 1.03, str(i), size=0.14)
    if polygon and d % 2 == 0:
        from .random import polygon_vertices
        pts = [z.cvalue() for z in polygon_vertices(d, kappa)]
        cv.polygon(pts, fill="none", stroke="#c00", width=0.02)
    cv.write(path)


def _tile_outline(patch, tile):
    return [c.cvalue() for c in tile.corners(patch.d)]


def _decoration_overlay(d, name, outline):
    """Float inscribed-triangle corners of a placed tile."""
    cat = prototile_catalog(d)
    face = cat.by_name[name].face
    rep = [c.cvalue() for c in face.corners]
    alpha = (outline[1] - outline[0]) / (rep[1] - rep[0])
    beta = outline[0] - alpha * rep[0]
    return [alpha * p.cvalue() + beta for p in face.inscribed]


def render_patch(patch: Patch, path, decorations=False, labels=False,
                 highlight_edges=(), stroke=0.008, precision=9):
    """A patch with per-shape fill colors.

    highlight_edges: iterable of float point pairs drawn with a thicker
    stroke (used to mark flip sites).
    """
    d = patch.d
    palette = _shape_palette(d)
    cv = Canvas(precision)
    for tile in patch.tiles:
        pts = _tile_outline(patch, tile)
        cv.polygon(pts, fill=palette[tile.name], stroke="#222", width=stroke)
    if decorations:
        for tile in patch.tiles:
            pts = _tile_outline(patch, tile)
            inner = _decoration_overlay(d, tile.name, pts)
            cv.polygon(inner, fill="none", stroke="#555", width=stroke * 0.7)
    if labels:
        for tile in patch.tiles:
            pts = _tile_outline(patch, tile)
            cv.text(sum(pts) / 3, tile.name, size=abs(pts[1] - pts[0]) * 0.25)
    for a, b in highlight_edges:
        cv.line(a, b, stroke="#c00", width=stroke * 4)
    cv.write(path)


def render_prototile_sheet(d, path, decorations=True, columns=8):
    """All prototiles of order d on a labelled grid sheet."""
    cat = prototile_catalog(d)
    cv = Canvas()
    palette = _shape_palette(d)
    cell = 5.0
    for i, p in enumerate(cat.prototiles):
        col, row = i % columns, i // columns
        rep = [c.cvalue() for c in p.face.corners]
        center = sum(rep) / 3
        shift = complex(col * cell, -row * cell) - center
        pts = [z + shift for z in rep]
        cv.polygon(pts, fill=palette[p.name], stroke="#222", width=0.02)
        if decorations:
            inner = [z.cvalue() + shift for z in p.face.inscribed]
            cv.polygon(inner, fill="none", stroke="#555", width=0.015)
        cv.text(sum(pts) / 3, p.name, size=0.5)
    cv.write(path, margin=2.0)
