"""Quantitative diagnostics: matrices, frequencies, vertex stars, reports."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .field import field_for_order, inflation_factor
from .algebraic import pisot_check
from .arrangement import (SymmetryIndex, census_closed_form, get_arrangement,
                          subdivision_closed_form, multiplicity_closed_form,
                          triangular_pattern)
from .prototiles import prototile_catalog, undecorated_signature
from .substitution import RuleSet


def substitution_matrix(rules: RuleSet):
    """(M, order): M[i, j] = multiplicity of tile i among children of j."""
    return rules.matrix()


def is_primitive(M):
    """Some power of M is strictly positive."""
    P = np.eye(M.shape[0], dtype=object)
    A = M.astype(object)
    for _ in range(M.shape[0]):
        P = (P @ A > 0).astype(object)
        if P.all():
            return True
    return False


def tile_frequencies(rules: RuleSet):
    """(dominant eigenvalue, name -> relative frequency).

    The dominant eigenvalue must equal iota^2; the frequency vector is
    the normalized Perron right eigenvector (tile-count proportions in
    high inflation powers).
    """
    M, order = rules.matrix()
    if not is_primitive(M):
        raise ValueError("substitution matrix is not primitive")
    vals, vecs = np.linalg.eig(M.astype(float))
    k = int(np.argmax(vals.real))
    lam = vals[k].real
    v = vecs[:, k].real
    v = np.abs(v)
    v = v / v.sum()
    assert np.max(np.abs(M.astype(float) @ v - lam * v)) < 1e-9
    iota2 = abs(rules.iota.cvalue()) ** 2
    assert abs(lam - iota2) < 1e-9, (lam, iota2)
    return lam, dict(zip(order, v))


def empirical_convergence(rules: RuleSet, seed_name, depth=4):
    """l1 distance of tile fractions in Phi^n(seed) to the Perron vector."""
    _, freq = tile_frequencies(rules)
    M, order = rules.matrix()
    counts = np.zeros(len(order))
    counts[order.index(seed_name)] = 1
    dists = []
    for _ in range(depth):
        counts = M.astype(float) @ counts
        frac = counts / counts.sum()
        dists.append(float(sum(abs(frac[i] - freq[n])
                               for i, n in enumerate(order))))
    return dists


# -- vertex configurations ----------------------------------------------

@dataclass
class VertexStar:
    z: complex
    sectors: tuple   # cyclic, anticlockwise: (shape id, angle numerator)
    order: int       # largest rotational symmetry of the sector sequence


def _shape_id(cat, name):
    return undecorated_signature(cat.by_name[name].signature)


def vertex_configurations(patch):
    """Rotational symmetry of every interior vertex star of a patch.

    Angles are in units of pi/d; a vertex is interior when its sectors
    sum to 2 pi exactly.
    """
    d = patch.d
    cat = prototile_catalog(d)
    stars = {}
    for tile in patch.tiles:
        corners = tile.corners(d)
        fl = [c.cvalue() for c in corners]
        shape = _shape_id(cat, tile.name)
        for k in range(3):
            u = fl[(k + 1) % 3] - fl[k]
            w = fl[(k + 2) % 3] - fl[k]
            ang = (cmath.phase(w) - cmath.phase(u)) % (2 * math.pi)
            num = round(ang * d / math.pi)
            assert abs(ang - num * math.pi / d) < 1e-9
            start = cmath.phase(u)
            stars.setdefault(corners[k].key(), (fl[k], []))[1].append(
                (start % (2 * math.pi), shape, num))
    out = []
    for z, sectors in stars.values():
        sectors.sort()
        total = sum(num for _, _, num in sectors)
        if total != 2 * d:
            continue  # boundary vertex
        cyc = tuple((shape, num) for _, shape, num in sectors)
        n = len(cyc)
        order = 1
        for k in range(1, n + 1):
            if n % k:
                continue
            rot = cyc[n // k:] + cyc[:n // k]
            if rot == cyc and sum(num for _, num in cyc[:n // k]) * k == 2 * d:
                order = max(order, k)
        out.append(VertexStar(z, cyc, order))
    return out


# -- census and arrangement reports -------------------------------------

def census_report(d):
    """Geometric counts vs closed forms, plus table/sequence verification."""
    kappas = (0, -2, 2) if d % 3 == 0 else (0,)
    variants = []
    all_match = True
    for kappa in kappas:
        sym = SymmetryIndex(d, kappa)
        arr = get_arrangement(d, kappa)
        geometric = len(triangular_pattern(sym))
        closed = census_closed_form(d, kappa)
        table_ok = all(arr.vertex_multiplicities(mu)
                       == multiplicity_closed_form(d, kappa, mu) for mu in range(d))
        seq_ok = all(arr.subdivision_sequence(mu)
                     == subdivision_closed_form(d, kappa, mu) for mu in range(d))
        match = geometric == closed and table_ok and seq_ok
        all_match = all_match and match
        variants.append({"kappa": kappa, "geometric": geometric,
                         "closed_form": closed, "multiplicities_ok": table_ok,
                         "subdivisions_ok": seq_ok, "match": match})
    return {"d": d, "variants": variants, "all_match": all_match}


def pisot_table(d):
    """Pisot classification of every inflation factor iota_{d,p}."""
    rows = []
    for p in range(2, d // 2 + 1):
        res = pisot_check(inflation_factor(d, p))
        rows.append({"p": p, "value": float(inflation_factor(d, p).cvalue().real),
                     "degree": res.polynomial.degree,
                     "pisot": res.is_pisot,
                     "margin": res.margin,
                     "reason": res.reason})
    return rows
