"""Algebraic-number diagnostics: minimal polynomials and the Pisot test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .field import Elem


class IntPolynomial:
    """Integer polynomial, ascending coefficients, nonzero leading coefficient."""

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if coeffs[-1] == 0:
            raise ValueError("zero polynomial")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def content(self):
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self):
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def is_monic(self):
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_elem(self, x: Elem):
        acc = x.f.zero
        for c in reversed(self.coeffs):
            acc = acc * x + x.f.rational(c)
        return acc

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:] or [0])

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            ac = abs(c)
            body = mono if (ac == 1 and i > 0) else (f"{ac}{mono}" if i > 0 else f"{ac}")
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)


def minimal_polynomial(x: Elem) -> IntPolynomial:
    """Primitive integer minimal polynomial of a field element.

    Found by incremental echelon reduction of the power vectors
    1, x, x^2, ... until the first rational linear dependence.
    """
    f = x.f
    D = f.degree
    echelon = []  # (pivot index, residual vector, combo over powers)
    power = f.one
    for k in range(D + 1):
        vec = [Fraction(c, power.den) for c in power.num]
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for piv, evec, ecombo in echelon:
            c = vec[piv]
            if c:
                for j in range(D):
                    vec[j] -= c * evec[j]
                for j, cc in enumerate(ecombo):
                    combo[j] -= c * cc
        piv = next((j for j, c in enumerate(vec) if c), None)
        if piv is None:
            den = 1
            for c in combo:
                den = den * c.denominator // math.gcd(den, c.denominator)
            return IntPolynomial([int(c * den) for c in combo]).primitive()
        inv = 1 / vec[piv]
        vec = [c * inv for c in vec]
        combo = [c * inv for c in combo]
        echelon.append((piv, vec, combo))
        power = power * x
    raise AssertionError("no dependence found within field degree")


@dataclass
class PisotResult:
    is_pisot: bool
    reason: str
    polynomial: IntPolynomial
    conjugates: list  # (complex approx, modulus, certified radius)
    margin: float  # min over conjugates of | |z| - 1 | (excluding x itself)


def _certified_roots(poly: IntPolynomial, target_width=1e-7):
    """Approximate roots with certified per-root inclusion radii.

    Radius n*|p(z)/p'(z)| around each approximation contains a root; when
    all discs are pairwise disjoint each contains exactly one.
    """
    n = poly.degree
    dpoly = poly.derivative()
    coeffs_desc = list(reversed(poly.coeffs))
    for dps in (40, 80, 160, 320, 640):
        with mpmath.workdps(dps):
            roots = mpmath.polyroots(coeffs_desc, maxsteps=200, extraprec=dps * 2)
            data = []
            for z in roots:
                pv = poly(z)
                dv = dpoly(z)
                if dv == 0:
                    break
                data.append((z, float(abs(z)), float(n * abs(pv) / abs(dv))))
            else:
                ok = all(r <= target_width for _, _, r in data)
                if ok:
                    for i in range(len(data)):
                        for j in range(i + 1, len(data)):
                            if abs(data[i][0] - data[j][0]) <= data[i][2] + data[j][2]:
                                ok = False
                if ok:
                    return data
    raise ArithmeticError("could not certify polynomial roots")


def pisot_check(x: Elem, width=1e-7) -> PisotResult:
    """Classify x as Pisot / not, with certified conjugate moduli."""
    poly = minimal_polynomial(x)
    if not x.is_real():
        return PisotResult(False, "not a real number", poly, [], 0.0)
    if not (x > 1):
        return PisotResult(False, "not greater than one", poly, [], 0.0)
    if not poly.is_monic():
        return PisotResult(False, "not an algebraic integer", poly, [], 0.0)
    roots = _certified_roots(poly, target_width=width)
    xv = x.cvalue().real
    self_idx = min(range(len(roots)), key=lambda i: abs(roots[i][0] - xv))
    margin = math.inf
    for i, (z, mod, rad) in enumerate(roots):
        if i == self_idx:
            continue
        lo, hi = mod - rad, mod + rad
        if hi < 1:
            margin = min(margin, 1 - hi)
        elif lo > 1:
            return PisotResult(False, f"conjugate with modulus {mod:.6f} > 1",
                               poly, roots, 0.0)
        else:
            return PisotResult(False, "conjugate modulus on the unit circle "
                               "(Salem/boundary)", poly, roots, 0.0)
    if margin is math.inf:
        margin = 0.0
    return PisotResult(True, "all conjugates inside the unit circle", poly,
                       roots, margin)


def is_pisot(x: Elem) -> bool:
    return pisot_check(x).is_pisot
