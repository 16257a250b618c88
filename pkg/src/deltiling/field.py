"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every coordinate, length and trigonometric quantity used by the tiling
machinery is an element of Q(zeta_n) for a fixed even conductor n, stored
as an integer coefficient vector over the power basis 1, zeta, ...,
zeta^(phi(n)-1) together with a common denominator.  Elements are
immutable, equality (in particular equality to zero) is decided exactly by
coefficient comparison, and complex conjugation / multiplication by roots
of unity are cheap basis operations.

For an arrangement of order d the working conductor is 6d when d is even
and 12d when d is odd; in both cases 4 | n, so i is in the field and all
values sin(k*pi/d), cos(k*pi/(3d)), ... are representable.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import mpmath


def _poly_divexact(num, den):
    """Exact division of integer polynomials (den monic, ascending coeffs)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        out[k - dd] = c
        if c:
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    assert all(c == 0 for c in num[:dd]), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1  # x^n - 1
    for m in range(1, n):
        if n % m == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(m))
    return tuple(poly)


class CycField:
    """The cyclotomic field Q(zeta_n), zeta_n = exp(2*pi*i/n).

    Instances are interned per conductor; elements refer back to their
    field and may only be combined within one field.
    """

    _cache = {}

    def __new__(cls, n):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self._init(n)
        cls._cache[n] = self
        return self

    def _init(self, n):
        if n % 4 != 0:
            raise ValueError("conductor must be divisible by 4 (need i in the field)")
        self.n = n
        phi = cyclotomic_poly(n)
        self.degree = len(phi) - 1
        D = self.degree
        # x^k mod Phi_n for k = 0 .. D-1+n (covers products and zeta powers)
        kmax = D + n
        red = [None] * (kmax + 1)
        for k in range(D):
            v = [0] * D
            v[k] = 1
            red[k] = v
        for k in range(D, kmax + 1):
            prev = red[k - 1]
            head = prev[D - 1]
            v = [0] + prev[: D - 1]
            if head:
                for j in range(D):
                    v[j] -= head * phi[j]
            red[k] = v
        self._red = [tuple(v) for v in red]
        self.zero = Elem(self, (0,) * D, 1)
        self.one = Elem(self, self._red[0], 1)
        self.i = self.zeta(n // 4)
        self.minus_i = self.zeta(3 * n // 4)
        self._half_i = Elem(self, self._red[n // 4], 2)
        self._inv_cache = {}
        # complex float embedding of the power basis
        self._basis_c = [cmath.exp(2j * math.pi * k / n) for k in range(D)]
        self._basis_mp = {}

    def __repr__(self):
        return f"CycField({self.n})"

    def zeta(self, k):
        """zeta_n^k as a field element."""
        return Elem(self, self._red[k % self.n], 1)

    def rational(self, p, q=1):
        if isinstance(p, Fraction):
            p, q = p.numerator * q, p.denominator
        v = [c * p for c in self._red[0]]
        return Elem(self, tuple(v), q).normalized()

    def from_coeffs(self, nums, den=1):
        if len(nums) != self.degree:
            raise ValueError("coefficient vector length mismatch")
        return Elem(self, tuple(int(c) for c in nums), int(den)).normalized()

    def cos_turn(self, k, m):
        """cos(2*pi*k/m) exactly; m must divide n."""
        assert self.n % m == 0
        e = (self.n // m) * k
        return (self.zeta(e) + self.zeta(-e)) * Fraction(1, 2)

    def sin_turn(self, k, m):
        """sin(2*pi*k/m) exactly; m must divide n."""
        assert self.n % m == 0
        e = (self.n // m) * k
        return (self.zeta(e) - self.zeta(-e)) * self._half_i * -1

    def _basis_mpc(self, dps):
        key = dps
        if key not in self._basis_mp:
            with mpmath.workdps(dps):
                self._basis_mp[key] = [mpmath.expjpi(mpmath.mpf(2 * k) / self.n)
                                       for k in range(self.degree)]
        return self._basis_mp[key]


class Elem:
    """An element of a CycField: integer numerator vector / denominator."""

    __slots__ = ("f", "num", "den")

    def __init__(self, f, num, den):
        self.f = f
        self.num = tuple(num)
        self.den = den

    def normalized(self):
        g = self.den
        for c in self.num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g == 1 and self.den > 0:
            return self
        if self.den < 0:
            g = -g
        return Elem(self.f, tuple(c // g for c in self.num), self.den // g)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        a, b = self, other
        if a.den == b.den:
            return Elem(a.f, tuple(x + y for x, y in zip(a.num, b.num)), a.den).normalized()
        return Elem(a.f, tuple(x * b.den + y * a.den for x, y in zip(a.num, b.num)),
                    a.den * b.den).normalized()

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.f, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Elem(self.f, tuple(c * other for c in self.num), self.den).normalized()
        if isinstance(other, Fraction):
            return Elem(self.f, tuple(c * other.numerator for c in self.num),
                        self.den * other.denominator).normalized()
        if not isinstance(other, Elem):
            return NotImplemented
        f = self.f
        D = f.degree
        a, b = self.num, other.num
        conv = [0] * (2 * D - 1)
        for i_, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i_ + j] += x * y
        out = list(conv[:D])
        red = f._red
        for k in range(D, 2 * D - 1):
            c = conv[k]
            if c:
                rv = red[k]
                for j in range(D):
                    if rv[j]:
                        out[j] += c * rv[j]
        return Elem(f, out, self.den * other.den).normalized()

    __rmul__ = __mul__

    def mul_zeta(self, k):
        """Multiply by zeta_n^k (cheap: shift + reduction)."""
        f = self.f
        k %= f.n
        if k == 0:
            return self
        D = f.degree
        out = [0] * D
        red = f._red
        for j, c in enumerate(self.num):
            if c:
                e = j + k
                if e < D:
                    out[e] += c
                else:
                    rv = red[e]
                    for t in range(D):
                        if rv[t]:
                            out[t] += c * rv[t]
        return Elem(f, out, self.den).normalized()

    def conj(self):
        f = self.f
        D = f.degree
        out = [0] * D
        red = f._red
        n = f.n
        for j, c in enumerate(self.num):
            if c:
                rv = red[(n - j) % n]
                for t in range(D):
                    if rv[t]:
                        out[t] += c * rv[t]
        return Elem(f, out, self.den).normalized()

    def inv(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        f = self.f
        phi = [Fraction(c) for c in cyclotomic_poly(f.n)]
        a = [Fraction(c, self.den) for c in self.num]
        # xgcd(a, phi) over Q[x]
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd; inverse = s0... careful: s here tracks
        # coefficients of `a`: phi*u + a*v = r0  => a^{-1} = v / r0 mod phi
        c = r0[0]
        v = [x / c for x in s0]
        v = _poly_mod(v, phi)
        v += [Fraction(0)] * (f.degree - len(v))
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        nums = [int(x * den) for x in v]
        return Elem(f, nums, den).normalized()

    def __truediv__(self, other):
        if isinstance(other, int):
            return Elem(self.f, self.num, self.den * other).normalized()
        if isinstance(other, Fraction):
            return self * Fraction(other.denominator, other.numerator)
        return self * other.inv()

    # -- predicates ------------------------------------------------------
    def is_zero(self):
        return all(c == 0 for c in self.num)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.f.rational(Fraction(other))
        if not isinstance(other, Elem) or other.f is not self.f:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.f.n, self.num, self.den))

    def key(self):
        """Canonical hashable key (used for exact point dedup)."""
        return (self.num, self.den)

    def is_real(self):
        return self == self.conj()

    def is_imag(self):
        return (self + self.conj()).is_zero()

    # -- numeric embedding ----------------------------------------------
    def cvalue(self):
        """Fast complex float embedding."""
        b = self.f._basis_c
        return sum(c * b[j] for j, c in enumerate(self.num) if c) / self.den

    def mpc(self, dps=30):
        b = self.f._basis_mpc(dps)
        with mpmath.workdps(dps):
            acc = mpmath.mpc(0)
            for j, c in enumerate(self.num):
                if c:
                    acc += c * b[j]
            return acc / self.den

    def real_sign(self):
        """Sign of a real element, decided exactly (0 only for exact zero)."""
        if self.is_zero():
            return 0
        v = self.cvalue().real
        if abs(v) > 1e-9:
            return 1 if v > 0 else -1
        for dps in (60, 200, 800):
            mv = self.mpc(dps).real
            if abs(mv) > mpmath.mpf(10) ** (10 - dps):
                return 1 if mv > 0 else -1
        raise ArithmeticError("could not certify sign; increase precision")

    def imag_sign(self):
        """Sign of the imaginary part, decided exactly."""
        w = (self - self.conj()) * self.f.minus_i  # 2*Im(self), real
        return w.real_sign()

    def __lt__(self, other):
        return (self - self._coerce(other)).real_sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).real_sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).real_sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).real_sign() >= 0

    def _coerce(self, other):
        if isinstance(other, Elem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.f.rational(Fraction(other))
        raise TypeError(f"cannot combine Elem with {type(other)}")

    def __repr__(self):
        return f"<Elem n={self.f.n} ~ {self.cvalue():.6g}>"


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(1, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lead
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] if db else [Fraction(0)])


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i_, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i_ + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i_, x in enumerate(a):
        out[i_] += x
    for i_, x in enumerate(b):
        out[i_] -= x
    return _trim(out)


def _poly_mod(a, b):
    return _poly_divmod(a, b)[1]


# ---------------------------------------------------------------------------
# order-d trigonometric layer

@lru_cache(maxsize=None)
def field_for_order(d):
    """Field housing the order-d arrangement: conductor 6d (d even) / 12d (d odd)."""
    if d < 5:
        raise ValueError("need d >= 5")
    n = 6 * d if d % 2 == 0 else 12 * d
    return CycField(n)


def embed(x, target):
    """Re-express x in the larger field `target` (conductor multiple)."""
    if x.f is target:
        return x
    if target.n % x.f.n != 0:
        raise ValueError(f"no embedding of Q(zeta_{x.f.n}) into Q(zeta_{target.n})")
    k = target.n // x.f.n
    acc = target.zero
    for j, c in enumerate(x.num):
        if c:
            acc = acc + target.zeta(j * k) * c
    return acc / x.den


def unit_root(d, k):
    """exp(i*k*pi/(3d)) in the order-d field."""
    f = field_for_order(d)
    return f.zeta(k * f.n // (6 * d))


def sin_val(d, nu):
    """s_nu = sin(nu*pi/d), exact."""
    if d < 5:
        raise ValueError("need d >= 5")
    f = field_for_order(d)
    return f.sin_turn(nu, 2 * d)


def cos_val(d, nu):
    """cos(nu*pi/d), exact."""
    f = field_for_order(d)
    return f.cos_turn(nu, 2 * d)


def inflation_factor(d, p):
    """iota_{d,p} = s_p / s_1 (> 1), exact."""
    q = d // 2
    if not 2 <= p <= q:
        raise ValueError(f"inflation index p={p} outside 2..floor(d/2)={q}")
    f = field_for_order(d)
    key = ("iota", d, p)  # fields are shared across d with one conductor
    if key not in f._inv_cache:
        f._inv_cache[key] = sin_val(d, p) / sin_val(d, 1)
    return f._inv_cache[key]
