"""Vectorized double-double (pair-of-doubles) arithmetic.

A double-double value is an unevaluated sum hi + lo of two float64 with
|lo| <= ulp(hi)/2, giving ~106 bits (~32 decimal digits). All primitives
are branch-free sequences of IEEE +,-,* and therefore vectorize over numpy
arrays; a scalar is just a 0-d array.

The kit is deliberately small: +,-,*,/ on real and complex pairs, exp, log,
sin/cos, atan2, and the complex log/exp/pow built from them. Arguments are
assumed finite and within ranges where 2^k scaling cannot overflow; callers
in this package stay well inside that.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitter


def _two_sum(a, b):
    s = a + b
    v = s - a
    e = (a - (s - v)) + (b - v)
    return s, e


def _quick_two_sum(a, b):
    # requires |a| >= |b| componentwise
    s = a + b
    e = b - (s - a)
    return s, e


def _two_prod(a, b):
    p = a * b
    t = _SPLIT * a
    ahi = t - (t - a)
    alo = a - ahi
    t = _SPLIT * b
    bhi = t - (t - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


class DD:
    """A real double-double number or numpy array of them."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=None):
        hi = np.asarray(hi, dtype=np.float64)
        if lo is None:
            lo = np.zeros_like(hi)
        else:
            lo = np.asarray(lo, dtype=np.float64)
        self.hi = hi
        self.lo = lo

    # -- construction ------------------------------------------------------

    @staticmethod
    def zeros(shape):
        return DD(np.zeros(shape), np.zeros(shape))

    def copy(self):
        return DD(self.hi.copy(), self.lo.copy())

    @property
    def shape(self):
        return self.hi.shape

    def to_float(self):
        return self.hi + self.lo

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __add__(self, other):
        if not isinstance(other, DD):
            s, e = _two_sum(self.hi, np.asarray(other, dtype=np.float64))
            e = e + self.lo
            hi, lo = _quick_two_sum(s, e)
            return DD(hi, lo)
        s1, s2 = _two_sum(self.hi, other.hi)
        t1, t2 = _two_sum(self.lo, other.lo)
        s2 = s2 + t1
        s1, s2 = _quick_two_sum(s1, s2)
        s2 = s2 + t2
        hi, lo = _quick_two_sum(s1, s2)
        return DD(hi, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DD):
            return self + (-other)
        return self + (-np.asarray(other, dtype=np.float64))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DD):
            b = np.asarray(other, dtype=np.float64)
            p, e = _two_prod(self.hi, b)
            e = e + self.lo * b
            hi, lo = _quick_two_sum(p, e)
            return DD(hi, lo)
        p, e = _two_prod(self.hi, other.hi)
        e = e + (self.hi * other.lo + self.lo * other.hi)
        hi, lo = _quick_two_sum(p, e)
        return DD(hi, lo)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, DD):
            b = np.asarray(other, dtype=np.float64)
            q1 = self.hi / b
            p1, p2 = _two_prod(q1, b)
            dhi, dlo = _two_sum(self.hi, -p1)
            dlo = dlo + self.lo - p2
            q2 = (dhi + dlo) / b
            hi, lo = _quick_two_sum(q1, q2)
            return DD(hi, lo)
        q1 = self.hi / other.hi
        r = self - other * q1
        q2 = r.hi / other.hi
        r = r - other * q2
        q3 = r.hi / other.hi
        hi, lo = _quick_two_sum(q1, q2)
        return DD(hi, lo) + q3

    def __rtruediv__(self, other):
        return DD(np.asarray(other, dtype=np.float64)) / self

    def sqr(self):
        p, e = _two_prod(self.hi, self.hi)
        e = e + 2.0 * (self.hi * self.lo)
        hi, lo = _quick_two_sum(p, e)
        return DD(hi, lo)

    def ldexp(self, k):
        return DD(np.ldexp(self.hi, k), np.ldexp(self.lo, k))

    def abs(self):
        neg = self.hi < 0
        return DD(np.where(neg, -self.hi, self.hi), np.where(neg, -self.lo, self.lo))

    def where(self, cond, other):
        """Elementwise select: cond ? self : other."""
        if not isinstance(other, DD):
            other = DD(np.asarray(other, dtype=np.float64))
        return DD(np.where(cond, self.hi, other.hi), np.where(cond, self.lo, other.lo))

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"


# -- constants (hi/lo split of the exact values) ----------------------------

LN2 = DD(0.6931471805599453, 2.3190468138462996e-17)
PI = DD(3.141592653589793, 1.2246467991473532e-16)
PI_2 = DD(1.5707963267948966, 6.123233995736766e-17)
EULER_GAMMA = DD(0.5772156649015329, -4.942915152430645e-18)
HALF_LN_2PI = DD(0.9189385332046728, -3.8782941580672414e-17)

_N_EXP_TERMS = 26
_N_TRIG_TERMS = 16

# 1/j! for the Taylor kernels, built in dd once at import
_INV_FACT = []
_f = DD(1.0)
for _j in range(1, 2 * _N_TRIG_TERMS + 4):
    _f = _f / float(_j)
    _INV_FACT.append(_f)


def _inv_fact(j):
    return _INV_FACT[j - 1]


def dd_sum(x: DD) -> DD:
    """Pairwise (binary-tree) reduction of a 1-d dd array."""
    hi, lo = x.hi.copy(), x.lo.copy()
    n = hi.shape[0]
    while n > 1:
        m = n // 2
        a = DD(hi[:m], lo[:m])
        b = DD(hi[m : 2 * m], lo[m : 2 * m])
        s = a + b
        if n % 2:
            tail_hi, tail_lo = hi[2 * m : n], lo[2 * m : n]
            hi = np.concatenate([s.hi, tail_hi])
            lo = np.concatenate([s.lo, tail_lo])
            n = m + 1
        else:
            hi, lo = s.hi, s.lo
            n = m
    return DD(hi[0], lo[0])


def dd_exp(x: DD) -> DD:
    """e^x for real dd x (argument reduction by ln 2, Taylor kernel)."""
    k = np.rint(x.hi / LN2.hi)
    s = x - LN2 * k
    # Horner over 1/j! coefficients: e^s = 1 + s/1!(1 + ...) expanded flat
    p = DD(np.zeros_like(s.hi))
    for j in range(_N_EXP_TERMS, 0, -1):
        p = (p + _inv_fact(j)) * s
    p = p + 1.0
    return p.ldexp(k.astype(np.int64))


def dd_log(x: DD) -> DD:
    """ln x for real dd x > 0 (double seed + one dd correction step)."""
    y0 = np.log(x.hi)
    r = x * dd_exp(DD(-y0)) - 1.0
    corr = r - r.sqr() * 0.5 + r.sqr() * r * (1.0 / 3.0)
    return corr + y0


def dd_sincos(x: DD):
    """(sin x, cos x) for real dd x via pi/2 reduction and Taylor kernels."""
    q = np.rint(x.hi / PI_2.hi)
    s = x - PI_2 * q
    s2 = s.sqr()
    # sin kernel: s * sum_j (-1)^j s^{2j} / (2j+1)!
    ps = DD(np.zeros_like(s.hi))
    pc = DD(np.zeros_like(s.hi))
    for j in range(_N_TRIG_TERMS - 1, -1, -1):
        sign = 1.0 if j % 2 == 0 else -1.0
        cs = _inv_fact(2 * j + 1) * sign
        ps = ps * s2 + cs
        if j == 0:
            pc = pc * s2 + 1.0
        else:
            cc = _inv_fact(2 * j) * sign
            pc = pc * s2 + cc
    sin_t = ps * s
    cos_t = pc
    m = np.mod(q, 4.0)
    sin_r = sin_t.where(m == 0, cos_t.where(m == 1, (-sin_t).where(m == 2, -cos_t)))
    cos_r = cos_t.where(m == 0, (-sin_t).where(m == 1, (-cos_t).where(m == 2, sin_t)))
    return sin_r, cos_r


def dd_atan2(y: DD, x: DD) -> DD:
    """atan2(y, x) via a double seed angle and one rotation correction."""
    t0 = np.arctan2(y.hi, x.hi)
    s0, c0 = dd_sincos(DD(t0))
    u = x * c0 + y * s0
    v = y * c0 - x * s0
    w = v / u
    return w + t0


class CDD:
    """A complex double-double number or numpy array of them."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if not isinstance(re, DD):
            re = DD(re)
        if im is None:
            im = DD(np.zeros_like(re.hi))
        elif not isinstance(im, DD):
            im = DD(im)
        self.re = re
        self.im = im

    @staticmethod
    def from_complex(z):
        z = np.asarray(z, dtype=np.complex128)
        return CDD(DD(z.real.copy()), DD(z.imag.copy()))

    @staticmethod
    def zeros(shape):
        return CDD(DD.zeros(shape), DD.zeros(shape))

    def to_complex(self):
        return self.re.to_float() + 1j * self.im.to_float()

    @property
    def shape(self):
        return self.re.shape

    def conj(self):
        return CDD(self.re, -self.im)

    def __neg__(self):
        return CDD(-self.re, -self.im)

    def _coerce(self, other):
        if isinstance(other, CDD):
            return other
        if isinstance(other, DD):
            return CDD(other)
        arr = np.asarray(other)
        if np.iscomplexobj(arr):
            return CDD.from_complex(arr)
        return CDD(DD(arr.astype(np.float64)))

    def __add__(self, other):
        o = self._coerce(other)
        return CDD(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return CDD(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        return CDD(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        return CDD(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        den = o.re.sqr() + o.im.sqr()
        re = (self.re * o.re + self.im * o.im) / den
        im = (self.im * o.re - self.re * o.im) / den
        return CDD(re, im)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def abs2(self) -> DD:
        return self.re.sqr() + self.im.sqr()

    def where(self, cond, other):
        o = self._coerce(other)
        return CDD(self.re.where(cond, o.re), self.im.where(cond, o.im))

    def __repr__(self):
        return f"CDD({self.to_complex()!r})"


def cdd_exp(z: CDD) -> CDD:
    ex = dd_exp(z.re)
    s, c = dd_sincos(z.im)
    return CDD(ex * c, ex * s)


def cdd_log(z: CDD) -> CDD:
    """Principal branch: Im in (-pi, pi]."""
    return CDD(dd_log(z.abs2()) * 0.5, dd_atan2(z.im, z.re))


def cdd_pow(z: CDD, w) -> CDD:
    """z**w via exp(w log z), principal branch."""
    lw = cdd_log(z)
    if not isinstance(w, CDD):
        w = CDD.from_complex(np.asarray(w, dtype=np.complex128))
    return cdd_exp(w * lw)
