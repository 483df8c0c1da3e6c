"""Double-double log-Gamma and digamma via shifted Stirling series.

Used by the production Tricomi-U logarithmic formula (digamma coefficients
must carry double-double accuracy or the series cancellation re-amplifies
their rounding) and by the test oracle (Gamma prefactors of the two-term
representation). The Weierstrass-product log-Gamma in `oracle` provides an
algorithmically independent cross-check of this code.

Note: dd_loggamma is continuous along the recurrence path, which may differ
from the principal branch of log Gamma by multiples of 2*pi*i; every caller
exponentiates the result, so only exp(dd_loggamma) is contractual.
"""

from __future__ import annotations

import numpy as np

from .ddouble import CDD, DD, HALF_LN_2PI, cdd_log

# Bernoulli numbers B_2..B_30 as exact double pairs (num, den)
_BERNOULLI = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
]

_B2M = [DD(num) / den for num, den in _BERNOULLI]

_SHIFT_RE = 35.0


def _shift_count(z: CDD) -> int:
    re = np.min(z.re.hi)
    return max(0, int(np.ceil(_SHIFT_RE - re)))


def dd_loggamma(z: CDD) -> CDD:
    """log Gamma(z) to double-double accuracy (branch: see module note)."""
    k = _shift_count(z)
    shift = CDD.zeros(z.shape)
    for j in range(k):
        shift = shift + cdd_log(z + float(j))
    w = z + float(k)
    lw = cdd_log(w)
    # (w - 1/2) log w - w + ln(2 pi)/2 + sum B_2m / (2m(2m-1) w^(2m-1))
    out = (w - 0.5) * lw - w + CDD(HALF_LN_2PI)
    winv2 = 1.0 / (w * w)
    wp = 1.0 / w
    for m, b in enumerate(_B2M, start=1):
        coef = b / float(2 * m * (2 * m - 1))
        out = out + CDD(coef) * wp
        wp = wp * winv2
    return out - shift


def dd_digamma(z: CDD) -> CDD:
    """psi(z) = d/dz log Gamma(z) to double-double accuracy."""
    k = _shift_count(z)
    shift = CDD.zeros(z.shape)
    for j in range(k):
        shift = shift + 1.0 / (z + float(j))
    w = z + float(k)
    out = cdd_log(w) - 0.5 / w
    winv2 = 1.0 / (w * w)
    wp = winv2
    for m, b in enumerate(_B2M, start=1):
        out = out - CDD(b / float(2 * m)) * wp
        wp = wp * winv2
    return out - shift


def dd_harmonic_psis(n: int, kmax: int):
    """psi(1+k) and psi(n+1+k) for k = 0..kmax as real dd arrays.

    psi(m+1) = -gamma + H_m with the harmonic numbers accumulated in dd.
    """
    from .ddouble import EULER_GAMMA

    acc = DD(0.0)
    h_hi = [0.0]
    h_lo = [0.0]
    for m in range(1, n + 1 + kmax + 1):
        acc = acc + DD(1.0) / float(m)
        h_hi.append(float(acc.hi))
        h_lo.append(float(acc.lo))
    h = DD(np.array(h_hi), np.array(h_lo))
    psi = h - EULER_GAMMA
    psi_1k = DD(psi.hi[0 : kmax + 1], psi.lo[0 : kmax + 1])
    psi_n1k = DD(psi.hi[n : n + kmax + 1], psi.lo[n : n + kmax + 1])
    return psi_1k, psi_n1k
