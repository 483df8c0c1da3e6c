"""Complex-argument special functions: log-Gamma, digamma, Kummer's M and
Tricomi's U at positive integer second parameter, and their z-derivatives.

Evaluation strategy for M and U over a complex z array:

* ``|z| <= crossover`` (default 30): Taylor series for M (after the Kummer
  transform when Re z < 0), the explicit logarithmic limit formula for U at
  integer c. Both run in ordinary compensated double arithmetic first; lanes
  whose tracked cancellation estimate misses the accuracy target are redone
  with double-double accumulation, which absorbs the e^{|z|}-scale
  subtractive cancellation these series develop away from the positive real
  axis.
* ``|z| > crossover``: asymptotic expansions truncated at the smallest term,
  with a per-lane error estimate; lanes that cannot reach the target fall
  back to the double-double series path while it is still trustworthy.

Every evaluator tracks an achieved-error estimate and raises
ConvergenceError when no regime can certify the requested target.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sc

from .ddgamma import dd_digamma, dd_harmonic_psis
from .ddouble import CDD, DD, cdd_log, cdd_pow
from .errors import ConvergenceError, DomainError, PoleError

DEFAULT_CROSSOVER = 30.0
DEFAULT_TARGET = 1e-12

_MAX_TERMS = 700
_EPS = 2.3e-16
_EPS_DD = 5.0e-31
# dd Taylor stays accurate while the cancellation e-folds fit in ~101 bits
_M_DD_CANCEL_MAX = 41.0
_U_DD_FALLBACK_MAX = 35.0


def _nonpos_int(w, tol=1e-13):
    w = complex(w)
    if abs(w.imag) > tol:
        return None
    m = round(w.real)
    if m <= 0 and abs(w.real - m) <= tol * max(1.0, abs(w.real)):
        return int(m)
    return None


def _check_finite(z, name):
    if not np.all(np.isfinite(z)):
        raise DomainError(f"{name} must be finite")


def _as_int_c(c):
    ci = int(round(float(c)))
    if ci != c or ci < 1:
        raise DomainError(f"second parameter c must be a positive integer, got {c!r}")
    return ci


def _as_z_array(z):
    arr = np.asarray(z, dtype=np.complex128)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr), scalar


def ln_gamma(z):
    """Principal branch of log Gamma; PoleError at non-positive integers."""
    arr = np.asarray(z, dtype=np.complex128)
    _check_finite(arr, "z")
    flat = np.atleast_1d(arr)
    on_axis = flat.imag == 0.0
    if np.any(on_axis & (flat.real <= 0.0) & (flat.real == np.rint(flat.real))):
        raise PoleError("log Gamma pole at a non-positive integer")
    out = sc.loggamma(arr)
    return out if arr.ndim else complex(out)


def digamma(z):
    """psi(z) = d/dz log Gamma(z); PoleError at non-positive integers."""
    arr = np.asarray(z, dtype=np.complex128)
    _check_finite(arr, "z")
    flat = np.atleast_1d(arr)
    on_axis = flat.imag == 0.0
    if np.any(on_axis & (flat.real <= 0.0) & (flat.real == np.rint(flat.real))):
        raise PoleError("digamma pole at a non-positive integer")
    out = sc.digamma(arr)
    return out if arr.ndim else complex(out)


# --------------------------------------------------------------------------
# Kummer M
# --------------------------------------------------------------------------


def _m_series_double(a, c, w):
    """Kahan-compensated Taylor sum of 1F1(a,c,w); assumes modest |w|.

    Returns (values, err_estimate). Also exact for terminating series.
    """
    n = w.shape[0]
    s = np.ones(n, dtype=np.complex128)
    comp = np.zeros(n, dtype=np.complex128)
    t = np.ones(n, dtype=np.complex128)
    max_mag = np.ones(n)
    jmin = np.abs(w)
    done = np.zeros(n, dtype=bool)
    trunc = np.zeros(n)
    for j in range(_MAX_TERMS):
        t = t * ((a + j) / ((c + j) * (j + 1.0))) * w
        y = t - comp
        snew = s + y
        comp = (snew - s) - y
        s = snew
        mag = np.abs(t)
        max_mag = np.maximum(max_mag, np.abs(s))
        max_mag = np.maximum(max_mag, mag)
        small = mag <= 1e-17 * np.abs(s)
        done |= small & (j >= jmin)
        trunc = np.where(done, trunc, mag)
        if np.all(done):
            break
    denom = np.maximum(np.abs(s), 1e-300)
    est = (_EPS * max_mag + trunc) / denom
    return s, est


def _m_series_dd(a, c, w):
    """Double-double Taylor sum of 1F1(a,c,w)."""
    n = w.shape[0]
    wdd = CDD.from_complex(w)
    t = CDD.from_complex(np.ones(n, dtype=np.complex128))
    s = t
    a_dd = CDD.from_complex(np.complex128(a))
    max_mag = np.ones(n)
    jmin = np.abs(w)
    done = np.zeros(n, dtype=bool)
    trunc = np.zeros(n)
    for j in range(_MAX_TERMS):
        t = t * (a_dd + float(j)) * wdd * (1.0 / ((c + j) * (j + 1.0)))
        s = s + t
        mag = np.hypot(t.re.hi, t.im.hi)
        smag = np.hypot(s.re.hi, s.im.hi)
        max_mag = np.maximum(max_mag, np.maximum(mag, smag))
        small = mag <= 1e-35 * smag
        done |= small & (j >= jmin)
        trunc = np.where(done, trunc, mag)
        if np.all(done):
            break
    vals = s.to_complex()
    denom = np.maximum(np.abs(vals), 1e-300)
    est = (_EPS_DD * max_mag + trunc) / denom
    return vals, est


def _asym_S(alpha, beta, winv, eps):
    """sum_j (alpha)_j (beta)_j winv^j / j!, truncated at the smallest term.

    Returns (values, err_estimate). Divergent asymptotic series: lanes are
    frozen once terms start growing.
    """
    n = winv.shape[0]
    s = np.ones(n, dtype=np.complex128)
    t = np.ones(n, dtype=np.complex128)
    prev = np.full(n, np.inf)
    frozen = np.zeros(n, dtype=bool)
    est = np.full(n, np.inf)
    for j in range(80):
        t = t * ((alpha + j) * (beta + j) / (j + 1.0)) * winv
        mag = np.abs(t)
        grow = mag >= prev
        newly = grow & ~frozen
        est[newly] = mag[newly]
        frozen |= newly
        add = ~frozen
        s[add] += t[add]
        conv = add & (mag <= eps * np.abs(s))
        est[conv] = mag[conv]
        frozen |= conv
        if np.all(frozen):
            break
        prev = mag
    live = ~frozen
    est[live] = np.abs(t[live])
    return s, est / np.maximum(np.abs(s), 1e-300)


def _m_asymptotic(a, c, z):
    """Large-|z| expansion of M; returns (values, err_estimate)."""
    lgc = sc.loggamma(complex(c))
    logz = np.log(z)
    sgn = np.where(z.imag >= 0.0, 1.0, -1.0)
    s2, est2 = _asym_S(a, a - c + 1.0, -1.0 / z, _EPS)
    m2 = _nonpos_int(c - a)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        if m2 is None:
            pref2 = np.exp(lgc - sc.loggamma(complex(c - a)) + 1j * np.pi * a * sgn - a * logz)
        else:
            pref2 = np.zeros_like(z)
        e2 = pref2 * s2
        s1, est1 = _asym_S(c - a, 1.0 - a, 1.0 / z, _EPS)
        pref1 = np.exp(lgc - sc.loggamma(complex(a)) + z + (a - c) * logz)
        e1 = pref1 * s1
    vals = e1 + e2
    denom = np.maximum(np.abs(vals), 1e-300)
    est = (est1 * np.abs(e1) + est2 * np.abs(e2)) / denom + 3e-16
    return vals, est


def _m_smallz(a, c, z, target):
    """Series route with the Kummer transform for Re z < 0; dd redo on demand."""
    vals = np.empty(z.shape, dtype=np.complex128)
    est = np.empty(z.shape)
    neg = z.real < 0.0
    for mask, aa, flip in ((~neg, a, False), (neg, c - a, True)):
        if not np.any(mask):
            continue
        w = -z[mask] if flip else z[mask]
        v, e = _m_series_double(aa, c, w)
        redo = e > 0.25 * target
        if np.any(redo):
            v2, e2 = _m_series_dd(aa, c, w[redo])
            v[redo] = v2
            e[redo] = e2
        if flip:
            v = np.exp(z[mask]) * v
        vals[mask] = v
        est[mask] = e
    return vals, est


def kummer_m(a, c, z, *, target=DEFAULT_TARGET, crossover=DEFAULT_CROSSOVER):
    """Kummer's confluent hypergeometric function 1F1(a, c; z).

    ``a`` complex, ``c`` a positive integer, ``z`` complex scalar or array.
    """
    a = complex(a)
    c = _as_int_c(c)
    _check_finite([a], "a")
    z, scalar = _as_z_array(z)
    _check_finite(z, "z")

    m = _nonpos_int(a)
    if m is not None:
        # terminating series: exact polynomial of degree -m, any z
        vals, est = _m_series_double(float(m), c, z)
        return vals[0] if scalar else vals

    vals = np.empty(z.shape, dtype=np.complex128)
    est = np.empty(z.shape)
    big = np.abs(z) > crossover
    if np.any(~big):
        vals[~big], est[~big] = _m_smallz(a, c, z[~big], target)
    if np.any(big):
        v, e = _m_asymptotic(a, c, z[big])
        zb = z[big]
        # post-transform cancellation must stay within dd headroom
        loss = np.abs(zb) - np.abs(zb.real)
        retry = (e > target) & (loss <= _M_DD_CANCEL_MAX)
        if np.any(retry):
            v2, e2 = _m_smallz(a, c, zb[retry], target)
            v[retry] = v2
            e[retry] = e2
        vals[big] = v
        est[big] = e
    worst = float(np.max(est)) if est.size else 0.0
    if worst > target:
        raise ConvergenceError(
            f"1F1(a={a}, c={c}) did not reach target {target:.1e}; "
            f"achieved about {worst:.1e}",
            achieved=worst,
        )
    return vals[0] if scalar else vals


# --------------------------------------------------------------------------
# Tricomi U (integer c: logarithmic case)
# --------------------------------------------------------------------------


def _u_fronts(a, n):
    """Prefactors of the logarithmic limit formula at c = n + 1."""
    front1 = (-1.0) ** (n + 1) * complex(sc.rgamma(complex(a - n))) / math.factorial(n)
    front2 = (
        complex(sc.rgamma(complex(a))) * math.factorial(n - 1) if n >= 1 else 0.0
    )
    return front1, front2


def _u_logformula_double(a, c, z):
    n = c - 1
    front1, front2 = _u_fronts(a, n)
    nlanes = z.shape[0]
    logz = np.log(z)
    kmax = min(_MAX_TERMS, int(np.max(np.abs(z))) * 2 + 90)

    part1 = np.zeros(nlanes, dtype=np.complex128)
    max_mag = np.zeros(nlanes)
    trunc = np.zeros(nlanes)
    if front1 != 0.0:
        psi_a = complex(sc.digamma(complex(a)))
        psi1 = -np.euler_gamma
        psin = float(sc.digamma(float(n + 1)))
        t = np.ones(nlanes, dtype=np.complex128)
        s = np.zeros(nlanes, dtype=np.complex128)
        comp = np.zeros(nlanes, dtype=np.complex128)
        jmin = np.abs(z)
        done = np.zeros(nlanes, dtype=bool)
        for k in range(kmax):
            term = t * (logz + (psi_a - psi1 - psin))
            y = term - comp
            snew = s + y
            comp = (snew - s) - y
            s = snew
            mag = np.abs(term)
            max_mag = np.maximum(max_mag, np.maximum(mag, np.abs(s)))
            small = mag <= 1e-17 * np.abs(s)
            done |= small & (k >= jmin)
            trunc = np.where(done, trunc, mag)
            if np.all(done):
                break
            t = t * ((a + k) / ((n + 1.0 + k) * (k + 1.0))) * z
            psi_a += 1.0 / (a + k)
            psi1 += 1.0 / (k + 1.0)
            psin += 1.0 / (n + 1.0 + k)
        part1 = front1 * s
        max_mag = np.abs(front1) * max_mag
        trunc = np.abs(front1) * trunc

    part2 = np.zeros(nlanes, dtype=np.complex128)
    if n >= 1:
        p = np.ones(nlanes, dtype=np.complex128)
        psum = np.ones(nlanes, dtype=np.complex128)
        for k in range(n - 1):
            p = p * ((a - n + k) / ((1.0 - n + k) * (k + 1.0))) * z
            psum += p
        part2 = front2 * z ** (-float(n)) * psum

    vals = part1 + part2
    denom = np.maximum(np.abs(vals), 1e-300)
    est = (_EPS * (max_mag + np.abs(part2)) + trunc) / denom
    return vals, est


def _u_logformula_dd(a, c, z):
    n = c - 1
    front1, front2 = _u_fronts(a, n)
    nlanes = z.shape[0]
    zdd = CDD.from_complex(z)
    logz = cdd_log(zdd)
    kmax = min(_MAX_TERMS, int(np.max(np.abs(z))) * 2 + 90)
    psi_1k, psi_n1k = dd_harmonic_psis(n, kmax)
    a_dd = CDD.from_complex(np.complex128(a))

    part1 = CDD.zeros((nlanes,))
    max_mag = np.zeros(nlanes)
    trunc = np.zeros(nlanes)
    if front1 != 0.0:
        psi_a = dd_digamma(CDD.from_complex(np.complex128(a)))
        t = CDD.from_complex(np.ones(nlanes, dtype=np.complex128))
        s = CDD.zeros((nlanes,))
        jmin = np.abs(z)
        done = np.zeros(nlanes, dtype=bool)
        for k in range(kmax):
            coeff = psi_a - DD(psi_1k.hi[k], psi_1k.lo[k]) - DD(psi_n1k.hi[k], psi_n1k.lo[k])
            term = t * (logz + coeff)
            s = s + term
            mag = np.hypot(term.re.hi, term.im.hi)
            smag = np.hypot(s.re.hi, s.im.hi)
            max_mag = np.maximum(max_mag, np.maximum(mag, smag))
            small = mag <= 1e-35 * smag
            done |= small & (k >= jmin)
            trunc = np.where(done, trunc, mag)
            if np.all(done):
                break
            t = t * (a_dd + float(k)) * zdd * (1.0 / ((n + 1.0 + k) * (k + 1.0)))
            psi_a = psi_a + 1.0 / (a_dd + float(k))
        part1 = s * front1
        max_mag = abs(front1) * max_mag
        trunc = abs(front1) * trunc

    if n >= 1:
        p = CDD.from_complex(np.ones(nlanes, dtype=np.complex128))
        psum = p
        for k in range(n - 1):
            p = p * (a_dd + float(k - n)) * zdd * (1.0 / ((1.0 - n + k) * (k + 1.0)))
            psum = psum + p
        part2 = psum * cdd_pow(zdd, complex(-n)) * front2
    else:
        part2 = CDD.zeros((nlanes,))

    total = part1 + part2
    vals = total.to_complex()
    p2mag = np.hypot(part2.re.hi, part2.im.hi)
    denom = np.maximum(np.abs(vals), 1e-300)
    est = (_EPS_DD * max_mag + 3e-16 * np.maximum(np.hypot(part1.re.hi, part1.im.hi), p2mag) + trunc) / denom
    return vals, est


def _u_smallz(a, c, z, target):
    vals, est = _u_logformula_double(a, c, z)
    redo = est > 0.25 * target
    if np.any(redo):
        v2, e2 = _u_logformula_dd(a, c, z[redo])
        vals[redo] = v2
        est[redo] = e2
    return vals, est


def _u_asymptotic(a, c, z):
    s, est = _asym_S(a, a - c + 1.0, -1.0 / z, _EPS)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        vals = np.exp(-a * np.log(z)) * s
    return vals, est + 3e-16


def tricomi_u(a, c, z, *, target=DEFAULT_TARGET, crossover=DEFAULT_CROSSOVER):
    """Tricomi's confluent hypergeometric function U(a, c; z), integer c >= 1.

    Principal branch of log z / z^s throughout. DomainError at z = 0.
    """
    a = complex(a)
    c = _as_int_c(c)
    _check_finite([a], "a")
    z, scalar = _as_z_array(z)
    _check_finite(z, "z")
    if np.any(z == 0.0):
        raise DomainError("U(a, c, z) is singular at z = 0")

    m = _nonpos_int(a)
    if m is not None:
        # U(-m, c, z) = (-1)^m (c)_m M(-m, c, z): exact polynomial
        poch = float(np.prod(np.arange(c, c - m, dtype=float))) if m < 0 else 1.0
        mm, _ = _m_series_double(float(m), c, z)
        vals = (-1.0) ** (-m) * poch * mm
        return vals[0] if scalar else vals

    vals = np.empty(z.shape, dtype=np.complex128)
    est = np.empty(z.shape)
    big = np.abs(z) > crossover
    if np.any(~big):
        vals[~big], est[~big] = _u_smallz(a, c, z[~big], target)
    if np.any(big):
        v, e = _u_asymptotic(a, c, z[big])
        zb = z[big]
        retry = (e > target) & (np.abs(zb) <= _U_DD_FALLBACK_MAX)
        if np.any(retry):
            v2, e2 = _u_smallz(a, c, zb[retry], target)
            v[retry] = v2
            e[retry] = e2
        vals[big] = v
        est[big] = e
    worst = float(np.max(est)) if est.size else 0.0
    if worst > target:
        raise ConvergenceError(
            f"U(a={a}, c={c}) did not reach target {target:.1e}; "
            f"achieved about {worst:.1e}",
            achieved=worst,
        )
    return vals[0] if scalar else vals


# --------------------------------------------------------------------------
# derivatives via contiguous relations (never finite differences)
# --------------------------------------------------------------------------


def hypergeometric_derivatives(a, c, z, *, target=DEFAULT_TARGET, crossover=DEFAULT_CROSSOVER):
    """(dM/dz, dU/dz) via dM = (a/c) M(a+1,c+1,z), dU = -a U(a+1,c+1,z)."""
    a = complex(a)
    ci = _as_int_c(c)
    dm = (a / ci) * kummer_m(a + 1, ci + 1, z, target=target, crossover=crossover)
    if a == 0.0:
        du = np.zeros_like(np.asarray(z, dtype=np.complex128))
        if np.ndim(z) == 0:
            du = complex(du)
    else:
        du = -a * tricomi_u(a + 1, ci + 1, z, target=target, crossover=crossover)
    return dm, du


def hypergeometric_second_derivatives(a, c, z, *, target=DEFAULT_TARGET, crossover=DEFAULT_CROSSOVER):
    """(d2M/dz2, d2U/dz2) through the same contiguous ladder."""
    a = complex(a)
    ci = _as_int_c(c)
    d2m = (a * (a + 1) / (ci * (ci + 1.0))) * kummer_m(a + 2, ci + 2, z, target=target, crossover=crossover)
    if a == 0.0 or a == -1.0:
        d2u = np.zeros_like(np.asarray(z, dtype=np.complex128))
        if np.ndim(z) == 0:
            d2u = complex(d2u)
    else:
        d2u = a * (a + 1) * tricomi_u(a + 2, ci + 2, z, target=target, crossover=crossover)
    return d2m, d2u
