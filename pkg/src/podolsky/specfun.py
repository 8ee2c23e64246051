"""
Modified Bessel functions I0, I1, K0, K1 of real argument, plus the
exponentially scaled forms e^{-x} I_n(x) and e^{x} K_n(x).

Branches
--------
I_n, x < I_CROSSOVER
    Power series, summed in scaled form with running renormalisation so the
    terms never overflow.
I_n, x >= I_CROSSOVER
    Hankel asymptotic expansion, truncated at the smallest term.
K_n, x <= K_CROSSOVER
    Classical series in ln(x/2) and harmonic numbers.
K_n, x > K_CROSSOVER
    Steed/Temme continued fraction (Numerical Recipes ``bessik`` with mu = 0).

All public functions accept scalars or array-likes and return the same shape.
"""
import math

import numpy as np

from .errors import BesselOverflowError, DivergenceError, DomainError

EULER_GAMMA = 0.57721566490153286061
I_CROSSOVER = 150.0
K_CROSSOVER = 2.0

_EPS = np.finfo(float).eps
_LOG_MAX = math.log(np.finfo(float).max)
_RENORM = 1e200


def _i_scaled_series(nu, x):
    # sum_k (x/2)^(2k+nu) / (k! (k+nu)!), times e^{-x}
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    half = 0.5 * x
    q = half * half
    term = half if nu == 1 else 1.0
    total = term
    log_scale = 0.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        if term < _EPS * 0.25 * total and k > half:
            break
        if total > _RENORM:
            total /= _RENORM
            term /= _RENORM
            log_scale += math.log(_RENORM)
    return total * math.exp(log_scale - x)


def _i_scaled_asymptotic(nu, x):
    # e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        new = -term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(new) >= abs(term):
            break
        term = new
        total += term
        if abs(term) < _EPS * 0.25 * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def _i_scaled(nu, x):
    if x < 0 or math.isnan(x):
        raise DomainError(f"I{nu} requires x >= 0, got {x!r}")
    if x < I_CROSSOVER:
        return _i_scaled_series(nu, x)
    return _i_scaled_asymptotic(nu, x)


def _harmonic(k):
    return math.fsum(1.0 / j for j in range(1, k + 1))


def _k_series(x):
    """(K0(x), K1(x)) from the small-argument series; accurate for x <= 2."""
    half = 0.5 * x
    q = half * half
    log_term = math.log(half) + EULER_GAMMA
    i0 = i1 = 0.0
    s0 = 0.0   # sum q^k/(k!)^2 H_k
    s1 = 0.0   # sum q^k/(k!(k+1)!) (H_k + H_{k+1})
    term = 1.0  # q^k/(k!)^2
    h_k = 0.0
    k = 0
    while True:
        h_k1 = h_k + 1.0 / (k + 1)
        i0 += term
        i1 += term * half / (k + 1)
        s0 += term * h_k
        s1 += term / (k + 1) * (h_k + h_k1)
        if term < _EPS * 0.1 and k > 2:
            break
        k += 1
        term *= q / (k * k)
        h_k = h_k1
    k0 = -log_term * i0 + s0
    # K1 = 1/x + I1 ln(x/2) - (x/4) sum (psi(k+1) + psi(k+2)) q^k/(k!(k+1)!)
    # with psi(k+1) = H_k - gamma
    k1 = 1.0 / x + i1 * math.log(half) - 0.25 * x * (s1 - 2.0 * EULER_GAMMA * (i1 / half))
    return k0, k1


def _k_scaled_cf(x):
    """(e^x K0(x), e^x K1(x)) by Steed's method on Temme's CF2, x >= 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 100000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def _k_pair_scaled(x):
    if math.isnan(x) or x < 0:
        raise DomainError(f"K requires x > 0, got {x!r}")
    if x == 0:
        raise DivergenceError("K0 and K1 diverge at x = 0")
    if x <= K_CROSSOVER:
        k0, k1 = _k_series(x)
        ex = math.exp(x)
        return k0 * ex, k1 * ex
    return _k_scaled_cf(x)


def _unscale_i(nu, x):
    s = _i_scaled(nu, x)
    if s > 0 and x + math.log(s) >= _LOG_MAX:
        raise BesselOverflowError(
            f"I{nu}({x:g}) overflows double precision; use bessel_i{nu}_scaled")
    return s * math.exp(x)


def _unscale_k(nu, x):
    k = _k_pair_scaled(x)[nu]
    return k * math.exp(-x)


def _vectorize(scalar_fn):
    def wrapper(x):
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0:
            return scalar_fn(float(arr))
        out = np.empty(arr.shape)
        for idx, value in np.ndenumerate(arr):
            out[idx] = scalar_fn(float(value))
        return out

    wrapper.__name__ = scalar_fn.__name__
    wrapper.__doc__ = scalar_fn.__doc__
    return wrapper


@_vectorize
def bessel_i0(x):
    """I0(x) for x >= 0. Raises BesselOverflowError once e^x no longer fits a double."""
    return _unscale_i(0, x)


@_vectorize
def bessel_i1(x):
    """I1(x) for x >= 0."""
    return _unscale_i(1, x)


@_vectorize
def bessel_i0_scaled(x):
    """e^{-x} I0(x); finite for every representable x >= 0."""
    return _i_scaled(0, x)


@_vectorize
def bessel_i1_scaled(x):
    """e^{-x} I1(x)."""
    return _i_scaled(1, x)


@_vectorize
def bessel_k0(x):
    """K0(x) for x > 0; underflows to 0 for very large x."""
    return _unscale_k(0, x)


@_vectorize
def bessel_k1(x):
    """K1(x) for x > 0."""
    return _unscale_k(1, x)


@_vectorize
def bessel_k0_scaled(x):
    """e^{x} K0(x) for x > 0."""
    return _k_pair_scaled(x)[0]


@_vectorize
def bessel_k1_scaled(x):
    """e^{x} K1(x) for x > 0."""
    return _k_pair_scaled(x)[1]


def i0_ratio(x1, x2):
    """I0(x1) / I0(x2) without forming either factor; safe for x up to float range."""
    return bessel_i0_scaled(x1) / bessel_i0_scaled(x2) * np.exp(np.subtract(x1, x2))


def evaluate(x):
    """Tabulate every function at one argument (the ``bessel`` CLI row)."""
    x = float(x)
    row = {"x": x,
           "i0_scaled": bessel_i0_scaled(x),
           "i1_scaled": bessel_i1_scaled(x)}
    for name, fn in (("i0", bessel_i0), ("i1", bessel_i1)):
        try:
            row[name] = fn(x)
        except BesselOverflowError:
            row[name] = math.inf
    if x > 0:
        row.update(k0=bessel_k0(x), k1=bessel_k1(x),
                   k0_scaled=bessel_k0_scaled(x), k1_scaled=bessel_k1_scaled(x))
    else:
        row.update(k0=math.inf, k1=math.inf, k0_scaled=math.inf, k1_scaled=math.inf)
    return row
