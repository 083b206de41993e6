"""Cancellation-free elementary complex functions.

Everything here works on Python ``complex`` scalars. Inputs may be any
number type accepted by ``complex()``.
"""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

PI = math.pi


def nearest_int(x: float) -> int:
    """Closest integer to ``x``; exact half-integers round away from zero."""
    if x >= 0.0:
        return int(math.floor(x + 0.5))
    return -int(math.floor(-x + 0.5))


def inf_norm(z: complex) -> float:
    """max(|Re z|, |Im z|), the norm used by every threshold of the algorithm."""
    return max(abs(z.real), abs(z.imag))


def is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def pochhammer(z: complex, n: int) -> complex:
    """Rising factorial z(z+1)...(z+n-1)."""
    p = 1.0 + 0.0j
    for k in range(n):
        p *= z + k
    return p


def expm1_c(z: complex) -> complex:
    """exp(z) - 1, accurate near z = 0.

    With z = x + iy:
        Re = expm1(x) cos(y) - 2 sin^2(y/2)
        Im = exp(x) sin(y)
    Both pieces are free of cancellation for small |z|. ``math`` raises
    OverflowError when x is beyond the exponent range.
    """
    z = complex(z)
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(math.expm1(x), 0.0)
    sh = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * sh * sh, math.exp(x) * math.sin(y))


def log1p_c(z: complex) -> complex:
    """Principal log(1 + z), accurate near z = 0.

    For |z|_inf < 1/2: Re = log1p(x(2+x) + y^2)/2 (that is log|1+z|) and
    Im = atan2(y, 1+x). Otherwise the plain principal logarithm is used.
    """
    z = complex(z)
    if z == -1.0:
        raise PoleError("log1p_c: logarithmic singularity at z = -1")
    x, y = z.real, z.imag
    if max(abs(x), abs(y)) < 0.5:
        return complex(0.5 * math.log1p(x * (2.0 + x) + y * y), math.atan2(y, 1.0 + x))
    return cmath.log(1.0 + z)


def e_eps(eps: complex, z: complex) -> complex:
    """expm1(eps*z)/eps, continued by its limit z at eps = 0."""
    eps = complex(eps)
    z = complex(z)
    if eps == 0.0:
        return z
    w = eps * z
    if inf_norm(w) < 1e-5:
        # also covers eps*z underflowing to zero
        return z * (1.0 + 0.5 * w * (1.0 + w / 3.0 * (1.0 + 0.25 * w)))
    return expm1_c(w) / eps


def p_m_eps(z: complex, eps: complex, m: int) -> complex:
    """[(z+eps)_m - (z)_m]/eps and its eps -> 0 limit.

    The factor n0 = -nearest_int(Re z) is the only one that may be small;
    every other factor has |z+n| >= 1/2, so the product of the others can
    be differenced through expm1(sum log1p(eps/(z+n))) without loss.
    """
    z = complex(z)
    eps = complex(eps)
    if m == 0:
        return 0.0j
    if inf_norm(eps) > 0.1:
        return (pochhammer(z + eps, m) - pochhammer(z, m)) / eps
    n0 = -nearest_int(z.real)
    n0_inside = 0 <= n0 <= m - 1
    poch = pochhammer(z, m)
    if eps == 0.0:
        prod = 1.0 + 0.0j
        acc = 0.0j
        for n in range(m):
            if n == n0:
                continue
            prod *= z + n
            acc += 1.0 / (z + n)
        return (prod if n0_inside else 0.0) + poch * acc
    prod = 1.0 + 0.0j
    acc = 0.0j
    for n in range(m):
        if n == n0:
            continue
        prod *= z + eps + n
        acc += log1p_c(eps / (z + n))
    return (prod if n0_inside else 0.0) + poch * expm1_c(acc) / eps


def sinc_pi(eps: complex) -> complex:
    """sin(pi eps)/(pi eps) with the value 1 at eps = 0."""
    eps = complex(eps)
    if eps == 0.0:
        return 1.0 + 0.0j
    if inf_norm(eps) < 0.5:
        return cmath.sin(PI * eps) / (PI * eps)
    return sin_pi_reduced(eps) / (PI * eps)


def _sincos_pi(r: float) -> tuple[float, float]:
    """sin and cos of pi r for |r| <= 1/2, exact at r = +-1/2."""
    if abs(r) == 0.5:
        return math.copysign(1.0, r), 0.0
    return math.sin(PI * r), math.cos(PI * r)


def sin_pi_reduced(z: complex) -> complex:
    """sin(pi z) computed as (-1)^n sin(pi (z - n)), n = nearest_int(Re z)."""
    z = complex(z)
    n = nearest_int(z.real)
    sr, cr = _sincos_pi(z.real - n)
    y = PI * z.imag
    s = complex(sr * math.cosh(y), cr * math.sinh(y)) if y else complex(sr, 0.0)
    return -s if n & 1 else s


def cos_pi_reduced(z: complex) -> complex:
    z = complex(z)
    n = nearest_int(z.real)
    sr, cr = _sincos_pi(z.real - n)
    y = PI * z.imag
    c = complex(cr * math.cosh(y), -sr * math.sinh(y)) if y else complex(cr, 0.0)
    return -c if n & 1 else c


def tan_pi_reduced(z: complex) -> complex:
    """tan(pi z) computed as tan(pi (z - n)), n = nearest_int(Re z)."""
    z = complex(z)
    w = z - nearest_int(z.real)
    if w.imag == 0.0 and abs(w.real) == 0.5:
        raise PoleError(f"tan(pi z) has a pole at z = {z}")
    return cmath.tan(PI * w)


def cot_pi_reduced(z: complex) -> complex:
    """1/tan(pi z); zero at half-integers, pole at integers."""
    z = complex(z)
    w = z - nearest_int(z.real)
    if w == 0.0:
        raise PoleError(f"cot(pi z) has a pole at z = {z}")
    if w.imag == 0.0 and abs(w.real) == 0.5:
        return 0.0j
    return 1.0 / cmath.tan(PI * w)
