"""Gauss hypergeometric function 2F1(a, b; c; z) for complex a, b, c and z.

The evaluation combines the power series around z = 0 with the linear
transformations z -> z/(z-1), 1-z, 1/z and their compositions. The 1-z and
1/z transformations are rewritten so that integer or near-integer c-a-b and
b-a cost nothing special (see ``gamma_engine`` for the difference kernels).
Points around exp(+-i pi/3), where no transformation gives a small argument,
are reached through a Taylor expansion about a nearby reachable centre.

Branch cut: for real z >= 1 the value is the limit from below the real axis.
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from enum import Enum

from .complex_kernels import (
    e_eps,
    inf_norm,
    is_nonpositive_integer,
    nearest_int,
    p_m_eps,
    pochhammer,
    sinc_pi,
)
from .errors import DomainError, NoConvergenceError
from .gamma_engine import (
    SMALL_EPS,
    a_sum_init,
    gamma,
    gamma_inv,
    gamma_inv_diff_eps,
    log_a_sum_init,
    log_gamma,
)

EPS = sys.float_info.epsilon
TERM_CAP = 50_000
TINY = 1e-300
CUT_SHIFT = 1e-307
RADII = (0.5, 0.6, 0.7, 0.8, 0.9)
NEAR_ONE = 1e-5
GUARD = 5.0


class Method(str, Enum):
    SERIES_ZERO = "series_zero"
    SERIES_Z_OVER_ZM1 = "series_z_over_zm1"
    TRANSFORM_ONE_MINUS_Z = "transform_one_minus_z"
    TRANSFORM_INV_Z = "transform_inv_z"
    TAYLOR_PATCH = "taylor_patch"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class HypParams:
    a: complex
    b: complex
    c: complex
    z: complex

    def astuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.z)


@dataclass(frozen=True)
class TransformSplit:
    """Integer part m >= 0 and remainder eps of c-a-b (1-z path) or b-a (1/z path)."""

    m: int
    eps: complex

    @classmethod
    def of(cls, d: complex) -> "TransformSplit":
        m = nearest_int(d.real)
        if m < 0 or d.real < 0.0:
            raise DomainError(f"transformation needs a difference with Re >= 0, got {d}")
        return cls(m, d - m)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    method: Method
    terms_used: int


@dataclass(frozen=True)
class ConvergencePoly:
    """Sign oracle for the growth of the terms of 2F1(a, b; c; z).

    ``coeffs`` holds P(x) = |z(a+x)(b+x)|^2 - |(c+x)(x+1)|^2 (constant term
    first), ``derivative_coeffs`` its derivative P'(x).
    """

    coeffs: tuple[float, float, float, float, float]
    derivative_coeffs: tuple[float, float, float, float]
    n_c: int

    def value(self, x: float) -> float:
        p0, p1, p2, p3, p4 = self.coeffs
        return p0 + x * (p1 + x * (p2 + x * (p3 + x * p4)))

    def derivative(self, x: float) -> float:
        return cv_poly_der_eval(self, x)

    def authorizes(self, n: int) -> bool:
        """True once truncation after term n can no longer be followed by growth."""
        return n >= self.n_c and self.derivative(n) < 0.0 and self.value(n) < 0.0


def _abs2_quadratic(u: complex, v: complex) -> tuple[float, float, float, float, float]:
    # |x^2 + u x + v|^2 for real x, coefficients of x^0..x^4.
    return (
        v.real * v.real + v.imag * v.imag,
        2.0 * (u.real * v.real + u.imag * v.imag),
        u.real * u.real + u.imag * u.imag + 2.0 * v.real,
        2.0 * u.real,
        1.0,
    )


def cv_poly_der_coeffs(a: complex, b: complex, c: complex, z: complex) -> ConvergencePoly:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    z2 = z.real * z.real + z.imag * z.imag
    num = _abs2_quadratic(a + b, a * b)
    den = _abs2_quadratic(c + 1.0, c)
    p = tuple(z2 * x - y for x, y in zip(num, den))
    der = (p[1], 2.0 * p[2], 3.0 * p[3], 4.0 * p[4])
    return ConvergencePoly(coeffs=p, derivative_coeffs=der, n_c=min_n_calc(p))


def cv_poly_der_eval(poly: ConvergencePoly, x: float) -> float:
    d0, d1, d2, d3 = poly.derivative_coeffs
    return d0 + x * (d1 + x * (d2 + x * d3))


def min_n_calc(poly) -> int:
    """n_c: 0 if P'' has no two distinct real roots, else ceil of the largest one.

    Accepts a ``ConvergencePoly`` or the raw quartic coefficients.
    """
    p = poly.coeffs if isinstance(poly, ConvergencePoly) else poly
    # P''(x) = 12 p4 x^2 + 6 p3 x + 2 p2
    qa, qb, qc = 12.0 * p[4], 6.0 * p[3], 2.0 * p[2]
    if qa == 0.0:
        if qb == 0.0:
            return 0
        return max(0, math.ceil(-qc / qb))
    disc = qb * qb - 4.0 * qa * qc
    if disc <= 0.0:
        return 0
    sq = math.sqrt(disc)
    x_c = max((-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa))
    return max(0, math.ceil(x_c))


def _inv_factorial(m: int) -> float:
    if m <= 170:
        return 1.0 / math.factorial(m)
    return math.exp(-math.lgamma(m + 1.0))


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _series(a: complex, b: complex, c: complex, z: complex) -> tuple[complex, int]:
    """Sum of the 2F1 power series, truncated once the sentinel allows it."""
    poly = cv_poly_der_coeffs(a, b, c, z)
    term = 1.0 + 0.0j
    s = term
    n = 0
    authorized = poly.authorizes(0)
    while True:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1
        s += term
        if not authorized:
            authorized = poly.authorizes(n)
        if authorized:
            t = max(abs(term.real), abs(term.imag))
            if t <= EPS * max(abs(s.real), abs(s.imag)) or t <= TINY:
                return s, n + 1
            if not _finite(s):
                raise NoConvergenceError("series sum is not finite")
        if n >= TERM_CAP:
            raise NoConvergenceError(f"2F1 series did not converge in {TERM_CAP} terms (z = {z})")


def _polynomial_sum(a: complex, b: complex, c: complex, z: complex, degree: int) -> complex:
    term = 1.0 + 0.0j
    s = term
    for n in range(degree):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        s += term
    return s


def hyp_ps_zero(a: complex, b: complex, c: complex, z: complex) -> EvalResult:
    """Power series around z = 0; needs |z| < 1 unless the series terminates."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    degree = _polynomial_degree(a, b)
    if degree is not None:
        return EvalResult(_polynomial_sum(a, b, c, z, degree), Method.POLYNOMIAL, degree + 1)
    if z == 0.0:
        return EvalResult(1.0 + 0.0j, Method.SERIES_ZERO, 1)
    if abs(z) >= 1.0:
        raise DomainError(f"hyp_ps_zero needs |z| < 1, got |z| = {abs(z)}")
    value, n = _series(a, b, c, z)
    return EvalResult(value, Method.SERIES_ZERO, n)


def _alpha0(m: int, eps: complex, c: complex, den_args: tuple[complex, complex]) -> complex:
    """Gamma(c) / (eps Gamma(1-m-eps) Gamma(x1) Gamma(x2)), overflow-safe."""
    inv = gamma_inv(den_args[0]) * gamma_inv(den_args[1])
    if inv == 0.0:
        return 0.0j
    try:
        val = gamma(c) * a_sum_init(m, eps) * inv
        if _finite(val):
            return val
    except OverflowError:
        pass
    log_val = log_gamma(c) + log_a_sum_init(m, eps) - log_gamma(den_args[0]) - log_gamma(den_args[1])
    return cmath.exp(log_val)


def b_sum_init_ps_one(a: complex, b: complex, c: complex, one_minus_z: complex, split: TransformSplit) -> complex:
    """beta_0 / (1-z)^m of the B series of the 1-z transformation."""
    w = one_minus_z
    m, eps = split.m, split.eps
    gc = gamma(c)
    poch_ab = pochhammer(a, m) * pochhammer(b, m)
    inv_am_eps = gamma_inv(a + m + eps)
    inv_bm_eps = gamma_inv(b + m + eps)
    inv_fact = _inv_factorial(m)
    if inf_norm(eps) > SMALL_EPS:
        first = poch_ab * gamma_inv(1.0 - eps) * inv_am_eps * inv_bm_eps * inv_fact
        second = cmath.exp(eps * cmath.log(w)) * gamma_inv(a) * gamma_inv(b) * gamma_inv(m + 1.0 + eps)
        return gc * (first - second) / eps
    inv_m1_eps = gamma_inv(m + 1.0 + eps)
    inv_am = gamma_inv(a + m)
    bracket = (
        inv_am_eps * inv_bm_eps * (gamma_inv_diff_eps(1.0, -eps) * inv_fact + gamma_inv_diff_eps(m + 1.0, eps))
        - inv_m1_eps * (gamma_inv_diff_eps(a + m, eps) * inv_bm_eps + gamma_inv_diff_eps(b + m, eps) * inv_am)
        - e_eps(eps, cmath.log(w)) * inv_am * gamma_inv(b + m) * inv_m1_eps
    )
    return gc * poch_ab * bracket


def b_sum_init_ps_infinity(a: complex, b: complex, c: complex, z: complex, split: TransformSplit) -> complex:
    """beta_0 / z^(-m) of the B series of the 1/z transformation."""
    m, eps = split.m, split.eps
    gc = gamma(c)
    ca = c - a
    a1 = 1.0 - c + a
    inv_fact = _inv_factorial(m)
    inv_ca = gamma_inv(ca)
    inv_am_eps = gamma_inv(a + m + eps)
    log_mz = cmath.log(-z)
    q = pochhammer(a1 + eps, m)
    if inf_norm(eps) > SMALL_EPS:
        first = pochhammer(a, m) * pochhammer(a1, m) * inv_ca * inv_am_eps * gamma_inv(1.0 - eps) * inv_fact
        second = q * cmath.exp(-eps * log_mz) * gamma_inv(a) * gamma_inv(ca - eps) * gamma_inv(m + 1.0 + eps)
        return gc * (first - second) / eps
    inv_m1_eps = gamma_inv(m + 1.0 + eps)
    first = (
        (q * gamma_inv_diff_eps(1.0, -eps) - p_m_eps(a1, eps, m) * gamma_inv(1.0 - eps))
        * inv_ca * inv_am_eps * inv_fact
    )
    second = q * (
        gamma_inv_diff_eps(m + 1.0, eps) * inv_ca * inv_am_eps
        - gamma_inv_diff_eps(a + m, eps) * inv_ca * inv_m1_eps
        - (gamma_inv_diff_eps(ca, -eps) - e_eps(-eps, log_mz) * gamma_inv(ca - eps)) * inv_m1_eps * gamma_inv(a + m)
    )
    return pochhammer(a, m) * gc * (first + second)


def _b_series(
    x: complex,
    y: complex,
    m: int,
    eps: complex,
    arg: complex,
    beta0: complex,
    gamma0: complex,
    polys: tuple[ConvergencePoly, ConvergencePoly],
) -> tuple[complex, int]:
    """Sum of beta_n arg^n; (x, y) is (a, b) for 1-z and (a, 1-c+a) for 1/z."""
    p1, p2 = polys
    bt = beta0
    gt = gamma0
    s = bt
    n = 0
    authorized = p1.authorizes(0) and p2.authorizes(0)
    while True:
        xm = x + (m + n)
        ym = y + (m + n)
        xe = xm + eps
        ye = ym + eps
        mn1 = m + n + 1.0
        mn1e = mn1 + eps
        n1 = n + 1.0
        n1e = n1 - eps
        bracket = xm * ym / mn1 - xm - ym - eps + xe * ye / n1
        bt = arg * (xe * ye / (mn1e * n1) * bt + bracket * gt / (mn1e * n1e))
        gt = arg * (xm * ym / (mn1 * n1e) * gt)
        n += 1
        s += bt
        if not authorized:
            authorized = p1.authorizes(n) and p2.authorizes(n)
        if authorized:
            t = max(abs(bt.real), abs(bt.imag))
            if t <= EPS * max(abs(s.real), abs(s.imag)) or t <= TINY:
                return s, n + 1
            if not _finite(s):
                raise NoConvergenceError("series sum is not finite")
        if n >= TERM_CAP:
            raise NoConvergenceError(f"transformation series did not converge in {TERM_CAP} terms")


def hyp_ps_one(a: complex, b: complex, c: complex, one_minus_z: complex) -> EvalResult:
    """2F1 through the 1-z transformation; takes 1-z itself, |1-z| < 1.

    Requires Re(c-a-b) >= 0 and a non-terminating series.
    """
    a, b, c, w = complex(a), complex(b), complex(c), complex(one_minus_z)
    split = TransformSplit.of(c - a - b)
    m, eps = split.m, split.eps
    if abs(w) >= 1.0:
        raise DomainError(f"hyp_ps_one needs |1-z| < 1, got {abs(w)}")
    if w == 0.0 and m == 0:
        if eps.real <= 0.0:
            raise DomainError("2F1 diverges at z = 1 when Re(c-a-b) <= 0")
        # Gauss summation
        value = gamma(c) * gamma(eps) * gamma_inv(c - a) * gamma_inv(c - b)
        return EvalResult(value, Method.TRANSFORM_ONE_MINUS_Z, 1)
    terms = 0
    a_sum = 0.0j
    if m > 0:
        alpha = _alpha0(m, eps, c, (a + m + eps, b + m + eps))
        a_sum = alpha
        for n in range(m - 1):
            alpha *= (a + n) * (b + n) / ((n + 1) * (1 - m - eps + n)) * w
            a_sum += alpha
        terms = m
    if w == 0.0 and m > 0:
        b_sum = 0.0j
    else:
        beta0 = b_sum_init_ps_one(a, b, c, w, split)
        gamma0 = (
            gamma(c) * pochhammer(a, m) * pochhammer(b, m)
            * gamma_inv(a + m + eps) * gamma_inv(b + m + eps) * gamma_inv(1.0 - eps)
            * _inv_factorial(m)
        )
        polys = (
            cv_poly_der_coeffs(a, b, 1.0 - m - eps, w),
            cv_poly_der_coeffs(c - a, c - b, m + 1.0 + eps, w),
        )
        b_sum, nb = _b_series(a, b, m, eps, w, beta0, gamma0, polys)
        b_sum *= w**m
        terms += nb
    sign = -1.0 if m & 1 else 1.0
    return EvalResult(sign * (a_sum + b_sum) / sinc_pi(eps), Method.TRANSFORM_ONE_MINUS_Z, terms)


def hyp_ps_infinity(a: complex, b: complex, c: complex, z: complex) -> EvalResult:
    """2F1 through the 1/z transformation; |z| > 1 and Re(b-a) >= 0."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    split = TransformSplit.of(b - a)
    m, eps = split.m, split.eps
    if abs(z) <= 1.0:
        raise DomainError(f"hyp_ps_infinity needs |z| > 1, got {abs(z)}")
    zi = 1.0 / z
    a1 = 1.0 - c + a
    terms = 0
    a_sum = 0.0j
    if m > 0:
        alpha = _alpha0(m, eps, c, (a + m + eps, c - a))
        a_sum = alpha
        for n in range(m - 1):
            alpha *= (a + n) * (a1 + n) / ((n + 1) * (1 - m - eps + n)) * zi
            a_sum += alpha
        terms = m
    beta0 = b_sum_init_ps_infinity(a, b, c, z, split)
    gamma0 = (
        gamma(c) * pochhammer(a, m) * pochhammer(a1, m)
        * gamma_inv(a + m + eps) * gamma_inv(c - a) * gamma_inv(1.0 - eps)
        * _inv_factorial(m)
    )
    polys = (
        cv_poly_der_coeffs(a, a1, 1.0 - m - eps, zi),
        cv_poly_der_coeffs(b, 1.0 - c + b, m + 1.0 + eps, zi),
    )
    b_sum, nb = _b_series(a, a1, m, eps, zi, beta0, gamma0, polys)
    b_sum *= zi**m
    terms += nb
    sign = -1.0 if m & 1 else 1.0
    prefactor = sign * cmath.exp(-a * cmath.log(-z)) / sinc_pi(eps)
    return EvalResult(prefactor * (a_sum + b_sum), Method.TRANSFORM_INV_Z, terms)


def hyp_ps_complex_plane_rest(
    a: complex, b: complex, c: complex, z: complex, r0: float | None = None
) -> EvalResult:
    """Taylor expansion about z0 = r0 z/|z|, for 0.9 < |z| < 1.1.

    r0 is 0.9 inside the unit circle and 1.1 outside unless given explicitly.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if (b - a).real < 0.0:
        a, b = b, a
    r = abs(z)
    if r0 is None:
        if r == 1.0:
            raise DomainError("Taylor continuation centre is undefined for |z| = 1 exactly")
        r0 = 0.9 if r < 1.0 else 1.1
    if r0 not in (0.9, 1.1):
        raise DomainError("Taylor centre radius must be 0.9 or 1.1")
    z0 = r0 * (z / r)
    if r0 < 1.0:
        f0 = hyp_ps_zero(a, b, c, z0)
        f1 = hyp_ps_zero(a + 1.0, b + 1.0, c + 1.0, z0)
    else:
        f0 = hyp_ps_infinity(a, b, c, z0)
        f1 = hyp_ps_infinity(a + 1.0, b + 1.0, c + 1.0, z0)
    h = z - z0
    t_prev = f0.value
    t_curr = a * b / c * f1.value * h
    s = t_prev + t_curr
    inv = h / (z0 * (1.0 - z0))
    lin0 = (a + b + 1.0) * z0 - c
    two_z0 = 2.0 * z0 - 1.0
    n = 0
    while True:
        t_next = inv / (n + 2) * ((n * two_z0 + lin0) * t_curr + (a + n) * (b + n) / (n + 1) * h * t_prev)
        s += t_next
        n += 1
        t_prev, t_curr = t_curr, t_next
        size = max(abs(t_prev.real), abs(t_prev.imag)) + max(abs(t_curr.real), abs(t_curr.imag))
        if size <= EPS * max(abs(s.real), abs(s.imag)) or size <= TINY:
            break
        if not _finite(s):
            raise NoConvergenceError("Taylor continuation sum is not finite")
        if n >= TERM_CAP:
            raise NoConvergenceError("Taylor continuation did not converge")
    return EvalResult(s, Method.TAYLOR_PATCH, f0.terms_used + f1.terms_used + n + 2)


def _polynomial_degree(a: complex, b: complex) -> int | None:
    degrees = [-int(x.real) for x in (a, b) if is_nonpositive_integer(x)]
    return min(degrees) if degrees else None


def _polynomial_case(a: complex, b: complex, c: complex, z: complex) -> EvalResult:
    if is_nonpositive_integer(a) and (not is_nonpositive_integer(b) or a.real >= b.real):
        poly_param, other = a, b
    else:
        poly_param, other = b, a
    degree = -int(poly_param.real)
    if is_nonpositive_integer(c) and c.real > poly_param.real:
        raise DomainError(f"2F1 undefined: c = {c.real:g} is a pole reached before the series terminates")
    if z == 1.0 or abs(z) < abs(z / (z - 1.0)):
        value = _polynomial_sum(poly_param, other, c, z, degree)
    else:
        value = (1.0 - z) ** degree * _polynomial_sum(poly_param, c - other, c, z / (z - 1.0), degree)
    return EvalResult(value, Method.POLYNOMIAL, degree + 1)


def _pfaff(a: complex, b: complex, c: complex, z: complex, result: EvalResult, method: Method | None = None) -> EvalResult:
    value = cmath.exp(-a * cmath.log(1.0 - z)) * result.value
    return EvalResult(value, method or result.method, result.terms_used)


def _small_params(a: complex, b: complex, c: complex) -> bool:
    return inf_norm(a) < GUARD and inf_norm(b) < GUARD and inf_norm(c) < GUARD


def _dispatch(a: complex, b: complex, c: complex, z: complex) -> EvalResult:
    """Evaluation for Re(b-a) >= 0 and Re(c-a-b) >= 0, z off the cut."""
    if abs(1.0 - z) < NEAR_ONE:
        return hyp_ps_one(a, b, c, 1.0 - z)
    zeta = z / (z - 1.0)
    mod_z = abs(z)
    mod_zeta = abs(zeta)
    for radius in RADII:
        if mod_z < radius or mod_zeta < radius:
            if mod_z <= mod_zeta:
                return hyp_ps_zero(a, b, c, z)
            return _pfaff(a, b, c, z, hyp_ps_zero(a, c - b, c, zeta), Method.SERIES_Z_OVER_ZM1)
    pfaff_ok = inf_norm(c - b) < GUARD
    mod_inv = 1.0 / mod_z
    mod_inv_zeta = 1.0 / mod_zeta
    mod_w = abs(1.0 - z)
    mod_inv_w = 1.0 / mod_w
    for radius in RADII:
        if mod_inv < radius:
            return hyp_ps_infinity(a, b, c, z)
        if pfaff_ok and mod_inv_zeta < radius:
            return _pfaff(a, b, c, z, hyp_ps_infinity(a, c - b, c, zeta))
        if mod_w < radius and _small_params(a, b, c):
            return hyp_ps_one(a, b, c, 1.0 - z)
        if pfaff_ok and mod_inv_w < radius and _small_params(a, c - b, c):
            return _pfaff(a, b, c, z, hyp_ps_one(a, c - b, c, 1.0 / (1.0 - z)))
    return hyp_ps_complex_plane_rest(a, b, c, z)


def hyp_2f1_eval(a: complex, b: complex, c: complex, z: complex) -> EvalResult:
    """2F1(a, b; c; z) together with the branch used and the number of terms."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _polynomial_degree(a, b) is not None:
        return _polynomial_case(a, b, c, z)
    if is_nonpositive_integer(c):
        raise DomainError(f"2F1 undefined for c = {c.real:g} with a non-terminating series")
    if z == 0.0:
        return EvalResult(1.0 + 0.0j, Method.SERIES_ZERO, 1)
    if z.imag == 0.0 and z.real >= 1.0:
        z = complex(z.real, -CUT_SHIFT)
    prefactor = None
    if (c - a - b).real < 0.0:
        prefactor = cmath.exp((c - a - b) * cmath.log(1.0 - z))
        a, b = c - a, c - b
    if (b - a).real < 0.0:
        a, b = b, a
    result = _dispatch(a, b, c, z)
    if prefactor is not None:
        result = EvalResult(prefactor * result.value, result.method, result.terms_used)
    return result


def hyp_2f1(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z)."""
    return hyp_2f1_eval(a, b, c, z).value


def _derivatives(a: complex, b: complex, c: complex, z: complex) -> tuple[complex, complex]:
    if a == 0.0 or b == 0.0:
        return 0.0j, 0.0j
    d1 = a * b / c * hyp_2f1(a + 1.0, b + 1.0, c + 1.0, z)
    if a == -1.0 or b == -1.0:
        return d1, 0.0j
    d2 = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * hyp_2f1(a + 2.0, b + 2.0, c + 2.0, z)
    return d1, d2


def test_2f1(a: complex, b: complex, c: complex, z: complex, f: complex) -> float:
    """Relative residual of a candidate value ``f`` in the hypergeometric equation.

    Zero at z = 0 only for f = 1; at z = 1 the first-order relation at the
    singular point is used.
    """
    a, b, c, z, f = complex(a), complex(b), complex(c), complex(z), complex(f)
    if z == 0.0:
        return inf_norm(f - 1.0)
    if z == 1.0:
        if _polynomial_degree(a, b) is None and (c - a - b).real <= 1.0:
            raise DomainError("residual at z = 1 needs F'(1) finite, i.e. Re(c-a-b) > 1")
        d1 = 0.0j if a == 0.0 or b == 0.0 else a * b / c * hyp_2f1(a + 1.0, b + 1.0, c + 1.0, 1.0)
        num = inf_norm((c - (a + b + 1.0)) * d1 - a * b * f)
        return num / (inf_norm(f) + inf_norm(d1) + 1e-307)
    d1, d2 = _derivatives(a, b, c, z)
    num = inf_norm(d2 + ((c - (a + b + 1.0) * z) * d1 - a * b * f) / (z * (1.0 - z)))
    return num / (inf_norm(f) + inf_norm(d1) + inf_norm(d2))


test_2f1.__test__ = False  # not a pytest test
