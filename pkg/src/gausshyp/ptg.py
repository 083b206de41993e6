"""Poschl-Teller-Ginocchio (PTG) potential with an effective mass.

Radial equation, with kin_fact = 2 m0 / hbar^2:

    [(1/kin_fact)(-d/dr (1/mu) d/dr + l(l+1)/(r^2 mu)) + V(r)] u = e u

The potential, the mass and the wave functions depend on r only through
y(r) in [0, 1), the root of lambda2_sr_of_y(y) = Lambda^2 s r. Large r
drives y to 1, so 1 - y^2 is carried separately in ``YPoint``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .complex_kernels import nearest_int
from .errors import DivergentNormError, DomainError, NoConvergenceError, VanishingStateError
from .gamma_engine import gamma, gamma_inv
from .hyp2f1 import hyp_2f1

SATURATION_Y = 0.99
SERIES_SWITCH = 0.1
NEWTON_CAP = 100
FIXED_POINT_CAP = 200
NORM_POLE_TOL = 1e-12


@dataclass(frozen=True)
class PtgParams:
    lam: float
    s: float
    nu: float
    a_mass: float
    ell: int
    kin_fact: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise DomainError("Lambda must be positive")
        if not self.s > 0.0:
            raise DomainError("s must be positive")
        if not 0.0 <= self.a_mass < 1.0:
            raise DomainError("effective-mass strength a must lie in [0, 1)")
        if self.ell < 0 or int(self.ell) != self.ell:
            raise DomainError("l must be a nonnegative integer")
        if not self.kin_fact > 0.0:
            raise DomainError("kinetic factor must be positive")

    @property
    def lam2(self) -> float:
        return self.lam * self.lam


@dataclass(frozen=True)
class YPoint:
    """y(r) with 1 - y^2 and exp(-2x), x = atanh y, kept to full relative precision."""

    y: float
    one_minus_y2: float
    exp_minus_2x: float
    atanh_y: float

    @classmethod
    def from_y(cls, y: float) -> "YPoint":
        return cls(y, (1.0 - y) * (1.0 + y), (1.0 - y) / (1.0 + y), math.atanh(y))

    @classmethod
    def from_x(cls, x: float) -> "YPoint":
        e2 = math.exp(-2.0 * x)
        return cls(math.tanh(x), 4.0 * e2 / (1.0 + e2) ** 2, e2, x)

    @property
    def log_one_minus_y2(self) -> float:
        if self.y < 0.5:
            return math.log1p(-self.y * self.y)
        x = self.atanh_y
        return math.log(4.0) - 2.0 * x - 2.0 * math.log1p(self.exp_minus_2x)


class PoleKind(str, Enum):
    BOUND = "bound"
    ANTIBOUND = "antibound"
    RESONANT = "resonant"


@dataclass(frozen=True)
class PoleSpec:
    n: int
    big_n: int
    kind: PoleKind
    k: complex
    e: complex


@dataclass(frozen=True)
class HyperArgs:
    beta_bar: complex
    nu_bar: complex
    nu_plus: complex
    nu_minus: complex
    mu_plus: complex
    mu_minus: complex
    a_plus: complex
    a_minus: complex


@dataclass(frozen=True)
class WaveSample:
    phi: complex
    dphi: complex
    d2phi: complex


@dataclass(frozen=True)
class AsymptoticConstants:
    c0: complex
    c_plus: complex
    c_minus: complex
    r1: float


# --- y(r) -----------------------------------------------------------------


def _q(p: PtgParams) -> float:
    return math.sqrt(abs(p.lam2 - 1.0))


def lambda2_sr_of_y(p: PtgParams, y: float) -> float:
    """Lambda^2 s r as a function of y, strictly increasing on [0, 1)."""
    if not 0.0 <= y < 1.0:
        raise DomainError(f"y must lie in [0, 1), got {y}")
    q = _q(p)
    if _in_series_zone(q, y):
        return y * (p.lam2 + y * y * _s_lambda(p.lam2, y))
    if p.lam > 1.0:
        return math.atanh(y) + q * math.atan(q * y)
    return math.atanh(y) - q * math.atanh(q * y)


def _in_series_zone(q: float, y: float) -> bool:
    return y < SERIES_SWITCH and q * y < SERIES_SWITCH


def _tail_x(p: PtgParams, t: float, y: float) -> float:
    """x = atanh(y) implied by the implicit equation at Lambda^2 s r = t."""
    q = _q(p)
    if p.lam > 1.0:
        return t - q * math.atan(q * y)
    return t + q * math.atanh(q * y)


def y_search(p: PtgParams, r: float) -> YPoint:
    if r < 0.0:
        raise DomainError("r must be nonnegative")
    if r == 0.0:
        return YPoint(0.0, 1.0, 1.0, 0.0)
    lam2 = p.lam2
    t = lam2 * p.s * r
    q = _q(p)
    if p.lam > 1.0:
        y_d = max(math.tanh(t - q * math.atan(q)), 0.0)
        y_e = math.tanh(t)
    else:
        y_d = math.tanh(t)
        y_e = math.tanh(t + q * math.atanh(q))
    if y_d > SATURATION_Y:
        return _saturated(p, t)
    if p.lam == 1.0:
        return YPoint.from_x(t)

    if p.lam > 1.0 and y_d > 0.5:
        y = y_d
    elif p.lam <= 1.0 and y_e > 0.5:
        y = y_e
    else:
        y = min(p.s * r, SATURATION_Y)
    lo, hi = y_d, min(y_e, math.nextafter(1.0, 0.0))
    best_y, best_f = y, math.inf
    for _ in range(NEWTON_CAP):
        f = lambda2_sr_of_y(p, y) - t
        if abs(f) < best_f:
            best_y, best_f = y, abs(f)
        if f == 0.0:
            break
        if f > 0.0:
            hi = min(hi, y)
        else:
            lo = max(lo, y)
        slope = lam2 / ((1.0 - y) * (1.0 + y) * (1.0 + (lam2 - 1.0) * y * y))
        y_new = y - f / slope
        if not lo <= y_new <= hi:
            y_new = 0.5 * (lo + hi)
        if abs(y_new - y) <= 1e-15 * y:
            best_y = y_new
            break
        if y_new in (lo, hi):
            # rounding noise in f: the step revisits a bracket end
            break
        y = y_new
    else:
        raise NoConvergenceError(f"y(r) Newton iteration failed at r = {r}")
    y = best_y
    return YPoint.from_y(y)


def _saturated(p: PtgParams, t: float) -> YPoint:
    # fixed point on x = atanh(y) starting from y = 1
    x = _tail_x(p, t, 1.0)
    for _ in range(FIXED_POINT_CAP):
        x_new = _tail_x(p, t, math.tanh(x))
        if abs(x_new - x) <= 1e-15 * x:
            x = x_new
            break
        x = x_new
    else:
        raise NoConvergenceError(f"y(r) fixed-point iteration failed at Lambda^2 s r = {t}")
    return YPoint.from_x(x)


def _dy_dr(p: PtgParams, yp: YPoint) -> float:
    y = yp.y
    return p.s * yp.one_minus_y2 * (1.0 + (p.lam2 - 1.0) * y * y)


# --- potential ------------------------------------------------------------


def effective_mass(p: PtgParams, r: float) -> float:
    return 1.0 - p.a_mass * y_search(p, r).one_minus_y2


def effective_mass_der(p: PtgParams, r: float) -> float:
    yp = y_search(p, r)
    return 2.0 * p.a_mass * yp.y * _dy_dr(p, yp)


def _s_lambda(lam2: float, y: float) -> float:
    """S(y) = sum_n [1 - (1-Lambda^2)^(n+2)] y^(2n) / (2n+3)."""
    w = 1.0 - lam2
    y2 = y * y
    w_pow = w * w
    y_pow = 1.0
    total = 0.0
    for n in range(200):
        term = (1.0 - w_pow) * y_pow / (2 * n + 3)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        w_pow *= w
        y_pow *= y2
    return total


def _v_l(p: PtgParams, r: float, yp: YPoint) -> float:
    ll = p.ell * (p.ell + 1)
    if ll == 0:
        return 0.0
    lam2 = p.lam2
    if r == 0.0:
        return ll * (lam2 - 2.0) / 3.0
    y = yp.y
    sr = p.s * r
    if _in_series_zone(_q(p), y):
        stable = y / (lam2 * sr) * (1.0 + y / sr) * _s_lambda(lam2, y)
        return ll * (stable + lam2 - 2.0 - (lam2 - 1.0) * y * y)
    return ll * (yp.one_minus_y2 * (1.0 + (lam2 - 1.0) * y * y) / (y * y) - 1.0 / (sr * sr))


def v_l_calc(p: PtgParams, r: float) -> float:
    """Dimensionless l-dependent part of the potential."""
    return _v_l(p, r, y_search(p, r))


def _v_parts(p: PtgParams, r: float, yp: YPoint) -> tuple[float, float]:
    """(mu, V_mu + V_l + V_c)."""
    lam2, a, nu = p.lam2, p.a_mass, p.nu
    y2 = yp.y * yp.y
    omy2 = yp.one_minus_y2
    mu = 1.0 - a * omy2
    d = 1.0 + (lam2 - 1.0) * y2
    v_mu = 0.0
    if a != 0.0:
        poly = (
            1.0 - a
            + (a * (4.0 - 3.0 * lam2) - 3.0 * (2.0 - lam2)) * y2
            - (lam2 - 1.0) * (5.0 * (1.0 - a) + 2.0 * a * y2) * y2 * y2
        )
        v_mu = poly * a / (mu * mu) * omy2 * d
    v_c = omy2 * (-lam2 * nu * (nu + 1.0) - 0.25 * (lam2 - 1.0) * (2.0 - (7.0 - lam2) * y2 - 5.0 * (lam2 - 1.0) * y2 * y2))
    return mu, v_mu + _v_l(p, r, yp) + v_c


def v_ptg(p: PtgParams, r: float) -> float:
    """Potential in energy units (those of s^2 / kin_fact)."""
    mu, v = _v_parts(p, r, y_search(p, r))
    return p.s * p.s / (p.kin_fact * mu) * v


# --- poles ----------------------------------------------------------------


def _nu_is_natural(nu: float) -> bool:
    return nu >= 0.0 and nu == math.floor(nu)


def b_lambda(p: PtgParams) -> float:
    one_a = 1.0 - p.a_mass
    if p.lam <= math.sqrt(2.0 / one_a):
        return math.inf
    return p.lam * math.sqrt(one_a / (p.lam2 * one_a - 2.0)) * (p.nu + 0.5) - 0.5


def b_nu(p: PtgParams) -> float:
    if _nu_is_natural(p.nu):
        return p.nu - 1.0
    return float(math.floor(p.nu))


def k_ptg_calc(p: PtgParams, n: int) -> PoleSpec:
    """Momentum and energy of the S-matrix pole with principal quantum number n."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    big_n = 2 * n + p.ell + 1
    if _nu_is_natural(p.nu) and big_n == p.nu:
        raise VanishingStateError(f"N = nu = {big_n}: the wave function vanishes identically")
    if big_n > b_lambda(p):
        kind = PoleKind.RESONANT
    elif big_n <= b_nu(p):
        kind = PoleKind.BOUND
    else:
        kind = PoleKind.ANTIBOUND
    one_a = 1.0 - p.a_mass
    half_n = big_n + 0.5
    delta = p.lam2 * (p.nu + 0.5) ** 2 * one_a - (one_a * p.lam2 - 1.0) * half_n**2
    sqrt_delta = cmath.sqrt(delta)
    # a negative discriminant (resonant or complex virtual state) takes the lower sign
    sign = 1.0 if kind is not PoleKind.RESONANT and delta >= 0.0 else -1.0
    k = 1j * p.s * (-half_n + sign * sqrt_delta) / one_a
    return PoleSpec(n=n, big_n=big_n, kind=kind, k=k, e=k * k / p.kin_fact)


def pole_states(p: PtgParams, n_max: int) -> list[PoleSpec]:
    """All poles with n <= n_max, skipping the vanishing N = nu state."""
    out = []
    for n in range(n_max + 1):
        try:
            out.append(k_ptg_calc(p, n))
        except VanishingStateError:
            continue
    return out


# --- wave functions -------------------------------------------------------


def _beta_bar(p: PtgParams, k: complex) -> complex:
    return -1j * k / (p.lam2 * p.s)


def hyper_args_pole(p: PtgParams, n: int, k: complex) -> HyperArgs:
    bb = _beta_bar(p, k)
    l32 = p.ell + 1.5
    big_n = 2 * n + p.ell + 1
    a_plus = complex(1.0)
    for j in range(n):
        a_plus *= (-bb - n + j) / (l32 + j)
    return HyperArgs(
        beta_bar=bb,
        nu_bar=big_n + 0.5 + bb,
        nu_plus=l32 + n + bb,
        nu_minus=complex(-n),
        mu_plus=complex(l32 + n),
        mu_minus=-bb - n,
        a_plus=a_plus,
        a_minus=0j,
    )


def hyper_args_scat(p: PtgParams, k: complex) -> HyperArgs:
    bb = _beta_bar(p, k)
    l32 = p.ell + 1.5
    nu_bar = cmath.sqrt((p.nu + 0.5) ** 2 - bb * bb * (p.lam2 * (1.0 - p.a_mass) - 1.0))
    nu_p, nu_m = 0.5 * (l32 + bb + nu_bar), 0.5 * (l32 + bb - nu_bar)
    mu_p, mu_m = 0.5 * (l32 - bb + nu_bar), 0.5 * (l32 - bb - nu_bar)
    g = gamma(l32)
    return HyperArgs(
        beta_bar=bb,
        nu_bar=nu_bar,
        nu_plus=nu_p,
        nu_minus=nu_m,
        mu_plus=mu_p,
        mu_minus=mu_m,
        a_plus=g * gamma(-bb) * gamma_inv(mu_p) * gamma_inv(mu_m),
        a_minus=g * gamma(bb) * gamma_inv(nu_p) * gamma_inv(nu_m),
    )


def norm_pole(p: PtgParams, n: int, h: HyperArgs) -> complex:
    bb = h.beta_bar
    l32 = p.ell + 1.5
    arg = l32 + bb + n
    m = nearest_int(arg.real)
    if m <= 0 and abs(arg - m) <= NORM_POLE_TOL * max(1.0, abs(arg)):
        raise DivergentNormError(f"normalization of pole n = {n} diverges (Gamma argument {arg:.6g})")
    num = 2.0 * p.lam2 * p.s * bb * (l32 + bb + 2 * n) * gamma(l32 + bb + n) * gamma(l32 + n)
    den = (l32 + bb * p.lam2 * (1.0 - p.a_mass) + 2 * n) * math.factorial(n) * gamma(l32) ** 2
    return cmath.sqrt(num * gamma_inv(bb + n + 1.0) / den)


def norm_scat(p: PtgParams, h: HyperArgs) -> complex:
    l32 = p.ell + 1.5
    num = gamma(h.nu_plus) * gamma(h.nu_minus) * gamma(h.mu_plus) * gamma(h.mu_minus)
    den = 2.0 * math.pi * gamma(h.beta_bar) * gamma(-h.beta_bar) * gamma(l32) ** 2
    return cmath.sqrt(num / den)


def r1_length(p: PtgParams) -> float:
    q = _q(p)
    if p.lam > 1.0:
        return (q * math.atan(q) - math.log(p.lam / 2.0)) / (p.lam2 * p.s)
    return -(q * math.atanh(q) + math.log(p.lam / 2.0)) / (p.lam2 * p.s)


def _f_with_derivatives(a: complex, b: complex, c: complex, x: float) -> tuple[complex, complex, complex]:
    """2F1 and its first two derivatives in its argument."""
    f = hyp_2f1(a, b, c, x)
    if a == 0 or b == 0:
        return f, 0j, 0j
    f1 = a * b / c * hyp_2f1(a + 1, b + 1, c + 1, x)
    if a == -1 or b == -1:
        return f, f1, 0j
    f2 = a * (a + 1) * b * (b + 1) / (c * (c + 1)) * hyp_2f1(a + 2, b + 2, c + 2, x)
    return f, f1, f2


@dataclass(frozen=True)
class _Geometry:
    """x+, x- and the r-derivatives needed by the chain rule at one radius."""

    y: float
    x_plus: float
    x_minus: float
    log_x_plus: float
    rho: float  # d x-/dr = rho x+, d x+/dr = -rho x+
    drho: float
    dy: float
    d2y: float


def _geometry(p: PtgParams, r: float) -> _Geometry:
    yp = y_search(p, r)
    y = yp.y
    lam2 = p.lam2
    d = 1.0 + (lam2 - 1.0) * y * y
    x_plus = yp.one_minus_y2 / d
    x_minus = lam2 * y * y / d
    dy = _dy_dr(p, yp)
    return _Geometry(
        y=y,
        x_plus=x_plus,
        x_minus=x_minus,
        log_x_plus=yp.log_one_minus_y2 - math.log(d),
        rho=2.0 * lam2 * p.s * y,
        drho=2.0 * lam2 * p.s * dy,
        dy=dy,
        d2y=2.0 * p.s * y * dy * (lam2 - 2.0 - 2.0 * (lam2 - 1.0) * y * y),
    )


@dataclass(frozen=True)
class _Envelope:
    """chi = y^(l+1) H with H smooth and nonzero.

    h1, h2 are the first two r-derivatives of log H; u1 = y'/y and
    u2 = y''/y stay bounded as r -> 0, so no 1/r^2 terms cancel.
    """

    chi: float
    h1: float
    h2: float
    u1: float
    u2: float


def _envelope(p: PtgParams, g: _Geometry) -> _Envelope:
    lam2, a, m = p.lam2, p.a_mass, p.ell + 1
    al1 = 1.0 - lam2 * (1.0 - a)
    al2 = 1.0 - lam2
    big_a = lam2 * (1.0 - a) + al1 * g.x_minus
    big_b = lam2 + al2 * g.x_minus
    chi = math.sqrt(big_a / math.sqrt(big_b)) * g.x_minus ** (0.5 * m)
    # sqrt(A / sqrt(B)) as a function of x-
    w1 = 0.5 * al1 / big_a - 0.25 * al2 / big_b
    w1_x = -0.5 * al1 * al1 / big_a**2 + 0.25 * al2 * al2 / big_b**2
    rx = g.rho * g.x_plus
    y = g.y
    d = 1.0 + (lam2 - 1.0) * y * y
    # (x-)^(m/2) = y^m (Lambda^2/D)^(m/2): the D factor, log-differentiated
    yy1 = y * g.dy
    yy2 = g.dy * g.dy + y * g.d2y
    c = lam2 - 1.0
    h1 = w1 * rx - m * c * yy1 / d
    h2 = w1 * g.x_plus * (g.drho - g.rho**2) + w1_x * rx * rx - m * c * (yy2 / d - 2.0 * c * yy1 * yy1 / (d * d))
    u1 = p.s * g.x_plus * d * d / y  # y'/y without forming y'
    u2 = 2.0 * p.s * g.dy * (lam2 - 2.0 - 2.0 * c * y * y)
    return _Envelope(chi, h1, h2, u1, u2)


def _wave_sample(
    p: PtgParams, g: _Geometry, h: HyperArgs, norm: complex, use_small_r_form: bool, pole: bool
) -> WaveSample:
    env = _envelope(p, g)
    m = p.ell + 1
    bb = h.beta_bar
    rx = g.rho * g.x_plus
    d2x = g.x_plus * (g.drho - g.rho**2)  # second r-derivative of x-

    def combine(sign, amp, f, f1, f2, dx, ddx):
        # amp * chi * X^sign * F(x(r)) and two r-derivatives, all divided by chi
        l1 = env.h1 - sign * 0.5 * bb * g.rho
        l2 = env.h2 - sign * 0.5 * bb * g.drho
        g1 = l1 + m * env.u1
        g2 = l2 + l1 * l1 + 2.0 * m * env.u1 * l1 + m * env.u2 + m * (m - 1) * env.u1 * env.u1
        fr1 = f1 * dx
        fr2 = f2 * dx * dx + f1 * ddx
        return amp * f, amp * (g1 * f + fr1), amp * (g2 * f + 2.0 * g1 * fr1 + fr2)

    xp_plus = cmath.exp(0.5 * bb * g.log_x_plus)
    if use_small_r_form:
        f, f1, f2 = _f_with_derivatives(h.nu_minus, h.nu_plus, p.ell + 1.5, g.x_minus)
        v, d1, d2 = combine(1, xp_plus, f, f1, f2, rx, d2x)
    else:
        f, f1, f2 = _f_with_derivatives(h.nu_minus, h.nu_plus, 1.0 + bb, g.x_plus)
        v, d1, d2 = combine(1, h.a_plus * xp_plus, f, f1, f2, -rx, -d2x)
        if not pole and h.a_minus != 0:
            xm_minus = cmath.exp(-0.5 * bb * g.log_x_plus)
            f, f1, f2 = _f_with_derivatives(h.mu_minus, h.mu_plus, 1.0 - bb, g.x_plus)
            w, e1, e2 = combine(-1, h.a_minus * xm_minus, f, f1, f2, -rx, -d2x)
            v, d1, d2 = v + w, d1 + e1, d2 + e2
    scale = norm * env.chi
    return WaveSample(scale * v, scale * d1, scale * d2)


def _origin_sample(p: PtgParams, c0: complex) -> WaveSample:
    return WaveSample(0j, c0 if p.ell == 0 else 0j, 2.0 * c0 if p.ell == 1 else 0j)


def _wave(p, r_grid, h, norm, pole, form):
    samples = []
    for r in r_grid:
        if r == 0.0:
            samples.append(_origin_sample(p, norm * math.sqrt(p.lam * (1.0 - p.a_mass)) * (p.lam * p.s) ** (p.ell + 1)))
            continue
        g = _geometry(p, r)
        small = g.x_minus < 0.5 if form is None else form == "small_r"
        samples.append(_wave_sample(p, g, h, norm, small, pole))
    return samples


def _constants(p: PtgParams, h: HyperArgs, norm: complex, k: complex) -> AsymptoticConstants:
    r1 = r1_length(p)
    c0 = norm * math.sqrt(p.lam * (1.0 - p.a_mass)) * (p.lam * p.s) ** (p.ell + 1)
    c_plus = norm * h.a_plus * cmath.exp(-1j * k * r1)
    c_minus = norm * h.a_minus * cmath.exp(1j * k * r1)
    return AsymptoticConstants(c0=c0, c_plus=c_plus, c_minus=c_minus, r1=r1)


def ptg_pole(
    p: PtgParams, n: int, r_grid, form: str | None = None
) -> tuple[PoleSpec, AsymptoticConstants, list[WaveSample]]:
    """Pole state n on the grid.

    ``form`` forces the small-r ("small_r", x- argument) or large-r
    ("large_r", x+ argument) expression; by default x- < 1/2 picks small-r.
    """
    spec = k_ptg_calc(p, n)
    h = hyper_args_pole(p, n, spec.k)
    norm = norm_pole(p, n, h)
    return spec, _constants(p, h, norm, spec.k), _wave(p, r_grid, h, norm, True, form)


def ptg_scat(
    p: PtgParams, k: complex, r_grid, form: str | None = None
) -> tuple[AsymptoticConstants, list[WaveSample]]:
    """Scattering state of momentum k, Dirac-delta normalized."""
    k = complex(k)
    if k == 0:
        raise DomainError("scattering momentum must be nonzero")
    h = hyper_args_scat(p, k)
    norm = norm_scat(p, h)
    return _constants(p, h, norm, k), _wave(p, r_grid, h, norm, False, form)


def ptg_test_calc(p: PtgParams, k: complex, r: float, w: WaveSample) -> float:
    """Relative residual of the radial equation at r > 0 for energy k^2/kin_fact."""
    if r <= 0.0:
        raise DomainError("residual needs r > 0")
    yp = y_search(p, r)
    mu, v = _v_parts(p, r, yp)
    v_scaled = p.s * p.s / mu * v  # kin_fact * V
    dmu = 2.0 * p.a_mass * yp.y * _dy_dr(p, yp)
    energy = complex(k) ** 2  # kin_fact * e
    terms = (
        -w.d2phi / mu,
        dmu * w.dphi / (mu * mu),
        p.ell * (p.ell + 1) * w.phi / (r * r * mu),
        v_scaled * w.phi,
        -energy * w.phi,
    )
    total = sum(abs(t) for t in terms)
    if total == 0.0:
        return 0.0
    return abs(sum(terms)) / total
