"""Independent reference values for 2F1, used by ``verify`` and the tests.

``series_oracle`` sums the defining series in mpmath arithmetic.
``ode_oracle`` integrates z(1-z)F'' + [c-(a+b+1)z]F' - abF = 0 with
scipy's DOP853 from a start point where the series is summed exactly.
Neither shares code with the transformation machinery in ``hyp2f1``.
"""
from __future__ import annotations

import mpmath
import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, PathUnsafeError
from .hyp2f1 import CUT_SHIFT

SERIES_RADIUS = 0.8
START_RADIUS = 0.5
ODE_RTOL = 1e-12
SINGULAR_CLEARANCE = 0.05


def _polynomial_degree(a: complex, b: complex) -> int | None:
    degrees = [int(-x.real) for x in (a, b) if x.imag == 0.0 and x.real <= 0.0 and x.real == int(x.real)]
    return min(degrees) if degrees else None


def _mp_series(a, b, c, z, dps: int, with_derivative: bool = False, max_terms: int = 100_000):
    with mpmath.workdps(dps):
        a, b, c, z = (mpmath.mpc(complex(v)) for v in (a, b, c, z))
        tol = mpmath.mpf(10) ** (-dps + 5)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        deriv = mpmath.mpc(0)
        small_run = 0
        for n in range(max_terms):
            if with_derivative:
                deriv += (n + 1) * term * (a + n) * (b + n) / ((c + n) * (n + 1))
            term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
            total += term
            if term == 0:
                break
            # a few consecutive small terms guard against a transient dip
            small_run = small_run + 1 if abs(term) <= tol * abs(total) else 0
            if small_run >= 4:
                break
        else:
            raise DomainError("extended-precision series did not converge")
        if with_derivative:
            return complex(total), complex(deriv)
        return complex(total)


def series_oracle(a: complex, b: complex, c: complex, z: complex, dps: int = 40) -> complex:
    """2F1 from the direct series in ``dps``-digit arithmetic; |z| <= 0.8 or a polynomial."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    degree = _polynomial_degree(a, b)
    if degree is None and abs(z) > SERIES_RADIUS:
        raise DomainError(f"series oracle needs |z| <= {SERIES_RADIUS}, got |z| = {abs(z):.3g}")
    if degree is not None:
        return _mp_series(a, b, c, z, dps, max_terms=degree + 2)
    return _mp_series(a, b, c, z, dps)


def ode_path(z: complex) -> list[complex]:
    """Vertices of the integration path, starting at |z0| = 0.5.

    The default path is the ray towards z. A ray passing close to the
    singular point z = 1 is replaced by a detour through 1 -/+ i/2 on the
    side of z (below the cut for real z > 1, matching the library).
    """
    z = complex(z)
    if abs(z - 1.0) < SINGULAR_CLEARANCE:
        raise PathUnsafeError(f"z = {z} is within {SINGULAR_CLEARANCE} of the singular point z = 1")
    r = abs(z)
    start = START_RADIUS if r > START_RADIUS else 0.5 * r
    u = z / r
    z0 = start * u
    # distance from 1 to the segment z0 -> z
    d = z - z0
    t = min(max(((1.0 - z0) * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
    if abs(z0 + t * d - 1.0) >= 0.25:
        return [z0, z]
    side = 1.0 if z.imag > 0.0 else -1.0
    return [complex(START_RADIUS), complex(1.0, 0.5 * side), z]


def ode_oracle(a: complex, b: complex, c: complex, z: complex) -> complex:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if z == 0.0:
        return 1.0 + 0.0j
    path = ode_path(z)
    f, df = _mp_series(a, b, c, path[0], 40, with_derivative=True)
    ab = a * b
    s = a + b + 1.0

    for z_from, z_to in zip(path, path[1:]):
        delta = z_to - z_from

        def rhs(t, y, z_from=z_from, delta=delta):
            w = z_from + t * delta
            d2 = (ab * y[0] - (c - s * w) * y[1]) / (w * (1.0 - w))
            return np.array([y[1] * delta, d2 * delta])

        sol = solve_ivp(
            rhs,
            (0.0, 1.0),
            np.array([f, df], dtype=complex),
            method="DOP853",
            rtol=ODE_RTOL,
            atol=1e-14 * max(abs(f), abs(df), 1e-300),
        )
        if not sol.success:
            raise PathUnsafeError(f"ODE integration failed: {sol.message}")
        f, df = complex(sol.y[0, -1]), complex(sol.y[1, -1])
    return f


def cut_convention(z: complex) -> complex:
    """The point the library actually evaluates for real z >= 1."""
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        return complex(z.real, -CUT_SHIFT)
    return z
