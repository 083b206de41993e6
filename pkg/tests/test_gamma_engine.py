import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausshyp.complex_kernels import sin_pi_reduced
from gausshyp.errors import DomainError, PoleError
from gausshyp.gamma_engine import (
    LANCZOS,
    a_sum_init,
    gamma,
    gamma_inv,
    gamma_inv_diff_eps,
    gamma_ratio_diff_small_eps,
    log_a_sum_init,
    log_gamma,
)

mp.mp.dps = 50


def rel(x, y):
    return abs(x - y) / abs(y)


def off_integer(x, y):
    return abs(y) > 1e-3 or abs(x - round(x)) > 1e-3


grid = [complex(x, y) for x in (-7.3, -2.6, -0.4, 0.2, 0.45, 0.5, 1.7, 3.3, 9.1, 25.6) for y in (-6.0, -0.7, 0.0, 0.3, 4.2)]


class TestLanczosTable:
    @pytest.mark.parametrize("z, ref", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 24), (0.5, math.sqrt(math.pi))])
    def test_closed_forms(self, z, ref):
        assert rel(gamma(z), ref) <= 5e-15

    def test_complex_reference(self):
        assert rel(gamma(1.5 + 2j), 0.16591510893899095 + 0.14946347326641948j) <= 5e-15

    def test_table_shape(self):
        assert LANCZOS.gamma_shift == 607 / 128
        assert len(LANCZOS.coeffs) == 15


class TestGamma:
    def test_examples(self):
        assert gamma(1) == pytest.approx(1, rel=1e-15)
        assert gamma(5) == pytest.approx(24, rel=1e-14)
        assert abs(gamma(0.5) - 1.7724538509055160) <= 1e-15

    @pytest.mark.parametrize("z", [0, -1, -2, -30])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            gamma(z)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            gamma(200)

    @pytest.mark.parametrize("z", grid)
    def test_against_oracle(self, z):
        assert rel(gamma(z), complex(mp.gamma(mp.mpc(z)))) <= 1e-13

    @pytest.mark.parametrize("z", [z for z in grid if off_integer(z.real, z.imag)])
    def test_reflection(self, z):
        val = gamma(z) * gamma(1 - z) * sin_pi_reduced(z) / math.pi
        assert abs(val - 1) <= 1e-13

    @pytest.mark.parametrize("z", [z for z in grid if off_integer(z.real, z.imag) and abs(z.real) < 20])
    def test_recurrence(self, z):
        assert abs(gamma(z + 1) / (z * gamma(z)) - 1) <= 1e-13


class TestGammaInv:
    def test_zero_at_poles(self):
        assert gamma_inv(-3) == 0
        assert gamma_inv(0) == 0

    def test_one(self):
        assert gamma_inv(1) == pytest.approx(1, rel=1e-15)

    def test_complex(self):
        assert rel(gamma_inv(2.5 + 1j), 0.7036905931010079 - 0.6427178342636964j) <= 1e-14

    def test_large_argument_no_overflow(self):
        # Gamma(171.9) overflows a double, its reciprocal does not
        ref = complex(mp.rgamma(171.9))
        assert rel(gamma_inv(171.9), ref) <= 1e-12


class TestLogGamma:
    def test_examples(self):
        assert log_gamma(1) == pytest.approx(0, abs=1e-15)
        assert abs(log_gamma(11) - 15.104412573075516) <= 1e-13
        assert abs(log_gamma(0.5) - 0.5723649429247001) <= 1e-15

    @pytest.mark.parametrize("z", grid)
    def test_consistent_with_gamma(self, z):
        assert rel(complex(mp.exp(log_gamma(z))), complex(mp.gamma(mp.mpc(z)))) <= 1e-13

    def test_continuity_in_right_half_plane(self):
        # no 2 pi jumps along a path crossing Re z = 1/2 at large imaginary part
        prev = log_gamma(0.05 + 30j)
        for k in range(1, 200):
            cur = log_gamma(0.05 + 0.01 * k + 30j)
            assert abs(cur - prev) < 0.2
            prev = cur

    def test_pole(self):
        with pytest.raises(PoleError):
            log_gamma(-4)


def digits_for(eps):
    return 40 + max(0, -int(math.log10(abs(eps))))


def h_oracle(z, eps):
    with mp.workdps(digits_for(eps)):
        zm, em = mp.mpc(z), mp.mpc(eps)
        return complex((mp.gamma(zm + em) / mp.gamma(zm) - 1) / em)


def g_oracle(z, eps):
    with mp.workdps(digits_for(eps)):
        zm, em = mp.mpc(z), mp.mpc(eps)
        return complex((mp.rgamma(zm) - mp.rgamma(zm + em)) / em)


class TestHEps:
    def test_digamma_at_one(self):
        assert abs(gamma_ratio_diff_small_eps(1, 0) - (-0.5772156649015329)) <= 1e-15

    def test_positive_real(self):
        assert rel(gamma_ratio_diff_small_eps(2, 0.05), 0.44358957681828853) <= 1e-12

    def test_negative_real(self):
        assert rel(gamma_ratio_diff_small_eps(-0.3, 1e-9), 2.113309788841018) <= 1e-10

    def test_large_eps_rejected(self):
        with pytest.raises(DomainError):
            gamma_ratio_diff_small_eps(1, 0.2)

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            gamma_ratio_diff_small_eps(-2, 1e-3)

    @pytest.mark.parametrize("z", [z for z in grid if off_integer(z.real, z.imag)])
    def test_h0_is_digamma(self, z):
        assert rel(gamma_ratio_diff_small_eps(z, 0), complex(mp.digamma(mp.mpc(z)))) <= 1e-13

    @pytest.mark.parametrize("z", [0.3 + 0.1j, -2.7 + 0.4j, 4.1 - 2j, -0.5])
    def test_continuity_in_eps(self, z):
        h0 = gamma_ratio_diff_small_eps(z, 0)
        for eps in (1e-9, -3e-9 + 1e-9j, 1e-12j):
            assert abs(gamma_ratio_diff_small_eps(z, eps) - h0) <= 1e3 * abs(eps) * max(1, abs(h0)) + 1e-13 * abs(h0)

    @settings(max_examples=300, deadline=None)
    @given(
        st.floats(-8, 8),
        st.floats(-5, 5),
        st.floats(-0.1, 0.1),
        st.floats(-0.1, 0.1),
    )
    def test_against_oracle(self, x, y, ex, ey):
        z, eps = complex(x, y), complex(ex, ey)
        if eps == 0 or not off_integer(x, y) or not off_integer((z + eps).real, (z + eps).imag):
            return
        ref = h_oracle(z, eps)
        assert abs(gamma_ratio_diff_small_eps(z, eps) - ref) <= 1e-12 * abs(ref) + 1e-12


class TestGEps:
    def test_integer_limit(self):
        assert gamma_inv_diff_eps(-2, 0) == -2

    def test_unit(self):
        assert abs(gamma_inv_diff_eps(1, 1)) <= 1e-15

    def test_tiny_eps(self):
        assert rel(gamma_inv_diff_eps(0.7 + 0.2j, 1e-11), -0.972496552928365 + 0.21407846096015604j) <= 1e-9

    def test_exact_pole_endpoint(self):
        # 2**-13 keeps -3 + eps exact in floating point
        eps = 2.0**-13
        assert rel(gamma_inv_diff_eps(-3, eps), g_oracle(-3, eps)) <= 1e-13
        assert rel(gamma_inv_diff_eps(-3 - eps, eps), g_oracle(-3 - eps, eps)) <= 1e-13

    @settings(max_examples=400, deadline=None)
    @given(
        st.floats(-8, 8),
        st.floats(-5, 5),
        st.floats(-0.1, 0.1),
        st.floats(-0.1, 0.1),
    )
    def test_definitional_identity(self, x, y, ex, ey):
        z, eps = complex(x, y), complex(ex, ey)
        if max(abs(ex), abs(ey)) <= 1e-300:
            return
        with mp.workdps(digits_for(eps)):
            zm, em = mp.mpc(x, y), mp.mpc(ex, ey)
            rhs = mp.rgamma(zm) - mp.rgamma(zm + em)
            scale = max(abs(mp.rgamma(zm)), abs(mp.rgamma(zm + em)))
        assert abs(eps * gamma_inv_diff_eps(z, eps) - complex(rhs)) <= 1e-12 * float(scale) + 1e-300

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(-4, 4),
        st.floats(-3, 3),
        st.floats(0.08, 0.1),
        st.floats(-1, 1),
        st.booleans(),
    )
    def test_branch_agreement(self, x, y, size, frac, real_dominant):
        z = complex(x, y)
        eps = complex(size, frac * size) if real_dominant else complex(frac * size, size)
        if not off_integer(x, y) or not off_integer((z + eps).real, (z + eps).imag):
            return
        small_path = gamma_ratio_diff_small_eps(z, eps) * gamma_inv(z + eps)
        direct = (gamma_inv(z) - gamma_inv(z + eps)) / eps
        assert abs(small_path - direct) <= 1e-11 * abs(direct)


class TestASumInit:
    def test_integer_limits(self):
        assert a_sum_init(1, 0) == -1
        assert a_sum_init(3, 0) == -2

    def test_small_eps(self):
        assert rel(a_sum_init(2, 1e-9), 1.0000000004227843) <= 1e-10

    @pytest.mark.parametrize("m, eps", [(1, 0.3), (4, -0.2 + 0.1j), (7, 1e-6j)])
    def test_against_oracle(self, m, eps):
        ref = 1 / (mp.mpc(eps) * mp.gamma(1 - m - mp.mpc(eps)))
        assert rel(a_sum_init(m, eps), complex(ref)) <= 1e-13

    def test_log_variant_beyond_overflow(self):
        m, eps = 200, 0.01 + 0.02j
        ref = mp.log(1 / (mp.mpc(eps) * mp.gamma(1 - m - mp.mpc(eps))))
        got = log_a_sum_init(m, eps)
        assert abs(got.real - float(ref.real)) <= 1e-12 * abs(float(ref.real))
        assert abs(mp.exp(1j * (got.imag - ref.imag)) - 1) <= 1e-12

    def test_m_zero_rejected(self):
        with pytest.raises(DomainError):
            a_sum_init(0, 0.1)
