"""One-variable residue currents: Laurent data, delta-operator constants,
contour and principal-value quadrature."""

import math
from fractions import Fraction

import numpy as np
import pytest

from residuum.bump import BumpFunction, embed_holomorphic
from residuum.dim1 import (
    apply_delta_current,
    contour_residue_numeric,
    laurent_parts,
    residue_current_1d,
    residue_pairing_1d,
    vp_1d,
)
from residuum.errors import IrrationalPole
from residuum.forms import TestForm
from residuum.polynomials import MultiPoly
from residuum.quadrature import QuadratureConfig
from residuum.ratfn import RatFn
from residuum.scalars import GaussianRational

Z = MultiPoly.variable(1, 0)
ONE = MultiPoly.const(1, 1)


def bump_poly(*exps_coeffs, radius=Fraction(1)):
    """Bump with polynomial part sum c * z^a zbar^b given as ((a, b), re, im)."""
    terms = {}
    for (a, b), re, im in exps_coeffs:
        terms[(a, b)] = GaussianRational(re, im)
    return BumpFunction.from_poly(1, radius, MultiPoly(2, terms))


# nonzero holomorphic derivatives at 0 through order 4: the radial cutoff
# contributes none, so the z^j coefficients carry them.  Radius 2 keeps the
# smallest contour comfortably above the double-precision cancellation floor.
GENERIC_BUMP = bump_poly(
    ((0, 0), 1, 0), ((1, 0), Fraction(1, 2), 0), ((2, 0), Fraction(1, 5), 0),
    ((3, 0), Fraction(1, 7), 0), ((4, 0), Fraction(1, 11), 0),
    ((0, 1), 0, Fraction(1, 3)), ((2, 1), Fraction(-1, 4), 0),
    radius=Fraction(2))


class TestLaurentParts:
    def test_read_off(self):
        # g = 1/z^2 + 3/z + 5
        g = RatFn(5 * Z ** 2 + 3 * Z + ONE, Z ** 2)
        (part,) = laurent_parts(g)
        assert part.pole == GaussianRational(0)
        assert part.coeffs == (GaussianRational(3), GaussianRational(1))

    def test_two_simple_poles(self):
        g = RatFn(ONE, Z * (Z - ONE))
        parts = laurent_parts(g)
        assert [(p.pole, p.coeffs) for p in parts] == [
            (GaussianRational(0), (GaussianRational(-1),)),
            (GaussianRational(1), (GaussianRational(1),)),
        ]

    def test_polynomial_input(self):
        assert laurent_parts(RatFn(Z ** 3 + ONE)) == []

    def test_gaussian_pole(self):
        # pole at i with multiplicity 2
        lin = Z - MultiPoly.const(1, GaussianRational(0, 1))
        g = RatFn(ONE, lin ** 2)
        (part,) = laurent_parts(g)
        assert part.pole == GaussianRational(0, 1)
        assert part.coeffs == (GaussianRational(0), GaussianRational(1))

    def test_irrational_pole(self):
        with pytest.raises(IrrationalPole):
            laurent_parts(RatFn(ONE, Z ** 2 - 2 * ONE))

    def test_principal_parts_recombine(self):
        g = RatFn(Z + 7 * ONE, (Z ** 2) * (Z - ONE) * (2 * Z + ONE))
        parts = laurent_parts(g)
        total = RatFn.zero(1)
        for p in parts:
            total = total + p.as_ratfn()
        assert (g - total).is_polynomial()


class TestDeltaCurrents:
    def test_simple_residue_tag(self):
        (cur,) = residue_current_1d(laurent_parts(RatFn(ONE, Z)))
        assert cur.coeffs[0].rational == GaussianRational(1)
        assert cur.coeffs[0].two_pi_i

    def test_constants_from_contour_oracle(self):
        # b_{l-1} = 2 pi i / (l-1)!  for g = 1/z^l, pinned numerically
        phi = GENERIC_BUMP
        for l in range(1, 6):
            g = RatFn(ONE, Z ** l)
            oracle = contour_residue_numeric(g, phi).value
            d = phi
            for _ in range(l - 1):
                d = d.dz(0)
            expect = 2j * math.pi / math.factorial(l - 1) * complex(
                d.eval_numeric(np.array([0j])))
            assert oracle == pytest.approx(expect, rel=1e-8)
            via_current = residue_pairing_1d(g, phi)
            assert via_current == pytest.approx(expect, rel=1e-12, abs=1e-15)

    def test_apply_examples(self):
        phi = GENERIC_BUMP
        (cur,) = residue_current_1d(laurent_parts(RatFn(ONE, Z)))
        val = apply_delta_current(cur, phi)
        phi0 = complex(phi.eval_numeric(np.array([0j])))
        assert val == pytest.approx(2j * math.pi * phi0, rel=1e-12)
        zero_cur = residue_current_1d(laurent_parts(RatFn(ONE, Z)))[0]
        zero_cur = type(zero_cur)(zero_cur.pole, ())
        assert apply_delta_current(zero_cur, phi) == 0j

    def test_linearity(self):
        phi = GENERIC_BUMP
        g1 = RatFn(ONE, Z ** 2)
        g2 = RatFn(2 * Z + ONE, Z * (Z - ONE))
        lhs = residue_pairing_1d(g1 + g2, phi)
        rhs = residue_pairing_1d(g1, phi) + residue_pairing_1d(g2, phi)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestContourOracle:
    def test_holomorphic_gives_zero(self):
        res = contour_residue_numeric(RatFn(Z ** 2 + ONE), GENERIC_BUMP)
        assert abs(res.value) < 1e-12

    def test_third_order_pole(self):
        phi = GENERIC_BUMP
        g = RatFn(ONE, Z ** 3)
        d2 = phi.dz(0).dz(0)
        expect = (2j * math.pi / 2.0) * complex(d2.eval_numeric(np.array([0j])))
        assert contour_residue_numeric(g, phi).value == pytest.approx(expect, rel=1e-8)

    def test_translation_covariance(self):
        a = GaussianRational(Fraction(1, 2), Fraction(1, 3))
        g = RatFn(ONE + Z, Z ** 2)
        g_shift = RatFn(g.num.shift_var(0, -a), g.den.shift_var(0, -a))
        phi = GENERIC_BUMP
        phi_shift = phi.translate((a,))
        v0 = residue_pairing_1d(g, phi)
        v1 = residue_pairing_1d(g_shift, phi_shift)
        assert v1 == pytest.approx(v0, rel=1e-10)
        c0 = contour_residue_numeric(g, phi).value
        c1 = contour_residue_numeric(g_shift, phi_shift, center=complex(a)).value
        assert c1 == pytest.approx(c0, rel=1e-10)


class TestVp:
    def test_against_adaptive_2d_quadrature(self):
        # g = 1/z, psi = zbar * bump dzbar: the integrand (zbar/z) chi is bounded
        from scipy.integrate import dblquad

        chi = bump_poly(((0, 1), 1, 0), ((1, 1), Fraction(1, 5), 0))
        psi = TestForm(1, (0, 1), {((), (0,)): chi})
        g = RatFn(ONE, Z)
        got = vp_1d(g, psi).value

        def integrand(y, x, piece):
            z = complex(x, y)
            if z == 0:
                return 0.0
            val = (1.0 / z) * complex(chi.eval_numeric(np.array([z]))) * (-2j)
            return val.real if piece == "re" else val.imag

        re, _ = dblquad(integrand, -1, 1, -1, 1, args=("re",), epsabs=1e-9)
        im, _ = dblquad(integrand, -1, 1, -1, 1, args=("im",), epsabs=1e-9)
        assert got == pytest.approx(complex(re, im), rel=1e-6, abs=1e-8)

    def test_holomorphic_table_constant(self):
        chi = bump_poly(((0, 1), 1, 0))
        psi = TestForm(1, (0, 1), {((), (0,)): chi})
        res = vp_1d(RatFn(Z), psi)
        assert res.note == "no poles"

    def test_double_pole_odd_symmetry(self):
        # psi odd under z -> -z pairs to zero against 1/z^2
        chi = bump_poly(((1, 0), 1, 0), ((0, 1), 1, 0))  # (z + zbar) * cutoff
        psi = TestForm(1, (0, 1), {((), (0,)): chi})
        res = vp_1d(RatFn(ONE, Z ** 2), psi)
        assert abs(res.value) < 1e-10

    def test_stokes_consistency(self):
        # Res[omega](phi) = + Vp[omega](d'' phi): the sign is forced by the
        # ccw contour convention and dz^dzbar = -2i dA
        for g in (RatFn(ONE, Z), RatFn(ONE, Z ** 2), RatFn(Z + ONE, Z ** 3)):
            phi = GENERIC_BUMP
            lhs = contour_residue_numeric(g, phi).value
            rhs = vp_1d(g, TestForm.function(phi).d_bar()).value
            assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-9)

    def test_vp_linearity_in_test_form(self):
        g = RatFn(ONE, Z)
        chi1 = bump_poly(((0, 1), 1, 0))
        chi2 = bump_poly(((1, 1), 0, 1))
        psi1 = TestForm(1, (0, 1), {((), (0,)): chi1})
        psi2 = TestForm(1, (0, 1), {((), (0,)): chi2})
        both = vp_1d(g, psi1 + psi2).value
        assert both == pytest.approx(vp_1d(g, psi1).value + vp_1d(g, psi2).value,
                                     rel=1e-9, abs=1e-12)
