from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracle
from complexforge.de_rham import (
    HomotopyCenter, div_lift, grad_lift, poincare_curl_potential,
    poincare_div_potential, poincare_grad_potential, rot_lift, rowwise_lift,
)
from complexforge.errors import NotClosed, NotSolenoidal
from complexforge.exact_poly import (
    FieldSampler, PolyScalarField as S, PolyTensorField as Tn, PolyVectorField as V,
    div, grad, rot, spn, tensor_div, tensor_rot,
)
from strategies import scalars, vectors

x1, x2, x3 = S.var(0), S.var(1), S.var(2)
X = V.position()
e = [V.unit(i) for i in range(3)]


class TestGradPotential:
    def test_constant(self):
        assert poincare_grad_potential(e[0]) == x1

    def test_gradient_of_product(self):
        assert poincare_grad_potential(V([x2, x1, 0])) == x1 * x2

    def test_not_closed(self):
        with pytest.raises(NotClosed) as info:
            poincare_grad_potential(V([-x2, x1, 0]))
        assert info.value.residual == V([0, 0, 2])

    @settings(max_examples=30, deadline=None)
    @given(scalars(max_degree=4))
    def test_recovers_up_to_value_at_centre(self, u):
        assert poincare_grad_potential(grad(u)) == u - u((0, 0, 0))

    @settings(max_examples=15, deadline=None)
    @given(scalars(max_degree=3))
    def test_matches_homotopy_integral(self, u):
        v = grad(u)
        assert poincare_grad_potential(v) == oracle.from_sym(oracle.homotopy_grad(oracle.to_sym(v)))

    def test_off_origin_centre(self):
        u = x1 ** 2 * x3 + x2
        c = HomotopyCenter((1, Fraction(1, 2), -2))
        p = poincare_grad_potential(grad(u), c)
        assert grad(p) == grad(u)
        assert p((1, Fraction(1, 2), -2)) == 0


class TestCurlPotential:
    def test_constant(self):
        assert poincare_curl_potential(e[2]) == V([-x2 / 2, x1 / 2, 0])
        assert rot(poincare_curl_potential(e[2])) == e[2]

    def test_zero(self):
        assert poincare_curl_potential(V.zero()).is_zero()

    def test_not_solenoidal(self):
        with pytest.raises(NotSolenoidal):
            poincare_curl_potential(V([x1, 0, 0]))

    @settings(max_examples=20, deadline=None)
    @given(vectors(max_degree=4))
    def test_round_trip(self, a):
        w = rot(a)
        assert rot(poincare_curl_potential(w)) == w

    @settings(max_examples=10, deadline=None)
    @given(vectors(max_degree=3))
    def test_matches_homotopy_integral(self, a):
        w = rot(a)
        assert poincare_curl_potential(w) == oracle.vec_from_sym(oracle.homotopy_curl(oracle.to_sym(w)))

    def test_off_origin_round_trip(self):
        w = rot(FieldSampler(seed=1).vector())
        assert rot(poincare_curl_potential(w, HomotopyCenter((2, -1, 3)))) == w

    def test_raises_degree_by_one(self):
        w = rot(V([x2 ** 3, x3 * x1, 0]))
        assert poincare_curl_potential(w).degree() == w.degree() + 1


class TestDivPotential:
    def test_constant(self):
        assert poincare_div_potential(S.const(1)) == X / 3

    def test_linear(self):
        assert poincare_div_potential(x1) == X * x1 / 4

    def test_zero(self):
        assert poincare_div_potential(S.zero()).is_zero()

    @settings(max_examples=20, deadline=None)
    @given(scalars(max_degree=4))
    def test_round_trip(self, f):
        assert div(poincare_div_potential(f)) == f
        assert div(poincare_div_potential(f, HomotopyCenter((1, 1, -1)))) == f

    @settings(max_examples=10, deadline=None)
    @given(scalars(max_degree=3))
    def test_matches_homotopy_integral(self, f):
        assert poincare_div_potential(f) == oracle.vec_from_sym(oracle.homotopy_div(oracle.to_sym(f)))


class TestRowwiseLifts:
    def test_rot_lift_identity(self):
        P = rot_lift(Tn.identity())
        assert P == spn(X) / 2
        assert tensor_rot(P) == Tn.identity()

    def test_grad_lift_zero(self):
        assert grad_lift(Tn.zero()).is_zero()

    def test_div_lift_unit(self):
        assert div_lift(e[0]) == e[0].outer(X) / 3
        assert tensor_div(div_lift(e[0])) == e[0]

    def test_row_index_reported(self):
        G = Tn.from_rows([grad(x1), V([-x2, x1, 0]), V.zero()])
        with pytest.raises(NotClosed) as info:
            rowwise_lift("grad", G)
        assert info.value.row == 1
        N = Tn.from_rows([V.zero(), V.zero(), V([x1, 0, 0])])
        with pytest.raises(NotSolenoidal) as info:
            rowwise_lift("rot", N)
        assert info.value.row == 2

    def test_dispatch(self):
        assert rowwise_lift("div", e[1]) == div_lift(e[1])
        with pytest.raises(ValueError):
            rowwise_lift("curl", e[1])
