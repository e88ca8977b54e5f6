from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from unitsieve.core_arith import ParamPoly
from unitsieve.errors import DomainError, UnsupportedError
from unitsieve.period_ring import (
    Point,
    TensorPeriod,
    UPeriod,
    coproduct,
    coproduct_left,
    coproduct_right,
    gen_li,
    gen_log,
    gen_zeta,
    goncharov_D,
    infinitesimal_coaction,
    li_u,
    log_u,
    nu,
    project_indecomposables,
    ramification_conditions,
    reduced_coproduct,
    sigma,
    unramified_outside,
)

L2, L3, L5 = (UPeriod.gen(gen_log(p)) for p in (2, 3, 5))
Z3 = UPeriod.gen(gen_zeta(3))
ONE = UPeriod.const(1)

POOL = [L2, L3, L5, Z3, li_u(2, Fraction(1, 3)), li_u(3, -1), li_u(2, Fraction(2, 5)),
        li_u(4, Fraction(1, 2)), li_u(1, Fraction(3, 4))]

elements = st.lists(
    st.tuples(st.integers(-3, 3), st.lists(st.sampled_from(range(len(POOL))), max_size=3)),
    max_size=3,
).map(lambda terms: sum(
    (c * _prod(POOL[i] for i in idx) for c, idx in terms), UPeriod()))


def _prod(items):
    out = ONE
    for x in items:
        out = out * x
    return out


def test_weight_one_resolution():
    assert log_u(Fraction(-4, 9)) == 2 * L2 - 2 * L3
    assert li_u(1, -1) == -L2
    assert li_u(3, Point.tangential(-2)) == L2 ** 3 / 6
    assert li_u(2, Point.base()) == UPeriod()
    assert li_u(0, 5) == ONE


def test_points_reject_cusps():
    for bad in (0, 1):
        with pytest.raises(DomainError):
            Point.finite(bad)
    with pytest.raises(DomainError):
        Point.tangential(0)
    assert str(Point.parse("tinf:-2")) == "tinf:-2"


def test_polylog_coproduct_by_hand():
    x = Fraction(1, 2)
    li3 = li_u(3, x)
    expected = (TensorPeriod.pure(ONE, li3) + TensorPeriod.pure(li3, ONE)
                - TensorPeriod.pure(li_u(2, x), L2)
                + TensorPeriod.pure(L2, L2 ** 2 / 2))
    assert coproduct(li3) == expected


def test_reduced_coproduct_example():
    t = reduced_coproduct(li_u(2, Fraction(1, 3)))
    assert t == TensorPeriod.pure(L2, L3) - TensorPeriod.pure(L3, L3)


@settings(max_examples=60, deadline=None)
@given(elements)
def test_coassociativity(xi):
    D = coproduct(xi)
    assert coproduct_left(D) == coproduct_right(D)


@settings(max_examples=60, deadline=None)
@given(elements)
def test_counit(xi):
    D = coproduct(xi)
    assert D.right_slice(()) == xi
    assert UPeriod({b: c for (a, b), c in D.terms.items() if a == ()}) == xi


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_coproduct_is_an_algebra_map(a, b):
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_infinitesimal_coaction_is_a_derivation(a, b):
    lhs = infinitesimal_coaction(a * b)
    rhs = TensorPeriod.pure(a, ONE) * infinitesimal_coaction(b) \
        + TensorPeriod.pure(b, ONE) * infinitesimal_coaction(a)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(elements)
def test_infinitesimal_coaction_is_projected_coproduct(xi):
    expected = coproduct(xi).map_right(project_indecomposables)
    assert infinitesimal_coaction(xi) == expected


def test_derivation_examples():
    assert nu(3, li_u(2, Fraction(1, 3))) == L2 - L3
    assert nu(3, li_u(2, Fraction(1, 2))) == UPeriod()
    assert nu(2, L2) == ONE
    assert sigma(3, Z3) == ONE
    assert sigma(3, Z3 * L2) == L2


def test_ramification():
    assert unramified_outside(li_u(2, Fraction(1, 2)), {2})
    assert not unramified_outside(li_u(2, Fraction(1, 3)), {2})
    assert unramified_outside(li_u(2, Fraction(1, 3)), {2, 3})
    # the L(3)-slice of Li_3(1/3) is Li_2(1/3), itself ramified at 3 when S={2}
    assert not unramified_outside(li_u(3, Fraction(1, 3)), {2})


def test_parametric_ramification_conditions_are_linear():
    a, b = ParamPoly.gens("a", "b")
    xi = li_u(2, Fraction(1, 3)) * a + li_u(2, Fraction(2, 3)) * b
    conds = unramified_outside(xi, {2})
    assert conds
    for c in conds:
        assert c.degree() == 1
        assert c.evaluate({"a": 0, "b": 0}) == 0
    assert all(c == 0 for c in ramification_conditions(xi.substitute({"a": 0, "b": 0}), {2}))


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("x", ["1/3", "-1", "2/5", "9/8"])
def test_goncharov_reproduces_polylog_coaction(n, x):
    assert goncharov_D("1" + "0" * (n - 1), x) == infinitesimal_coaction(li_u(n, x))


@pytest.mark.parametrize("n", range(1, 6))
def test_goncharov_on_constant_words(n):
    x = Fraction(2, 5)
    assert goncharov_D("0" * n, x) == infinitesimal_coaction(log_u(x) ** n / factorial(n))
    assert goncharov_D("1" * n, x) == infinitesimal_coaction(li_u(1, x) ** n / factorial(n))


def test_goncharov_at_tangential_points():
    assert goncharov_D("100", "tinf:-2") == infinitesimal_coaction(li_u(3, "tinf:-2"))
    assert not goncharov_D("10", "base")


def test_goncharov_rejects_bad_words():
    with pytest.raises(DomainError):
        goncharov_D("", "1/2")
    with pytest.raises(DomainError):
        goncharov_D("12", "1/2")


def test_unknown_generator_has_no_coproduct():
    xi = UPeriod.gen(("I", Fraction(1, 2), "110", 0))
    with pytest.raises(UnsupportedError):
        coproduct(xi)


def test_json_is_sorted_and_stable():
    xi = li_u(2, Fraction(1, 3)) + L2 * L3
    assert xi.to_json() == (L3 * L2 + li_u(2, Fraction(1, 3))).to_json()
    assert str(reduced_coproduct(li_u(2, Fraction(1, 3)))) == "L(2) ⊗ L(3) - L(3) ⊗ L(3)"
