from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unitsieve.core_arith import ParamPoly
from unitsieve.errors import DomainError
from unitsieve.period_ring import TensorPeriod, UPeriod, gen_log, reduced_coproduct
from unitsieve.sieve import enumerate_s_units
from unitsieve.virtual_units import (
    Divisor,
    cocycle_defect,
    cocycle_system,
    in_span,
    li_of_divisor,
    same_span,
    solve_virtual,
    unramified_space,
    zagier_condition,
)

F = Fraction
D7 = [F(1, 9), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(8, 9)]
L2 = UPeriod.gen(gen_log(2))

XI = {
    0: "[1/2]",
    1: "[1/9] - 2[1/3]",
    2: "[2/3] - [1/3]",
    3: "[3/4] + [1/3] + [1/4]",
    4: "[8/9] - 2[1/3]",
    5: "6[1/3] - [1/9] - 6[2/3] + [8/9]",
    6: "-6[1/2] + [1/9] - 6[1/3] + 3/2[1/4] - 3[2/3]",
    7: "-3[1/3] - 6[1/2] - 6[2/3] + 3/2[3/4] + [8/9]",
}
XI = {k: Divisor.parse(v) for k, v in XI.items()}
VIRTUAL_POINT = Divisor.parse(
    "-6/7[1/2] + 15/7[1/3] - 9/7[1/4] - 6/7[1/9] - 24/7[2/3] + 3/2[3/4] + [8/9]")


def test_divisor_parsing_and_arithmetic():
    d = Divisor.parse("2[1/2] - [1/2] + 0[1/3]")
    assert d == Divisor.point(F(1, 2))
    assert d.support == (F(1, 2),)
    assert (XI[2] * 3 - XI[2] * 3) == Divisor()
    assert XI[5].degree() == 0
    with pytest.raises(DomainError):
        Divisor.point(1)
    with pytest.raises(ValueError):
        Divisor.parse("[1/2")


def test_symbols_of_a_divisor():
    assert li_of_divisor(0, XI[5]) == -3 * L2
    assert li_of_divisor(1, XI[5]) == -3 * L2


def test_m1_space_for_two():
    basis = unramified_space(D7, 1, {2})
    assert len(basis) == 5
    assert same_span(basis, [XI[k] for k in range(5)])


def test_m2_space_for_two():
    basis = unramified_space(D7, 2, {2})
    assert len(basis) == 2
    assert same_span(basis, [XI[0], XI[5]])
    assert basis[0] == XI[0]


def test_m2_space_for_three():
    basis = unramified_space(D7, 2, {3})
    assert same_span(basis, [XI[6], XI[7]])


def test_space_is_monotone_in_m():
    for S in ({2}, {3}, {2, 3}):
        big = unramified_space(D7, 1, S)
        for x in unramified_space(D7, 2, S):
            assert in_span(big, x)
        for x in unramified_space(D7, 3, S):
            assert in_span(unramified_space(D7, 2, S), x)


def test_space_is_everything_when_all_primes_allowed():
    assert len(unramified_space(D7, 2, {2, 3})) == len(D7)


def test_basis_vectors_are_unramified():
    from unitsieve.period_ring import unramified_outside
    for x in unramified_space(D7, 2, {3}):
        for k in (0, 1, 2):
            assert unramified_outside(li_of_divisor(k, x), {3})


def test_conic_for_two():
    system = cocycle_system([XI[0], XI[5]], 2, {2})
    t1, t2 = ParamPoly.gens("t1", "t2")
    assert system.equations == (t1 ** 2 - 9 * t2 ** 2 - t1,)
    assert str(system.equations[0]) == "t1^2 - 9*t2^2 - t1"


def test_family_recovers_the_genuine_point():
    sol = solve_virtual([XI[0], XI[5]], 2, {2})
    assert sol.status == "family"
    q = sol.system.equations[0]
    assert sol.family.compose(q) == 0
    assert sol.family_divisor(0) == XI[0]
    for a in (F(1, 2), F(5), F(-2, 7)):
        assert sol.system.is_solution(sol.family.at(a))
        assert not any(cocycle_defect(2, sol.family_divisor(a)).terms)


def test_virtual_point_for_three():
    system = cocycle_system([XI[6], XI[7]], 2, {3})
    assert system.is_solution((F(-6, 7), 1))
    assert system.divisor((F(-6, 7), 1)) == VIRTUAL_POINT
    assert not any(cocycle_defect(2, VIRTUAL_POINT).terms)
    assert enumerate_s_units([3], 6).points == ()
    found = solve_virtual([XI[6], XI[7]], 2, {3})
    assert (F(-6, 7), F(1)) in found.solutions


def test_genuine_s_units_are_cocycles():
    for x in enumerate_s_units([2, 3], 6):
        for m in (2, 3):
            assert not any(cocycle_defect(m, Divisor.point(x)).terms)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=2, max_size=2))
def test_cocycle_system_agrees_with_direct_defect(values):
    system = cocycle_system([XI[0], XI[5]], 2, {2})
    direct = cocycle_defect(2, system.divisor(values))
    assert system.is_solution(values) == (not direct.terms)


def test_zagier_condition():
    assert zagier_condition(XI[5], 2)
    assert not zagier_condition(XI[0], 2)
    assert reduced_coproduct(li_of_divisor(2, XI[0])) == TensorPeriod.pure(-L2, L2)


def test_degenerate_inputs():
    assert unramified_space([], 2, {2}) == []
    assert solve_virtual([], 2, {2}).status == "zero only"
    with pytest.raises(DomainError):
        unramified_space([F(1)], 1, {2})
