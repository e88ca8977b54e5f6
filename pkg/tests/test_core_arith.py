from fractions import Fraction
from itertools import permutations
import random

import pytest
from hypothesis import given, settings, strategies as st

from unitsieve.core_arith import (
    ParamPoly,
    det,
    factorize,
    format_rational,
    nullspace,
    param_solve_conic,
    parse_rational,
    permutation_sign,
    rank,
    rref,
)
from unitsieve.errors import DomainError, UnsupportedError

# trial division is sized for small-height inputs
rationals = st.fractions(min_value=-10**4, max_value=10**4, max_denominator=10**3)
nonzero = rationals.filter(lambda x: x != 0)


def test_rational_round_trip():
    for text in ["3", "-4/9", "8/9", "0"]:
        assert format_rational(parse_rational(text)) == text
    assert parse_rational("6/4") == Fraction(3, 2)
    with pytest.raises(ValueError):
        parse_rational("1/x")


def test_factorize_examples():
    f = factorize(1)
    assert (f.sign, f.exponents) == (1, ())
    f = factorize(Fraction(-4, 9))
    assert (f.sign, f.as_dict()) == (-1, {2: 2, 3: -2})
    f = factorize(Fraction(8, 9))
    assert (f.sign, f.as_dict()) == (1, {2: 3, 3: -2})
    assert f.valuation(5) == 0
    assert f.is_unit_outside({2, 3}) and not f.is_unit_outside({2})


def test_factorize_zero_is_domain_error():
    with pytest.raises(DomainError):
        factorize(0)


@settings(max_examples=500, deadline=None)
@given(nonzero, nonzero)
def test_factorization_is_multiplicative(x, y):
    assert factorize(x) * factorize(y) == factorize(x * y)
    assert factorize(x).value() == x


def test_param_poly_printing_and_ring_ops():
    t1, t2 = ParamPoly.gens("t1", "t2")
    q = t1 ** 2 - 9 * t2 ** 2 - t1
    assert str(q) == "t1^2 - 9*t2^2 - t1"
    assert (q - q) == 0
    assert (t1 + t2) ** 2 == t1 ** 2 + 2 * t1 * t2 + t2 ** 2
    assert q.degree() == 2
    assert q.evaluate({"t1": 1, "t2": 0}) == 0
    assert (-2 * q).primitive() == q
    vec, const = (3 * t1 - t2 / 2 + 1).linear_coefficients(["t1", "t2"])
    assert vec == [3, Fraction(-1, 2)] and const == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.integers(-4, 4), st.integers(-4, 4))
def test_param_poly_evaluation_is_a_ring_map(a, b, u, v):
    x, y = ParamPoly.gens("x", "y")
    p = a[0] * x ** 2 + a[1] * x * y + a[2]
    q = b[0] * y + b[1] * x + b[2]
    env = {"x": u, "y": v}
    assert (p * q).evaluate(env) == p.evaluate(env) * q.evaluate(env)
    assert (p + q).evaluate(env) == p.evaluate(env) + q.evaluate(env)


def test_nullspace_examples():
    assert nullspace([[1, 0], [0, 1]]) == []
    basis = nullspace([[0, 0, 0]])
    assert basis == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def _oracle_rank(M):
    """Rank by fraction-free elimination on a copy."""
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_rank_nullity(rows, cols, data):
    M = [[data.draw(st.integers(-3, 3)) for _ in range(cols)] for _ in range(rows)]
    basis = nullspace(M)
    assert len(basis) + _oracle_rank(M) == cols
    assert rank(M) == _oracle_rank(M)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        lead = next(x for x in v if x != 0)
        assert lead == 1
    if basis:
        assert rank(basis) == len(basis)


def test_rref_is_canonical():
    R, pivots = rref([[2, 4, 6], [1, 2, 4]])
    assert pivots == [0, 2]
    assert R[0] == [1, 2, 0] and R[1] == [0, 0, 1]


def test_det_matches_leibniz_oracle():
    rng = random.Random(3)
    for n in range(1, 5):
        for _ in range(10):
            M = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
            total = Fraction(0)
            for perm in permutations(range(n)):
                term = Fraction(permutation_sign(perm))
                for i in range(n):
                    term *= M[i][perm[i]]
                total += term
            assert det(M) == total


def test_det_over_param_poly():
    a, = ParamPoly.gens("a")
    assert det([[a, 1], [1, a]]) == a ** 2 - 1


def test_circle_parametrization():
    t1, t2 = ParamPoly.gens("t1", "t2")
    q = t1 ** 2 + t2 ** 2 - 1
    fam = param_solve_conic(q, (1, 0))
    assert fam.compose(q) == 0
    assert fam.at(0) == (1, 0)
    for a in [Fraction(1, 2), Fraction(3), Fraction(-2, 7)]:
        assert fam.at(a) == ((1 - a * a) / (1 + a * a), 2 * a / (1 + a * a))


def test_cocycle_conic_matches_reference_family_after_rescaling():
    t1, t2 = ParamPoly.gens("t1", "t2")
    q = t1 ** 2 - 9 * t2 ** 2 - t1
    fam = param_solve_conic(q, (1, 0))
    assert fam.compose(q) == 0
    assert fam.at(0) == (1, 0)
    for a in [Fraction(1, 2), Fraction(2), Fraction(-5, 3)]:
        assert fam.at(3 * a) == (1 / (1 - a * a), a / (3 * (a * a - 1)))


def test_conic_errors():
    t1, t2 = ParamPoly.gens("t1", "t2")
    with pytest.raises(UnsupportedError):
        param_solve_conic(t1 * t2, (0, 0))
    with pytest.raises(DomainError):
        param_solve_conic(t1 ** 2 + t2 ** 2 - 1, (1, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-4, 4), st.integers(-3, 3), st.integers(-3, 3))
def test_conic_family_composes_to_zero(a, b, c, d, e, x0, y0):
    t1, t2 = ParamPoly.gens("t1", "t2")
    q = a * t1 ** 2 + b * t1 * t2 + c * t2 ** 2 + d * t1 + e * t2
    f = q.evaluate({"t1": x0, "t2": y0})
    q = q - f  # force (x0, y0) onto the conic
    try:
        fam = param_solve_conic(q, (x0, y0))
    except UnsupportedError:
        return
    assert fam.compose(q) == 0
