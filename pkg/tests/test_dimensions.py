from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from unitsieve.dimensions import (
    FieldProfile,
    GeneratorProfile,
    biseries_pi,
    biseries_Z,
    compare_series,
    crossover,
    crossover_bigraded,
    decide_crossover,
    depth_one_factors,
    evertse_bound,
    ext_dim,
    factor_series,
    first_crossover_stream,
    hadian_check,
    series_pi,
    series_Z,
    z1_bound,
)


def count_monomials(factors, n):
    """Number of monomials of degree n in generators of the given degrees."""
    degs = [m for m, e in factors.items() for _ in range(e)]
    ways = [1] + [0] * n
    for d in degs:
        for i in range(d, n + 1):
            ways[i] += ways[i - d]
    return ways[n]


def test_factor_series_matches_partition_count():
    factors = {1: 2, 2: 1, 3: 1, 4: 1}
    s = factor_series(factors, 12)
    assert list(s.coefficients) == [count_monomials(factors, n) for n in range(13)]


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(1, 6), st.integers(0, 9), max_size=4))
def test_factor_series_handles_large_multiplicities(factors):
    s = factor_series(factors, 10)
    assert list(s.coefficients) == [count_monomials(factors, n) for n in range(11)]


def test_full_group_is_all_words():
    s = series_pi(GeneratorProfile.witt_profile(), 12)
    assert list(s.coefficients) == [2 ** n for n in range(13)]


def test_ext_dim_over_q():
    fp = FieldProfile(2)
    assert [ext_dim(n, fp) for n in range(1, 8)] == [2, 0, 1, 0, 1, 0, 1]
    assert ext_dim(0, fp) == 0


def _brute_bi(degrees, T, D):
    """Coefficients of prod 1/(1 - s^a t^b) by enumerating exponent vectors."""
    table = [[0] * (T + 1) for _ in range(D + 1)]
    bounds = [T // b for _, b in degrees]
    for exps in product(*(range(x + 1) for x in bounds)):
        n = sum(e * b for e, (_, b) in zip(exps, degrees))
        k = sum(e * a for e, (a, _) in zip(exps, degrees))
        if n <= T and k <= D:
            table[k][n] += 1
    return table


def test_biseries_matches_enumeration():
    k, T, D = 2, 7, 3
    pi = biseries_pi(k, T, max_depth=D)
    oracle = _brute_bi([(0, 1)] + [(1, m) for m in range(1, 2 * k + 1)], T, D)
    assert [list(r) for r in pi.table] == oracle
    fp = FieldProfile(2)
    z = biseries_Z(k, fp, T, max_depth=D)
    degs = [(0, 1)] * 2 + [(1, 1)] * 2 + [(1, 3)]
    assert [list(r) for r in z.table] == _brute_bi(degs, T, D)


def test_biseries_marginal_is_single_variable_series():
    pi = biseries_pi(3, 10)
    prof = GeneratorProfile.from_mapping({1: 2, **{m: 1 for m in range(2, 7)}})
    assert pi.marginal() == series_pi(prof, 10)


def test_depth_one_values():
    fp = FieldProfile(1)
    assert biseries_pi(2, 8, max_depth=1)[1, 4] == 4
    assert biseries_Z(2, fp, 8, max_depth=1)[1, 4] == 2
    c = crossover_bigraded(2, fp, depth=1)
    assert (c.found, c.w, c.N) == (True, 2, 2)


def test_crossover_minimality():
    prof = GeneratorProfile.depth_one(3)
    fp = FieldProfile(1)
    c = crossover(prof, fp, 30)
    d, z = series_pi(prof, 30), series_Z(prof, fp, 30)
    assert c.found and d[c.w] > z[c.w] and c.N == z[c.w] + 1
    assert all(d[n] <= z[n] for n in range(c.w))


def test_no_crossover_is_reported_with_bound():
    c = compare_series(factor_series({1: 1}, 5), factor_series({1: 2}, 5))
    assert not c.found and c.T == 5
    assert c.to_json() == {"found": False, "none_below": 5}


def test_decide_crossover_certificates():
    v = decide_crossover({2: 1}, {1: 1})
    assert v.exists is False
    v = decide_crossover({1: 2}, {1: 1})
    assert v.exists is True and v.witness.w == 1
    # same count, no divisibility match: 1/(1-t^2)(1-t^2) vs 1/(1-t^3)(1-t)
    v = decide_crossover({2: 2}, {1: 1, 3: 1}, search_T=20)
    assert v.exists is True and v.witness is not None


@pytest.mark.parametrize("s", [1, 2, 3])
def test_decision_agrees_with_truncated_search(s):
    fp = FieldProfile(s)
    for k in range(1, 6):
        d, c = depth_one_factors(k, fp)
        v = decide_crossover(d, c, search_T=200)
        if v.exists is False:
            assert not compare_series(factor_series(d, 200), factor_series(c, 200)).found
        elif v.witness is not None:
            w = v.witness.w
            assert factor_series(d, w)[w] > factor_series(c, w)[w]


def test_cross_check_bounds():
    prof = GeneratorProfile.depth_one(2)
    assert z1_bound(prof, FieldProfile(1)) == 2 + 1
    assert hadian_check(prof, FieldProfile(1))
    assert not hadian_check(prof, FieldProfile(3))
    assert evertse_bound(0) == 21 and evertse_bound(1) == 1029
    with pytest.raises(ValueError):
        z1_bound(GeneratorProfile.witt_profile(), FieldProfile(1))
    with pytest.raises(ValueError):
        FieldProfile(-1)


def test_streaming_search_agrees_with_truncated_series():
    for s, k in [(2, 3), (2, 4), (3, 7), (3, 5)]:
        d, c = depth_one_factors(k, FieldProfile(s))
        a = first_crossover_stream(d, c, 40000)
        b = compare_series(factor_series(d, 40000), factor_series(c, 40000))
        assert (a.found, a.w, a.N) == (b.found, b.w, b.N)
    d, c = depth_one_factors(2, FieldProfile(2))
    assert not first_crossover_stream(d, c, 2000).found


@pytest.mark.slow
def test_four_seven_crossover_witness():
    # (s, k) = (4, 7) is the one case beyond the truncated search used elsewhere
    d, c = depth_one_factors(7, FieldProfile(4))
    cr = first_crossover_stream(d, c, 10 ** 7)
    assert cr.found and cr.w == 9031302 and cr.d_w > cr.c_w
