from collections import Counter
from itertools import combinations, combinations_with_replacement, product

import pytest

from bhsidon.classical import is_bhg
from bhsidon.errors import CeilingExceeded, InvalidInput
from bhsidon.linear_forms import LinearForm, system_profile
from bhsidon.oracle import exact_classical, exact_system, oracle_vs_construction


def naive_classical(n, h, g):
    best = 0
    for size in range(1, n + 1):
        ok = False
        for A in combinations(range(1, n + 1), size):
            counts = Counter(sum(t) for t in combinations_with_replacement(A, h))
            if max(counts.values()) <= g:
                ok = True
                break
        if not ok:
            break
        best = size
    return best


def naive_system(coeffs, n, g):
    best = 0
    pool = range(1, n + 1)
    for q in range(1, n + 1):
        found = any(
            max(Counter(coeffs[0] * a + coeffs[1] * b for a, b in product(A1, A2)).values()) <= g
            for A1 in combinations(pool, q) for A2 in combinations(pool, q))
        if not found:
            break
        best = q
    return best


@pytest.mark.parametrize("n,h,g,expected", [(7, 2, 1, 4), (3, 2, 1, 2), (1, 2, 1, 1), (1, 3, 2, 1)])
def test_exact_classical_examples(n, h, g, expected):
    res = exact_classical(n, h, g)
    assert res.exact_value == expected
    assert is_bhg(res.witness, h, g)


@pytest.mark.parametrize("n,h,g", [(n, 2, 1) for n in range(1, 13)] +
                         [(n, 2, 2) for n in range(1, 10)] + [(n, 3, 1) for n in range(1, 12)])
def test_exact_classical_matches_naive(n, h, g):
    assert exact_classical(n, h, g).exact_value == naive_classical(n, h, g)


@pytest.mark.parametrize("n", [10, 17, 25])
def test_search_order_invariance(n):
    assert exact_classical(n).exact_value == exact_classical(n, reverse=True).exact_value


def test_exact_classical_monotone():
    vals = [exact_classical(n, 2, 1).exact_value for n in range(1, 26)]
    assert vals == sorted(vals)
    for n in (5, 9, 14):
        assert exact_classical(n, 2, 1).exact_value <= exact_classical(n, 2, 2).exact_value


def test_exact_classical_ceilings():
    with pytest.raises(CeilingExceeded):
        exact_classical(41, 2)
    with pytest.raises(CeilingExceeded):
        exact_classical(21, 3)
    with pytest.raises(CeilingExceeded):
        exact_classical(5, 4)


def test_exact_system_examples():
    assert exact_system(LinearForm((1, 1)), 4, 1).exact_value == 2
    assert exact_system(LinearForm((1, 1)), 1, 1).exact_value == 1
    res = exact_system(LinearForm((1, 2)), 5, 1)
    assert res.exact_value >= 2
    assert res.exact_value == naive_system((1, 2), 5, 1)
    assert system_profile(LinearForm((1, 2)), _system(res.witness)).max_multiplicity == 1


def _system(pair):
    from bhsidon.linear_forms import SidonSystem
    return SidonSystem(pair)


@pytest.mark.parametrize("coeffs,n,g", [((1, 1), 5, 1), ((1, 1), 6, 2), ((1, 2), 6, 1),
                                        ((1, -1), 5, 1), ((2, 3), 5, 2), ((1, 5), 6, 1)])
def test_exact_system_matches_naive(coeffs, n, g):
    res = exact_system(LinearForm(coeffs), n, g)
    assert res.exact_value == naive_system(coeffs, n, g)
    assert system_profile(LinearForm(coeffs), _system(res.witness)).max_multiplicity <= g


def test_exact_system_limits():
    with pytest.raises(InvalidInput):
        exact_system(LinearForm((1, 1, 1)), 4)
    with pytest.raises(CeilingExceeded):
        exact_system(LinearForm((1, 1)), 16)


def test_oracle_vs_construction_examples():
    cmp_ = oracle_vs_construction(LinearForm((1, 1)), 7)
    assert (cmp_.classical_construction, cmp_.classical_oracle, cmp_.classical_ceiling) == (3, 4, 5)
    assert cmp_.construction <= cmp_.oracle <= cmp_.ceiling
    cmp_ = oracle_vs_construction(LinearForm((1, 1)), 1)
    assert cmp_.construction is None and cmp_.oracle == 1
    cmp_ = oracle_vs_construction(LinearForm((1, 1)), 14, 1)
    assert not cmp_.construction_applicable
    assert cmp_.oracle <= cmp_.ceiling == 7


@pytest.mark.parametrize("coeffs,n", [((1, 5), 12), ((1, -5), 9), ((1, 7), 10), ((1, 1), 12)])
def test_bracketing(coeffs, n):
    cmp_ = oracle_vs_construction(LinearForm(coeffs), n)
    if cmp_.construction is not None:
        assert cmp_.construction <= cmp_.oracle
    assert cmp_.oracle <= cmp_.ceiling
