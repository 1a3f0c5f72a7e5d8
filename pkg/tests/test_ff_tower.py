from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, symbols

from bhsidon.errors import CeilingExceeded, InvalidInput
from bhsidon.ff_tower import (FieldTower, dlog, find_generator, find_irreducible,
                              is_irreducible, make_tower, subfield_elements)

X = symbols("x")


def naive_polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def reducible_monics(p, d):
    """Every monic degree-d product of two monic factors of positive degree."""
    out = set()
    for i in range(1, d // 2 + 1):
        for lo in product(range(p), repeat=i):
            for hi in product(range(p), repeat=d - i):
                out.add(naive_polymul(lo + (1,), hi + (1,), p))
    return out


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)])
def test_irreducibility_matches_factor_enumeration(p, d):
    reducible = reducible_monics(p, d)
    for low in product(range(p), repeat=d):
        f = low + (1,)
        assert is_irreducible(f, p) == (f not in reducible), f


@pytest.mark.parametrize("p,d,expected", [
    (2, 2, (1, 1, 1)),   # x^2 + x + 1
    (3, 2, (1, 0, 1)),   # x^2 + 1
    (2, 1, (0, 1)),      # x
])
def test_find_irreducible_examples(p, d, expected):
    assert find_irreducible(p, d) == expected


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2), (7, 2)])
def test_find_irreducible_is_smallest(p, d):
    reducible = reducible_monics(p, d)
    first = next(low + (1,) for low in
                 sorted(product(range(p), repeat=d),
                        key=lambda c: sum(ci * p ** i for i, ci in enumerate(c)))
                 if low + (1,) not in reducible)
    assert find_irreducible(p, d) == first


def test_find_irreducible_rejects_composite():
    with pytest.raises(InvalidInput):
        find_irreducible(4, 2)


@pytest.mark.parametrize("args,size,q,N", [
    ((2, 1, 2), 4, 2, 3),
    ((3, 1, 2), 9, 3, 8),
    ((2, 2, 2), 16, 4, 15),
])
def test_tower_sizes(args, size, q, N):
    t = make_tower(*args)
    assert (t.size, t.q, t.N) == (size, q, N)
    assert t.N == t.q ** t.h - 1


def test_tower_errors():
    with pytest.raises(InvalidInput):
        make_tower(4, 1, 2)
    with pytest.raises(InvalidInput):
        make_tower(3, 1, 1)
    with pytest.raises(CeilingExceeded):
        make_tower(2, 1, 25)
    with pytest.raises(CeilingExceeded):
        make_tower(3, 1, 4, ceiling=80)


def test_field_ops_examples():
    gf4 = make_tower(2, 1, 2)
    x = gf4.element([0, 1])
    assert gf4.mul(x, gf4.element([1, 1])) == gf4.one
    gf9 = make_tower(3, 1, 2)
    assert gf9.irr == (1, 0, 1)
    assert gf9.pow(gf9.element([1, 1]), 2) == gf9.element([0, 2])
    for z in gf9.elements():
        assert gf9.mul(gf9.one, z) == z


def test_inverse_of_zero_raises():
    t = make_tower(3, 1, 2)
    with pytest.raises(ZeroDivisionError):
        t.inv(t.zero)
    with pytest.raises(ZeroDivisionError):
        t.pow(t.zero, -1)


@pytest.mark.parametrize("args", [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_mul_agrees_with_sympy(args):
    t = make_tower(*args)
    modulus = Poly(list(reversed(t.irr)), X, modulus=t.p)
    for a in t.elements():
        pa = Poly(list(reversed(a.coeffs)), X, modulus=t.p)
        for b in list(t.elements())[:: max(1, t.size // 11)]:
            pb = Poly(list(reversed(b.coeffs)), X, modulus=t.p)
            expected = (pa * pb).rem(modulus)
            coeffs = [int(c) % t.p for c in reversed(expected.all_coeffs())]
            assert t.mul(a, b) == t.element(coeffs)


def brute_order(t, z):
    w, n = z, 1
    while w != t.one:
        w = t.mul(w, z)
        n += 1
    return n


@pytest.mark.parametrize("args,theta_coeffs", [
    ((2, 1, 2), [0, 1]),        # x
    ((3, 1, 2), [1, 1]),        # x + 1
    ((2, 1, 3), [0, 1, 0]),     # x, with irr x^3 + x + 1
])
def test_generator_examples(args, theta_coeffs):
    t = make_tower(*args)
    assert t.theta == t.element(theta_coeffs)
    assert find_generator(t) == t.theta
    if args == (2, 1, 3):
        assert t.irr == (1, 1, 0, 1)


@pytest.mark.parametrize("args", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 1, 4)])
def test_generator_is_first_of_full_order(args):
    t = make_tower(*args)
    orders = {t.encode(z): brute_order(t, z) for z in list(t.elements())[1:]}
    first = min(e for e, o in orders.items() if o == t.N)
    assert t.encode(t.theta) == first
    assert t.order(t.theta) == t.N
    assert all(t.order(t.element(e)) == o for e, o in orders.items())


def test_gf9_x_has_order_4():
    t = make_tower(3, 1, 2)
    assert brute_order(t, t.element([0, 1])) == 4
    assert brute_order(t, t.element([1, 1])) == 8


def test_dlog_examples():
    t = make_tower(3, 1, 2)
    assert dlog(t, t.one) == 0
    assert dlog(t, t.theta) == 1
    assert dlog(t, t.element([0, 1])) == 6
    with pytest.raises(InvalidInput):
        dlog(t, t.zero)


@pytest.mark.parametrize("args", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (7, 1, 2), (3, 1, 3), (2, 1, 8)])
def test_dlog_methods_agree_with_enumeration(args):
    t = make_tower(*args)
    w = t.one
    expected = {}
    for e in range(t.N):
        expected[t.encode(w)] = e
        w = t.mul(w, t.theta)
    assert len(expected) == t.N
    for enc, e in expected.items():
        z = t.element(enc)
        assert dlog(t, z, "table") == e
        assert dlog(t, z, "bsgs") == e


def test_bsgs_used_above_threshold():
    small = FieldTower(3, 1, 3, find_irreducible(3, 3), table_threshold=4)
    z = small.element(17)
    assert dlog(small, z) == dlog(small, z, "table") == dlog(small, z, "naive")


@pytest.mark.parametrize("args,expected", [
    ((2, 1, 2), [0, 1]),
    ((3, 1, 2), [0, 1, 2]),
])
def test_prime_subfield(args, expected):
    t = make_tower(*args)
    assert [t.encode(z) for z in t.subfield] == expected


@pytest.mark.parametrize("args", [(2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3), (5, 1, 3)])
def test_subfield_scan_and_power_agree(args):
    t = make_tower(*args)
    scan = subfield_elements(t, "scan")
    assert len(scan) == t.q
    assert scan == subfield_elements(t, "power")
    assert t.zero in scan and t.one in scan


def test_towers_deterministic():
    a = FieldTower(5, 1, 2, find_irreducible(5, 2))
    b = make_tower(5, 1, 2)
    assert a == b
    assert [a.encode(z) for z in a.subfield] == [b.encode(z) for z in b.subfield]
    assert list(a.log_table) == list(b.log_table)


TOWERS = [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 2), (7, 1, 2), (3, 1, 3)]
element_case = st.sampled_from(TOWERS).flatmap(
    lambda args: st.tuples(st.just(args),
                           *[st.integers(0, args[0] ** (args[1] * args[2]) - 1)] * 3))


@settings(max_examples=200, deadline=None)
@given(element_case)
def test_field_axioms(case):
    args, ea, eb, ec = case
    t = make_tower(*args)
    a, b, c = t.element(ea), t.element(eb), t.element(ec)
    assert t.add(t.add(a, b), c) == t.add(a, t.add(b, c))
    assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
    assert t.mul(a, b) == t.mul(b, a)
    assert t.pow(t.add(a, b), t.p) == t.add(t.pow(a, t.p), t.pow(b, t.p))
    if not a.is_zero():
        assert t.mul(a, t.inv(a)) == t.one
        assert t.pow(t.theta, dlog(t, a)) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(TOWERS), st.integers(-10 ** 6, 10 ** 6))
def test_dlog_inverts_pow(args, e):
    t = make_tower(*args)
    assert dlog(t, t.pow(t.theta, e)) == e % t.N


@pytest.mark.parametrize("args", TOWERS)
def test_theta_certificate(args):
    from bhsidon.ntheory import prime_divisors
    t = make_tower(*args)
    assert t.pow(t.theta, t.N) == t.one
    assert all(t.pow(t.theta, t.N // r) != t.one for r in prime_divisors(t.N))


def test_large_fields_table_and_bsgs():
    t20 = make_tower(2, 1, 20)
    t22 = make_tower(2, 1, 22)
    assert t20.N <= t20.table_threshold < t22.N
    for enc in (3, 12345, 999_999, t20.size - 1):
        z = t20.element(enc)
        e = dlog(t20, z, "table")
        assert e == dlog(t20, z, "bsgs")
        assert t20.pow(t20.theta, e) == z
    for enc in (5, 3_000_001):
        z = t22.element(enc)
        assert t22.pow(t22.theta, dlog(t22, z)) == z
