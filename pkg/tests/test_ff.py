import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqspread import errors, ff
from fqspread.ff import Field, parse_field

F5 = Field(5)
F7 = Field(7)
F9 = Field(3, 2)
F25 = Field(5, 2)
F27 = Field(3, 3)


def test_prime_field_has_no_modulus():
    assert (F5.p, F5.r, F5.q) == (5, 1, 5)
    assert F5.modulus is None


def test_f9_modulus_is_lexicographically_first_irreducible():
    # Oracle: scan monic degree-2 polynomials over F_3 in coefficient order
    # and take the first with no root (degree 2, so root-free = irreducible).
    expected = None
    for m in range(9):
        c0, c1 = m % 3, m // 3
        if all((c0 + c1 * x + x * x) % 3 != 0 for x in range(3)):
            expected = (c0, c1, 1)
            break
    assert expected == (1, 0, 1)
    assert F9.modulus == expected


def test_more_moduli_are_lexicographically_first():
    # Independent oracle: first monic polynomial with no base-field root in
    # coefficient order.  Root-freeness is equivalent to irreducibility for
    # degrees 2 and 3.
    def first_rootfree(p, r):
        for m in range(p**r):
            coeffs = []
            t = m
            for _ in range(r):
                coeffs.append(t % p)
                t //= p
            coeffs.append(1)
            if all(
                sum(c * x**k for k, c in enumerate(coeffs)) % p != 0 for x in range(p)
            ):
                return tuple(coeffs)

    assert Field(5, 2).modulus == first_rootfree(5, 2) == (2, 0, 1)
    assert Field(3, 3).modulus == first_rootfree(3, 3) == (1, 2, 0, 1)


def test_constructor_rejections():
    with pytest.raises(errors.CharacteristicTwo):
        Field(2, 3)
    with pytest.raises(errors.NotPrime):
        Field(9)
    with pytest.raises(errors.NotPrime):
        Field(1)
    with pytest.raises(errors.SizeExceeded):
        Field(3, 20)  # 3^20 > 2^20


def test_parse_field():
    assert parse_field("5^1") == F5
    assert parse_field("3^2") == F9
    assert parse_field("7") == F7
    with pytest.raises(errors.NotPrime):
        parse_field("abc")


def test_field_for_order():
    assert ff.field_for_order(9) == F9
    assert ff.field_for_order(7) == F7
    with pytest.raises(errors.NotPrime):
        ff.field_for_order(15)


def test_prime_arith_examples():
    assert F5.add(3, 4) == 2
    assert F5.mul(2, 3) == 1
    assert F5.inv(2) == 3
    assert F5.sub(1, 3) == 3
    assert F5.div(1, 2) == 3


def test_f9_alpha_squared_is_minus_one():
    # alpha has digits (0, 1), index 3; with modulus x^2 + 1 its square is -1,
    # the constant 2, index 2.
    alpha = F9.encode([0, 1])
    assert alpha == 3
    assert F9.mul(alpha, alpha) == 2
    assert F9.neg(1) == 2


def test_division_by_zero():
    with pytest.raises(errors.DivisionByZero):
        F5.inv(0)
    with pytest.raises(errors.DivisionByZero):
        F9.div(1, 0)


def test_encode_roundtrip():
    for fd in (F5, F9, F27):
        for a in fd.elements():
            assert fd.encode(fd.coeffs(a)) == a


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_f9_algebra_laws(a, b, c):
    assert F9.add(F9.add(a, b), c) == F9.add(a, F9.add(b, c))
    assert F9.mul(F9.mul(a, b), c) == F9.mul(a, F9.mul(b, c))
    assert F9.mul(a, F9.add(b, c)) == F9.add(F9.mul(a, b), F9.mul(a, c))
    assert F9.add(a, F9.neg(a)) == 0
    if a != 0:
        assert F9.mul(a, F9.inv(a)) == 1


def test_algebra_laws_randomized_over_more_fields():
    rng = random.Random(7)
    for fd in (F5, F7, F9, F25, F27):
        for _ in range(300):
            a, b, c = (rng.randrange(fd.q) for _ in range(3))
            assert fd.add(fd.add(a, b), c) == fd.add(a, fd.add(b, c))
            assert fd.mul(a, fd.add(b, c)) == fd.add(fd.mul(a, b), fd.mul(a, c))
            assert fd.sub(a, b) == fd.add(a, fd.neg(b))
            if b != 0:
                assert fd.mul(fd.div(a, b), b) == a


def test_is_square_examples():
    squares_mod5 = {F5.mul(x, x) for x in F5.elements()}
    assert squares_mod5 == {0, 1, 4}
    assert F5.is_square(4)
    assert not F5.is_square(2)
    assert F9.is_square(F9.neg(1))  # 9 = 1 mod 4


def test_sqrt_examples():
    assert F5.sqrt(4) == 2  # roots are 2 and 3; smaller index wins
    assert F5.sqrt(F5.neg(1)) == 2
    assert F5.sqrt(0) == 0
    with pytest.raises(errors.NotASquare):
        F7.sqrt(F7.neg(1))  # 7 = 3 mod 4
    assert F9.sqrt(2) == 3  # sqrt(-1) in F_9 is alpha


def _odd_prime_powers_up_to(limit):
    out = []
    for p in range(3, limit + 1, 2):
        if not ff.is_prime(p):
            continue
        q = p
        r = 1
        while q <= limit:
            out.append((p, r, q))
            q *= p
            r += 1
    return sorted(out, key=lambda t: t[2])


def test_is_square_matches_squaring_table_and_sqrt_consistent_everywhere():
    # Every odd prime-power field with q <= 2000: is_square must agree with
    # the exhaustive squaring table, sqrt must succeed exactly on squares,
    # and sqrt(-1) must exist exactly when q = 1 mod 4.
    for p, r, q in _odd_prime_powers_up_to(2000):
        fd = Field(p, r)
        squares = {fd.mul(x, x) for x in fd.elements()}
        for a in fd.elements():
            assert fd.is_square(a) == (a in squares), (p, r, a)
        minus_one = fd.neg(1)
        if q % 4 == 1:
            root = fd.sqrt(minus_one)
            assert fd.mul(root, root) == minus_one
        else:
            with pytest.raises(errors.NotASquare):
                fd.sqrt(minus_one)


def test_sqrt_square_roundtrip_small_fields():
    for fd in (F5, F7, F9, F25):
        squares = {fd.mul(x, x) for x in fd.elements()}
        for a in fd.elements():
            if a in squares:
                t = fd.sqrt(a)
                assert fd.mul(t, t) == a
                other = fd.neg(t)
                assert t <= other or a == 0
            else:
                with pytest.raises(errors.NotASquare):
                    fd.sqrt(a)


def test_tables_match_scalar_ops():
    for fd in (F5, F9, F27):
        tb = fd.tables()
        q = fd.q
        for a in range(q):
            for b in range(q):
                assert int(tb.add[a, b]) == fd.add(a, b)
                assert int(tb.sub[a, b]) == fd.sub(a, b)
                assert int(tb.mul[a, b]) == fd.mul(a, b)
            assert int(tb.neg[a]) == fd.neg(a)
            if a:
                assert int(tb.inv[a]) == fd.inv(a)
        assert int(tb.inv[0]) == 0  # masked sentinel


def test_tables_cached_and_capped():
    fd = Field(5)
    assert fd.tables() is fd.tables()
    big = Field(1048573)  # prime just under the size cap, above the table cap
    with pytest.raises(errors.SizeExceeded):
        big.tables()


def test_pow_matches_repeated_multiplication():
    rng = random.Random(1)
    for fd in (F7, F9):
        for _ in range(50):
            a = rng.randrange(fd.q)
            e = rng.randrange(0, 12)
            acc = 1
            for _ in range(e):
                acc = fd.mul(acc, a)
            assert fd.pow(a, e) == acc


def test_table_dtype_and_shape():
    tb = F9.tables()
    assert tb.add.shape == (9, 9)
    assert tb.mul.dtype == np.int32
