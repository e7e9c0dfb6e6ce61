from hypothesis import given, strategies as st

from cdala.poly import Poly

coeffs = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), max_size=5)


def test_from_roots_and_print():
    p = Poly.from_roots(1, [2, 2, 5])
    assert str(p) == "w^3-9*w^2+24*w-20"
    assert p(2) == 0 and p(5) == 0
    assert p.deriv()(2) == 0


@given(coeffs, coeffs)
def test_divmod(a, b):
    p, q = Poly(1, a), Poly(1, b)
    if not q:
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree or not rem


@given(coeffs, st.fractions(min_value=-3, max_value=3, max_denominator=2))
def test_shift_is_substitution(a, h):
    p = Poly(1, a)
    for x in (0, 1, -2):
        assert p.shift(h)(x) == p(x + h)


@given(coeffs)
def test_reverse_twice(a):
    p = Poly(1, a)
    if p and p.coeff(0):
        assert p.reverse().reverse() == p
