import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import rand_scalar
from cdala.cherednik import CherParams
from cdala.errors import (DegreeMismatch, InsufficientData, InsufficientOrder, RangeError,
                          SeriesMismatch)
from cdala.highestweight import (CharPolySet, FormalSeries, TensorLabels, WeightData, ab_series,
                                 c_series, derived_mid_basis, f_series, highly_degenerate_check,
                                 integrability_check, mid_bracket_identities, nondegenerate_check,
                                 one_minus_exp_times, qfin_check, quasipoly_detect,
                                 recover_drinfeld, tensor_d_series, weight_eval, weight_from_tensor)
from cdala.matlie import MatElem
from cdala.cherednik import CherElem, cher_idempotent, omega
from cdala.linalg import RowSpace
from cdala.poly import Poly
from cdala.scalars import CycScalar


def _rand_weight(rng, n, d, R):
    return WeightData(n, d, {(i, l, r): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                             for i in range(1, n + 1) for l in range(d) for r in range(R + 1)}, R)


# ------------------------------------------------------------ data types

def test_weight_data_order_guard():
    lam = WeightData.zero(2, 1, 5)
    assert lam(1, 0, 5) == 0
    with pytest.raises(InsufficientOrder):
        lam(1, 0, 6)


def test_weight_json_roundtrip():
    lam = _rand_weight(random.Random(0), 2, 2, 4)
    assert WeightData.from_dict(lam.to_dict()) == lam


def test_charpoly_defaults_and_monic():
    b = CharPolySet(2, 2, {(1, 0): Poly(2, [-3, 1])})
    assert b[(1, 2)] == Poly(2, [-3, 1]) and b[(2, 1)] == 1
    with pytest.raises(RangeError):
        CharPolySet(2, 1, {(1, 0): Poly(1, [0, 2])})


@given(a=st.fractions(-3, 3, max_denominator=3), b=st.fractions(-3, 3, max_denominator=3))
def test_exp_product(a, b):
    assert FormalSeries.exp(1, a, 8) * FormalSeries.exp(1, b, 8) == FormalSeries.exp(1, a + b, 8)


@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=3, max_size=9), st.integers(1, 3))
def test_one_minus_exp_division(cs, d):
    D = FormalSeries(d, cs)
    back = one_minus_exp_times(D, d).div_one_minus_exp(d)
    assert back == D.truncate(len(cs) - 2)


# ------------------------------------------------------------ quasi-polynomials

def test_quasipoly_examples():
    q = quasipoly_detect([2 ** r for r in range(12)], 4, 1)
    assert q.order == 1 and q.charpoly == Poly.from_roots(1, [2])
    q = quasipoly_detect(list(range(12)), 4, 1)
    assert q.order == 2 and q.charpoly == Poly.from_roots(1, [1, 1])
    assert not quasipoly_detect([math.factorial(r) for r in range(12)], 4, 1)
    with pytest.raises(InsufficientData):
        quasipoly_detect([1] * 8, 4, 1)


@given(seed=st.integers(0, 10 ** 6))
def test_quasipoly_annihilates(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    betas = [rand_scalar(rng, d) for _ in range(rng.randint(1, 3))]
    cs = [rand_scalar(rng, d) for _ in betas]
    seq = [sum((c * b ** r for b, c in zip(betas, cs)), CycScalar.zero(d)) for r in range(14)]
    q = quasipoly_detect(seq, 5, d)
    assert q and q.annihilates(seq) and q.order <= len(betas)


def test_qfin_basic():
    assert qfin_check(WeightData.zero(2, 2, 12), 12, 4)
    fact = WeightData(1, 1, {(1, 0, r): math.factorial(r) for r in range(13)}, 12)
    rep = qfin_check(fact, 12, 4)
    assert not rep and rep.failures() == [(1, 0)]


def test_single_factor_tensor():
    T = TensorLabels.from_dict({"factors": [{"m": 0, "a": "0", "labels": [{"k": 0, "p": 0, "value": "1"}]}]}, 1)
    for i in (1, 2):
        assert len(tensor_d_series(T, 2, 1, i, 0, 12)) == 13
    lam = weight_from_tensor(T, 2, 1, 16)
    assert qfin_check(lam, 16, 6)


def test_zero_tensor():
    T = TensorLabels(2, [])
    assert not tensor_d_series(T, 2, 2, 1, 0, 8)


@given(seed=st.integers(0, 10 ** 6))
def test_random_tensor_quasifinite(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 3), rng.randint(1, 3)
    labels = [{"k": rng.randint(-3, 3), "p": rng.randint(0, 1), "value": str(rng.randint(-3, 3))}
              for _ in range(3)]
    data = {"factors": [{"m": 1, "a": str(Fraction(rng.randint(-6, 6), 5)), "labels": labels}]}
    lam = weight_from_tensor(TensorLabels.from_dict(data, d), n, d, 32)
    assert qfin_check(lam, 32, 14)


# ------------------------------------------------------------ F series and the mid basis

def test_f_series_zero():
    assert not f_series(WeightData.zero(2, 2, 6), 1, 0, 5)


@given(seed=st.integers(0, 10 ** 6))
def test_f_series_routes_and_mid_basis(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(1, 2)
    lam = _rand_weight(rng, n, d, 5)
    p = CherParams(d, 1, [rand_scalar(rng, d) for _ in range(d - 1)])
    F = {(i, l): f_series(lam, i, l, 2, p) for i in range(1, n + 1) for l in range(d)}
    basis = iter(derived_mid_basis(CharPolySet.constant(n, d, Poly(d, [1])), n, d, 2, p))
    for l in range(d):
        for r in range(3):
            for i in range(1, n):
                assert weight_eval(lam, next(basis)) == -F[(i + 1, l)][r]
            assert weight_eval(lam, next(basis)) == F[(1, l)][r]


def test_mid_basis_n2_d1():
    p = CherParams(1)
    B = derived_mid_basis(CharPolySet.constant(2, 1, Poly(1, [1])), 2, 1, 1, p)
    one, w = CherElem.scalar(p), omega(p)
    u, v = CherElem.mono(p, 1), CherElem.mono(p, 0, 1)
    assert B[0] == MatElem(2, {(1, 1): one, (2, 2): -one})
    assert B[1] == MatElem(2, {(1, 1): u * v, (2, 2): -(v * u)})
    assert B[2] == MatElem(2, {(1, 1): w, (2, 2): -w})
    assert B[3] == MatElem(2, {(1, 1): u * v * (w + 1), (2, 2): -(v * u * w)})


def test_mid_bracket_identities():
    b = CharPolySet(2, 2, {(1, 0): Poly(2, [-1, 1]), (2, 1): Poly(2, [2, 0, 1])})
    assert mid_bracket_identities(b, 2, 2, 1, CherParams(2, 1, [Fraction(1, 2)])).ok


def test_nondegenerate():
    assert nondegenerate_check(CharPolySet.constant(2, 2, Poly(2, [1])), depth=3)
    assert not nondegenerate_check(CharPolySet(2, 1, {(1, 0): Poly(1, [])}))
    b = CharPolySet(3, 2, {(1, 0): Poly(2, [-1, 1]), (2, 1): Poly(2, [3, 1])})
    rep = nondegenerate_check(b, depth=2)
    assert rep and all(dv.exact for dv in rep.divisions)


def _null_weight(b, n, d, r_max, R):
    """A nonzero weight killing every mid-basis vector, found by exact elimination."""
    unknowns = [(i, l, r) for i in range(1, n + 1) for l in range(d) for r in range(R + 1)]
    rows = RowSpace()
    for x in derived_mid_basis(b, n, d, r_max):
        row = {}
        for key in unknowns:
            unit = WeightData(n, d, {key: 1}, R)
            c = weight_eval(unit, x)
            if c:
                row[key] = c
        rows.add(row)
    free = next(k for k in unknowns if k not in rows.rows)
    vals = {free: CycScalar.one(d)}
    for piv, row in rows.rows.items():
        vals[piv] = -row.get(free, 0)
    return WeightData(n, d, vals, R)


def test_highly_degenerate():
    b = CharPolySet(2, 1, {(1, 0): Poly.from_roots(1, [3]), (2, 0): Poly.from_roots(1, [Fraction(1, 2)])})
    assert highly_degenerate_check(WeightData.zero(2, 1, 6), b, 2)
    lam = _null_weight(b, 2, 1, 2, 4)
    assert any(lam.values.values())
    assert highly_degenerate_check(lam, b, 2)
    bumped = WeightData(2, 1, {**lam.values, (1, 0, 0): lam(1, 0, 0) + 1}, 4)
    assert not highly_degenerate_check(bumped, b, 2)
    assert not highly_degenerate_check(_rand_weight(random.Random(1), 2, 1, 4), b, 2)
    with pytest.raises(InsufficientOrder):
        highly_degenerate_check(lam, b, 3)


# ------------------------------------------------------------ integrability

def test_trivial_integrable():
    assert integrability_check("AB", {}, {(0, 0): Poly(1, [1])}, 12, 1)


def test_single_root_ab():
    beta = Fraction(2, 3)
    P = Poly.from_roots(1, [beta])
    pos, neg = ab_series(P, 12)
    # P = z - beta: -P'/P = sum beta^(-r) z^(r-1) and -1/z + z^-2 P'(1/z)/P(1/z) = sum beta^r z^(r-1)
    assert pos == [beta ** -r for r in range(1, 13)]
    assert neg == [beta ** r for r in range(1, 13)]
    lam = {(0, 0, 0): 1, **{(0, 0, r): beta ** -r for r in range(1, 13)},
           **{(0, 0, -r): beta ** r for r in range(1, 13)}}
    assert integrability_check("AB", lam, None, 12, 1).polys[(0, 0)] == P


def test_c_series_power_sums():
    P = Poly.from_roots(1, [2, -1, 3])
    assert c_series(P, 5) == [2 ** r + (-1) ** r + 3 ** r for r in range(1, 6)]
    assert recover_drinfeld("C", dict(enumerate(c_series(P, 8), 1)), 8, 1) == P


def test_integrability_errors():
    with pytest.raises(DegreeMismatch) as err:
        integrability_check("AB", {(0, 0, 0): Fraction(1, 2)}, None, 4, 1)
    assert err.value.where == (0, 0)
    with pytest.raises(SeriesMismatch) as err:
        integrability_check("AB", {(0, 0, 0): 0, (0, 0, 3): 1}, None, 4, 1)
    assert err.value.where == (0, 0, 3)
    with pytest.raises(RangeError):
        integrability_check("C", {(0, 0, -1): 1}, None, 4, 1)
