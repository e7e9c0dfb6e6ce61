import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import ext, rand_sl, rand_smash
from cdala.cherednik import CherElem, CherParams
from cdala.errors import NotInAlgebra, SchemeDomain
from cdala.matlie import (ExtElem, MatElem, NonHomogeneous, derivation_act, grade, kappa,
                          mat_bracket, sl_membership, triangular_project, uce_bracket,
                          vv_matrix_identity)
from cdala.rings import KahlerClass, SmashElem, idempotent
from cdala.scalars import zeta


def S(variant, d, a=0, b=0, i=0, c=1):
    return SmashElem.mono(variant, d, a, b, i, c)


def test_sl2_relation():
    one = S("A", 1)
    e, f = MatElem.E(2, 1, 2, one), MatElem.E(2, 2, 1, one)
    assert mat_bracket(e, f) == MatElem(2, {(1, 1): one, (2, 2): -one})
    assert not mat_bracket(e, e)


@given(seed=st.integers(0, 10 ** 6))
def test_jacobi(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(1, 3)
    x, y, z = (rand_sl(rng, n, d) for _ in range(3))
    assert not (mat_bracket(mat_bracket(x, y), z) + mat_bracket(mat_bracket(y, z), x)
                + mat_bracket(mat_bracket(z, x), y))


def test_sl_membership():
    assert sl_membership(MatElem.diag(2, S("LoopA", 2, 1, 0, 1)))
    assert not sl_membership(MatElem.diag(2, S("LoopA", 2)))
    one = S("A", 3)
    assert sl_membership(MatElem(2, {(1, 1): one, (2, 2): -one}))


def test_kappa():
    g = lambda i: S("GroupRing", 3, 0, 0, i)
    assert kappa(MatElem.E(2, 1, 2, g(1)), MatElem.E(2, 2, 1, g(2))) == 1
    assert kappa(MatElem.E(2, 1, 2, g(1)), MatElem.E(2, 2, 1, g(1))) == 0


def test_grade():
    p = CherParams(2, 1, [Fraction(1, 2)])
    u, v = CherElem.mono(p, 1), CherElem.mono(p, 0, 1)
    assert grade(MatElem.E(2, 1, 2, v)) == 3
    assert grade(MatElem.E(2, 2, 1, u)) == -3
    one = CherElem.scalar(p)
    assert grade(MatElem(2, {(1, 1): one, (1, 2): one})) == NonHomogeneous()


def test_triangular_examples():
    d = 2
    a = S("A", d, 1, 1)
    assert triangular_project(MatElem.E(2, 1, 2, a), "td1")[2] == MatElem.E(2, 1, 2, a)
    uxi = S("LoopA", d, 1, 0, 1)
    neg, mid, pos = triangular_project(MatElem.E(2, 1, 1, uxi), "td1")
    assert not neg and not pos and mid == MatElem.E(2, 1, 1, uxi)
    x = MatElem.diag(2, S("A", d, 1) * S("A", d, -1, -1))   # u * w^-1
    neg, mid, pos = triangular_project(x, "td3")
    assert pos == x and not neg and not mid
    with pytest.raises(NotInAlgebra):
        triangular_project(MatElem.diag(2, S("A", d)), "td1")
    with pytest.raises(SchemeDomain):
        triangular_project(MatElem.E(2, 1, 2, S("C", d, 1)), "td3")


@pytest.mark.parametrize("scheme,variant", [("td1", "A"), ("td2", "A"), ("td3", "B"), ("td3C", "C")])
@given(seed=st.integers(0, 10 ** 6))
def test_triangular_parts_sum(scheme, variant, seed):
    rng = random.Random(seed)
    x = rand_sl(rng, 2, rng.randint(1, 3), variant)
    neg, mid, pos = triangular_project(x, scheme)
    assert neg + mid + pos == x


def test_uce_kassel_example():
    s, si = S("A", 1, 1), S("A", 1, -1)
    r = uce_bracket(ext(MatElem.E(2, 1, 2, s), 1), ext(MatElem.E(2, 2, 1, si), 1))
    one = S("A", 1)
    assert r.mat == MatElem(2, {(1, 1): one, (2, 2): -one})
    assert r.central == -KahlerClass.ds_s(1)


@given(seed=st.integers(0, 10 ** 6))
def test_uce_antisymmetric_and_routes(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(1, 3)
    x, y = rand_sl(rng, n, d), rand_sl(rng, n, d)
    a = uce_bracket(ext(x, d), ext(y, d))
    b = uce_bracket(ext(y, d), ext(x, d))
    assert not (a + b)
    assert not uce_bracket(ext(x, d), ext(x, d))
    assert a == uce_bracket(ext(x, d), ext(y, d), "morita")


def _const_matrix(rng, n, d):
    one = S("A", d)
    return MatElem(n, {(rng.randint(1, n), rng.randint(1, n)): one.scale(rng.randint(-3, 3))
                       for _ in range(3)})


@given(seed=st.integers(0, 10 ** 6))
def test_vv_identity(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(1, 2)
    m1, m2 = _const_matrix(rng, n, d), _const_matrix(rng, n, d)
    a1, a2 = rand_smash(rng, "A", d), rand_smash(rng, "A", d)
    assert vv_matrix_identity(m1, a1, m2, a2)
    one = S("A", d)
    assert vv_matrix_identity(m1, one, m2, one)


def test_derivations():
    m = lambda a: ExtElem(MatElem.E(2, 1, 2, a), d=2)
    x = m(S("A", 2, 3, 1))
    assert derivation_act("d_u", x) == x
    assert not derivation_act("d_u", m(S("A", 2, 1)))
    w5 = m(S("A", 2, 5, 5))
    assert derivation_act("d_w_v", w5) == w5.scale(5)
