"""Random generators and strategies shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from cdala.cherednik import CherElem, CherParams, TrigElem
from cdala.matlie import ExtElem, MatElem
from cdala.rings import CommElem, SmashElem
from cdala.scalars import CycScalar

SMALL = [Fraction(k, q) for k in range(-3, 4) for q in (1, 2)]


def rand_scalar(rng: random.Random, d: int, dense: bool = True) -> CycScalar:
    deg = len(CycScalar.one(d).coeffs)
    if not dense:
        return CycScalar.of(d, rng.choice(SMALL))
    return CycScalar(d, [rng.choice(SMALL) for _ in range(deg)])


def _exp_range(variant: str, span: int):
    lo_u = 0 if variant in ("C", "PolyB") else -span
    lo_v = 0 if variant in ("B", "C") else -span
    hi_v = 0 if variant in ("LoopA", "PolyB", "GroupRing") else span
    hi_u = 0 if variant == "GroupRing" else span
    if variant == "GroupRing":
        lo_u = 0
    if variant in ("LoopA", "PolyB", "GroupRing"):
        lo_v = 0
    return (lo_u, hi_u), (lo_v, hi_v)


def rand_smash(rng: random.Random, variant: str, d: int, terms: int = 2, span: int = 2) -> SmashElem:
    (a0, a1), (b0, b1) = _exp_range(variant, span)
    out = {}
    for _ in range(terms):
        key = (rng.randint(a0, a1), rng.randint(b0, b1), rng.randrange(d))
        out[key] = rand_scalar(rng, d, dense=False)
    return SmashElem(variant, d, out)


def rand_sl(rng: random.Random, n: int, d: int, variant: str = "A", entries: int = 2) -> MatElem:
    """Off-diagonal entries plus a traceless diagonal part."""
    ents = {}
    for _ in range(entries):
        i, j = rng.sample(range(1, n + 1), 2)
        ents[(i, j)] = rand_smash(rng, variant, d, terms=1)
    i = rng.randint(1, n - 1)
    a = rand_smash(rng, variant, d, terms=1)
    m = MatElem(n, ents) + MatElem(n, {(i, i): a, (i + 1, i + 1): -a})
    return m


def rand_cher(rng: random.Random, p: CherParams, terms: int = 3, deg: int = 2) -> CherElem:
    out = {}
    for _ in range(terms):
        key = (rng.randint(0, deg), rng.randint(0, deg), rng.randrange(p.d))
        out[key] = rand_scalar(rng, p.d, dense=False)
    return CherElem(p, out)


def rand_trig(rng: random.Random, p: CherParams, terms: int = 2, span: int = 2, deg: int = 2) -> TrigElem:
    out = {}
    for _ in range(terms):
        key = (rng.randint(-span, span), rng.randint(0, deg), rng.randrange(p.d))
        out[key] = rand_scalar(rng, p.d, dense=False)
    return TrigElem(p, out)


def ext(x: MatElem, d: int) -> ExtElem:
    return ExtElem(x, d=d)


# ------------------------------------------------------------ hypothesis strategies

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def scalars(d: int):
    deg = len(CycScalar.one(d).coeffs)
    return st.lists(fractions, min_size=deg, max_size=deg).map(lambda cs: CycScalar(d, cs))


def seeds():
    return st.integers(min_value=0, max_value=2 ** 32 - 1)
