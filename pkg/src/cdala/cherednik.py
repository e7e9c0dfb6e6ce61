"""Rank-one rational Cherednik algebra H_{t,c}(Z/d) and its trigonometric localization.

H: basis u^a v^b xi^i (a, b >= 0), relation vu - uv = t + sum_k c_k xi^k.
Trig: basis u^s omega^r xi^i (s in Z), omega u^s = u^s (omega - s t).
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import MixedRootOrder, NormalizationViolation
from .rings import _pow, format_terms
from .scalars import CycScalar, as_scalar, zeta_power


def ctilde_from_c(c, d: int) -> tuple:
    """c~_i = sum_k zeta^{ik} c_k / (1 - zeta^{-k}); the gauge sum c~ = 0."""
    c = [as_scalar(d, x) for x in c]
    if len(c) != d - 1:
        raise ValueError(f"need {d - 1} parameters, got {len(c)}")
    out = []
    for i in range(d):
        acc = CycScalar.zero(d)
        for k in range(1, d):
            acc = acc + zeta_power(d, i * k) * c[k - 1] / (1 - zeta_power(d, -k))
        out.append(acc)
    return tuple(out)


def c_from_ctilde(ct, d: int) -> tuple:
    """c_k = (1/d)(1 - zeta^{-k}) sum_i c~_i zeta^{-ik}; requires sum c~ = 0."""
    ct = [as_scalar(d, x) for x in ct]
    if len(ct) != d:
        raise ValueError(f"need {d} values, got {len(ct)}")
    if sum(ct, CycScalar.zero(d)):
        raise NormalizationViolation("c~ must sum to zero")
    out = []
    for k in range(1, d):
        acc = CycScalar.zero(d)
        for i in range(d):
            acc = acc + ct[i] * zeta_power(d, -i * k)
        out.append(acc * (1 - zeta_power(d, -k)) * Fraction(1, d))
    return tuple(out)


class CherParams:
    __slots__ = ("d", "t", "c", "ctilde")

    def __init__(self, d: int, t=1, c=None):
        self.d = d
        self.t = as_scalar(d, t)
        self.c = tuple(as_scalar(d, x) for x in (c if c is not None else [0] * (d - 1)))
        self.ctilde = ctilde_from_c(self.c, d)

    @classmethod
    def from_ctilde(cls, d: int, t, ctilde) -> "CherParams":
        return cls(d, t, c_from_ctilde(ctilde, d))

    def key(self):
        return (self.d, self.t, self.c)

    def __eq__(self, other):
        return isinstance(other, CherParams) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CherParams(d={self.d}, t={self.t}, c={[str(x) for x in self.c]})"


def _add_into(out: dict, key, v):
    cur = out.get(key)
    if cur is None:
        out[key] = v
    else:
        s = cur + v
        if s:
            out[key] = s
        else:
            del out[key]


class _Elem:
    __slots__ = ("p", "terms")

    def __init__(self, p: CherParams, terms=None):
        self.p = p
        out = {}
        for (a, b, i), c in (terms or {}).items():
            c = as_scalar(p.d, c)
            if c:
                _add_into(out, (a, b, i % p.d), c)
        self.terms = out

    @classmethod
    def _raw(cls, p, terms):
        obj = object.__new__(cls)
        obj.p, obj.terms = p, terms
        return obj

    @classmethod
    def mono(cls, p: CherParams, a: int = 0, b: int = 0, i: int = 0, coef=1):
        return cls(p, {(a, b, i): coef})

    @classmethod
    def scalar(cls, p: CherParams, coef=1):
        return cls(p, {(0, 0, 0): coef})

    def _lift(self, other):
        if isinstance(other, type(self)):
            if other.p != self.p:
                raise MixedRootOrder("parameter blocks differ")
            return other
        if isinstance(other, (int, Fraction, CycScalar)):
            return type(self).scalar(self.p, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.terms.items():
            _add_into(t, k, c)
        return self._raw(self.p, t)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_scalar(self.p.d, c)
        if not c:
            return self._raw(self.p, {})
        return self._raw(self.p, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._mul(o)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        acc = type(self).scalar(self.p)
        for _ in range(k):
            acc = acc * self
        return acc

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def d(self):
        return self.p.d

    def __str__(self):
        return format_terms(self.pieces())

    __repr__ = __str__


@lru_cache(maxsize=None)
def _vu_table(p: CherParams, b: int, c: int) -> tuple:
    """Normal form of v^b u^c as a tuple of ((a, b', i), coef)."""
    d = p.d
    if b == 0 or c == 0:
        return (((c, b, 0), CycScalar.one(d)),)
    # v u^c = u^c v + c t u^{c-1} + sum_k c_k (sum_q zeta^{kq}) u^{c-1} xi^k, q < c
    out = {}
    for (a, bb, i), coef in _vu_table(p, b - 1, c):
        _add_into(out, (a, bb + 1, i), coef * zeta_power(d, -i) if i else coef)
    x_terms = [(0, p.t * c)]
    for k in range(1, d):
        g = sum((zeta_power(d, k * q) for q in range(c)), CycScalar.zero(d))
        x_terms.append((k, p.c[k - 1] * g))
    for (a, bb, i), coef in _vu_table(p, b - 1, c - 1):
        for k, xc in x_terms:
            if xc:
                _add_into(out, (a, bb, i + k if i + k < d else i + k - d), coef * xc)
    return tuple(out.items())


class CherElem(_Elem):
    """PBW normal form {(a, b, i): coef} for u^a v^b xi^i."""

    __slots__ = ()

    def _mul(self, o):
        d = self.p.d
        out = {}
        for (a, b, i), c1 in self.terms.items():
            for (c, e, j), c2 in o.terms.items():
                coef = c1 * c2
                if i and (c - e) % d:
                    coef = coef * zeta_power(d, i * (c - e))
                for (a2, b2, k), c3 in _vu_table(self.p, b, c):
                    # u^a (u^a2 v^b2 xi^k) v^e xi^j, with xi^k v^e = zeta^{-ke} v^e xi^k
                    cc = coef * c3
                    if k and e % d:
                        cc = cc * zeta_power(d, -k * e)
                    _add_into(out, (a + a2, b2 + e, (k + i + j) % d), cc)
        return self._raw(self.p, out)

    def pieces(self) -> list:
        out = []
        for (a, b, i) in sorted(self.terms):
            mono = "*".join(f for f in (_pow("u", a), _pow("v", b), _pow("x", i)) if f)
            out.append((self.terms[(a, b, i)], mono))
        return out

    def degrees(self) -> set:
        return {b - a for (a, b, _) in self.terms}


def cher_mul(x: CherElem, y: CherElem, p: CherParams = None) -> CherElem:
    return x * y


def cher_idempotent(p: CherParams, l: int, cls=None) -> "_Elem":
    cls = cls or CherElem
    d = p.d
    return cls(p, {(0, 0, i): zeta_power(d, -i * l) * Fraction(1, d) for i in range(d)})


def omega(p: CherParams, form: int = 1) -> CherElem:
    """omega in one of its three displayed forms (1, 2 or 3); all agree."""
    d = p.d
    u, v = CherElem.mono(p, 1), CherElem.mono(p, 0, 1)
    e = [cher_idempotent(p, l) for l in range(d)]
    ct = p.ctilde
    if form == 1:
        acc = -(u * v)
        for i in range(d):
            acc = acc + e[(i + 1) % d].scale(ct[i])
        return acc
    if form == 2:
        acc = -(v * u) + p.t
        for i in range(d):
            acc = acc + e[i].scale(ct[i])
        return acc
    if form == 3:
        half = Fraction(1, 2)
        acc = (u * v + v * u).scale(-half) + p.t * half
        for i in range(d):
            acc = acc + (e[i] + e[(i + 1) % d]).scale(ct[i] * half)
        return acc
    raise ValueError("form must be 1, 2 or 3")


class TrigElem(_Elem):
    """Normal form {(s, r, i): coef} for u^s omega^r xi^i, s in Z."""

    __slots__ = ()

    def _mul(self, o):
        d, t = self.p.d, self.p.t
        out = {}
        for (s, r, i), c1 in self.terms.items():
            for (s2, r2, j), c2 in o.terms.items():
                coef = c1 * c2
                if i and s2 % d:
                    coef = coef * zeta_power(d, i * s2)
                # omega^r u^s2 = u^s2 (omega - s2 t)^r
                shift = -t * s2
                for q in range(r + 1):
                    if q < r and not shift:
                        continue
                    cc = coef * comb(r, q)
                    if r - q:
                        cc = cc * shift ** (r - q)
                    _add_into(out, (s + s2, q + r2, (i + j) % d), cc)
        return self._raw(self.p, out)

    def pieces(self) -> list:
        out = []
        for (s, r, i) in sorted(self.terms):
            mono = "*".join(f for f in (_pow("u", s), _pow("omega", r), _pow("x", i)) if f)
            out.append((self.terms[(s, r, i)], mono))
        return out

    def degrees(self) -> set:
        return {-s for (s, _, _) in self.terms}

    def e_coeffs(self) -> dict:
        """Coefficients in the basis u^s omega^r e_k."""
        d = self.p.d
        out = {}
        for (s, r, i), c in self.terms.items():
            for k in range(d):
                _add_into(out, (s, r, k), c * zeta_power(d, i * k) if i else c)
        return out

    @classmethod
    def from_e(cls, p: CherParams, coeffs: dict) -> "TrigElem":
        """Inverse of e_coeffs: {(s, r, k): coef} for u^s omega^r e_k."""
        d = p.d
        out = {}
        for (s, r, k), c in coeffs.items():
            for i in range(d):
                _add_into(out, (s, r, i), as_scalar(d, c) * zeta_power(d, -i * k) * Fraction(1, d))
        return cls._raw(p, out)


def trig_mul(x: TrigElem, y: TrigElem, p: CherParams = None) -> TrigElem:
    return x * y


def trig_omega(p: CherParams) -> TrigElem:
    return TrigElem.mono(p, 0, 1)


def trig_v(p: CherParams) -> TrigElem:
    """v = -u^-1 (omega - sum_l c~_{l-1} e_l)."""
    d = p.d
    inner = trig_omega(p)
    for l in range(d):
        inner = inner - cher_idempotent(p, l, TrigElem).scale(p.ctilde[(l - 1) % d])
    return -(TrigElem.mono(p, -1) * inner)


def poly_to_trig(x: CherElem, p: CherParams = None) -> TrigElem:
    p = p or x.p
    V = trig_v(p)
    powers = [TrigElem.scalar(p)]
    out = TrigElem(p)
    for (a, b, i), c in x.terms.items():
        while len(powers) <= b:
            powers.append(powers[-1] * V)
        out = out + (TrigElem.mono(p, a) * powers[b] * TrigElem.mono(p, 0, 0, i)).scale(c)
    return out


def commutator(x, y):
    return x * y - y * x
