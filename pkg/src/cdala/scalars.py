"""Exact arithmetic in the cyclotomic field Q(zeta_d) = Q[x]/(Phi_d)."""

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from .errors import DivisionByZero, MixedRootOrder

Number = Union[int, Fraction]


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list, b: list) -> tuple:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple:
    """Integer coefficients of Phi_d, lowest degree first."""
    p = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]
    for k in range(1, d):
        if d % k == 0:
            p, r = _pdivmod(p, list(cyclotomic(k)))
            assert not r
    return tuple(int(c) for c in p)


@lru_cache(maxsize=None)
def _reduction_table(d: int) -> tuple:
    """Rows x^k mod Phi_d for 0 <= k < 2*phi(d) - 1."""
    phi = cyclotomic(d)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for _ in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class CycScalar:
    """An element of Q(zeta_d), stored as a residue of degree < phi(d)."""

    __slots__ = ("d", "coeffs", "_h")

    def __init__(self, d: int, coeffs=()):
        self.d = d
        deg = len(cyclotomic(d)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce(d, cs)
        cs += [Fraction(0)] * (deg - len(cs))
        self.coeffs = tuple(cs)
        self._h = None

    @classmethod
    def _raw(cls, d: int, coeffs: tuple) -> "CycScalar":
        obj = object.__new__(cls)
        obj.d = d
        obj.coeffs = coeffs
        obj._h = None
        return obj

    @classmethod
    def of(cls, d: int, q: Number) -> "CycScalar":
        deg = len(cyclotomic(d)) - 1
        return cls._raw(d, (Fraction(q),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def zero(cls, d: int) -> "CycScalar":
        return cls.of(d, 0)

    @classmethod
    def one(cls, d: int) -> "CycScalar":
        return cls.of(d, 1)

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.d != self.d:
                raise MixedRootOrder(f"root orders {self.d} and {other.d} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.of(self.d, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar._raw(self.d, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.d, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar._raw(self.d, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycScalar._raw(self.d, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) == 1:
            return CycScalar._raw(self.d, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycScalar._raw(self.d, tuple(_reduce(self.d, prod)))

    __rmul__ = __mul__

    def inv(self) -> "CycScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if len(self.coeffs) == 1:
            return CycScalar._raw(self.d, (1 / self.coeffs[0],))
        # extended Euclid in Q[x]: find s with s*self = 1 mod Phi_d
        r0, r1 = [Fraction(c) for c in cyclotomic(self.d)], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        return CycScalar(self.d, [x / c for x in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> "CycScalar":
        if k < 0:
            return self.inv() ** (-k)
        acc, base = CycScalar.one(self.d), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycScalar):
            return self.d == other.d and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.coeffs[0]) if self.is_rational() else hash((self.d, self.coeffs))
        return self._h

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"CycScalar({self.d}, {format_scalar(self)!r})"


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _reduce(d: int, prod: list) -> list:
    deg = len(cyclotomic(d)) - 1
    table = _reduction_table(d)
    if len(prod) > len(table):
        _, r = _pdivmod(prod, [Fraction(c) for c in cyclotomic(d)])
        return r + [Fraction(0)] * (deg - len(r))
    out = [Fraction(0)] * deg
    for k, c in enumerate(prod):
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return out


@lru_cache(maxsize=None)
def zeta_power(d: int, k: int) -> CycScalar:
    """zeta_d ** k, any integer k."""
    k %= d
    deg = len(cyclotomic(d)) - 1
    cs = [0] * max(k + 1, deg)
    cs[k] = 1
    return CycScalar(d, cs)


def zeta(d: int) -> CycScalar:
    return zeta_power(d, 1)


def as_scalar(d: int, x) -> CycScalar:
    if isinstance(x, CycScalar):
        if x.d != d:
            raise MixedRootOrder(f"root orders {d} and {x.d} differ")
        return x
    if isinstance(x, str):
        from .parser import parse_scalar
        return parse_scalar(x, d)
    return CycScalar.of(d, x)


def cyc_arith(x: CycScalar, y: CycScalar, op: str) -> CycScalar:
    """Field operation `op` in {add, mul, inv}; `inv` ignores y."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown op {op!r}")


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: CycScalar) -> str:
    """Exact string such as "(2+z)/3", "-1", "z^2"; parseable back."""
    terms = [(k, c) for k, c in enumerate(x.coeffs) if c]
    if not terms:
        return "0"
    if len(terms) == 1:
        k, c = terms[0]
        if k == 0:
            return _frac(c)
        mono = "z" if k == 1 else f"z^{k}"
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
        return f"{_frac(c)}*{mono}"
    den = 1
    for _, c in terms:
        den = den * c.denominator // gcd(den, c.denominator)
    parts = []
    for k, c in terms:
        n = c * den
        n = n.numerator
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            body = str(abs(n))
        elif abs(n) == 1:
            body = mono
        else:
            body = f"{abs(n)}*{mono}"
        sign = "-" if n < 0 else "+"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return f"({s})" if den == 1 else f"({s})/{den}"

