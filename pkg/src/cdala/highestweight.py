"""Highest weights for gl_n(H) and sl_n over the cyclic rings.

Weight tables d_{i,l,r} = lambda(E_ii omega^r e_l), parabolic characteristic
polynomials, the highly degenerate and quasi-finite tests, the D and F
generating series and the Drinfeld-polynomial integrability criteria.
"""

import json
from fractions import Fraction
from math import comb, factorial

from .cherednik import CherElem, CherParams, cher_idempotent, omega, poly_to_trig
from .errors import (DegreeMismatch, InsufficientData, InsufficientOrder, NotInAlgebra,
                     RangeError, SeriesMismatch)
from .matlie import MatElem, mat_bracket
from .poly import Poly
from .report import Report
from .scalars import CycScalar, as_scalar, format_scalar


# ---------------------------------------------------------------- data types

class WeightData:
    """Finite table of d_{i,l,r}, 1 <= i <= n, 0 <= l < d, 0 <= r <= R_max.

    Missing entries inside the table are zero; orders beyond R_max raise.
    """

    def __init__(self, n: int, d: int, values=None, R_max: int = None):
        self.n, self.d = n, d
        vals = {}
        for (i, l, r), v in (values or {}).items():
            if not (1 <= i <= n and r >= 0):
                raise RangeError(f"weight index ({i},{l},{r}) out of range")
            v = as_scalar(d, v)
            if v:
                vals[(i, l % d, r)] = v
        self.values = vals
        self.R_max = max((r for (_, _, r) in vals), default=0) if R_max is None else R_max
        if any(r > self.R_max for (_, _, r) in vals):
            raise RangeError("value beyond R_max")

    def __call__(self, i: int, l: int, r: int) -> CycScalar:
        if r < 0 or r > self.R_max:
            raise InsufficientOrder(f"d_{{{i},{l},{r}}} needs order {r}, have R_max={self.R_max}")
        return self.values.get((i, l % self.d, r), CycScalar.zero(self.d))

    def series(self, i: int, l: int, N: int = None) -> "FormalSeries":
        N = self.R_max if N is None else N
        return FormalSeries(self.d, [self(i, l, r) for r in range(N + 1)])

    @classmethod
    def zero(cls, n: int, d: int, R_max: int) -> "WeightData":
        return cls(n, d, {}, R_max)

    @classmethod
    def from_dict(cls, data: dict) -> "WeightData":
        n, d = int(data["n"]), int(data["d"])
        vals = {}
        for e in data.get("values", []):
            vals[(int(e["i"]), int(e["l"]), int(e["r"]))] = as_scalar(d, e["value"])
        return cls(n, d, vals, int(data["R_max"]))

    @classmethod
    def from_json(cls, text: str) -> "WeightData":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "n": self.n, "d": self.d, "R_max": self.R_max,
            "values": [{"i": i, "l": l, "r": r, "value": format_scalar(v)}
                       for (i, l, r), v in sorted(self.values.items())],
        }

    def __eq__(self, other):
        return (isinstance(other, WeightData) and (self.n, self.d, self.R_max, self.values)
                == (other.n, other.d, other.R_max, other.values))

    def __repr__(self):
        return f"WeightData(n={self.n}, d={self.d}, R_max={self.R_max}, {len(self.values)} nonzero)"


class TensorFactor:
    """One factor L(m, lambda) pulled back along phi_a^[m]: labels {(k, p): value}."""

    def __init__(self, d: int, m: int, a, labels=None):
        self.d, self.m, self.a = d, m, as_scalar(d, a)
        out = {}
        for (k, p), v in (labels or {}).items():
            if not 0 <= p <= m:
                raise RangeError(f"label power {p} outside 0..{m}")
            v = as_scalar(d, v)
            if v:
                out[(k, p)] = v
        self.labels = out

    def label(self, k: int, p: int) -> CycScalar:
        return self.labels.get((k, p), CycScalar.zero(self.d))

    def h(self, k: int, p: int) -> CycScalar:
        return self.label(k, p) - self.label(k + 1, p)

    def support(self) -> tuple:
        ks = [k for (k, _) in self.labels]
        return (min(ks), max(ks)) if ks else None


class TensorLabels:
    """Finitely supported labels for a tensor product of pulled-back modules.

    Finite support forces all but finitely many differences lambda_k - lambda_{k+1}
    to vanish, which is the quasi-finiteness condition on each factor.
    """

    def __init__(self, d: int, factors):
        self.d = d
        self.factors = list(factors)

    @classmethod
    def from_dict(cls, data: dict, d: int) -> "TensorLabels":
        fs = []
        for f in data.get("factors", []):
            labels = {}
            for e in f.get("labels", []):
                key = (int(e["k"]), int(e.get("p", 0)))
                labels[key] = labels.get(key, 0) + as_scalar(d, e["value"])
            fs.append(TensorFactor(d, int(f.get("m", 0)), as_scalar(d, f.get("a", 0)), labels))
        return cls(d, fs)

    @classmethod
    def from_json(cls, text: str, d: int) -> "TensorLabels":
        return cls.from_dict(json.loads(text), d)

    def to_dict(self) -> dict:
        return {"factors": [
            {"m": f.m, "a": format_scalar(f.a),
             "labels": [{"k": k, "p": p, "value": format_scalar(v)} for (k, p), v in sorted(f.labels.items())]}
            for f in self.factors]}


class CharPolySet:
    """Monic polynomials b^{i,l}(omega), or the zero polynomial, for 1 <= i <= n, 0 <= l < d."""

    def __init__(self, n: int, d: int, polys=None):
        self.n, self.d = n, d
        out = {}
        for i in range(1, n + 1):
            for l in range(d):
                p = (polys or {}).get((i, l), Poly(d, [1]))
                if not isinstance(p, Poly):
                    p = Poly(d, p if isinstance(p, (list, tuple)) else [p])
                if p and not p.is_monic():
                    raise RangeError(f"b^{{{i},{l}}} = {p} is not monic")
                out[(i, l)] = p
        self.polys = out

    def __getitem__(self, key) -> Poly:
        i, l = key
        return self.polys[(i, l % self.d)]

    @classmethod
    def constant(cls, n: int, d: int, p) -> "CharPolySet":
        return cls(n, d, {(i, l): p for i in range(1, n + 1) for l in range(d)})

    def max_degree(self) -> int:
        return max((p.degree for p in self.polys.values() if p), default=0)


# ------------------------------------------------------------ formal series

class FormalSeries:
    """Truncated series sum_r c_r z^r / r!, stored by its EGF coefficients c_0..c_N."""

    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs):
        self.d = d
        self.c = [as_scalar(d, x) for x in coeffs]

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @classmethod
    def zero(cls, d: int, N: int) -> "FormalSeries":
        return cls(d, [0] * (N + 1))

    @classmethod
    def exp(cls, d: int, a, N: int) -> "FormalSeries":
        """e^{a z}."""
        a = as_scalar(d, a)
        return cls(d, [a ** r for r in range(N + 1)])

    @classmethod
    def monomial(cls, d: int, p: int, N: int, coef=1) -> "FormalSeries":
        """coef * z^p / p!."""
        return cls(d, [coef if r == p else 0 for r in range(N + 1)])

    def __getitem__(self, r):
        return self.c[r]

    def __len__(self):
        return len(self.c)

    def truncate(self, N: int) -> "FormalSeries":
        if N > self.order:
            raise InsufficientData(f"series known to order {self.order}, asked for {N}")
        return FormalSeries(self.d, self.c[: N + 1])

    def __add__(self, o):
        n = min(len(self.c), len(o.c))
        return FormalSeries(self.d, [self.c[r] + o.c[r] for r in range(n)])

    def __neg__(self):
        return FormalSeries(self.d, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def scale(self, a) -> "FormalSeries":
        a = as_scalar(self.d, a)
        return FormalSeries(self.d, [a * x for x in self.c])

    def __mul__(self, o):
        """Product of functions: binomial convolution of EGF coefficients."""
        if not isinstance(o, FormalSeries):
            return self.scale(o)
        n = min(len(self.c), len(o.c))
        out = []
        for r in range(n):
            acc = CycScalar.zero(self.d)
            for j in range(r + 1):
                if self.c[j] and o.c[r - j]:
                    acc = acc + self.c[j] * o.c[r - j] * comb(r, j)
            out.append(acc)
        return FormalSeries(self.d, out)

    __rmul__ = __mul__

    def deriv(self) -> "FormalSeries":
        return FormalSeries(self.d, self.c[1:])

    def div_one_minus_exp(self, d_exp: int) -> "FormalSeries":
        """self / (1 - e^{d z}); needs c_0 = 0 and loses one order."""
        if self.c[0]:
            raise SeriesMismatch("numerator has nonzero constant term, quotient has a pole")
        out = []
        for r in range(len(self.c) - 1):
            acc = self.c[r + 1]
            for j in range(r):
                acc = acc + out[j] * comb(r + 1, j) * Fraction(d_exp) ** (r + 1 - j)
            out.append(-acc / ((r + 1) * d_exp))
        return FormalSeries(self.d, out)

    def ordinary(self) -> list:
        """Ordinary power series coefficients c_r / r!."""
        return [x * Fraction(1, factorial(r)) for r, x in enumerate(self.c)]

    def __eq__(self, o):
        return isinstance(o, FormalSeries) and self.c == o.c

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return "FormalSeries([" + ", ".join(format_scalar(x) for x in self.c) + "])"


def one_minus_exp_times(D: FormalSeries, d_exp: int) -> FormalSeries:
    """(1 - e^{d z}) D(z)."""
    return D - FormalSeries.exp(D.d, d_exp, D.order) * D


# ------------------------------------------------------- quasi-polynomials

class QuasiPoly:
    """Certificate: minimal recurrence c_{r+L} = sum_q coeffs[q] c_{r+q} fitted to all given terms.

    A sequence has a quasi-polynomial EGF exactly when it satisfies such a
    recurrence; the certificate claims this only up to the declared max_order.
    """

    def __init__(self, order: int, coeffs, charpoly: Poly, checked: int, max_order: int):
        self.order, self.coeffs, self.charpoly = order, tuple(coeffs), charpoly
        self.checked, self.max_order = checked, max_order

    def annihilates(self, seq) -> bool:
        L = self.order
        for r in range(len(seq) - L):
            acc = seq[r + L]
            for q in range(L):
                acc = acc - self.coeffs[q] * seq[r + q]
            if acc:
                return False
        return True

    def __bool__(self):
        return True

    def to_dict(self) -> dict:
        return {"order": self.order, "charpoly": str(self.charpoly), "checked": self.checked,
                "max_order": self.max_order}

    def __repr__(self):
        return f"QuasiPoly(order={self.order}, char={self.charpoly})"


class Reject:
    """No recurrence of order <= max_order fits; falsy."""

    def __init__(self, reason: str, linear_complexity: int, max_order: int):
        self.reason, self.linear_complexity, self.max_order = reason, linear_complexity, max_order

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"reject": self.reason, "linear_complexity": self.linear_complexity,
                "max_order": self.max_order}

    def __repr__(self):
        return f"Reject({self.reason!r})"


def _field(x, d):
    if isinstance(x, CycScalar):
        return x
    return as_scalar(d, x)


def _berlekamp_massey(s: list) -> tuple:
    """Shortest connection polynomial C (C[0] = 1) with sum_i C[i] s[n-i] = 0; returns (L, C)."""
    zero = s[0] * 0
    C, B = [zero + 1], [zero + 1]
    L, m, b = 0, 1, zero + 1
    for n in range(len(s)):
        delta = s[n]
        for i in range(1, L + 1):
            if i < len(C) and C[i]:
                delta = delta + C[i] * s[n - i]
        if not delta:
            m += 1
            continue
        f = delta / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [zero] * (need - len(C))
        for i, y in enumerate(B):
            C[i + m] = C[i + m] - f * y
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, delta, 1
        else:
            m += 1
    C = (C + [zero] * (L + 1))[: L + 1]
    return L, C


def quasipoly_detect(seq, max_order: int, d: int = None):
    """Minimal linear recurrence of the EGF coefficients `seq`, or Reject."""
    N = len(seq)
    if N < 2 * max_order + 4:
        raise InsufficientData(f"{N} terms cannot certify order {max_order}; need {2 * max_order + 4}")
    if d is None:
        d = next((x.d for x in seq if isinstance(x, CycScalar)), 1)
    s = [_field(x, d) for x in seq]
    L, C = _berlekamp_massey(s)
    if L > max_order:
        return Reject(f"linear complexity {L} exceeds max_order {max_order}", L, max_order)
    coeffs = [-C[L - q] for q in range(L)]
    charpoly = Poly(d, [-c for c in coeffs] + [1])
    cert = QuasiPoly(L, coeffs, charpoly, N, max_order)
    if not cert.annihilates(s):
        return Reject("fitted recurrence fails on the given terms", L, max_order)
    return cert


class QfinReport:
    def __init__(self, ok: bool, certificates: dict, N: int, max_order: int):
        self.ok, self.certificates, self.N, self.max_order = ok, certificates, N, max_order

    def __bool__(self):
        return self.ok

    def failures(self) -> list:
        return [k for k, c in self.certificates.items() if not c]


def qfin_check(lam: WeightData, N: int = None, max_order: int = 8) -> QfinReport:
    """Quasi-finiteness: (1 - e^{dz}) D_{1,l} and D_{i,l} - D_{1,l} all quasi-polynomial."""
    N = lam.R_max if N is None else N
    if N > lam.R_max:
        raise InsufficientData(f"weight known to order {lam.R_max}, asked for {N}")
    if N + 1 < 2 * max_order + 4:
        raise InsufficientData(f"order {N} cannot certify max_order {max_order}")
    n, d = lam.n, lam.d
    certs = {}
    for l in range(d):
        D1 = lam.series(1, l, N)
        certs[(1, l)] = quasipoly_detect(one_minus_exp_times(D1, d).c, max_order, d)
        for i in range(2, n + 1):
            certs[(i, l)] = quasipoly_detect((lam.series(i, l, N) - D1).c, max_order, d)
    return QfinReport(all(certs.values()), certs, N, max_order)


# ------------------------------------------------------------ F series

def _ctilde(params, d: int) -> tuple:
    if params is None:
        return tuple(CycScalar.zero(d) for _ in range(d))
    if isinstance(params, CherParams):
        return params.ctilde
    return tuple(as_scalar(d, x) for x in params)


def _f_coeff(lam: WeightData, i: int, l: int, r: int, ct: tuple) -> CycScalar:
    n, d = lam.n, lam.d
    if i >= 2:
        return lam(i, l, r) - lam(i - 1, l, r)
    c1 = ct[l % d] + 1
    acc = lam(n, l, r + 1) - c1 * lam(n, l, r)
    for j in range(r + 2):
        acc = acc - lam(1, l + 1, j) * comb(r + 1, j)
    for j in range(r + 1):
        acc = acc + c1 * lam(1, l + 1, j) * comb(r, j)
    return acc


def f_series(lam: WeightData, i: int, l: int, N: int, params=None) -> FormalSeries:
    """F_{i,l}(z) to order N, checked against its differential form."""
    n, d = lam.n, lam.d
    if not 1 <= i <= n:
        raise RangeError(f"i={i} outside 1..{n}")
    need = N + 1 if i == 1 else N
    if need > lam.R_max:
        raise InsufficientData(f"F_{{{i},{l}}} to order {N} needs weights to order {need}")
    ct = _ctilde(params, d)
    F = FormalSeries(d, [_f_coeff(lam, i, l, r, ct) for r in range(N + 1)])
    if i == 1:
        c1 = ct[l % d] + 1
        Dn = lam.series(n, l, N + 1)
        eD = FormalSeries.exp(d, 1, N + 1) * lam.series(1, l + 1, N + 1)
        G = Dn.deriv() - Dn.scale(c1).truncate(N) - eD.deriv() + eD.scale(c1).truncate(N)
    else:
        G = lam.series(i, l, N) - lam.series(i - 1, l, N)
    for r in range(N + 1):
        if F[r] != G[r]:
            raise SeriesMismatch(f"F_{{{i},{l}}} routes disagree at r={r}", (i, l, r))
    return F


# ------------------------------------------------------- tensor products

def _factor_display1(f: TensorFactor, n: int, d: int, i: int, k: int, N: int) -> FormalSeries:
    """sum_p sum_l lambda^(p)_{(ld+k)n+i-1} (-z)^p/p! e^{-(a+ld+k)z}, p from 0."""
    out = FormalSeries.zero(d, N)
    for (K, p), v in f.labels.items():
        q, rem = divmod(K - (i - 1), n)
        if rem or (q - k) % d:
            continue
        shift = f.a + q
        term = FormalSeries.monomial(d, p, N, v * (-1) ** p) * FormalSeries.exp(d, -shift, N)
        out = out + term
    return out


def _factor_display2_numerator(f: TensorFactor, n: int, d: int, i: int, k: int, N: int) -> FormalSeries:
    """sum_l e^{-(a+ld+k)z} (g_{(ld+k)n+i-1} + ... + g_{(ld+k)n+dn+i-2})."""
    out = FormalSeries.zero(d, N)
    sup = f.support()
    if sup is None:
        return out
    lo, hi = sup[0] - 1, sup[1]  # h_K can be nonzero only for lo <= K <= hi
    D = d * n
    l = (lo - (k * n + i - 1)) // D - 1
    while (l * d + k) * n + i - 1 <= hi:
        base = (l * d + k) * n + i - 1
        g = FormalSeries.zero(d, N)
        for K in range(base, base + D):
            for p in range(f.m + 1):
                hv = f.h(K, p)
                if hv:
                    g = g + FormalSeries.monomial(d, p, N, hv * (-1) ** p)
        if g:
            out = out + FormalSeries.exp(d, -(f.a + l * d + k), N) * g
        l += 1
    return out


def tensor_d_series(T: TensorLabels, n: int, d: int, i: int, k: int, N: int) -> FormalSeries:
    """D_{i,k}(z) = sum_j D_{i,j,k}(z) to order N; both closed forms are computed and compared."""
    if T.d != d:
        raise RangeError(f"labels over Q(zeta_{T.d}) used with d={d}")
    D1 = FormalSeries.zero(d, N)
    num = FormalSeries.zero(d, N + 1)
    for f in T.factors:
        D1 = D1 + _factor_display1(f, n, d, i, k, N)
        num = num + _factor_display2_numerator(f, n, d, i, k, N + 1)
    D2 = num.div_one_minus_exp(d)
    for r in range(N + 1):
        if D1[r] != D2[r]:
            raise SeriesMismatch(f"tensor displays disagree at r={r}", (i, k, r))
    return D1


def weight_from_tensor(T: TensorLabels, n: int, d: int, N: int) -> WeightData:
    vals = {}
    for i in range(1, n + 1):
        for k in range(d):
            for r, v in enumerate(tensor_d_series(T, n, d, i, k, N).c):
                vals[(i, k, r)] = v
    return WeightData(n, d, vals, N)


# ---------------------------------------------- parabolic characteristic data

class Division:
    """One exact division replayed from the nondegeneracy recursion."""

    def __init__(self, k: int, i: int, l: int, divisor: Poly, dividend: Poly, quotient, exact: bool):
        self.k, self.i, self.l = k, i, l
        self.divisor, self.dividend, self.quotient, self.exact = divisor, dividend, quotient, exact

    def to_dict(self) -> dict:
        return {"k": self.k, "i": self.i, "l": self.l, "divisor": str(self.divisor),
                "dividend": str(self.dividend), "quotient": str(self.quotient), "exact": self.exact}


class NondegReport:
    def __init__(self, ok: bool, levels: dict, divisions: list):
        self.ok, self.levels, self.divisions = ok, levels, divisions

    def __bool__(self):
        return self.ok


def _exact(divisor: Poly, dividend: Poly):
    if not divisor:
        return None, not dividend
    q, rem = divmod(dividend, divisor)
    return q, not rem


def nondegenerate_check(b: CharPolySet, depth: int = 1) -> NondegReport:
    """Nonzero b_{-1}^{i,l} for all i, l; replays the division recursion down to k = -1 - depth.

    Level k-1 is taken to be the displayed element of I_{k-1}^{i,l},
    b_k^{i-1,l}(w) * b_{-1}^{i,l+r}(w - r), made monic; each step checks that
    b_k^{i-1,l} divides it exactly and that it is nonzero.
    """
    n, d = b.n, b.d
    ok = all(b.polys.values())
    levels = {-1: dict(b.polys)}
    divisions = []
    for k in range(-1, -1 - depth, -1):
        cur, nxt = levels[k], {}
        for i in range(1, n + 1):
            if i >= 2:
                j = (k + i - 2) % n + 1
                r = (j - (k + i - 1)) // n
                src = i - 1
            else:
                j = (k - 1) % n + 1
                r = (j - k) // n - 1
                src = n
            for l in range(d):
                prev = cur[(src, l)]
                other = b[(i, l + r)].shift(-r)
                prod = prev * other
                new = prod.monic()
                nxt[(i, l)] = new
                q, exact = _exact(prev, new) if prev else (None, not new)
                divisions.append(Division(k - 1, i, l, prev, new, q, exact))
                q2, exact2 = _exact(new, prod)
                divisions.append(Division(k - 1, i, l, new, prod, q2, exact2))
                if not new or not exact or not exact2:
                    ok = False
        levels[k - 1] = nxt
    return NondegReport(ok and all(b.polys.values()), levels, divisions)


def _poly_in_omega(f: Poly, p: CherParams, shift=0) -> CherElem:
    w = omega(p) + shift
    acc, pw = CherElem(p), CherElem.scalar(p)
    for c in f.c:
        if c:
            acc = acc + pw.scale(c)
        pw = pw * w
    return acc


def _params(params, d: int) -> CherParams:
    if params is None:
        return CherParams(d)
    if isinstance(params, CherParams):
        return params
    return CherParams.from_ctilde(d, 1, params)


def derived_mid_basis(b: CharPolySet, n: int, d: int, r_max: int, params=None) -> list:
    """Spanning vectors of gl_n(H)[0,b] with omega-power r <= r_max, entries normal-formed in H.

    H_i w^r b^{i+1,l}(w) e_l for 1 <= i < n, then
    E_11 uv (w+1)^r b^{1,l}(w+1) e_{l+1} - E_nn vu w^r b^{1,l}(w) e_l.
    """
    p = _params(params, d)
    u, v = CherElem.mono(p, 1), CherElem.mono(p, 0, 1)
    e = [cher_idempotent(p, l) for l in range(d)]
    w = omega(p)
    out = []
    for l in range(d):
        for r in range(r_max + 1):
            for i in range(1, n):
                x = (w ** r) * _poly_in_omega(b[(i + 1, l)], p) * e[l]
                out.append(MatElem(n, {(i, i): x, (i + 1, i + 1): -x}))
            w1 = w + 1
            top = u * v * (w1 ** r) * _poly_in_omega(b[(1, l)], p, 1) * e[(l + 1) % d]
            bot = v * u * (w ** r) * _poly_in_omega(b[(1, l)], p) * e[l]
            out.append(MatElem(n, {(1, 1): top}) - MatElem(n, {(n, n): bot}))
    return out


def mid_bracket_identities(b: CharPolySet, n: int, d: int, r_max: int = 1, params=None) -> Report:
    """Recompute the commutators that produce the spanning set, and the vanishing ones."""
    p = _params(params, d)
    u, v = CherElem.mono(p, 1), CherElem.mono(p, 0, 1)
    e = [cher_idempotent(p, l) for l in range(d)]
    w = omega(p)
    rep = Report("mid-brackets", {"n": n, "d": d, "r_max": r_max})
    for r in range(r_max + 1):
        wr, w1r = w ** r, (w + 1) ** r
        for l1 in range(d):
            for l2 in range(d):
                for i in range(1, n):
                    bb = _poly_in_omega(b[(i + 1, l2)], p)
                    lhs = mat_bracket(MatElem.E(n, i, i + 1, wr * e[l1]), MatElem.E(n, i + 1, i, bb * e[l2]))
                    rhs = MatElem(n)
                    if l1 == l2:
                        x = wr * bb * e[l1]
                        rhs = MatElem(n, {(i, i): x, (i + 1, i + 1): -x})
                    rep.add(f"H-bracket i={i} r={r} l1={l1} l2={l2}", lhs == rhs)
                bb = b[(1, l1)]
                lhs = mat_bracket(MatElem.E(n, 1, n, u * _poly_in_omega(bb, p) * e[l1]),
                                  MatElem.E(n, n, 1, v * w1r * e[l2]))
                rhs = MatElem(n)
                if (l1 + 1) % d == l2:
                    rhs = (MatElem(n, {(1, 1): u * v * w1r * _poly_in_omega(bb, p, 1) * e[l2]})
                           - MatElem(n, {(n, n): v * u * wr * _poly_in_omega(bb, p) * e[l1]}))
                rep.add(f"uv-bracket r={r} l1={l1} l2={l2}", lhs == rhs)
                for i in range(1, n):
                    z1 = mat_bracket(MatElem.E(n, i, i + 1, wr * e[l1]),
                                     MatElem.E(n, 1, n, u * _poly_in_omega(bb, p) * e[l2]))
                    z2 = mat_bracket(MatElem.E(n, i + 1, i, _poly_in_omega(b[(i + 1, l1)], p) * e[l1]),
                                     MatElem.E(n, n, 1, v * wr * e[l2]))
                    rep.add(f"zero-brackets i={i} r={r} l1={l1} l2={l2}", not z1.entries and not z2.entries)
    return rep


def weight_eval(lam: WeightData, x: MatElem):
    """lambda on a diagonal degree-zero matrix over H, via d_{i,l,r} = lambda(E_ii w^r e_l)."""
    acc = CycScalar.zero(lam.d)
    for (i, j), ent in x.entries.items():
        tr = poly_to_trig(ent) if isinstance(ent, CherElem) else ent
        for (s, r, k), c in tr.e_coeffs().items():
            if i != j or s:
                raise NotInAlgebra("weights are only defined on the diagonal degree-zero part")
            acc = acc + c * lam(i, k, r)
    return acc


def highly_degenerate_check(lam: WeightData, b: CharPolySet, r_max: int, params=None) -> bool:
    """lambda vanishes on every spanning vector of gl_n(H)[0,b] up to r_max."""
    need = r_max + b.max_degree() + 1
    if lam.R_max < need:
        raise InsufficientOrder(f"need weights to order {need}, have {lam.R_max}")
    return all(not weight_eval(lam, x) for x in derived_mid_basis(b, lam.n, lam.d, r_max, params))


# ------------------------------------------------------------- integrability

def _series_div(num: list, den: list, N: int, d: int) -> list:
    """Ordinary power series num/den to z^N; den[0] != 0."""
    zero = CycScalar.zero(d)
    num = list(num) + [zero] * (N + 1)
    den = list(den) + [zero] * (N + 1)
    inv0 = den[0].inv()
    out = []
    for r in range(N + 1):
        acc = num[r]
        for j in range(r):
            acc = acc - out[j] * den[r - j]
        out.append(acc * inv0)
    return out


def ab_series(P: Poly, N: int) -> tuple:
    """(lam_r for 1 <= r <= N, lam_{-r} for 1 <= r <= N) forced by a Drinfeld polynomial P."""
    d = P.d
    pos = _series_div([-c for c in P.deriv().c], P.c, N - 1, d)
    m = P.degree
    Q, Pt = P.deriv().reverse(m - 1).c if m else (), P.reverse(m).c
    neg = _series_div(Q, Pt, N, d)[1:] if m else [CycScalar.zero(d)] * N
    return pos, neg


def c_series(P: Poly, N: int) -> list:
    """lam_r, 1 <= r <= N: expansion of P'/P - deg(P)/z at infinity."""
    d, m = P.d, P.degree
    if not m:
        return [CycScalar.zero(d)] * N
    return _series_div(P.deriv().reverse(m - 1).c, P.reverse(m).c, N, d)[1:]


def _newton(power_sums: list, m: int, d: int) -> list:
    """Elementary symmetric e_0..e_m from p_1..p_m."""
    e = [CycScalar.one(d)]
    for k in range(1, m + 1):
        acc = CycScalar.zero(d)
        for i in range(1, k + 1):
            acc = acc + e[k - i] * power_sums[i - 1] * (-1) ** (i - 1)
        e.append(acc * Fraction(1, k))
    return e


def _poly_from_power_sums(ps: list, m: int, d: int) -> Poly:
    """Monic degree-m polynomial whose roots have the given power sums."""
    e = _newton(ps, m, d)
    return Poly(d, [e[m - k] * (-1) ** (m - k) for k in range(m + 1)])


def recover_drinfeld(which: str, lam_ij: dict, N: int, d: int, degree: int = None) -> Poly:
    """Candidate P from lam_{i,j,.} ({r: value}); degree None means the smallest fitting one."""
    get = lambda r: as_scalar(d, lam_ij.get(r, 0))
    ps = [get(r) for r in range(1, N + 1)]
    if which == "AB":
        m = degree
        if m > N:
            raise InsufficientData(f"degree {m} needs {m} positive coefficients, have {N}")
        R = _poly_from_power_sums(ps, m, d)   # roots 1/beta
        if m and not R.coeff(0):
            raise SeriesMismatch("power sums force a root at infinity", None)
        return R.reverse(m).monic()
    if degree is not None:
        return _poly_from_power_sums(ps, degree, d)
    for m in range(0, N // 2 + 1):
        P = _poly_from_power_sums(ps, m, d)
        if c_series(P, N) == ps:
            return P
    raise SeriesMismatch("no Drinfeld polynomial fits the given coefficients", None)


def _nonneg_int(x: CycScalar):
    if not x.is_rational():
        return None
    q = x.rational()
    return int(q) if q.denominator == 1 and q >= 0 else None


class IntegrabilityReport:
    def __init__(self, which: str, polys: dict, N: int):
        self.which, self.polys, self.N = which, polys, N

    def __bool__(self):
        return True

    def to_dict(self) -> dict:
        return {"which": self.which, "N": self.N,
                "P": {f"{i},{j}": str(p) for (i, j), p in sorted(self.polys.items())}}


def integrability_check(which: str, lam: dict, P: dict = None, N: int = 12, n: int = None,
                        d: int = 1) -> IntegrabilityReport:
    """Drinfeld-polynomial criterion for L(Lambda); lam maps (i, j, r) to a scalar.

    Raises DegreeMismatch or SeriesMismatch naming the failing index. When P
    is omitted it is recovered from the coefficients first.
    """
    if which not in ("AB", "C"):
        raise RangeError(f"unknown family {which!r}")
    if n is None:
        n = max((i for (i, _, _) in lam), default=0) + 1
    lam = {k: as_scalar(d, v) for k, v in lam.items()}
    if which == "C" and any(i == 0 and r <= 0 and v for (i, _, r), v in lam.items()):
        raise RangeError("lambda_{0,j,r} is only defined for r >= 1 in the C family")
    zero = CycScalar.zero(d)
    polys = {}
    for i in range(n):
        for j in range(d):
            row = {r: v for (a, b, r), v in lam.items() if (a, b) == (i, j)}
            deg_needed = which == "AB" or i >= 1
            m = None
            if deg_needed:
                m = _nonneg_int(row.get(0, zero))
                if m is None:
                    raise DegreeMismatch(f"lambda_{{{i},{j},0}} = {row.get(0, zero)} is not a nonnegative integer", (i, j))
            if P is not None and (i, j) in P:
                Pij = P[(i, j)]
                Pij = Pij if isinstance(Pij, Poly) else Poly(d, Pij)
            elif P is not None:
                Pij = Poly(d, [1])
            else:
                Pij = recover_drinfeld(which, row, N, d, m)
            if not Pij.is_monic():
                raise RangeError(f"P_{{{i},{j}}} = {Pij} is not monic")
            if which == "AB" and not Pij.coeff(0):
                raise RangeError(f"P_{{{i},{j}}} has zero constant term")
            if deg_needed and Pij.degree != m:
                raise DegreeMismatch(f"deg P_{{{i},{j}}} = {Pij.degree} but lambda_{{{i},{j},0}} = {m}", (i, j))
            if which == "AB":
                pos, neg = ab_series(Pij, N)
                for r in range(1, N + 1):
                    if row.get(r, zero) != pos[r - 1]:
                        raise SeriesMismatch(f"lambda_{{{i},{j},{r}}} = {row.get(r, zero)}, expected {pos[r - 1]}", (i, j, r))
                    if row.get(-r, zero) != neg[r - 1]:
                        raise SeriesMismatch(f"lambda_{{{i},{j},{-r}}} = {row.get(-r, zero)}, expected {neg[r - 1]}", (i, j, -r))
            else:
                cs = c_series(Pij, N)
                for r in range(1, N + 1):
                    if row.get(r, zero) != cs[r - 1]:
                        raise SeriesMismatch(f"lambda_{{{i},{j},{r}}} = {row.get(r, zero)}, expected {cs[r - 1]}", (i, j, r))
            polys[(i, j)] = Pij
    return IntegrabilityReport(which, polys, N)
