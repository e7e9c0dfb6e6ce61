"""Smash-product rings C[u,v] x| Z/d, Laurent rings in s,t, Kahler classes, Morita maps.

Smash monomials are triples (a, b, i) for u^a v^b xi^i, with xi u = zeta u xi
and xi v = zeta^-1 v xi.
"""

from fractions import Fraction

from .errors import MixedRootOrder, VariantViolation
from .scalars import CycScalar, as_scalar, format_scalar, zeta_power

SMASH_VARIANTS = ("A", "B", "C", "LoopA", "PolyB", "GroupRing")
COMM_VARIANTS = ("laurent2", "laurent_s", "poly2", "laurent_t")


def _smash_ok(variant: str, a: int, b: int) -> bool:
    if variant == "A":
        return True
    if variant == "B":
        return b >= 0
    if variant == "C":
        return a >= 0 and b >= 0
    if variant == "LoopA":
        return b == 0
    if variant == "PolyB":
        return b == 0 and a >= 0
    if variant == "GroupRing":
        return a == 0 and b == 0
    raise ValueError(f"unknown smash variant {variant!r}")


def _comm_ok(variant: str, a: int, b: int) -> bool:
    if variant == "laurent2":
        return True
    if variant == "laurent_s":
        return b >= 0
    if variant == "poly2":
        return a >= 0 and b >= 0
    if variant == "laurent_t":
        return a == 0
    raise ValueError(f"unknown commutative variant {variant!r}")


def _pow(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


def format_terms(pieces) -> str:
    """Join (scalar, monomial string) pairs into parseable text.

    Coefficients with several zeta powers are split into one term per power.
    """
    out = []
    for coef, mono in pieces:
        for k, q in enumerate(coef.coeffs):
            if not q:
                continue
            factors = [f for f in (_pow("z", k), mono) if f]
            qs = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            body = "*".join(factors)
            if not body:
                text = qs
            elif q == 1:
                text = body
            elif q == -1:
                text = "-" + body
            else:
                text = f"{qs}*{body}"
            out.append(text)
    if not out:
        return "0"
    s = out[0]
    for t in out[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


class SmashElem:
    """Element of a smash-product ring, normal form {(a, b, i): coef}."""

    __slots__ = ("variant", "d", "terms")

    def __init__(self, variant: str, d: int, terms=None, check: bool = True):
        self.variant = variant
        self.d = d
        out = {}
        for (a, b, i), c in (terms or {}).items():
            c = as_scalar(d, c)
            if c:
                key = (a, b, i % d)
                if check and not _smash_ok(variant, a, b):
                    raise VariantViolation(f"u^{a} v^{b} not in variant {variant}")
                prev = out.get(key)
                c = c if prev is None else prev + c
                if c:
                    out[key] = c
                else:
                    out.pop(key)
        self.terms = out

    @classmethod
    def _raw(cls, variant, d, terms):
        obj = object.__new__(cls)
        obj.variant, obj.d, obj.terms = variant, d, terms
        return obj

    @classmethod
    def mono(cls, variant: str, d: int, a: int = 0, b: int = 0, i: int = 0, coef=1):
        return cls(variant, d, {(a, b, i): coef})

    @classmethod
    def scalar(cls, variant: str, d: int, coef=1):
        return cls(variant, d, {(0, 0, 0): coef})

    @classmethod
    def zero(cls, variant: str, d: int):
        return cls._raw(variant, d, {})

    def _join(self, other) -> str:
        if self.d != other.d:
            raise MixedRootOrder(f"root orders {self.d} and {other.d} differ")
        if self.variant == other.variant or other.variant == "GroupRing":
            return self.variant
        if self.variant == "GroupRing":
            return other.variant
        raise VariantViolation(f"cannot combine {self.variant} with {other.variant}")

    def _lift(self, other):
        if isinstance(other, SmashElem):
            return other
        if isinstance(other, (int, Fraction, CycScalar)):
            return SmashElem.scalar(self.variant, self.d, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        var = self._join(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return SmashElem._raw(var, self.d, t)

    __radd__ = __add__

    def __neg__(self):
        return SmashElem._raw(self.variant, self.d, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SmashElem":
        c = as_scalar(self.d, c)
        if not c:
            return SmashElem._raw(self.variant, self.d, {})
        return SmashElem._raw(self.variant, self.d, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        if not isinstance(other, SmashElem):
            return NotImplemented
        return smash_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        acc = SmashElem.scalar(self.variant, self.d)
        for _ in range(k):
            acc = acc * self
        return acc

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            other = SmashElem.scalar(self.variant, self.d, other)
        if not isinstance(other, SmashElem):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def as_variant(self, variant: str) -> "SmashElem":
        return SmashElem(variant, self.d, self.terms)

    def pieces(self) -> list:
        out = []
        for (a, b, i) in sorted(self.terms):
            mono = "*".join(f for f in (_pow("u", a), _pow("v", b), _pow("x", i)) if f)
            out.append((self.terms[(a, b, i)], mono))
        return out

    def degrees(self) -> set:
        """v-exponent minus u-exponent of each term."""
        return {b - a for (a, b, _) in self.terms}

    def __str__(self):
        return format_terms(self.pieces())

    __repr__ = __str__


def smash_mul(x: SmashElem, y: SmashElem) -> SmashElem:
    """(u^a v^b xi^i)(u^c v^e xi^j) = zeta^{i(c-e)} u^{a+c} v^{b+e} xi^{i+j}."""
    var = x._join(y)
    d = x.d
    out = {}
    for (a, b, i), c1 in x.terms.items():
        for (c, e, j), c2 in y.terms.items():
            key = (a + c, b + e, (i + j) % d)
            coef = c1 * c2
            if i and (c - e) % d:
                coef = coef * zeta_power(d, i * (c - e))
            prev = out.get(key)
            if prev is None:
                out[key] = coef
            else:
                s = prev + coef
                if s:
                    out[key] = s
                else:
                    del out[key]
    for (a, b, _) in out:
        if not _smash_ok(var, a, b):
            raise VariantViolation(f"product leaves variant {var}: u^{a} v^{b}")
    return SmashElem._raw(var, d, out)


def idempotent(d: int, l: int, variant: str = "GroupRing") -> SmashElem:
    """e_l = (1/d) sum_i zeta^{-il} xi^i."""
    return SmashElem(variant, d, {(0, 0, i): zeta_power(d, -i * l) * Fraction(1, d) for i in range(d)})


def in_commutator_subspace(x: SmashElem) -> bool:
    """Membership in [A, A] for A = C[u^+-1] x| Z/d (LoopA) or C[u] x| Z/d (PolyB)."""
    if x.variant not in ("LoopA", "PolyB", "GroupRing"):
        raise VariantViolation(f"one-variable variant required, got {x.variant}")
    for (a, _, i) in x.terms:
        if i:
            if x.variant == "PolyB" and a < 1:
                return False
            if x.variant == "GroupRing":
                return False
        elif a % x.d == 0:
            return False
    return True


class CommElem:
    """Element of C[s^+-1, t^+-1] or a subring, {(a, b): coef} for s^a t^b."""

    __slots__ = ("variant", "d", "terms")

    def __init__(self, variant: str, d: int, terms=None, check: bool = True):
        self.variant = variant
        self.d = d
        out = {}
        for (a, b), c in (terms or {}).items():
            c = as_scalar(d, c)
            if not c:
                continue
            if check and not _comm_ok(variant, a, b):
                raise VariantViolation(f"s^{a} t^{b} not in variant {variant}")
            prev = out.get((a, b))
            c = c if prev is None else prev + c
            if c:
                out[(a, b)] = c
            else:
                out.pop((a, b))
        self.terms = out

    @classmethod
    def mono(cls, variant: str, d: int, a: int = 0, b: int = 0, coef=1):
        return cls(variant, d, {(a, b): coef})

    def _lift(self, other):
        if isinstance(other, CommElem):
            if other.d != self.d:
                raise MixedRootOrder(f"root orders {self.d} and {other.d} differ")
            return other
        if isinstance(other, (int, Fraction, CycScalar)):
            return CommElem(self.variant, self.d, {(0, 0): other})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return CommElem(self.variant, self.d, t, check=False)

    __radd__ = __add__

    def __neg__(self):
        return CommElem(self.variant, self.d, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        for (a, b), c1 in self.terms.items():
            for (c, e), c2 in o.terms.items():
                k = (a + c, b + e)
                v = out.get(k)
                p = c1 * c2
                out[k] = p if v is None else v + p
        return CommElem(self.variant, self.d, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def pieces(self) -> list:
        out = []
        for (a, b) in sorted(self.terms):
            mono = "*".join(f for f in (_pow("s", a), _pow("t", b)) if f)
            out.append((self.terms[(a, b)], mono))
        return out

    def __str__(self):
        return format_terms(self.pieces())

    __repr__ = __str__


class KahlerClass:
    """Class in Omega^1(C[s^+-1, t^+-1]) / dR.

    {(a, b): (alpha, beta)} means alpha [s^a t^b ds/s] + beta [s^a t^b dt/t].
    Normal form: for a != 0 only beta survives (alpha is traded via
    d(s^a t^b) = 0), for a = 0, b != 0 only alpha survives, at (0, 0) both.
    """

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        self.d = d
        out = {}
        zero = CycScalar.zero(d)
        for (a, b), (al, be) in (terms or {}).items():
            al, be = as_scalar(d, al), as_scalar(d, be)
            if a != 0:
                al, be = zero, be - al * Fraction(b, a)
            elif b != 0:
                be = zero
            p = out.get((a, b))
            if p is not None:
                al, be = al + p[0], be + p[1]
            if al or be:
                out[(a, b)] = (al, be)
            else:
                out.pop((a, b), None)
        self.terms = out

    @classmethod
    def zero(cls, d: int) -> "KahlerClass":
        return cls(d)

    @classmethod
    def ds_s(cls, d: int, a: int = 0, b: int = 0, coef=1) -> "KahlerClass":
        return cls(d, {(a, b): (coef, 0)})

    @classmethod
    def dt_t(cls, d: int, a: int = 0, b: int = 0, coef=1) -> "KahlerClass":
        return cls(d, {(a, b): (0, coef)})

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, KahlerClass):
            return NotImplemented
        if other.d != self.d:
            raise MixedRootOrder(f"root orders {self.d} and {other.d} differ")
        t = dict(self.terms)
        for k, (al, be) in other.terms.items():
            p = t.get(k)
            if p is not None:
                al, be = al + p[0], be + p[1]
            if al or be:
                t[k] = (al, be)
            else:
                t.pop(k, None)
        return KahlerClass._from_normal(self.d, t)

    __radd__ = __add__

    @classmethod
    def _from_normal(cls, d, terms):
        obj = object.__new__(cls)
        obj.d, obj.terms = d, terms
        return obj

    def __neg__(self):
        return KahlerClass._from_normal(self.d, {k: (-a, -b) for k, (a, b) in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KahlerClass":
        c = as_scalar(self.d, c)
        if not c:
            return KahlerClass(self.d)
        return KahlerClass._from_normal(self.d, {k: (a * c, b * c) for k, (a, b) in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, KahlerClass):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (a, b) in sorted(self.terms):
            al, be = self.terms[(a, b)]
            base = "*".join(f for f in (_pow("s", a), _pow("t", b)) if f)
            for c, form in ((al, "ds/s"), (be, "dt/t")):
                if c:
                    pieces.append((c, f"[{base + ' ' if base else ''}{form}]"))
        return format_terms(pieces)

    __repr__ = __str__


def kahler_reduce(f: CommElem, g) -> KahlerClass:
    """Class of f dg; g is a monomial (c, e) meaning s^c t^e, or a CommElem."""
    if isinstance(g, CommElem):
        out = KahlerClass(f.d)
        for (c, e), coef in g.terms.items():
            out = out + kahler_reduce(f, (c, e)).scale(coef)
        return out
    c, e = g
    return KahlerClass(f.d, {(a + c, b + e): (coef * c, coef * e) for (a, b), coef in f.terms.items()})


def kahler_exact(d: int, a: int, b: int) -> KahlerClass:
    """Class of d(s^a t^b) written out in both generators; always zero."""
    return KahlerClass(d, {(a, b): (a, b)})


def uvw_split(a: int, b: int) -> tuple:
    """u^a v^b = u^(a-b) w^b with w = uv (commutative ring part)."""
    return a - b, b


def morita_to_matrix(x: SmashElem, variant: str = "one_var") -> dict:
    """Image in M_d(C[t^+-1]) or M_d(C[s^+-1, t^+-1]), as {(row, col): CommElem}, 0-indexed.

    one_var:  u^a xi^i -> sum_l zeta^{il} E_{(l+a)%d, l} t^{floor((l+a)/d)}.
    two_var:  u^a v^b xi^i = u^(a-b) w^b xi^i, and w -> t while the u-part uses s.
    """
    d = x.d
    if variant == "one_var":
        if x.variant not in ("LoopA", "PolyB", "GroupRing"):
            raise VariantViolation(f"one_var Morita map needs LoopA, got {x.variant}")
        cvar = "laurent_t"
    elif variant == "two_var":
        if x.variant not in ("A", "B", "C", "GroupRing"):
            raise VariantViolation(f"two_var Morita map needs A or B, got {x.variant}")
        cvar = "laurent2"
    else:
        raise ValueError(f"unknown Morita variant {variant!r}")
    acc = {}
    for (a, b, i), c in x.terms.items():
        p, wexp = uvw_split(a, b)
        for l in range(d):
            row, q = (l + p) % d, (l + p) // d
            key = (0, q) if variant == "one_var" else (q, wexp)
            coef = c * zeta_power(d, i * l)
            acc.setdefault((row, l), {})
            cur = acc[(row, l)].get(key)
            acc[(row, l)][key] = coef if cur is None else cur + coef
    out = {}
    for pos, terms in acc.items():
        e = CommElem(cvar, d, terms)
        if e:
            out[pos] = e
    return out


def matrix_to_smash(m: dict, d: int, variant: str = "one_var", ring: str = None) -> SmashElem:
    """Inverse of morita_to_matrix: E_{p,l} s^q t^k -> u^(qd+p-l) w^k e_l."""
    ring = ring or ("LoopA" if variant == "one_var" else "A")
    out = SmashElem.zero(ring, d)
    for (p, l), e in m.items():
        for (q, k), c in e.terms.items():
            if variant == "one_var":
                q, k = k, 0
            ue = q * d + p - l
            mono = SmashElem(ring, d, {(ue + k, k, 0): c})
            out = out + mono * idempotent(d, l, ring)
    return out


def matmul_comm(x: dict, y: dict) -> dict:
    """Product of sparse matrices with CommElem entries."""
    out = {}
    by_row = {}
    for (k, j), e in y.items():
        by_row.setdefault(k, []).append((j, e))
    for (i, k), e1 in x.items():
        for j, e2 in by_row.get(k, ()):
            p = e1 * e2
            cur = out.get((i, j))
            out[(i, j)] = p if cur is None else cur + p
    return {k: v for k, v in out.items() if v}


def scalar_str(c: CycScalar) -> str:
    return format_scalar(c)


def commutator_member(x: SmashElem) -> bool:
    """Membership in [R, R] for any smash variant R, term by term.

    A, B, LoopA: xi-part nonzero, or u-exponent minus v-exponent not divisible by d.
    C, PolyB: as above, except that bare group elements xi^i are excluded.
    GroupRing: [R, R] = 0 since the group is abelian.
    """
    d = x.d
    for (a, b, i) in x.terms:
        if x.variant == "GroupRing":
            return False
        if i:
            if x.variant in ("C", "PolyB") and a == 0 and b == 0:
                return False
        elif (a - b) % d == 0:
            return False
    return True
