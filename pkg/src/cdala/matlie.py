"""Matrices over the rings, gl_n brackets, the universal central extension cocycle."""

from fractions import Fraction

from .errors import NotInAlgebra, SchemeDomain, ShapeMismatch, VariantViolation
from .rings import (
    CommElem,
    KahlerClass,
    SmashElem,
    commutator_member,
    format_terms,
    in_commutator_subspace,
    kahler_reduce,
    morita_to_matrix,
)
from .scalars import CycScalar, zeta_power


def _pieces(e) -> list:
    if isinstance(e, CycScalar):
        return [(e, "")]
    return e.pieces()


class MatElem:
    """Sparse n x n matrix {(row, col): ring element}, 1-indexed."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries=None):
        self.n = n
        out = {}
        for (i, j), e in (entries or {}).items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ShapeMismatch(f"index ({i},{j}) outside {n}x{n}")
            if e:
                out[(i, j)] = e
        self.entries = out

    @classmethod
    def E(cls, n: int, i: int, j: int, a) -> "MatElem":
        return cls(n, {(i, j): a})

    @classmethod
    def diag(cls, n: int, a) -> "MatElem":
        return cls(n, {(i, i): a for i in range(1, n + 1)})

    def _check(self, other):
        if not isinstance(other, MatElem):
            raise ShapeMismatch("matrix operand expected")
        if other.n != self.n:
            raise ShapeMismatch(f"sizes {self.n} and {other.n} differ")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.entries)
        for k, e in other.entries.items():
            out[k] = out[k] + e if k in out else e
        return MatElem(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MatElem(self.n, {k: -e for k, e in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MatElem":
        return MatElem(self.n, {k: e * c for k, e in self.entries.items()})

    def rmul_ring(self, a) -> "MatElem":
        """Entrywise right multiplication by a ring element."""
        return MatElem(self.n, {k: e * a for k, e in self.entries.items()})

    def lmul_ring(self, a) -> "MatElem":
        return MatElem(self.n, {k: a * e for k, e in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, MatElem):
            return self.scale(other)
        self._check(other)
        by_row = {}
        for (k, j), e in other.entries.items():
            by_row.setdefault(k, []).append((j, e))
        out = {}
        for (i, k), e1 in self.entries.items():
            for j, e2 in by_row.get(k, ()):
                p = e1 * e2
                out[(i, j)] = out[(i, j)] + p if (i, j) in out else p
        return MatElem(self.n, out)

    def __rmul__(self, c):
        return MatElem(self.n, {k: c * e for k, e in self.entries.items()})

    def trace(self):
        tr = None
        for i in range(1, self.n + 1):
            e = self.entries.get((i, i))
            if e is not None:
                tr = e if tr is None else tr + e
        return tr

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.entries
        if not isinstance(other, MatElem):
            return NotImplemented
        if self.n != other.n:
            return False
        return (self - other).entries == {}

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def pieces(self) -> list:
        out = []
        for (i, j) in sorted(self.entries):
            for c, mono in _pieces(self.entries[(i, j)]):
                out.append((c, f"E[{i},{j}]" + (f"*{mono}" if mono else "")))
        return out

    def __str__(self):
        return format_terms(self.pieces())

    __repr__ = __str__


def mat_bracket(x: MatElem, y: MatElem) -> MatElem:
    x._check(y)
    return x * y - y * x


class ExtElem:
    """Matrix part plus central Kahler class, an element of the universal central extension."""

    __slots__ = ("mat", "central")

    def __init__(self, mat: MatElem, central: KahlerClass = None, d: int = None):
        self.mat = mat
        if central is None:
            central = KahlerClass(d if d is not None else _ring_d(mat))
        self.central = central

    def __add__(self, other):
        return ExtElem(self.mat + other.mat, self.central + other.central)

    def __neg__(self):
        return ExtElem(-self.mat, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtElem":
        return ExtElem(self.mat.scale(c), self.central.scale(c))

    def __bool__(self):
        return bool(self.mat) or bool(self.central)

    def __eq__(self, other):
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.mat == other.mat and self.central == other.central

    def __str__(self):
        m, c = str(self.mat), str(self.central)
        if c == "0":
            return m
        if m == "0":
            return c
        return f"{m} + {c}" if not c.startswith("-") else f"{m} - {c[1:]}"

    __repr__ = __str__


def _ring_d(mat: MatElem) -> int:
    for e in mat.entries.values():
        return e.d
    return 1


def _e_basis(p: SmashElem) -> dict:
    """Coefficients of p in the basis u^a v^b e_k: sum_i c_{a,b,i} zeta^{ik}."""
    d = p.d
    out = {}
    for (a, b, i), c in p.terms.items():
        for k in range(d):
            key = (a, b, k)
            v = c * zeta_power(d, i * k) if i else c
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


def window(p: int, k: int, d: int) -> tuple:
    """Write p = m + d*l with -k <= m <= d-1-k; returns (m, l)."""
    l = (p + k) // d
    return p - d * l, l


def _central_direct(x: MatElem, y: MatElem, d: int) -> KahlerClass:
    out = KahlerClass(d)
    xs = {pos: _e_basis(e) for pos, e in x.entries.items()}
    ys = {pos: _e_basis(e) for pos, e in y.entries.items()}
    acc = {}
    for (a1, b1), t1 in xs.items():
        t2 = ys.get((b1, a1))
        if t2 is None:
            continue
        for (i1, j1, k1), c1 in t1.items():
            m1, l1 = window(i1 - j1, k1, d)
            for (i2, j2, k2), c2 in t2.items():
                m2, l2 = window(i2 - j2, k2, d)
                if (m1 + k1 - k2) % d or (k1 - m2 - k2) % d:
                    continue
                # s^{l1} t^{j1} d(s^{l2} t^{j2})
                key = (l1 + l2, j1 + j2)
                c = c1 * c2
                al, be = acc.get(key, (0, 0))
                acc[key] = (c * l2 + al, c * j2 + be)
    if acc:
        out = KahlerClass(d, acc)
    return out


def embed_toroidal(x: MatElem) -> dict:
    """Block matrix in M_{nd}(C[s^+-1, t^+-1]); entry E_ab p goes to rows a + P n, cols b + Q n."""
    n = x.n
    out = {}
    for (a, b), p in x.entries.items():
        for (P, Q), e in morita_to_matrix(p, "two_var").items():
            key = (a + P * n, b + Q * n)
            out[key] = out[key] + e if key in out else e
    return {k: v for k, v in out.items() if v}


def _central_morita(x: MatElem, y: MatElem, d: int) -> KahlerClass:
    X, Y = embed_toroidal(x), embed_toroidal(y)
    out = KahlerClass(d)
    for (i, j), f in X.items():
        g = Y.get((j, i))
        if g is not None:
            out = out + kahler_reduce(f, g)
    return out


def uce_bracket(x: ExtElem, y: ExtElem, route: str = "direct") -> ExtElem:
    """Bracket in the universal central extension of sl_n(A), A in {A, B, C}.

    Central inputs are ignored; the central output is the HC_1 cocycle in (s, t) coordinates.
    """
    for e in list(x.mat.entries.values()) + list(y.mat.entries.values()):
        if not isinstance(e, SmashElem) or e.variant not in ("A", "B", "C", "GroupRing"):
            raise VariantViolation("uce_bracket needs entries in A, B or C")
    d = x.central.d
    mat = mat_bracket(x.mat, y.mat)
    if route == "direct":
        central = _central_direct(x.mat, y.mat, d)
    elif route == "morita":
        central = _central_morita(x.mat, y.mat, d)
    else:
        raise ValueError(f"unknown route {route!r}")
    return ExtElem(mat, central)


def sl_membership(x: MatElem) -> bool:
    """x lies in sl_n tensor R plus scalar matrices with entries in [R, R]."""
    tr = x.trace()
    if tr is None or not tr:
        return True
    if isinstance(tr, CycScalar):
        return False
    if tr.variant in ("LoopA", "PolyB"):
        return in_commutator_subspace(tr)
    return commutator_member(tr)


def kappa(x: MatElem, y: MatElem):
    """Tr(m1 m2) delta(g1 = g2^-1), extended bilinearly over group-ring entries."""
    x._check(y)
    d = None
    total = None
    for (a, b), p in x.entries.items():
        q = y.entries.get((b, a))
        if q is None:
            continue
        d = p.d
        for (_, _, i), c1 in p.terms.items():
            for (_, _, j), c2 in q.terms.items():
                if (i + j) % d == 0:
                    total = c1 * c2 if total is None else total + c1 * c2
    if total is None:
        return CycScalar.zero(d or _ring_d(x))
    return total


class NonHomogeneous:
    """Marker returned by grade for mixed-degree input."""

    def __repr__(self):
        return "NonHomogeneous"

    def __eq__(self, other):
        return isinstance(other, NonHomogeneous)

    def __hash__(self):
        return 0


def grade(x: MatElem):
    """deg(E_ij v^r u^s g) = (r - s) n + j - i; NonHomogeneous if terms disagree."""
    degs = set()
    for (i, j), e in x.entries.items():
        for g in e.degrees():
            degs.add(g * x.n + j - i)
    if len(degs) == 1:
        return degs.pop()
    if not degs:
        return 0
    return NonHomogeneous()


def _split_term(variant, scheme, key, i, j):
    """-1, 0 or 1: which triangular part the term E_ij * monomial(key) belongs to."""
    if scheme == "td1":
        s = 0
    elif scheme == "td2":
        s = key[0]
    else:  # td3, td3C: exponent of u in (u, w) or (v, w, u) coordinates
        s = key[0] - key[1]
    if s:
        return -1 if s < 0 else 1
    if i > j:
        return -1
    if i < j:
        return 1
    return 0


def triangular_project(x: MatElem, scheme: str) -> tuple:
    """Split x into (neg, mid, pos) for the triangular decomposition `scheme`."""
    if scheme not in ("td1", "td2", "td3", "td3C"):
        raise SchemeDomain(f"unknown scheme {scheme!r}")
    variant = None
    for e in x.entries.values():
        variant = e.variant
    if variant is not None:
        if scheme in ("td2", "td3") and variant not in ("A", "B"):
            raise SchemeDomain(f"{scheme} needs ring A or B, got {variant}")
        if scheme == "td3C" and variant != "C":
            raise SchemeDomain(f"td3C needs ring C, got {variant}")
    if not sl_membership(x):
        raise NotInAlgebra("trace not in the commutator subspace")
    parts = ({}, {}, {})
    for (i, j), e in x.entries.items():
        for key, c in e.terms.items():
            side = _split_term(e.variant, scheme, key, i, j)
            bucket = parts[side + 1].setdefault((i, j), {})
            bucket[key] = c
    out = []
    for part in parts:
        out.append(MatElem(x.n, {pos: SmashElem(_variant_of(x, pos), _d_of(x), t) for pos, t in part.items()}))
    return tuple(out)


def _variant_of(x, pos):
    return x.entries[pos].variant


def _d_of(x):
    return _ring_d(x)


def anticomm0(m1: MatElem, m2: MatElem, form: str = "trace"):
    """[m1, m2]_+ = m1 m2 + m2 m1 - (2/n)(m1, m2) I."""
    n = m1.n
    f = bilinear_form(m1, m2, form)
    return m1 * m2 + m2 * m1 - MatElem.diag(n, f * Fraction(2, n))


def bilinear_form(m1: MatElem, m2: MatElem, form: str = "trace"):
    tr = (m1 * m2).trace()
    if tr is None:
        tr = 0
    if form == "trace":
        return tr
    if form == "killing":
        return tr * (2 * m1.n)
    raise ValueError(f"unknown form {form!r}")


def vv_matrix_identity(m1: MatElem, a1, m2: MatElem, a2, form: str = "trace") -> bool:
    """(1/n)(m1,m2) I [a1,a2] + 1/2 [m1,m2] [a1,a2]_+ + 1/2 [m1,m2]_+ [a1,a2] == [m1 a1, m2 a2]."""
    n = m1.n
    comm_a = a1 * a2 - a2 * a1
    anti_a = a1 * a2 + a2 * a1
    f = bilinear_form(m1, m2, form)
    lhs = MatElem.diag(n, comm_a).scale(f * Fraction(1, n)) if f else MatElem(n)
    half = Fraction(1, 2)
    lhs = lhs + mat_bracket(m1, m2).rmul_ring(anti_a).scale(half)
    lhs = lhs + anticomm0(m1, m2, form).rmul_ring(comm_a).scale(half)
    rhs = mat_bracket(m1.rmul_ring(a1), m2.rmul_ring(a2))
    return lhs == rhs


def derivation_eigen(which: str, key: tuple, d: int, k: int = None) -> Fraction:
    """Eigenvalue of a derivation on u^a v^b (times a group element).

    d_u:      the stated rule, (a - b)/d when a = b mod d, else 0.
    d_u_tor:  s-degree of the toroidal image of u^a v^b e_k, i.e. floor((a - b + k)/d).
    d_w_v:    the w-exponent b.
    """
    a, b = key[0], key[1]
    if which == "d_w_v":
        return Fraction(b)
    if which == "d_u":
        return Fraction(a - b, d) if (a - b) % d == 0 else Fraction(0)
    if which == "d_u_tor":
        return Fraction((a - b + k) // d)
    raise ValueError(f"unknown derivation {which!r}")


def derivation_act(which: str, x: ExtElem) -> ExtElem:
    """Apply d_u, d_w_v, or d_u_tor; central classes scale by their s- or t-degree."""
    out = {}
    d = x.central.d
    for pos, e in x.mat.entries.items():
        if not isinstance(e, SmashElem) or e.variant not in ("A", "B", "C"):
            raise VariantViolation("derivations act on A, B or C")
        if which == "d_u_tor":
            terms = {}
            for (a, b, k), c in _e_basis(e).items():
                lam = derivation_eigen(which, (a, b), d, k)
                if lam:
                    for i in range(d):
                        # e_k = (1/d) sum_i zeta^{-ik} xi^i
                        key = (a, b, i)
                        v = c * lam * zeta_power(d, -i * k) * Fraction(1, d)
                        terms[key] = terms[key] + v if key in terms else v
            out[pos] = SmashElem(e.variant, d, terms)
        else:
            out[pos] = SmashElem(e.variant, d, {
                key: c * derivation_eigen(which, key, d) for key, c in e.terms.items()})
    idx = 0 if which in ("d_u", "d_u_tor") else 1
    central = KahlerClass(d, {k: (al * k[idx], be * k[idx]) for k, (al, be) in x.central.terms.items()})
    return ExtElem(MatElem(x.mat.n, out), central)
