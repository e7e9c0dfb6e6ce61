"""Windowed infinite matrices, the embeddings iota and phi_a^[m], monodromic loops.

Z-indexed basis: column N*n + j - 1 stands for e_j (x) u^N, so that
E_ij u^s omega^r e_k acts on it by (-N)^r when N = k mod d, moving it to row (N+s)*n + i - 1.
"""

from .cherednik import CherElem, CherParams, TrigElem, cher_idempotent, poly_to_trig, trig_v
from .errors import NormalizationViolation, WindowTooSmall
from .matlie import MatElem
from .poly import Poly
from .scalars import CycScalar, as_scalar


class TruncScalar:
    """c_0 + c_1 t + ... + c_m t^m in Q(zeta_d)[t]/(t^(m+1))."""

    __slots__ = ("d", "m", "coeffs")

    def __init__(self, d: int, m: int, coeffs=()):
        self.d, self.m = d, m
        cs = [as_scalar(d, c) for c in list(coeffs)[: m + 1]]
        cs += [CycScalar.zero(d)] * (m + 1 - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, d: int, m: int, c) -> "TruncScalar":
        return cls(d, m, [c])

    @classmethod
    def t(cls, d: int, m: int) -> "TruncScalar":
        return cls(d, m, [0, 1])

    def _lift(self, other):
        if isinstance(other, TruncScalar):
            return other
        return TruncScalar.const(self.d, self.m, other)

    def __add__(self, other):
        o = self._lift(other)
        return TruncScalar(self.d, self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncScalar(self.d, self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        m = self.m
        out = [CycScalar.zero(self.d)] * (m + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(m + 1 - i):
                    if o.coeffs[j]:
                        out[i + j] = out[i + j] + a * o.coeffs[j]
        return TruncScalar(self.d, m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        acc = TruncScalar.const(self.d, self.m, 1)
        for _ in range(k):
            acc = acc * self
        return acc

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, CycScalar)) or not isinstance(other, TruncScalar):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})" + ("" if i == 0 else ("*t" if i == 1 else f"*t^{i}")))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class BandedMat:
    """Finite window [lo, hi) of an infinite matrix with finitely many nonzero diagonals.

    `valid` is the sub-window on which the entries are known to agree with the infinite matrix.
    """

    def __init__(self, lo: int, hi: int, entries=None, band: int = 0, valid=None):
        self.lo, self.hi = lo, hi
        self.band = band
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        self.valid = valid if valid is not None else (lo, hi)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        valid = (max(self.valid[0], other.valid[0]), min(self.valid[1], other.valid[1]))
        return BandedMat(self.lo, self.hi, out, max(self.band, other.band), valid)

    def __mul__(self, other):
        rows = {}
        for (i, k), a in self.entries.items():
            rows.setdefault(k, []).append((i, a))
        out = {}
        for (k, j), b in other.entries.items():
            for i, a in rows.get(k, ()):
                p = a * b
                out[(i, j)] = out[(i, j)] + p if (i, j) in out else p
        shrink = self.band + other.band
        lo = max(self.valid[0], other.valid[0]) + shrink
        hi = min(self.valid[1], other.valid[1]) - shrink
        if lo >= hi:
            raise WindowTooSmall(f"valid window empty after product (bands {self.band}, {other.band})")
        return BandedMat(self.lo, self.hi, out, shrink, (lo, hi))

    def restrict(self, lo: int, hi: int) -> dict:
        return {(i, j): v for (i, j), v in self.entries.items() if lo <= i < hi and lo <= j < hi}

    def agrees_with(self, other: "BandedMat") -> bool:
        lo = max(self.valid[0], other.valid[0])
        hi = min(self.valid[1], other.valid[1])
        if lo >= hi:
            raise WindowTooSmall("no common valid window")
        return self.restrict(lo, hi) == other.restrict(lo, hi)

    def diagonals(self) -> set:
        """Set of j - i over nonzero entries (principal grading degrees)."""
        return {j - i for (i, j) in self.entries}

    def __eq__(self, other):
        return isinstance(other, BandedMat) and self.entries == other.entries

    def __repr__(self):
        return f"BandedMat([{self.lo},{self.hi}), {len(self.entries)} entries, band={self.band}, valid={self.valid})"


def _check_t1(p: CherParams):
    if p.t != 1:
        raise NormalizationViolation("the infinite-matrix embeddings need t = 1")


def _trig_terms(x: MatElem) -> tuple:
    """(params, [(i, j, s, r, k, coef)]) from a matrix over the trigonometric (or polynomial) algebra."""
    p, out = None, []
    for (i, j), e in x.entries.items():
        if isinstance(e, CherElem):
            e = poly_to_trig(e)
        if not isinstance(e, TrigElem):
            raise TypeError("entries must be Cherednik elements")
        p = e.p
        for (s, r, k), c in e.e_coeffs().items():
            out.append((i, j, s, r, k, c))
    return p, out


def _columns(lo: int, hi: int, n: int, d: int, j: int, k: int):
    """N with N = k mod d and column N*n + j - 1 in [lo, hi)."""
    N0 = -((-(lo - j + 1)) // n)
    N0 += (k - N0) % d
    N = N0
    while N * n + j - 1 < hi:
        yield N
        N += d


def _embed(x: MatElem, window, shift, m: int = 0, d: int = None) -> BandedMat:
    """Shared body of iota and phi: omega acts on u^N by -N - shift."""
    lo, hi = window
    n = x.n
    p, terms = _trig_terms(x)
    if p is not None:
        _check_t1(p)
        d = p.d
    d = d or 1
    band = max((abs(s * n + i - j) for (i, j, s, _, _, _) in terms), default=0)
    if band >= hi - lo:
        raise WindowTooSmall(f"band {band} does not fit in window of width {hi - lo}")
    shift = shift if isinstance(shift, TruncScalar) else TruncScalar.const(d, m, shift)
    out = {}
    for (i, j, s, r, k, c) in terms:
        for N in _columns(lo, hi, n, d, j, k):
            row = (N + s) * n + i - 1
            if not lo <= row < hi:
                continue
            val = (shift * -1 - N) ** r * c
            key = (row, N * n + j - 1)
            out[key] = out[key] + val if key in out else val
    return BandedMat(lo, hi, out, band)


def iota(x: MatElem, window=(-20, 20)) -> BandedMat:
    """iota(E_ij u^s omega^r e_k) = sum_l (-ld-k)^r E_{(ld+k+s)n+i-1, (ld+k)n+j-1}."""
    return _embed(x, window, 0, 0)


def phi_am(x: MatElem, a=0, m: int = 1, window=(-20, 20)) -> BandedMat:
    """phi_a^[m]: omega acts by -ld-k-a-t over R_m = C[t]/(t^(m+1))."""
    p, _ = _trig_terms(x)
    d = p.d if p is not None else 1
    shift = TruncScalar(d, m, [as_scalar(d, a), 1])
    return _embed(x, window, shift, m, d)


def iota_v(terms: dict, n: int, p: CherParams, window=(-20, 20)) -> BandedMat:
    """iota on E_ij v^s omega^r e_k, given as {(i, j, s, r, k): coef}, by the closed product formula."""
    _check_t1(p)
    lo, hi = window
    d = p.d
    ct = p.ctilde
    band = max((abs(-s * n + i - j) for (i, j, s, _, _) in terms), default=0)
    if band >= hi - lo:
        raise WindowTooSmall(f"band {band} does not fit in window of width {hi - lo}")
    out = {}
    for (i, j, s, r, k), c in terms.items():
        c = as_scalar(d, c)
        for N in _columns(lo, hi, n, d, j, k % d):
            row = (N - s) * n + i - 1
            if not lo <= row < hi:
                continue
            val = c * (-N) ** r
            for q in range(s):
                val = val * (ct[(k - q - 1) % d] + (N - q))
            key = (row, N * n + j - 1)
            out[key] = out[key] + TruncScalar.const(d, 0, val) if key in out else TruncScalar.const(d, 0, val)
    return BandedMat(lo, hi, out, band)


def v_terms_to_matrix(terms: dict, n: int, p: CherParams) -> MatElem:
    """Substitute v = -u^-1 (omega - sum_l c~_{l-1} e_l) into {(i, j, s, r, k): coef}."""
    V = trig_v(p)
    W = TrigElem.mono(p, 0, 1)
    out = {}
    for (i, j, s, r, k), c in terms.items():
        e = (V ** s) * (W ** r) * cher_idempotent(p, k, TrigElem)
        e = e.scale(c)
        out[(i, j)] = out[(i, j)] + e if (i, j) in out else e
    return MatElem(n, out)


def check_hom_windowed(x: MatElem, y: MatElem, embed: str = "iota", window=(-40, 40), a=0, m: int = 1) -> bool:
    """embed(xy) == embed(x) embed(y) on the valid sub-window."""
    if embed == "iota":
        f = lambda z: iota(z, window)
    elif embed == "phi_am":
        f = lambda z: phi_am(z, a, m, window)
    else:
        raise ValueError(f"unknown embedding {embed!r}")
    ex, ey = f(x), f(y)
    prod = ex * ey
    return f(x * y).agrees_with(prod)


class MonodromicLoop:
    """w -> phi_w^[0](E) on a window, split into the d column classes."""

    def __init__(self, n: int, d: int, window, components):
        self.n, self.d, self.window = n, d, window
        self.components = components  # k -> {(row, col): Poly}

    def column_classes_ok(self) -> bool:
        n, d = self.n, self.d
        return all((col // n) % d == k for k, comp in self.components.items() for (_, col) in comp)

    def shift_law_ok(self) -> bool:
        """l_k(w - d)[R + nd, C + nd] == l_k(w)[R, C] wherever both positions lie in the window."""
        n, d = self.n, self.d
        lo, hi = self.window
        D = n * d
        for comp in self.components.values():
            for (R, C), f in comp.items():
                if lo <= R + D < hi and lo <= C + D < hi:
                    g = comp.get((R + D, C + D))
                    if g is None or g.shift(-d) != f:
                        return False
                if lo <= R - D < hi and lo <= C - D < hi and (R - D, C - D) not in comp:
                    return False
        return True


def monodromic_loop(E: MatElem, window=(-20, 20)) -> MonodromicLoop:
    lo, hi = window
    n = E.n
    p, terms = _trig_terms(E)
    d = p.d if p is not None else 1
    if p is not None:
        _check_t1(p)
    comps = {k: {} for k in range(d)}
    for (i, j, s, r, k, c) in terms:
        for N in _columns(lo, hi, n, d, j, k):
            row = (N + s) * n + i - 1
            if not lo <= row < hi:
                continue
            val = Poly(d, [-N, -1]) ** r * c
            key = (row, N * n + j - 1)
            comp = comps[k]
            comp[key] = comp[key] + val if key in comp else val
            if not comp[key]:
                del comp[key]
    return MonodromicLoop(n, d, window, comps)


def monodromy_check(E: MatElem, window=(-20, 20)) -> bool:
    loop = monodromic_loop(E, window)
    return loop.column_classes_ok() and loop.shift_law_ok()
