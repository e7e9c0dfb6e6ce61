"""Loop and toroidal isomorphisms, Cartan data, roots, and presentation checks."""

import random
from fractions import Fraction
from itertools import product

from .errors import RangeError, VariantViolation
from .linalg import RowSpace, det, solve
from .matlie import ExtElem, MatElem, _e_basis, embed_toroidal, mat_bracket, uce_bracket
from .report import Report
from .rings import (
    CommElem,
    KahlerClass,
    SmashElem,
    idempotent,
    matmul_comm,
    matrix_to_smash,
    morita_to_matrix,
)
from .scalars import CycScalar, zeta_power


# ---------------------------------------------------------------- isomorphisms

def _ring_d(x: MatElem, d):
    if d is not None:
        return d
    for e in x.entries.values():
        return e.d
    raise ValueError("empty matrix: pass d explicitly")


def _blocks_fwd(x: MatElem, mapper) -> dict:
    n = x.n
    out = {}
    for (a, b), p in x.entries.items():
        for (P, Q), e in mapper(p).items():
            key = (a + P * n, b + Q * n)
            out[key] = out[key] + e if key in out else e
    return {k: v for k, v in out.items() if v}


def _blocks_inv(y: MatElem, n: int, d: int) -> dict:
    """Split an nd x nd matrix into {(a, b): {(P, Q): entry}}."""
    if y.n != n * d:
        raise ValueError(f"expected a {n * d} x {n * d} matrix, got {y.n}")
    out = {}
    for (R, C), e in y.entries.items():
        P, a = divmod(R - 1, n)
        Q, b = divmod(C - 1, n)
        out.setdefault((a + 1, b + 1), {})[(P, Q)] = e
    return out


def loop_iso(x: MatElem, direction: str = "fwd", n: int = None, d: int = None) -> MatElem:
    """E_ij u^(kd+r) e_l  <->  E_{n(l+r)+i, nl+j} t^k.

    fwd takes a matrix over LoopA (or PolyB) to an nd x nd matrix over C[t^+-1];
    inv needs n and d.
    """
    if direction == "fwd":
        for e in x.entries.values():
            if not isinstance(e, SmashElem) or e.variant not in ("LoopA", "PolyB", "GroupRing"):
                raise VariantViolation("loop_iso needs entries in C[u^+-1] x| Z/d")
        d = _ring_d(x, d)
        return MatElem(x.n * d, _blocks_fwd(x, lambda p: morita_to_matrix(p, "one_var")))
    if direction == "inv":
        if n is None or d is None:
            raise ValueError("inv direction needs n and d")
        out = {}
        for pos, blk in _blocks_inv(x, n, d).items():
            out[pos] = matrix_to_smash(blk, d, "one_var", "LoopA")
        return MatElem(n, out)
    raise ValueError(f"unknown direction {direction!r}")


def toroidal_iso(x: MatElem, direction: str = "fwd", n: int = None, d: int = None,
                 ring: str = "A") -> MatElem:
    """E_ab u^i v^j e_k -> E_{a+(m+k)n, b+kn} s^l t^j with i - j = m + dl, -k <= m <= d-1-k.

    The window pins m: m + k is the residue of i - j + k mod d, and l its quotient.
    Entries over B (and C) land in C[s^+-1, t]; inv returns entries in `ring`.
    """
    if direction == "fwd":
        variants = set()
        for e in x.entries.values():
            if not isinstance(e, SmashElem) or e.variant not in ("A", "B", "C", "GroupRing"):
                raise VariantViolation("toroidal_iso needs entries in A or B")
            variants.add(e.variant)
        blocks = embed_toroidal(x)
        if "A" not in variants:
            blocks = {k: CommElem("laurent_s", v.d, v.terms) for k, v in blocks.items()}
        return MatElem(x.n * _ring_d(x, d), blocks)
    if direction == "inv":
        if n is None or d is None:
            raise ValueError("inv direction needs n and d")
        out = {}
        for pos, blk in _blocks_inv(x, n, d).items():
            out[pos] = matrix_to_smash(blk, d, "two_var", ring)
        return MatElem(n, out)
    raise ValueError(f"unknown direction {direction!r}")


def _c_ring_images(d: int):
    """Images of u, v in M_d(C[s, t]) under an injective map C -> M_d(C[s, t]).

    u -> sum_l x_l E_{l+1,l} with x_{d-1} = s and the other x_l = 1,
    v -> sum_m y_m E_{m-1,m} with y_0 = t and the other y_m = st,
    e_l -> E_ll. Then uv = vu = st and the smash relations hold.
    """
    one = lambda a, b: CommElem("poly2", d, {(a, b): 1})
    U = {((l + 1) % d, l): one(1 if l == d - 1 else 0, 0) for l in range(d)}
    V = {((m - 1) % d, m): one(0, 1) if m == 0 else one(1, 1) for m in range(d)}
    return U, V


def c_embedding(x: MatElem, d: int = None) -> MatElem:
    """sl_n(C) -> sl_nd(C[s, t]), blockwise from the injective ring map of _c_ring_images."""
    d = _ring_d(x, d)
    U, V = _c_ring_images(d)
    cache = {}

    def mono(a, b, k):
        key = (a, b, k)
        if key not in cache:
            m = {(k, k): CommElem("poly2", d, {(0, 0): 1})}
            for _ in range(b):
                m = matmul_comm(V, m)
            for _ in range(a):
                m = matmul_comm(U, m)
            cache[key] = m
        return cache[key]

    def ring_map(p):
        if p.variant not in ("C", "GroupRing", "PolyB"):
            raise VariantViolation(f"c_embedding needs ring C, got {p.variant}")
        out = {}
        for (a, b, k), c in _e_basis(p).items():
            for pos, e in mono(a, b, k).items():
                v = CommElem("poly2", d, {key: c * cc for key, cc in e.terms.items()})
                out[pos] = out[pos] + v if pos in out else v
        return {k: v for k, v in out.items() if v}

    return MatElem(x.n * d, _blocks_fwd(x, ring_map))


def block_pattern_ok(y: MatElem, n: int) -> bool:
    """y lies in p (x) C[t] + n (x) tC[t] with p = block-lower-or-diagonal, n = strictly block-upper."""
    for (R, C), e in y.entries.items():
        in_p = R >= C or (R - 1) // n == (C - 1) // n
        for (_, k) in e.terms:
            if k < 0 or (k == 0 and not in_p):
                return False
    return True


class GradedIsoReport:
    """Result of graded_iso_check; truthy when every sample agrees."""

    def __init__(self, ok, alpha, beta, checked, mismatches, literal_ok):
        self.ok = ok
        self.alpha = alpha
        self.beta = beta
        self.checked = checked
        self.mismatches = mismatches
        self.literal_ok = literal_ok

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (f"GradedIsoReport(ok={self.ok}, alpha={self.alpha}, beta={self.beta}, "
                f"checked={self.checked}, literal_ok={self.literal_ok})")


def _loop_basis(n: int, d: int, kmax: int):
    """(i, j, p, l): E_ij u^p e_l, with p ranging over the window |floor((p + l)/d)| <= kmax."""
    for i, j, l in product(range(1, n + 1), range(1, n + 1), range(d)):
        for p in range(-kmax * d - l, (kmax + 1) * d - l):
            yield i, j, p, l


def graded_iso_check(n: int, d: int, sample: int = 2) -> GradedIsoReport:
    """Compare u-degree on sl_n(C[u^+-1] x| Z/d) with the total degree on sl_nd(C[t^+-1]).

    Source degree alpha * p + (j - i) for E_ij u^p e_l, target degree (J - I) + beta * k
    for E_IJ t^k. alpha comes from the k = 0 family, beta from k != 0, then every
    basis element with |k| <= sample is checked.
    """
    def image(i, j, p, l):
        x = MatElem.E(n, i, j, SmashElem.mono("LoopA", d, p) * idempotent(d, l, "LoopA"))
        (pos, e), = loop_iso(x).entries.items()
        (_, k), = e.terms
        return pos, k

    alpha = beta = None
    for (i, j, p, l) in _loop_basis(n, d, 0):
        (I, J), k = image(i, j, p, l)
        if p:
            alpha = Fraction((J - I) - (j - i), p)
            break
    if alpha is None:
        # d = 1: the k = 0 family is degree 0, so any common scale fits; keep the d > 1 one
        alpha = Fraction(-n)
    for (i, j, p, l) in _loop_basis(n, d, 1):
        (I, J), k = image(i, j, p, l)
        if k:
            beta = Fraction(alpha * p + (j - i) - (J - I), k)
            break
    mismatches, literal_bad, count = [], 0, 0
    for (i, j, p, l) in _loop_basis(n, d, sample):
        (I, J), k = image(i, j, p, l)
        count += 1
        if alpha * p + (j - i) != (J - I) + beta * k:
            mismatches.append((i, j, p, l))
        if p != (J - I) + k:
            literal_bad += 1
    return GradedIsoReport(not mismatches, alpha, beta, count, mismatches, literal_bad == 0)


# ---------------------------------------------------------------- Cartan data and roots

def cartan_labels(n: int, d: int) -> list:
    return [(i, j) for i in range(1, n) for j in range(d)] + [(0, j) for j in range(d - 1)]


def cartan_element(n: int, d: int, i: int, j: int, variant: str = "LoopA") -> MatElem:
    e = lambda l: idempotent(d, l % d, variant)
    if i:
        return MatElem(n, {(i, i): e(j), (i + 1, i + 1): -e(j)})
    return MatElem(n, {(n, n): e(j), (1, 1): -e(j + 1)})


def cartan_basis(n: int, d: int) -> list:
    """H_{i,j}: (E_ii - E_{i+1,i+1}) e_j for i >= 1, and E_nn e_j - E_11 e_{j+1} for i = 0, j <= d-2."""
    return [cartan_element(n, d, i, j) for (i, j) in cartan_labels(n, d)]


def _delta(p: bool) -> int:
    return 1 if p else 0


def eigen_formula(a, b, i, j, k, l, n, d, literal: bool = False) -> int:
    """Closed form of [H_{a,b}, E_ij u^k e_l] / E_ij u^k e_l.

    The last term of the a = 0 case carries a plus sign; literal=True uses the
    printed minus sign instead.
    """
    eq = lambda x, y: (x - y) % d == 0
    if a:
        return (_delta(eq(b - k, l)) * (_delta(a == i) - _delta(a + 1 == i))
                - _delta(eq(b, l)) * (_delta(a == j) - _delta(a + 1 == j)))
    last = -1 if literal else 1
    return (_delta(n == i) * _delta(eq(b - k, l)) - _delta(n == j) * _delta(eq(b, l))
            - _delta(i == 1) * _delta(eq(b + 1 - k, l)) + last * _delta(j == 1) * _delta(eq(b + 1, l)))


class EigenTable:
    def __init__(self, n, d, values, bad, literal_bad):
        self.n, self.d = n, d
        self.values = values  # ((a, b), (i, j, k, l)) -> CycScalar
        self.mismatches = bad
        self.literal_mismatches = literal_bad

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __bool__(self):
        return self.ok

    def __getitem__(self, key):
        return self.values[key]

    def __len__(self):
        return len(self.values)


def _root_vector(n, d, i, j, k, l, variant="LoopA") -> MatElem:
    return MatElem.E(n, i, j, SmashElem.mono(variant, d, k) * idempotent(d, l, variant))


def ad_eigen_table(n: int, d: int, kmax: int = 2) -> EigenTable:
    """Eigenvalues of every H_{a,b} on the root vectors E_ij u^k e_l with |k| <= kmax.

    Each bracket is computed with mat_bracket, checked to be a multiple of the root
    vector, and compared with eigen_formula (corrected and literal).
    """
    values, bad, literal_bad = {}, [], []
    hs = {lab: cartan_element(n, d, *lab) for lab in cartan_labels(n, d)}
    for i, j, l in product(range(1, n + 1), range(1, n + 1), range(d)):
        for k in range(-kmax, kmax + 1):
            if i == j and k % d == 0:
                continue
            X = _root_vector(n, d, i, j, k, l)
            xe = _e_basis(X.entries[(i, j)])
            (key0, c0), = xe.items()
            for (a, b), H in hs.items():
                br = mat_bracket(H, X)
                lam = CycScalar.zero(d)
                if br:
                    be = _e_basis(br.entries.get((i, j), SmashElem.zero("LoopA", d)))
                    lam = be.get(key0, CycScalar.zero(d)) / c0
                    if set(br.entries) != {(i, j)} or set(be) != {key0}:
                        bad.append(((a, b), (i, j, k, l), "not an eigenvector"))
                        continue
                values[((a, b), (i, j, k, l))] = lam
                if lam != eigen_formula(a, b, i, j, k, l, n, d):
                    bad.append(((a, b), (i, j, k, l), str(lam)))
                if lam != eigen_formula(a, b, i, j, k, l, n, d, literal=True):
                    literal_bad.append(((a, b), (i, j, k, l), str(lam)))
    return EigenTable(n, d, values, bad, literal_bad)


def _eps_index(n: int, d: int) -> dict:
    """Column of eps_{i,l} - eps_{1,0} for (i, l) != (1, 0); delta is the last column."""
    cols = [(i, l) for l in range(d) for i in range(1, n + 1) if (i, l) != (1, 0)]
    return {x: c for c, x in enumerate(cols)}


def root_vector_coords(n: int, d: int, plus: dict, delta: int) -> list:
    """Coordinates of sum_x plus[x] eps_x + delta * delta; coefficients must sum to 0."""
    if sum(plus.values()) != 0:
        raise ValueError("eps-coefficients must sum to zero")
    idx = _eps_index(n, d)
    row = [0] * (n * d)
    for (i, l), c in plus.items():
        l %= d
        if (i, l) != (1, 0):
            row[idx[(i, l)]] += c
    row[-1] = delta
    return row


def _diff(x, y) -> dict:
    out = {}
    for key, c in ((x, 1), (y, -1)):
        out[key] = out.get(key, 0) + c
    return out


def real_root(n, d, i, j, k, l) -> list:
    """Root of E_ij u^k e_l: eps_{i,k+l} - eps_{j,l} + k delta."""
    return root_vector_coords(n, d, _diff((i, (k + l) % d), (j, l)), k)


def listed_simple_roots(n: int, d: int) -> list:
    rows = []
    for l in range(d):
        for i in range(1, n):
            rows.append(root_vector_coords(n, d, _diff((i, l), (i + 1, l)), 0))
    for l in range(d - 1):
        rows.append(root_vector_coords(n, d, _diff((n, l), (1, l + 1)), 0))
    rows.append(root_vector_coords(n, d, _diff((n, d - 1), (1, 0)), 1))
    return rows


def corrected_simple_roots(n: int, d: int) -> list:
    """Roots of the tau images of X^+_{i,j,0}: E_{i,i+1} e_l, E_n1 u^-1 e_j (j >= 1), E_n1 u^(2d-1) e_0."""
    rows = []
    for l in range(d):
        for i in range(1, n):
            rows.append(real_root(n, d, i, i + 1, 0, l))
    for j in range(1, d):
        rows.append(real_root(n, d, n, 1, -1, j))
    rows.append(real_root(n, d, n, 1, 2 * d - 1, 0))
    return rows


class SimpleRootData:
    def __init__(self, n, d):
        self.n, self.d = n, d
        self.matrix = listed_simple_roots(n, d)
        self.det = det(self.matrix)
        self.unimodular = abs(self.det) == 1
        N = n * d
        delta = [0] * N
        delta[-1] = 1
        summed = [sum(col) for col in zip(*self.matrix)]
        self.delta_identity = summed == delta
        self.corrected = corrected_simple_roots(n, d)
        self.corrected_det = det(self.corrected)
        csum = [sum(col) for col in zip(*self.corrected)]
        self.corrected_sum_is_d_delta = csum == [0] * (N - 1) + [d]
        # is every listed simple root a real root?  (the last listed root fails for d >= 3)
        self.listed_last_is_root = self._is_real_root(self.matrix[-1])
        self.lattice_ok = self._lattice_check()
        coords = solve(self.corrected, delta)
        self.delta_in_root_lattice = all(c.denominator == 1 for c in coords)

    def _is_real_root(self, row) -> bool:
        n, d = self.n, self.d
        k = row[-1]
        for i, j, l in product(range(1, n + 1), range(1, n + 1), range(d)):
            if i == j and k % d == 0:
                continue
            if real_root(n, d, i, j, k, l) == row:
                return True
        return False

    def _lattice_check(self) -> bool:
        """Every real root with |k| <= 2d has integral coordinates in the corrected basis."""
        n, d = self.n, self.d
        for i, j, l in product(range(1, n + 1), range(1, n + 1), range(d)):
            for k in range(-2 * d, 2 * d + 1):
                if i == j and k % d == 0:
                    continue
                x = solve(self.corrected, real_root(n, d, i, j, k, l))
                if any(c.denominator != 1 for c in x):
                    return False
        return True

    def __repr__(self):
        return (f"SimpleRootData(n={self.n}, d={self.d}, det={self.det}, "
                f"corrected_det={self.corrected_det}, lattice_ok={self.lattice_ok})")


def simple_root_matrix(n: int, d: int) -> SimpleRootData:
    """Simple roots in coordinates (eps_x - eps_{1,0}, delta); also the corrected root-lattice basis."""
    return SimpleRootData(n, d)


# ---------------------------------------------------------------- presentations

def affine_cartan(N: int) -> list:
    """Cartan matrix of type A^(1)_{N-1}, rows and columns 0..N-1 (N >= 3)."""
    C = [[0] * N for _ in range(N)]
    for f in range(N):
        C[f][f] = 2
        C[f][(f + 1) % N] -= 1
        C[f][(f - 1) % N] -= 1
    return C


class PresGenerator:
    """X^+ / X^- / H generator with labels (i, j, r), or the central element."""

    KINDS = ("Xplus", "Xminus", "H", "central")

    def __init__(self, kind: str, i: int = 0, j: int = 0, r: int = 0, presentation: str = "DALA"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        if presentation == "C":
            if kind == "central":
                raise RangeError("presC has no central generator")
            if r < 0 or (i == 0 and kind in ("Xminus", "H") and r < 1):
                raise RangeError(f"{kind}_{{{i},{j},{r}}} is not a presC generator")
        self.kind, self.i, self.j, self.r = kind, i, j, r

    def __repr__(self):
        if self.kind == "central":
            return "c"
        return f"{self.kind}[{self.i},{self.j},{self.r}]"


class Tau:
    """Images of the generators in the universal central extension of sl_n(A) or sl_n(C).

    i = j = 0 for DALA: X^+ -> E_n1 u^(2d-1) w^r e_0, X^- -> E_1n u^-(2d-1) w^r e_{d-1},
    H -> E_nn w^r e_{d-1} - E_11 w^r e_0 - w^r u^-1 du * d, and c -> -dt/t.
    These are the placements under which every relation holds with the cocycle used here;
    literal=True keeps the printed e-placements and c -> dt/t for comparison.
    """

    def __init__(self, n: int, d: int, which: str = "DALA", literal: bool = False):
        if which not in ("DALA", "C"):
            raise ValueError(f"unknown presentation {which!r}")
        self.n, self.d, self.which, self.literal = n, d, which, literal
        self.ring = "A" if which == "DALA" else "C"
        self._cache = {}

    def _m(self, a: int, r: int, l: int) -> SmashElem:
        """u^a w^r e_l."""
        d = self.d
        return SmashElem.mono(self.ring, d, a + r, r) * idempotent(d, l % d, self.ring)

    def _ext(self, entries: dict, central: KahlerClass = None) -> ExtElem:
        return ExtElem(MatElem(self.n, entries), central, d=self.d)

    def central(self) -> ExtElem:
        sign = 1 if self.literal else -1
        return self._ext({}, KahlerClass.dt_t(self.d, coef=sign))

    def __call__(self, kind: str, i: int, j: int, r: int) -> ExtElem:
        key = (kind, i, j, r)
        if key not in self._cache:
            self._cache[key] = self._image(kind, i, j, r)
        return self._cache[key]

    def _image(self, kind, i, j, r) -> ExtElem:
        n, d, m = self.n, self.d, self._m
        if kind == "central":
            return self.central()
        PresGenerator(kind, i, j, r, self.which)
        if i:
            if kind == "Xplus":
                return self._ext({(i, i + 1): m(0, r, j)})
            if kind == "Xminus":
                return self._ext({(i + 1, i): m(0, r, j)})
            return self._ext({(i, i): m(0, r, j), (i + 1, i + 1): -m(0, r, j)})
        if self.which == "C":
            # v = u^-1 w, so E_n1 v w^r e_j and E_1n u w^(r-1) e_(j-1)
            if kind == "Xplus":
                return self._ext({(n, 1): m(-1, r + 1, j)})
            if kind == "Xminus":
                return self._ext({(1, n): m(1, r - 1, j - 1)})
            central = KahlerClass.ds_s(d, 0, r) if j == 0 else None
            return self._ext({(n, n): m(0, r, j - 1), (1, 1): -m(0, r, j)}, central)
        if j:
            if kind == "Xplus":
                return self._ext({(n, 1): m(-1, r, j)})
            if kind == "Xminus":
                return self._ext({(1, n): m(1, r, j - 1)})
            return self._ext({(n, n): m(0, r, j - 1), (1, 1): -m(0, r, j)})
        lo, hi = (d - 1, 0) if self.literal else (0, d - 1)
        if kind == "Xplus":
            return self._ext({(n, 1): m(2 * d - 1, r, lo)})
        if kind == "Xminus":
            return self._ext({(1, n): m(-(2 * d - 1), r, hi)})
        # -d w^r u^-1 du = -w^r ds/s
        hn, h1 = (0, d - 1) if self.literal else (d - 1, 0)
        return self._ext({(n, n): m(0, r, hn), (1, 1): -m(0, r, h1)}, KahlerClass.ds_s(d, 0, r, coef=-1))


def _br(x: ExtElem, y: ExtElem) -> ExtElem:
    return uce_bracket(x, y, "direct")


def _first_term(e: ExtElem) -> str:
    s = str(e)
    return s if len(s) <= 120 else s[:117] + "..."


class _Family:
    def __init__(self, name):
        self.name, self.count, self.failures, self.example = name, 0, 0, None

    def record(self, ok: bool, label, diff=None):
        self.count += 1
        if not ok:
            self.failures += 1
            if self.example is None:
                self.example = {"instance": str(label), "residual": _first_term(diff)}


def _check_tau(which: str, n: int, d: int, rmax: int, literal: bool = False) -> Report:
    N = n * d
    if N < 3:
        raise RangeError("the affine Cartan matrix needs nd >= 3")
    if rmax < 0:
        raise RangeError("rmax must be non-negative")
    tau = Tau(n, d, which, literal)
    C = affine_cartan(N)
    f = lambda i, j: i + j * n
    nodes = [(i, j) for j in range(d) for i in range(n)]
    rs = list(range(-rmax, rmax + 1)) if which == "DALA" else list(range(0, rmax + 1))
    c = tau.central() if which == "DALA" else None

    def exists(kind, i, r):
        return which == "DALA" or r >= (1 if (i == 0 and kind in ("Xminus", "H")) else 0)

    def gen(kind, i, j, r):
        return tau(kind, i, j, r) if exists(kind, i, r) else None

    fam = {k: _Family(k) for k in ("HH", "H0X", "HX_shift", "XX_shift", "XplusXminus", "Serre")}

    for (n1, n2) in product(nodes, nodes):
        f1, f2 = f(*n1), f(*n2)
        c12 = C[f1][f2]
        # [H_r1, H_r2] = r1 c12 delta c  (no central term for presC)
        for r1, r2 in product(rs, rs):
            h1, h2 = gen("H", *n1, r1), gen("H", *n2, r2)
            if h1 is None or h2 is None:
                continue
            lhs = _br(h1, h2)
            rhs = c.scale(r1 * c12) if (c is not None and r1 + r2 == 0) else None
            diff = lhs - rhs if rhs is not None else lhs
            fam["HH"].record(not diff, ("H", n1, r1, "H", n2, r2), diff)
        for sign, kind in ((1, "Xplus"), (-1, "Xminus")):
            h0 = gen("H", *n1, 0)
            if h0 is not None:
                for r2 in rs:
                    x = gen(kind, *n2, r2)
                    if x is None:
                        continue
                    diff = _br(h0, x) - x.scale(sign * c12)
                    fam["H0X"].record(not diff, ("H", n1, 0, kind, n2, r2), diff)
            for r1, r2 in product(rs, rs):
                a, b = gen("H", *n1, r1 + 1), gen(kind, *n2, r2)
                a2, b2 = gen("H", *n1, r1), gen(kind, *n2, r2 + 1)
                if None not in (a, b, a2, b2):
                    diff = _br(a, b) - _br(a2, b2)
                    fam["HX_shift"].record(not diff, ("H", n1, r1, kind, n2, r2), diff)
                a, b = gen(kind, *n1, r1 + 1), gen(kind, *n2, r2)
                a2, b2 = gen(kind, *n1, r1), gen(kind, *n2, r2 + 1)
                if None not in (a, b, a2, b2):
                    diff = _br(a, b) - _br(a2, b2)
                    fam["XX_shift"].record(not diff, (kind, n1, r1, kind, n2, r2), diff)
            if n1 != n2:
                for r1, r2 in product(rs, rs):
                    x1, x2 = gen(kind, *n1, r1), gen(kind, *n2, r2)
                    if x1 is None or x2 is None:
                        continue
                    acc = x2
                    for _ in range(1 - c12):
                        acc = _br(x1, acc)
                    fam["Serre"].record(not acc, (kind, n1, r1, n2, r2), acc)
        for r1, r2 in product(rs, rs):
            xp, xm = gen("Xplus", *n1, r1), gen("Xminus", *n2, r2)
            if xp is None or xm is None:
                continue
            lhs = _br(xp, xm)
            if n1 == n2:
                h = gen("H", *n1, r1 + r2)
                rhs = h
                if c is not None and r1 + r2 == 0:
                    rhs = rhs + c.scale(r1)
                diff = lhs - rhs
            else:
                diff = lhs
            fam["XplusXminus"].record(not diff, ("Xplus", n1, r1, "Xminus", n2, r2), diff)

    rep = Report(f"verify-{which.lower()}", {"n": n, "d": d, "rmax": rmax, "literal": literal})
    for k, v in fam.items():
        details = {"instances": v.count, "failures": v.failures}
        if v.example:
            details["counterexample"] = v.example
        rep.add(k, v.failures == 0, **details)
    return rep


def r0_closure_check(n: int, d: int) -> bool:
    """Brackets (depth 2) of the r = 0 DALA images stay inside sl^_n(C[u^+-1] x| Z/d).

    That is: no v-dependence beyond w^0 and central classes only in [s^a ds/s].
    """
    tau = Tau(n, d, "DALA")
    gens = [tau(k, i, j, 0) for k in ("Xplus", "Xminus", "H") for j in range(d) for i in range(n)]

    def inside(e: ExtElem) -> bool:
        for p in e.mat.entries.values():
            if any(b != 0 for (_, b, _) in p.terms):
                return False
        return all(b == 0 and be == 0 for (a, b), (al, be) in e.central.terms.items())

    level = gens
    for _ in range(2):
        nxt = []
        for x in level:
            for g in gens:
                y = _br(g, x)
                if not inside(y):
                    return False
                if y:
                    nxt.append(y)
        level = nxt[:200]
    return all(inside(g) for g in gens)


def _random_ring(rng: random.Random, variant: str, d: int, terms: int = 2, span: int = 2) -> SmashElem:
    out = SmashElem.zero(variant, d)
    lo = 0 if variant == "C" else -span
    for _ in range(terms):
        a = rng.randint(lo, span)
        b = rng.randint(0 if variant in ("B", "C") else -span, span)
        out = out + SmashElem.mono(variant, d, a, b, rng.randrange(d), rng.randint(-3, 3))
    return out


def _check_kl(n: int, d: int, samples: int, seed: int, variant: str = "A") -> Report:
    if n < 3:
        raise RangeError("the Kassel-Loday relations need n >= 3")
    rng = random.Random(seed)
    F = lambda i, j, a: ExtElem(MatElem.E(n, i, j, a), d=d)
    rep = Report("verify-kl", {"n": n, "d": d, "samples": samples, "ring": variant})
    f1, f2 = _Family("Fij_Fjk"), _Family("Fij_Fkl")
    idx = range(1, n + 1)
    for _ in range(samples):
        a1, a2 = _random_ring(rng, variant, d), _random_ring(rng, variant, d)
        for i, j, k in product(idx, idx, idx):
            if i != j and j != k and k != i:
                diff = _br(F(i, j, a1), F(j, k, a2)) - F(i, k, a1 * a2)
                f1.record(not diff, (i, j, k), diff)
        for i, j, k, l in product(idx, idx, idx, idx):
            if i != j and j != k and k != l and l != i:
                diff = _br(F(i, j, a1), F(k, l, a2))
                f2.record(not diff, (i, j, k, l), diff)
    for fam in (f1, f2):
        rep.add(fam.name, fam.failures == 0, instances=fam.count, failures=fam.failures)
    return rep


def _check_kl2(d: int, samples: int, seed: int, variant: str = "A") -> Report:
    rng = random.Random(seed)
    F = lambda i, j, a: ExtElem(MatElem.E(2, i, j, a), d=d)
    rep = Report("verify-kl2", {"n": 2, "d": d, "samples": samples, "ring": variant})
    up, down = _Family("H12_F12"), _Family("H12_F21")
    for _ in range(samples):
        a1, a2, a3 = (_random_ring(rng, variant, d) for _ in range(3))
        H = _br(F(1, 2, a1), F(2, 1, a2))
        diff = _br(H, F(1, 2, a3)) - F(1, 2, a1 * a2 * a3 + a3 * a2 * a1)
        up.record(not diff, "H12(a1,a2),F12(a3)", diff)
        diff = _br(H, F(2, 1, a3)) + F(2, 1, a3 * a1 * a2 + a2 * a1 * a3)
        down.record(not diff, "H12(a1,a2),F21(a3)", diff)
    for fam in (up, down):
        rep.add(fam.name, fam.failures == 0, instances=fam.count, failures=fam.failures)
    return rep


def check_presentation(which: str, n: int, d: int, rmax: int = 2, samples: int = 10,
                       seed: int = 0, literal: bool = False) -> Report:
    """Evaluate every relation of the chosen presentation; one check per relation family."""
    key = which.upper()
    if key == "KL":
        return _check_kl(n, d, samples, seed)
    if key == "KL2":
        if n != 2:
            raise RangeError("KL2 is the n = 2 presentation")
        return _check_kl2(d, samples, seed)
    if key in ("DALA", "C"):
        return _check_tau(key, n, d, rmax, literal)
    raise ValueError(f"unknown presentation {which!r}")


# ---------------------------------------------------------------- graded ideal probe

def _loop_bracket(x: dict, y: dict, d: int) -> dict:
    """Bracket of symbolic elements {(i, j, k, l): coef} of gl_n(C[u^+-1] x| Z/d), e-basis.

    (u^k e_l)(u^m e_r) = delta_{l - m = r} u^(k+m) e_r.
    """
    out = {}

    def acc(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (i, j, k, l), c1 in x.items():
        for (i2, j2, m, r), c2 in y.items():
            if j == i2 and (l - m - r) % d == 0:
                acc((i, j2, k + m, r), c1 * c2)
            if j2 == i and (r - k - l) % d == 0:
                acc((i2, j, k + m, l), -c1 * c2)
    return out


def _window_basis(n: int, d: int, K: int) -> list:
    basis = []
    for k in range(-K, K + 1):
        for i, j, l in product(range(1, n + 1), range(1, n + 1), range(d)):
            if i != j or k % d:
                basis.append({(i, j, k, l): Fraction(1)})
        if k % d == 0:
            diag = [(i, i, k, l) for l in range(d) for i in range(1, n + 1)]
            for key in diag[1:]:
                basis.append({diag[0]: Fraction(1), key: Fraction(-1)})
    return basis


def _is_real(vec: dict, d: int) -> bool:
    return any(i != j or k % d for (i, j, k, l) in vec)


class ProbeResult:
    def __init__(self, saturated, rank, window_dim, trace):
        self.saturated, self.rank, self.window_dim, self.trace = saturated, rank, window_dim, trace

    def __bool__(self):
        return self.saturated

    def __repr__(self):
        return f"ProbeResult(saturated={self.saturated}, rank={self.rank}/{self.window_dim})"


def _to_symbolic(x: MatElem) -> dict:
    out = {}
    for (i, j), p in x.entries.items():
        if not isinstance(p, SmashElem) or p.variant not in ("LoopA", "PolyB", "GroupRing"):
            raise VariantViolation("graded_ideal_probe works in sl_n(C[u^+-1] x| Z/d)")
        for (a, b, l), c in _e_basis(p).items():
            out[(i, j, a, l)] = c.rational() if c.is_rational() else c
    return out


def graded_ideal_probe(x, n: int, d: int, depth: int = 6, kmax: int = 1) -> ProbeResult:
    """Span of iterated brackets of x with the window basis, inside the window |k| <= kmax.

    Saturated when it spans the whole window. The trace records the first real root
    vector reached when x itself is imaginary.
    """
    vec = _to_symbolic(x) if isinstance(x, MatElem) else dict(x)
    vec = {k: v for k, v in vec.items() if v and abs(k[2]) <= kmax}
    basis = _window_basis(n, d, kmax)
    total = len(basis)
    if not vec:
        return ProbeResult(False, 0, total, [])
    span = RowSpace()
    span.add(vec)
    frontier = [vec]
    trace = []
    need_real = not _is_real(vec, d)
    for step in range(depth):
        nxt = []
        for y in frontier:
            for b in basis:
                z = _loop_bracket(b, y, d)
                if not z or any(abs(key[2]) > kmax for key in z):
                    continue
                if span.add(z):
                    nxt.append(z)
                    if need_real and _is_real(z, d):
                        trace.append({"step": step + 1, "vector": sorted(z.items())[:4]})
                        need_real = False
        if len(span) == total or not nxt:
            break
        frontier = nxt
    return ProbeResult(len(span) == total, len(span), total, trace)
