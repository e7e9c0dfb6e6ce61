"""Weyl modules for sl_n over C[u,v] and its cyclic invariants.

Schur-Weyl dimensions from class functions on S_l, the binomial lower
bounds, diagonal coinvariants by sliced exact linear algebra, the reduced
ring A/(A') and a rewriting replay of the sl_2 relations behind the bounds.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial

from .errors import BudgetExceeded, NotStabilized, RangeError
from .linalg import RowSpace
from .matlie import MatElem, mat_bracket
from .rings import CommElem


# ------------------------------------------------------------- S_l characters

def partitions(l: int, largest: int = None):
    """Partitions of l as non-increasing tuples."""
    largest = l if largest is None else largest
    if l == 0:
        yield ()
        return
    for k in range(min(l, largest), 0, -1):
        for rest in partitions(l - k, k):
            yield (k,) + rest


def class_size(shape: tuple) -> int:
    l = sum(shape)
    denom = 1
    for k in set(shape):
        m = shape.count(k)
        denom *= k ** m * factorial(m)
    return factorial(l) // denom


class CycleType:
    """Conjugacy class of S_l: a partition of l; s is the number of cycles."""

    __slots__ = ("shape",)

    def __init__(self, shape):
        self.shape = tuple(sorted(shape, reverse=True))

    @property
    def l(self) -> int:
        return sum(self.shape)

    @property
    def s(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return class_size(self.shape)

    @property
    def parity(self) -> int:
        return (-1) ** (self.l - self.s)

    def __eq__(self, o):
        return isinstance(o, CycleType) and self.shape == o.shape

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return f"CycleType{self.shape}"


class CharacterSpec:
    """Class function on S_l given by a callable on CycleType."""

    def __init__(self, l: int, fn, name: str = "chi"):
        self.l, self.fn, self.name = l, fn, name

    def __call__(self, sigma: CycleType):
        return self.fn(sigma)

    def __mul__(self, other: "CharacterSpec") -> "CharacterSpec":
        if other.l != self.l:
            raise RangeError(f"characters of S_{self.l} and S_{other.l}")
        return CharacterSpec(self.l, lambda s: self.fn(s) * other.fn(s), f"{self.name}*{other.name}")

    def values(self) -> dict:
        return {c.shape: self.fn(c) for c in map(CycleType, partitions(self.l))}

    def __repr__(self):
        return f"CharacterSpec({self.name}, l={self.l})"


def cf(l: int, k: int) -> CharacterSpec:
    """Permutation character of functions {1..l} -> {1..k}: sigma -> k^s."""
    return CharacterSpec(l, lambda s: k ** s.s, f"cf({l},{k})")


def sign(l: int) -> CharacterSpec:
    return CharacterSpec(l, lambda s: s.parity, "sign")


def trivial(l: int) -> CharacterSpec:
    return CharacterSpec(l, lambda s: 1, "trivial")


def schur_weyl_dim(n: int, l: int, chi: CharacterSpec) -> int:
    """dim ((C^n)^{tensor l} tensor E)^{S_l} = (1/l!) sum_sigma n^cyc(sigma) chi(sigma)."""
    if chi.l != l:
        raise RangeError(f"character of S_{chi.l} used with l={l}")
    acc = Fraction(0)
    for shape in partitions(l):
        c = CycleType(shape)
        acc += c.size * Fraction(n) ** c.s * Fraction(chi(c))
    acc /= factorial(l)
    if acc.denominator != 1 or acc < 0:
        raise RangeError(f"{chi.name} is not a character: average {acc}")
    return int(acc)


def verify_swflk(n: int, l: int, k: int) -> bool:
    return schur_weyl_dim(n, l, cf(l, k) * sign(l)) == comb(n * k, l)


LowerBound = namedtuple("LowerBound", "value schur_weyl agrees")


def weyl_lower_bound(n: int, d: int, l: int, which: str = "smash") -> LowerBound:
    """C(n(dl+1), l) for the smash family, C(n(l+1), l) for the invariant one."""
    if which == "smash":
        k = d * l + 1
    elif which == "invariant":
        k = l + 1
    else:
        raise RangeError(f"unknown family {which!r}")
    value = comb(n * k, l)
    sw = schur_weyl_dim(n, l, cf(l, k) * sign(l))
    return LowerBound(value, sw, value == sw)


# ------------------------------------------------------ diagonal coinvariants

class PolyQuotient:
    """Quotient of C[u_1..u_l, v_1..v_l] by an ideal, measured degree by degree."""

    def __init__(self, l: int, d: int, group: str, generators: list, hilbert: list,
                 stabilized: bool, bigraded: dict = None):
        self.l, self.d, self.group = l, d, group
        self.nvars = 2 * l
        self.generators = generators
        self.hilbert = hilbert
        self.stabilized = stabilized
        self.bigraded = bigraded or {}

    @property
    def dim(self) -> int:
        return sum(self.hilbert)

    def to_dict(self) -> dict:
        return {"l": self.l, "d": self.d, "group": self.group, "hilbert": self.hilbert,
                "dim": self.dim, "stabilized": self.stabilized,
                "generators": len(self.generators)}

    def __repr__(self):
        tag = "" if self.stabilized else ", lower bound"
        return f"PolyQuotient(l={self.l}, d={self.d}, {self.group}, dim={self.dim}{tag})"


def _monomials(nvars: int, D: int):
    for combo in combinations_with_replacement(range(nvars), D):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _slice_key(e: tuple, l: int, d: int) -> tuple:
    """Bidegree and the Gamma^l character: both gradings are respected by the ideal."""
    du, dv = sum(e[:l]), sum(e[l:])
    chi = tuple((e[i] - e[l + i]) % d for i in range(l))
    return (du, dv, chi)


def _power_sums(l: int, d: int, D: int) -> list:
    """Polarized power sums sum_i u_i^a v_i^b, a + b = D, a = b mod d."""
    out = []
    for a in range(D + 1):
        b = D - a
        if (a - b) % d:
            continue
        vec = {}
        for i in range(l):
            e = [0] * (2 * l)
            e[i], e[l + i] = a, b
            vec[tuple(e)] = Fraction(1)
        out.append(((a, b), vec))
    return out


def coinvariant_dim(l: int, d: int = 1, degree_cap: int = 12, group: str = "symmetric_only",
                    budget: int = 200000) -> PolyQuotient:
    """Hilbert series of C[u,v]^{tensor l} modulo the invariants with zero constant term.

    symmetric_only: S_l-invariants; wreath: (Z/d)^l x| S_l-invariants with Z/d
    acting by (zeta, zeta^-1); wreath_invariants: the (Z/d)^l-invariant part of
    the wreath quotient. Stops at the first degree whose quotient slice is zero,
    which certifies all higher degrees vanish since the ring is generated in degree 1.
    """
    if group not in ("symmetric_only", "wreath", "wreath_invariants"):
        raise RangeError(f"unknown group {group!r}")
    if l < 1 or d < 1:
        raise RangeError("need l >= 1 and d >= 1")
    gd = 1 if group == "symmetric_only" else d
    nvars = 2 * l
    size = sum(comb(D + nvars - 1, nvars - 1) for D in range(degree_cap + 1))
    if size * nvars > budget * 8 or size > budget:
        raise BudgetExceeded(f"{size} monomials up to degree {degree_cap} exceed budget {budget}")
    slices = {}  # key -> RowSpace of the ideal in that slice
    hilbert, bigraded, gens = [], {}, []
    stabilized = False
    for D in range(degree_cap + 1):
        buckets = {}
        for e in _monomials(nvars, D):
            buckets.setdefault(_slice_key(e, l, gd), []).append(e)
        gen_by_key = {}
        if D:
            for ab, vec in _power_sums(l, gd, D):
                gens.append(ab)
                gen_by_key.setdefault(_slice_key(next(iter(vec)), l, gd), []).append(vec)
        level = 0
        new_slices = {}
        for key, mons in buckets.items():
            rs = RowSpace()
            for vec in gen_by_key.get(key, []):
                rs.add(vec)
            du, dv, chi = key
            for var in range(nvars):
                if var < l:
                    pk = (du - 1, dv, tuple((c - (i == var)) % gd for i, c in enumerate(chi)))
                else:
                    pk = (du, dv - 1, tuple((c + (i == var - l)) % gd for i, c in enumerate(chi)))
                prev = slices.get(pk)
                if prev is None:
                    continue
                for row in prev.rows.values():
                    shifted = {}
                    for m, c in row.items():
                        e = list(m)
                        e[var] += 1
                        shifted[tuple(e)] = c
                    rs.add(shifted)
                    if len(rs) == len(mons):
                        break
                if len(rs) == len(mons):
                    break
            new_slices[key] = rs
            q = len(mons) - len(rs)
            q_counted = 0 if group == "wreath_invariants" and any(chi) else q
            if q_counted:
                bigraded[(du, dv)] = bigraded.get((du, dv), 0) + q_counted
            level += q_counted
        full_zero = all(len(new_slices[k]) == len(buckets[k]) for k in buckets)
        slices = new_slices
        if full_zero:
            stabilized = True
            break
        hilbert.append(level)
    result = PolyQuotient(l, d, group, gens, hilbert, stabilized, bigraded)
    if not stabilized:
        err = NotStabilized(f"quotient still nonzero in degree {degree_cap}; dimension >= {result.dim}")
        err.partial = result
        raise err
    return result


# ------------------------------------------------------------- reduced ring

class ReducedRing:
    """A/(A') with A' the non-invariant isotypic part: standard monomial basis per degree."""

    def __init__(self, basis: list, hilbert: list, stabilized: bool):
        self.basis, self.hilbert, self.stabilized = basis, hilbert, stabilized

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"ReducedRing(dim={self.dim}, basis={self.basis})"


def reduced_ring(weights, d: int, relations=(), degree_cap: int = 10) -> ReducedRing:
    """A = C[x_1..x_k]/(relations), Z/d acting on x_j by zeta^{weights[j]}.

    relations: homogeneous polynomials {exponent tuple: coef}, each of a single
    Z/d-weight. Returns a monomial basis of A/(A'); raises NotStabilized when
    the quotient survives to degree_cap.
    """
    k = len(weights)
    wt = lambda e: sum(a * w for a, w in zip(e, weights)) % d
    rels = {}
    for r in relations:
        r = {tuple(m): Fraction(c) for m, c in r.items() if c}
        if r:
            m0 = next(iter(r))
            rels.setdefault(sum(m0), []).append(r)
    prev = None
    basis, hilbert = [], []
    for D in range(degree_cap + 1):
        mons = list(_monomials(k, D))
        rs = RowSpace()
        for m in mons:
            if wt(m):
                rs.add({m: Fraction(1)})  # A' is spanned by non-invariant monomials
        for r in rels.get(D, []):
            rs.add(r)
        if prev is not None:
            for row in prev.rows.values():
                for var in range(k):
                    shifted = {}
                    for m, c in row.items():
                        e = list(m)
                        e[var] += 1
                        shifted[tuple(e)] = c
                    rs.add(shifted)
        std = [m for m in mons if m not in rs.rows]
        if not std:
            return ReducedRing(basis, hilbert, True)
        basis.extend(std)
        hilbert.append(len(std))
        prev = rs
    err = NotStabilized(f"A/(A') still nonzero in degree {degree_cap}")
    err.partial = ReducedRing(basis, hilbert, False)
    raise err


# --------------------------------------------------- sl_2 rewriting replay

def _key(a: CommElem) -> dict:
    return dict(a.terms)


def _eps(a: CommElem):
    return a.terms.get((0, 0), 0)


def _mono(a_key, ring: CommElem) -> CommElem:
    return CommElem(ring.variant, ring.d, {a_key: 1})


class FState:
    """Element of Sym(f tensor A) v: {sorted tuple of A-monomials: coef}."""

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def f_power(cls, k: int) -> "FState":
        return cls({((0, 0),) * k: 1})

    @classmethod
    def single(cls, a: CommElem) -> "FState":
        return cls({(m,): c for m, c in a.terms.items()})

    def _add(self, key, c):
        key = tuple(sorted(key))
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def degree_set(self) -> set:
        return {len(k) for k in self.terms}

    def __eq__(self, o):
        return isinstance(o, FState) and self.terms == o.terms

    def scale(self, c) -> "FState":
        return FState({k: v * c for k, v in self.terms.items()})

    def __repr__(self):
        return f"FState({self.terms})"


def apply_e(P: CommElem, x: FState, lam_h: int) -> FState:
    """(e tensor P) on prod_j (f tensor a_j) v, using [e P, f a] = h Pa, [h R, f a] = -2 f Ra,
    (h R) v = lam_h eps(R) v and (e P) v = 0."""
    out = FState()
    for key, c in x.terms.items():
        m = len(key)
        for i in range(m):
            R = P * _mono(key[i], P)
            rest_i = key[:i] + key[i + 1:]
            er = _eps(R)
            if er:
                out._add(rest_i, c * lam_h * er)
            for jj in range(i + 1, m):
                RA = R * _mono(key[jj], P)
                rest = tuple(key[t] for t in range(m) if t not in (i, jj))
                for mono, cc in RA.terms.items():
                    out._add(rest + (mono,), -2 * c * cc)
    return out


Relation = namedtuple("Relation", "j state")


class RelationChain:
    def __init__(self, lam_h: int, P: CommElem, steps: list, final: FState, multiple, ok: bool):
        self.lam_h, self.P, self.steps = lam_h, P, steps
        self.final, self.multiple, self.ok = final, multiple, ok

    def __bool__(self):
        return self.ok


def sl2_weyl_relations(lam_h: int, P: CommElem, j: int = None) -> RelationChain:
    """Apply (e tensor P) j times to f^{lam_h+1} v (= 0 in the Weyl module).

    Each step is a relation in the Weyl module. At j = lam_h (the default) and
    eps(P) = 0, the result is a nonzero multiple of (f tensor P^lam_h) v.
    """
    if lam_h < 0:
        raise RangeError("lam_h must be a nonnegative integer")
    j = lam_h if j is None else j
    x = FState.f_power(lam_h + 1)
    steps = [Relation(0, x)]
    for s in range(1, j + 1):
        x = apply_e(P, x, lam_h)
        steps.append(Relation(s, x))
    multiple, ok = None, False
    if j == lam_h:
        Pk = CommElem(P.variant, P.d, {(0, 0): 1})
        for _ in range(lam_h):
            Pk = Pk * P
        target = FState.single(Pk)
        if not target.terms:
            ok = not x.terms
        else:
            k0 = next(iter(target.terms))
            multiple = x.terms[k0] / target.terms[k0] if x.terms.get(k0) else 0
            ok = bool(multiple) and x == target.scale(multiple)
    return RelationChain(lam_h, P, steps, x, multiple, ok)


MulStep = namedtuple("MulStep", "derived claimed")


def mul_relation_chain(lam_h: int, P, Q, eps) -> MulStep:
    """Apply h tensor Q to the relation (f tensor P) v = 0.

    The bracket is computed in 2 x 2 matrices over A, so any associative A
    works; `eps` is the augmentation. `derived` is a with (f tensor a) v the
    result; `claimed` is -(PQ + QP) + lam_h eps(Q) P. Modulo (f tensor P) v this
    gives (f tensor (PQ + QP)) v = 0.
    """
    h = MatElem(2, {(1, 1): Q, (2, 2): -Q})
    f = MatElem(2, {(2, 1): P})
    br = mat_bracket(h, f)
    if set(br.entries) - {(2, 1)}:
        raise RangeError("bracket left the lower corner")
    derived = br.entries.get((2, 1), P * 0) + P * (lam_h * eps(Q))
    claimed = -(P * Q + Q * P) + P * (lam_h * eps(Q))
    return MulStep(derived, claimed)
