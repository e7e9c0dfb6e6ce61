"""Text syntax for scalars, ring elements and matrices.

    elem   := ["-"] term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := number | atom pow? | "(" elem ")" pow?
    atom   := u | v | w | x | s | t | omega | z | e[k] | E[i,j]
    pow    := "^" ["-"] int

x stands for xi and z for zeta; w is u*v; s, t are the variables of the
commutative rings. Division is only by scalars.
"""

import re
from fractions import Fraction

from .cherednik import CherElem, CherParams, TrigElem, cher_idempotent, omega, trig_omega, trig_v
from .errors import ExprSyntaxError, ShapeMismatch, VariantViolation
from .matlie import MatElem
from .rings import COMM_VARIANTS, SMASH_VARIANTS, CommElem, SmashElem, idempotent
from .scalars import CycScalar, zeta_power

RINGS = SMASH_VARIANTS + COMM_VARIANTS + ("cher", "trig", "scalar")

_TOKEN = re.compile(r"\s*(?:(\d+)|(omega|[a-zA-Z])|(\S))")


def _tokenize(src: str) -> list:
    toks, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class ParseContext:
    """Target ring: a smash or commutative variant, cher, trig or scalar; n > 0 allows E[i,j]."""

    def __init__(self, ring: str = "scalar", d: int = 1, n: int = None, params: CherParams = None):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}; expected one of {', '.join(RINGS)}")
        self.ring, self.d, self.n = ring, d, n
        if ring in ("cher", "trig"):
            self.params = params or CherParams(d)
            self.d = self.params.d
        else:
            self.params = params

    def scalar(self, c):
        r, d = self.ring, self.d
        if r == "scalar":
            return c
        if r in SMASH_VARIANTS:
            return SmashElem.mono(r, d, 0, 0, 0, c)
        if r in COMM_VARIANTS:
            return CommElem(r, d, {(0, 0): c})
        if r == "cher":
            return CherElem.scalar(self.params, c)
        return TrigElem.scalar(self.params, c)

    def atom(self, name: str, k: int, pos: int):
        r, d = self.ring, self.d
        if name == "z":
            return zeta_power(d, k)
        if r in SMASH_VARIANTS:
            if name == "u":
                return SmashElem.mono(r, d, k, 0, 0)
            if name == "v":
                return SmashElem.mono(r, d, 0, k, 0)
            if name == "w":
                return SmashElem.mono(r, d, k, k, 0)
            if name == "x":
                return SmashElem.mono(r, d, 0, 0, k % d)
        elif r in COMM_VARIANTS:
            if name == "s":
                return CommElem.mono(r, d, k, 0)
            if name == "t":
                return CommElem.mono(r, d, 0, k)
        elif r in ("cher", "trig"):
            p, cls = self.params, (CherElem if r == "cher" else TrigElem)
            if name == "x":
                return cls.mono(p, 0, 0, k % d)
            if r == "cher":
                if k < 0:
                    raise VariantViolation(f"negative power of {name} in the rational Cherednik algebra")
                if name == "u":
                    return CherElem.mono(p, k)
                if name == "v":
                    return CherElem.mono(p, 0, k)
                if name == "w":
                    return CherElem.mono(p, 1, 1) ** k
                if name == "omega":
                    return omega(p) ** k
            else:
                if name == "u":
                    return TrigElem.mono(p, k)
                if name == "omega":
                    if k < 0:
                        raise VariantViolation("negative power of omega")
                    return trig_omega(p) ** k
                if k < 0:
                    raise VariantViolation(f"negative power of {name}")
                if name == "v":
                    return trig_v(p) ** k
                if name == "w":
                    return (TrigElem.mono(p, 1) * trig_v(p)) ** k
        raise ExprSyntaxError(f"atom {name!r} is not available in ring {r}", pos)

    def idempotent(self, k: int):
        r, d = self.ring, self.d
        if r in SMASH_VARIANTS:
            return idempotent(d, k, r)
        if r == "cher":
            return cher_idempotent(self.params, k)
        if r == "trig":
            return cher_idempotent(self.params, k, TrigElem)
        return None


def _mul(a, b, ctx: ParseContext, pos: int):
    am, bm = isinstance(a, MatElem), isinstance(b, MatElem)
    if am and bm:
        return a * b
    if isinstance(b, CycScalar):
        return a.scale(b) if am else a * b
    if isinstance(a, CycScalar):
        return b.scale(a) if bm else (ctx.scalar(a) * b if ctx.ring != "scalar" else a * b)
    if am:
        return a.rmul_ring(b)
    if bm:
        return b.lmul_ring(a)
    return a * b


def _add(a, b, ctx: ParseContext, pos: int):
    am, bm = isinstance(a, MatElem), isinstance(b, MatElem)
    if am != bm:
        zero_a = not am and not a
        zero_b = not bm and not b
        if zero_a:
            return b
        if zero_b:
            return a
        raise ExprSyntaxError("cannot add a matrix and a ring element", pos)
    if isinstance(a, CycScalar) and not isinstance(b, CycScalar):
        a = ctx.scalar(a)
    if isinstance(b, CycScalar) and not isinstance(a, CycScalar):
        b = ctx.scalar(b)
    return a + b


def _power(val, k: int, ctx: ParseContext, pos: int):
    if isinstance(val, CycScalar):
        return val ** k
    if k < 0:
        raise ExprSyntaxError("negative power of a compound expression", pos)
    acc = None
    for _ in range(k):
        acc = val if acc is None else _mul(acc, val, ctx, pos)
    if acc is None:
        return CycScalar.one(ctx.d)
    return acc


class _Parser:
    def __init__(self, src: str, ctx: ParseContext):
        self.src, self.ctx = src, ctx
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)
        return pos

    def parse(self):
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", 0)
        val = self.elem()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError("unexpected input", pos)
        return val

    def elem(self):
        kind, val, pos = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = _add(acc, t if val == "+" else -t, self.ctx, pos)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _mul(acc, self.factor(), self.ctx, pos)
            elif kind == "op" and val == "/":
                self.take()
                den = self.factor()
                if not isinstance(den, CycScalar):
                    raise ExprSyntaxError("division by a non-scalar", pos)
                if not den:
                    raise ExprSyntaxError("division by zero", pos)
                acc = _mul(acc, den.inv(), self.ctx, pos)
            else:
                return acc

    def pow(self) -> int:
        kind, val, pos = self.peek()
        if not (kind == "op" and val == "^"):
            return 1
        self.take()
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            sign = -1
        kind, val, pos = self.take()
        if kind != "num":
            raise ExprSyntaxError("expected an integer exponent", pos)
        return sign * val

    def integer(self) -> int:
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            sign = -1
        kind, val, pos = self.take()
        if kind != "num":
            raise ExprSyntaxError("expected an integer", pos)
        return sign * val

    def factor(self):
        kind, val, pos = self.take()
        ctx = self.ctx
        if kind == "num":
            return CycScalar.of(ctx.d, val)
        if kind == "op" and val == "(":
            inner = self.elem()
            self.expect(")")
            k = self.pow()
            return inner if k == 1 else _power(inner, k, ctx, pos)
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "name":
            if val == "E":
                self.expect("[")
                i = self.integer()
                self.expect(",")
                j = self.integer()
                self.expect("]")
                if not ctx.n:
                    raise ExprSyntaxError("matrix units need n", pos)
                if not (1 <= i <= ctx.n and 1 <= j <= ctx.n):
                    raise ExprSyntaxError(f"E[{i},{j}] outside {ctx.n}x{ctx.n}", pos)
                one = ctx.scalar(CycScalar.one(ctx.d))
                return MatElem.E(ctx.n, i, j, one)
            if val == "e":
                self.expect("[")
                k = self.integer()
                self.expect("]")
                e = ctx.idempotent(k)
                if e is None:
                    raise ExprSyntaxError(f"idempotents are not available in ring {ctx.ring}", pos)
                return e
            if val in ("u", "v", "w", "x", "s", "t", "z", "omega"):
                k = self.pow()
                try:
                    return ctx.atom(val, k, pos)
                except ShapeMismatch as err:
                    raise ExprSyntaxError(str(err), pos)
            raise ExprSyntaxError(f"unknown name {val!r}", pos)
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {val!r}", pos)


def parse(src: str, ctx: ParseContext):
    """Parse `src` into the normal form of ctx's ring (a MatElem when E[i,j] occurs)."""
    val = _Parser(src, ctx).parse()
    if isinstance(val, CycScalar) and ctx.ring != "scalar":
        val = ctx.scalar(val)
    return val


def parse_scalar(src: str, d: int) -> CycScalar:
    """Exact element of Q(zeta_d) such as "(2+z)/3" or "-1/2*z^2"."""
    val = parse(src, ParseContext("scalar", d))
    if not isinstance(val, CycScalar):
        raise ExprSyntaxError("not a scalar", 0)
    return val


def parse_scalar_list(src: str, d: int) -> list:
    """Comma-separated scalars, commas inside parentheses allowed."""
    out, depth, start = [], 0, 0
    for k, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(src[start:k])
            start = k + 1
    if src[start:].strip():
        out.append(src[start:])
    return [parse_scalar(s, d) for s in out]


def format_elem(x) -> str:
    """Normal-form text, parseable back by `parse` in the same context."""
    if isinstance(x, CycScalar):
        from .scalars import format_scalar
        return format_scalar(x)
    return str(x)
