"""Dense univariate polynomials over Q(zeta_d), low degree first."""

from .errors import DivisionByZero
from .scalars import CycScalar, as_scalar, format_scalar


class Poly:
    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs=()):
        cs = [as_scalar(d, x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.d, self.c = d, tuple(cs)

    @classmethod
    def x(cls, d: int) -> "Poly":
        return cls(d, [0, 1])

    @classmethod
    def from_roots(cls, d: int, roots) -> "Poly":
        acc = cls(d, [1])
        for b in roots:
            acc = acc * cls(d, [-as_scalar(d, b), 1])
        return acc

    def _lift(self, o) -> "Poly":
        return o if isinstance(o, Poly) else Poly(self.d, [o])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> CycScalar:
        return self.c[-1] if self.c else CycScalar.zero(self.d)

    def coeff(self, k: int) -> CycScalar:
        return self.c[k] if 0 <= k < len(self.c) else CycScalar.zero(self.d)

    def __add__(self, o):
        o = self._lift(o)
        n = max(len(self.c), len(o.c))
        return Poly(self.d, [self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.d, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return Poly(self.d, [x * o for x in self.c])
        if not self.c or not o.c:
            return Poly(self.d)
        out = [CycScalar.zero(self.d)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] = out[i + j] + x * y
        return Poly(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        acc = Poly(self.d, [1])
        for _ in range(k):
            acc = acc * self
        return acc

    def __call__(self, x):
        acc = CycScalar.zero(self.d) if not isinstance(x, Poly) else Poly(self.d)
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def shift(self, h) -> "Poly":
        """p(x + h)."""
        return self(Poly(self.d, [h, 1]))

    def deriv(self) -> "Poly":
        return Poly(self.d, [c * k for k, c in enumerate(self.c)][1:])

    def reverse(self, m: int = None) -> "Poly":
        """x^m p(1/x), with m = deg p by default."""
        m = self.degree if m is None else m
        return Poly(self.d, [self.coeff(m - k) for k in range(m + 1)])

    def __divmod__(self, o: "Poly"):
        if not o.c:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.c)
        q = [CycScalar.zero(self.d)] * max(len(r) - len(o.c) + 1, 0)
        inv = o.lead.inv()
        for k in range(len(q) - 1, -1, -1):
            f = r[k + len(o.c) - 1] * inv
            q[k] = f
            if f:
                for j, y in enumerate(o.c):
                    r[k + j] = r[k + j] - f * y
        return Poly(self.d, q), Poly(self.d, r[: len(o.c) - 1])

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def divides(self, o: "Poly") -> bool:
        return not (o % self)

    def monic(self) -> "Poly":
        return self * self.lead.inv() if self.c else self

    def is_monic(self) -> bool:
        return bool(self.c) and self.lead == 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        if isinstance(o, (int,)) or isinstance(o, CycScalar):
            o = Poly(self.d, [o])
        return isinstance(o, Poly) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            c = self.c[k]
            if not c:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            s = format_scalar(c)
            if mono and s == "1":
                parts.append(mono)
            elif mono and s == "-1":
                parts.append("-" + mono)
            else:
                if any(ch in s[1:] for ch in "+-"):
                    s = f"({s})"
                parts.append(f"{s}*{mono}" if mono else s)
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"Poly({self.d}, {str(self)!r})"
