"""Incremental exact row echelon over any field of Python scalars."""

from fractions import Fraction


class RowSpace:
    """Span of sparse vectors (dict key -> scalar), kept in echelon form.

    Rows stay mutually reduced, so one elimination pass decides membership.
    """

    def __init__(self):
        self.rows = {}  # pivot key -> normalized row

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c}
        for k in [k for k in v if k in self.rows]:
            c = v[k]
            for kk, rc in self.rows[k].items():
                nv = v.get(kk, 0) - c * rc
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = next(iter(v))
        inv = 1 / v[piv]
        v = {k: c * inv for k, c in v.items()}
        # keep existing rows reduced against the new pivot
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                for kk, vc in v.items():
                    nv = row.get(kk, 0) - c * vc
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
        self.rows[piv] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(vectors) -> int:
    rs = RowSpace()
    for v in vectors:
        rs.add(v)
    return len(rs)


def det(mat) -> Fraction:
    """Exact determinant of a square matrix (list of rows)."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        acc *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return sign * acc


def solve(mat, rhs) -> list:
    """Solve x * mat = rhs for a row vector x (rows of mat are the generators)."""
    n = len(mat)
    # transpose: mat^T x^T = rhs^T
    a = [[Fraction(mat[r][c]) for r in range(n)] + [Fraction(rhs[c])] for c in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]
