"""Exact scalars and small linear-algebra kernels.

Everything downstream works over Q(i): rationals with a formal square root
of -1 adjoined.  ``QI`` implements that field on top of ``fractions.Fraction``.
The row-reduction helpers are generic over any exact field type that supports
``+ - * /`` and equality with ``0`` (ints are promoted to ``Fraction``).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form


class QI:
    """An element ``re + im*i`` of the Gaussian rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return QI(x, 0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QI((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = QI._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


I = QI(0, 1)

# Powers of i indexed by quarter-turn phase.
I_POWERS = (QI(1), QI(0, 1), QI(-1), QI(0, -1))


def simplify(x):
    """Drop a vanishing imaginary part so rational results stay rational."""
    if isinstance(x, QI) and x.im == 0:
        return x.re
    if isinstance(x, int):
        return Fraction(x)
    return x


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form.  Returns (reduced rows, pivot columns)."""
    m = [[simplify(v) if v else Fraction(0) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [simplify(v / piv) for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [simplify(a - f * b) for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = simplify(-row[f])
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A Z-basis of the integer solutions of ``rows @ x = 0``.

    Column operations with extended gcd steps keep a unimodular transform U
    alongside A; the columns of U that end up under zero columns of A*U span
    the kernel lattice.
    """
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(c1: int, c2: int, p: int, q: int, r: int, s: int) -> None:
        # (col c1, col c2) <- (p*c1 + q*c2, r*c1 + s*c2)
        for mat in (a, u):
            for row in mat:
                x, y = row[c1], row[c2]
                row[c1], row[c2] = p * x + q * y, r * x + s * y

    col = 0
    for i in range(len(a)):
        if col >= ncols:
            break
        for c in range(col + 1, ncols):
            x, y = a[i][col], a[i][c]
            if y == 0:
                continue
            g, p, q = _xgcd(x, y)
            colop(col, c, p, q, -y // g, x // g)
        if a[i][col] != 0:
            col += 1
    return [[u[r][c] for r in range(ncols)] for c in range(col, ncols)]


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (abs(x), (1 if x >= 0 else -1), 0)
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lattice_hnf(vectors: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``."""
    vecs = [list(map(int, v)) for v in vectors]
    if not vecs:
        return []
    # sympy works column-style: put generators in columns, then transpose back.
    h = hermite_normal_form(Matrix(vecs).T)
    out = [tuple(int(x) for x in h.col(c)) for c in range(h.shape[1])]
    return sorted((v for v in out if any(v)), reverse=True)
