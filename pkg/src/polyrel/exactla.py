"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are plain tuples of fractions; matrices are the
small immutable :class:`QMatrix` below.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Rational = Fraction
QVector = tuple

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; ints and Fractions pass through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def qvector(values: Iterable) -> tuple:
    return tuple(parse_rational(v) for v in values)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        rows = [qvector(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)


def mat_mul(a: QMatrix, x: Sequence) -> tuple:
    if a.cols != len(x):
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} matrix by vector of dim {len(x)}")
    x = qvector(x)
    return tuple(sum((a[i, j] * x[j] for j in range(a.cols)), Fraction(0))
                 for i in range(a.rows))


def _integer_rows(rows: Iterable[Sequence]) -> list:
    """Scale each rational row by a positive factor to primitive integers."""
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in r]
        g = 0
        for v in ints:
            g = gcd(g, v)
        out.append([v // g for v in ints] if g > 1 else ints)
    return out


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss-style) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f == 0:
                continue
            row = [p[col] * m[i][j] - f * p[j] for j in range(ncols)]
            g = 0
            for v in row:
                g = gcd(g, v)
            m[i] = [v // g for v in row] if g > 1 else row
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(a: QMatrix) -> int:
    return integer_rank(_integer_rows(a.to_rows()))


def solve_linear(a: QMatrix, b: Sequence) -> Optional[tuple]:
    """One exact solution of ``a x = b``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    if a.rows != len(b):
        raise DimensionError(f"{a.rows} equations but rhs of dim {len(b)}")
    b = qvector(b)
    aug = [list(a.row(i)) + [b[i]] for i in range(a.rows)]
    n = a.cols
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)
