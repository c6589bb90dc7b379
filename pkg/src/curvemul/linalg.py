"""Dense linear algebra over a binary field, with multiplication counting.

Matrices are immutable row-major tuples of field ints. `CountingContext`
accumulates the number of base-field multiplications a mat-vec schedules;
counting is structural (one multiplication per scheduled matrix entry /
vector position pair), never dependent on entry values, so repeated runs of
the same shaped product always report the same count.
"""

from __future__ import annotations

from typing import Sequence

from .galois import BinaryField


class SingularMatrixError(Exception):
    pass


class CountingContext:
    """Accumulator for scheduled base-field multiplications."""

    __slots__ = ("scalar_mults",)

    def __init__(self) -> None:
        self.scalar_mults = 0

    def __repr__(self) -> str:
        return f"CountingContext(scalar_mults={self.scalar_mults})"


class Matrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: BinaryField, rows: int, cols: int, entries: Sequence[int]):
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = tuple(field.check(v) for v in entries)

    @classmethod
    def from_rows(cls, field: BinaryField, rows: Sequence[Sequence[int]]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(field, r, c, flat)

    @classmethod
    def identity(cls, field: BinaryField, n: int) -> "Matrix":
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def take_columns(self, cols: Sequence[int]) -> "Matrix":
        flat = []
        for i in range(self.rows):
            base = i * self.cols
            for j in cols:
                flat.append(self.entries[base + j])
        return Matrix(self.field, self.rows, len(cols), flat)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows or a.field != b.field:
        raise ValueError("shape/field mismatch")
    f = a.field
    mul = f.mul
    flat = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = 0
            for k in range(a.cols):
                acc ^= mul(arow[k], b.at(k, j))
            flat.append(acc)
    return Matrix(f, a.rows, b.cols, flat)


def _rows_as_lists(m: Matrix) -> list[list[int]]:
    return [list(m.row(i)) for i in range(m.rows)]


def rank(m: Matrix) -> int:
    """Row-echelon rank by Gaussian elimination (first nonzero pivot)."""
    f = m.field
    mul, inv = f.mul, f.inv
    rows = _rows_as_lists(m)
    r = 0
    for col in range(m.cols):
        pivot = None
        for i in range(r, m.rows):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pinv = inv(rows[r][col])
        rows[r] = [mul(pinv, v) for v in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [v ^ mul(c, p) for v, p in zip(rows[i], rows[r])]
        r += 1
        if r == m.rows:
            break
    return r

def invert(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises SingularMatrixError when rank is deficient."""
    if m.rows != m.cols:
        raise SingularMatrixError("only square matrices can be inverted")
    n = m.rows
    f = m.field
    mul, inv = f.mul, f.inv
    rows = _rows_as_lists(m)
    aug = [rows[i] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if aug[i][col]:
                pivot = i
                break
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {col})")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pinv = inv(aug[col][col])
        aug[col] = [mul(pinv, v) for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [v ^ mul(c, p) for v, p in zip(aug[i], aug[col])]
    return Matrix.from_rows(f, [row[n:] for row in aug])


def mat_vec(
    m: Matrix,
    v: Sequence[int],
    ctx: CountingContext | None = None,
    skip_zero: bool = False,
) -> list[int]:
    """m times v.

    With ``skip_zero`` the product skips (and does not count) positions where
    v is zero; otherwise every (row, position) pair is scheduled and counted,
    regardless of values.  Counts go to ``ctx`` when given.
    """
    if len(v) != m.cols:
        raise ValueError(f"vector length {len(v)} does not match {m.cols} columns")
    mul = m.field.mul
    if skip_zero:
        positions = [j for j, x in enumerate(v) if x]
    else:
        positions = list(range(m.cols))
    if ctx is not None:
        ctx.scalar_mults += m.rows * len(positions)
    out = []
    entries = m.entries
    cols = m.cols
    for i in range(m.rows):
        base = i * cols
        acc = 0
        for j in positions:
            acc ^= mul(entries[base + j], v[j])
        out.append(acc)
    return out


def mat_vec_partial(
    m: Matrix,
    v: Sequence[int],
    rows_needed: Sequence[int],
    ctx: CountingContext | None = None,
) -> list[int]:
    """Only the requested rows of m times v; counts len(rows_needed) * cols."""
    if len(v) != m.cols:
        raise ValueError(f"vector length {len(v)} does not match {m.cols} columns")
    mul = m.field.mul
    if ctx is not None:
        ctx.scalar_mults += len(rows_needed) * m.cols
    out = []
    entries = m.entries
    cols = m.cols
    for i in rows_needed:
        if not 0 <= i < m.rows:
            raise ValueError(f"row index {i} out of range")
        base = i * cols
        acc = 0
        for j in range(cols):
            acc ^= mul(entries[base + j], v[j])
        out.append(acc)
    return out
