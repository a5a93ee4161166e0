"""
Dense rational matrices with exact Gauss-Jordan elimination.

Scalars are ``fractions.Fraction`` (always in lowest terms with a positive
denominator), so equality of matrices is plain structural equality.  Zero-row
and zero-column matrices are ordinary values; they show up whenever a kernel,
cokernel or complement is trivial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotSquare, SchemaError, ShapeMismatch, Singular

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)
_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a canonical Fraction.

    Floats are refused: an inexact scalar would silently poison every rank
    decision downstream.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise ValueError(f"not a rational literal: {x!r}")
        q = Fraction(x.replace(" ", ""))
        return q
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Mat:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise ShapeMismatch("matrix dimensions must be nonnegative")
        flat = [to_rational(x) for x in entries]
        if len(flat) != rows * cols:
            raise ShapeMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(flat)}"
            )
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ShapeMismatch(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Mat":
        columns = [list(c) for c in columns]
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ShapeMismatch(f"column {j} has {len(c)} entries, expected {rows}")
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def _trusted(cls, rows: int, cols: int, data) -> "Mat":
        # data is already a tuple of tuples of Fraction
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        row = (_ZERO,) * cols
        return cls._trusted(rows, cols, (row,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._trusted(
            n, n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        )

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat._trusted(
            len(row_idx), len(col_idx),
            tuple(tuple(self._data[i][j] for j in col_idx) for i in row_idx),
        )

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        """Rows ``r0:r1`` and columns ``c0:c1``."""
        return Mat._trusted(r1 - r0, c1 - c0, tuple(self._data[i][c0:c1] for i in range(r0, r1)))

    def select_columns(self, col_idx: Sequence[int]) -> "Mat":
        return self.submatrix(range(self.rows), col_idx)

    # -- algebra ------------------------------------------------------------

    @property
    def T(self) -> "Mat":
        if self.rows == 0:
            return Mat._trusted(self.cols, 0, ((),) * self.cols)
        return Mat._trusted(self.cols, self.rows, tuple(zip(*self._data)))

    def transpose(self) -> "Mat":
        return self.T

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        data = tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in ocols)
            for r in self._data
        )
        return Mat._trusted(self.rows, other.cols, data)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Mat._trusted(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Mat._trusted(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "Mat":
        return Mat._trusted(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> "Mat":
        c = to_rational(c)
        return Mat._trusted(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    def hstack(self, *others: "Mat") -> "Mat":
        out = self
        for o in others:
            if o.rows != out.rows:
                raise ShapeMismatch(f"hstack row mismatch: {out.rows} vs {o.rows}")
            out = Mat._trusted(out.rows, out.cols + o.cols,
                               tuple(a + b for a, b in zip(out._data, o._data)))
        return out

    def vstack(self, *others: "Mat") -> "Mat":
        out = self
        for o in others:
            if o.cols != out.cols:
                raise ShapeMismatch(f"vstack column mismatch: {out.cols} vs {o.cols}")
            out = Mat._trusted(out.rows + o.rows, out.cols, out._data + o._data)
        return out

    def is_zero(self) -> bool:
        return all(not a for r in self._data for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Mat.identity(self.rows)

    def mod(self, p: int) -> list[list[int]]:
        """Entries reduced modulo ``p``; only defined for integer matrices."""
        out = []
        for r in self._data:
            row = []
            for a in r:
                if a.denominator != 1:
                    raise ValueError("modular reduction needs integer entries")
                row.append(a.numerator % p)
            out.append(row)
        return out

    # -- protocol -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(a) for a in r) for r in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(a) for a in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, obj, field: str = "") -> "Mat":
        where = field or "matrix"
        if not isinstance(obj, dict):
            raise SchemaError(where, "expected an object with rows, cols, entries")
        for key in ("rows", "cols", "entries"):
            if key not in obj:
                raise SchemaError(f"{where}.{key}", "missing")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        for key, v in (("rows", rows), ("cols", cols)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise SchemaError(f"{where}.{key}", "must be a nonnegative integer")
        if not isinstance(entries, list) or len(entries) != rows:
            raise SchemaError(f"{where}.entries", f"expected a list of {rows} rows")
        flat = []
        for i, r in enumerate(entries):
            if not isinstance(r, list) or len(r) != cols:
                raise SchemaError(f"{where}.entries[{i}]", f"expected a list of {cols} entries")
            for j, x in enumerate(r):
                try:
                    flat.append(to_rational(x))
                except (TypeError, ValueError) as exc:
                    raise SchemaError(f"{where}.entries[{i}][{j}]", str(exc)) from None
        return cls(rows, cols, flat)


def mat(rows: Sequence[Sequence], cols: int | None = None) -> Mat:
    """Shorthand for ``Mat.from_rows``."""
    return Mat.from_rows(rows, cols)


def column_vector(values: Sequence) -> Mat:
    return Mat(len(values), 1, values)


def _rref_rows(data: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan elimination; returns the pivot column list."""
    pivots = []
    prow = 0
    nrows = len(data)
    for c in range(ncols):
        if prow == nrows:
            break
        sel = next((i for i in range(prow, nrows) if data[i][c]), None)
        if sel is None:
            continue
        if sel != prow:
            data[prow], data[sel] = data[sel], data[prow]
        pr = data[prow]
        piv = pr[c]
        if piv != 1:
            pr = data[prow] = [a / piv for a in pr]
        for i in range(nrows):
            if i != prow:
                f = data[i][c]
                if f:
                    data[i] = [a - f * b for a, b in zip(data[i], pr)]
        pivots.append(c)
        prow += 1
    return pivots


def rref(m: Mat) -> tuple[Mat, tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns and rank of ``m``."""
    data = [list(r) for r in m._data]
    pivots = _rref_rows(data, m.cols)
    reduced = Mat._trusted(m.rows, m.cols, tuple(tuple(r) for r in data))
    return reduced, tuple(pivots), len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[2]


def nullity(m: Mat) -> int:
    return m.cols - rank(m)


def kernel_basis(m: Mat) -> Mat:
    """Columns spanning the null space: one per free column, in column order."""
    reduced, pivots, r = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        cols.append(v)
    return Mat.from_columns(cols, m.cols)


def image_basis(m: Mat) -> Mat:
    """Canonical column-space basis: the nonzero rows of ``rref(m.T)``, as columns."""
    reduced, _, r = rref(m.T)
    if r == 0:
        return Mat.zeros(m.rows, 0)
    return Mat._trusted(m.rows, r, tuple(zip(*reduced._data[:r])))


def inverse(m: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan on ``[m | I]``.

    Raises ``Singular`` carrying a kernel vector when ``m`` is not invertible.
    """
    if m.rows != m.cols:
        raise NotSquare(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [list(r) + [(_ONE if i == j else _ZERO) for j in range(n)] for i, r in enumerate(m._data)]
    pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        k = kernel_basis(m)
        raise Singular(f"matrix has rank {len(pivots)} < {n}", len(pivots), k.select_columns([0]))
    return Mat._trusted(n, n, tuple(tuple(r[n:]) for r in aug))


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def block_assemble(blocks: Sequence[Sequence[Mat | None]], row_dims: Sequence[int],
                   col_dims: Sequence[int]) -> Mat:
    """Glue a grid of blocks into one matrix. ``None`` stands for a zero block."""
    if len(blocks) != len(row_dims):
        raise ShapeMismatch(f"{len(blocks)} block rows for {len(row_dims)} row dims")
    out_rows = []
    for bi, (brow, rd) in enumerate(zip(blocks, row_dims)):
        if len(brow) != len(col_dims):
            raise ShapeMismatch(f"block row {bi} has {len(brow)} blocks, expected {len(col_dims)}")
        parts = []
        for bj, (b, cd) in enumerate(zip(brow, col_dims)):
            if b is None:
                b = Mat.zeros(rd, cd)
            elif b.shape != (rd, cd):
                raise ShapeMismatch(f"block ({bi},{bj}) is {b.shape}, slot is {(rd, cd)}")
            parts.append(b)
        for i in range(rd):
            out_rows.append(tuple(x for b in parts for x in b._data[i]))
    return Mat._trusted(sum(row_dims), sum(col_dims), tuple(out_rows))


def block_diag(*blocks: Mat) -> Mat:
    rd = [b.rows for b in blocks]
    cd = [b.cols for b in blocks]
    grid = [[b if i == j else None for j, b in enumerate(blocks)] for i in range(len(blocks))]
    return block_assemble(grid, rd, cd)


def offsets(dims: Sequence[int]) -> list[int]:
    out = [0]
    for d in dims:
        out.append(out[-1] + d)
    return out


def read_block(m: Mat, row_dims: Sequence[int], col_dims: Sequence[int], i: int, j: int) -> Mat:
    ro, co = offsets(row_dims), offsets(col_dims)
    return m.block(ro[i], ro[i + 1], co[j], co[j + 1])
