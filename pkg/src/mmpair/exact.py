"""Exact rational scalars, vectors and dense matrices.

Everything downstream works over the field of rationals.  Two interchangeable
scalar backends are supported:

* ``gmpy2.mpq`` (default when gmpy2 is importable) -- noticeably faster on the
  large endomorphism-algebra sweeps;
* ``fractions.Fraction`` -- pure stdlib fallback.

Select explicitly with the environment variable ``MMPAIR_EXACT_BACKEND`` set
to ``gmpy2`` or ``fraction``.  Both backends are exact; results are identical.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction

_backend = os.environ.get("MMPAIR_EXACT_BACKEND", "").lower()
if _backend not in ("", "gmpy2", "fraction"):
    raise RuntimeError(f"unknown MMPAIR_EXACT_BACKEND: {_backend!r}")

if _backend != "fraction":
    try:
        from gmpy2 import mpq as Rat

        BACKEND = "gmpy2"
    except ImportError:
        if _backend == "gmpy2":
            raise
        Rat = Fraction
        BACKEND = "fraction"
else:
    Rat = Fraction
    BACKEND = "fraction"

ZERO = Rat(0)
ONE = Rat(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class RationalParseError(ValueError):
    """Raised for text that is not a valid rational literal."""


def parse_rational(text: str):
    """Parse ``p``, ``-p`` or ``p/q`` into an exact rational in lowest terms."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise RationalParseError(f"malformed rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise RationalParseError(f"zero denominator: {text!r}")
        return Rat(int(num), int(den))
    return Rat(int(text))


def format_rational(q) -> str:
    """Inverse of parse_rational: ``p`` or ``p/q`` with q > 1."""
    q = Rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat(value):
    """Coerce an int, string or rational-like value to the active backend."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in the exact path")
    return Rat(value)


# ---------------------------------------------------------------------------
# Coordinate vectors (plain tuples of Rat)
# ---------------------------------------------------------------------------

def vec_zero(n: int) -> tuple:
    return (ZERO,) * n


def vec_add(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: tuple, v: tuple) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: tuple) -> tuple:
    return tuple(-a for a in u)


def vec_scale(c, u: tuple) -> tuple:
    return tuple(c * a for a in u)


def vec_is_zero(u: tuple) -> bool:
    return all(a == 0 for a in u)


def vec_from_strings(parts) -> tuple:
    return tuple(parse_rational(p) for p in parts)


def vec_to_strings(u: tuple) -> list:
    return [format_rational(a) for a in u]


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of exact rationals (row-major tuples)."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(rows) -> "Matrix":
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return Matrix(len(data), ncols, data)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _check_same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        bt = tuple(zip(*other.entries))  # columns of other
        out = []
        for row in self.entries:
            out.append(tuple(sum(a * b for a, b in zip(row, col) if a) for col in bt))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: tuple) -> tuple:
        """Matrix-vector product; skips zero coordinates of v."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        out = [ZERO] * self.rows
        for j, c in enumerate(v):
            if c == 0:
                continue
            for i in range(self.rows):
                e = self.entries[i][j]
                if e:
                    out[i] += c * e
        return tuple(out)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def flatten(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    @staticmethod
    def from_flat(rows: int, cols: int, flat) -> "Matrix":
        flat = tuple(flat)
        if len(flat) != rows * cols:
            raise ValueError("flat length does not match shape")
        return Matrix(rows, cols, tuple(flat[i * cols:(i + 1) * cols] for i in range(rows)))

    def to_strings(self) -> list:
        return [[format_rational(x) for x in row] for row in self.entries]

    @staticmethod
    def from_strings(rows) -> "Matrix":
        return Matrix.from_rows([[parse_rational(x) for x in row] for row in rows])


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """a@b - b@a for square matrices of equal dimension."""
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise ValueError("commutator needs square matrices of equal dimension")
    return (a @ b) - (b @ a)


# ---------------------------------------------------------------------------
# Exact linear solving (reduced row echelon form)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b.

    ``consistent`` is False for an inconsistent system (particular is None and
    nullspace is empty).  Otherwise ``particular`` is one solution (free
    variables set to zero) and ``nullspace`` is a basis of the homogeneous
    solutions, one vector per free column in increasing column order with the
    free variable set to one.
    """

    consistent: bool
    particular: tuple | None
    nullspace: tuple


def solve_linear(a: Matrix, b: tuple) -> LinearSolution:
    """Exact Gaussian elimination with deterministic pivoting.

    Pivot choice: leftmost nonzero column, then the smallest remaining row
    index, so the echelon form (and hence the reported bases) is reproducible.
    """
    if len(b) != a.rows:
        raise ValueError(f"rhs length {len(b)} != rows {a.rows}")
    m, n = a.rows, a.cols
    aug = [list(row) + [rat(b[i])] for i, row in enumerate(a.entries)]
    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    # Inconsistency: a zero row with nonzero rhs.
    for i in range(r, m):
        if aug[i][n] != 0:
            return LinearSolution(False, None, ())
    free_cols = [c for c in range(n) if c not in pivot_cols]
    particular = [ZERO] * n
    for k, c in enumerate(pivot_cols):
        particular[c] = aug[k][n]
    null = []
    for fc in free_cols:
        v = [ZERO] * n
        v[fc] = ONE
        for k, c in enumerate(pivot_cols):
            v[c] = -aug[k][fc]
        null.append(tuple(v))
    return LinearSolution(True, tuple(particular), tuple(null))


def rationalize_float(x: float, max_denominator: int = 10**6):
    """Best rational approximation with bounded denominator (continued fractions)."""
    f = Fraction(x).limit_denominator(max_denominator)
    return Rat(f.numerator, f.denominator)
