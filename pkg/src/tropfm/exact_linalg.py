"""Exact integer and rational matrices.

Every determinant, minor and lattice index in the package goes through
this module. Entries are :class:`fractions.Fraction` throughout, so the
results never depend on floating point.

>>> M = RatMatrix.from_rows([[2, 1], [1, 3]])
>>> det_exact(M)
Fraction(5, 1)
>>> minor(M, (1,), (2,))
Fraction(1, 1)
>>> smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]])).invariant_factors
(1, 6)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "RatMatrix",
    "IntMatrix",
    "SmithForm",
    "parse_rational",
    "format_rational",
    "det_exact",
    "minor",
    "inverse",
    "smith_normal_form",
    "cokernel_order",
    "check_jacobi_identity",
    "check_cauchy_binet",
]

_LEIBNIZ_MAX = 4


class DimensionError(ValueError):
    """Matrix shapes do not fit the requested operation."""


class SingularMatrixError(ValueError):
    """An invertible matrix was required."""


def parse_rational(value) -> Fraction:
    """Read ``int``, ``Fraction`` or a ``"num/den"`` string exactly.

    Floats are refused because they cannot carry exact data.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"expected an int, Fraction or 'num/den' string, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = tuple(parse_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise DimensionError(f"{len(data)} entries do not fill a {rows}x{cols} matrix")
        self._check(data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def _check(self, data):
        pass

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence):
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._data)

    def transpose(self):
        return type(self)(self.cols, self.rows,
                          [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self):
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        """Select 1-based rows and columns."""
        for i in rows:
            if not 1 <= i <= self.rows:
                raise DimensionError(f"row index {i} out of range 1..{self.rows}")
        for j in cols:
            if not 1 <= j <= self.cols:
                raise DimensionError(f"column index {j} out of range 1..{self.cols}")
        return RatMatrix(len(rows), len(cols), [self[i - 1, j - 1] for i in rows for j in cols])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return _promote(self, other)(self.rows, other.cols, out)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in sum")
        return _promote(self, other)(self.rows, self.cols,
                                     [a + b for a, b in zip(self._data, other._data)])

    def __neg__(self):
        return type(self)(self.rows, self.cols, [-a for a in self._data])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "RatMatrix":
        s = parse_rational(s)
        return RatMatrix(self.rows, self.cols, [s * a for a in self._data])

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise DimensionError("vector length does not match column count")
        v = [parse_rational(x) for x in vec]
        return tuple(sum((self[i, k] * v[k] for k in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in self.row(i)) + "]"
                         for i in range(self.rows))
        return f"{type(self).__name__}([{body}])"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]}

    @classmethod
    def from_json(cls, doc) -> "RatMatrix":
        if not isinstance(doc, dict) or not {"rows", "cols", "entries"} <= doc.keys():
            raise ValueError("matrix JSON needs 'rows', 'cols' and 'entries'")
        rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
        if not isinstance(entries, list) or len(entries) != rows or any(
                not isinstance(r, list) or len(r) != cols for r in entries):
            raise DimensionError("matrix JSON entries do not match rows/cols")
        return cls(rows, cols, [e for r in entries for e in r])


class IntMatrix(RatMatrix):
    """A :class:`RatMatrix` whose entries are all integers."""

    __slots__ = ()

    def _check(self, data):
        if any(x.denominator != 1 for x in data):
            raise ValueError("IntMatrix entries must be integers")

    def int_rows(self) -> list[list[int]]:
        return [[int(x) for x in self.row(i)] for i in range(self.rows)]


def _promote(a, b):
    return IntMatrix if isinstance(a, IntMatrix) and isinstance(b, IntMatrix) else RatMatrix


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors ``d1 | d2 | ...``; a 0 marks a free cokernel summand."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = self.invariant_factors
        for a, b in zip(f, f[1:]):
            if a == 0 and b != 0 or (a != 0 and b % a != 0):
                raise ValueError(f"divisibility chain broken: {f}")

    @property
    def order(self) -> int | float:
        """Cokernel order, ``math.inf`` when a free summand is present."""
        if any(d == 0 for d in self.invariant_factors):
            return math.inf
        return math.prod(self.invariant_factors)


def _leibniz(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += -term if inversions % 2 else term
    return total


def _bareiss(rows: list[list[Fraction]]) -> Fraction:
    # clear denominators so the elimination stays in Z
    n = len(rows)
    scale = Fraction(1)
    a = []
    for r in rows:
        m = math.lcm(*(x.denominator for x in r)) if r else 1
        scale /= m
        a.append([int(x * m) for x in r])
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def det_exact(M: RatMatrix) -> Fraction:
    """Exact determinant: Leibniz up to 4x4, fraction-free Bareiss beyond."""
    if not M.is_square:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    if M.rows == 0:
        return Fraction(1)
    rows = M.to_rows()
    return _leibniz(rows) if M.rows <= _LEIBNIZ_MAX else _bareiss(rows)


def minor(M: RatMatrix, rowsI: Sequence[int], colsJ: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on 1-based ``rowsI`` x ``colsJ``; the empty minor is 1."""
    rowsI, colsJ = tuple(rowsI), tuple(colsJ)
    if len(rowsI) != len(colsJ):
        raise DimensionError(f"minor needs |I| = |J|, got {len(rowsI)} and {len(colsJ)}")
    return det_exact(M.submatrix(rowsI, colsJ))


def inverse(M: RatMatrix) -> RatMatrix:
    """Gauss-Jordan inverse over Q."""
    if not M.is_square:
        raise DimensionError("only square matrices have inverses")
    n = M.rows
    a = [list(M.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return RatMatrix(n, n, [a[i][n + j] for i in range(n) for j in range(n)])


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Invariant factors of an integer matrix.

    Repeatedly moves the entry of least absolute value to the pivot and
    clears its row and column; a final pass enforces divisibility.
    """
    if not M.is_integral:
        raise ValueError("Smith normal form needs an integer matrix")
    a = [[int(x) for x in M.row(i)] for i in range(M.rows)]
    m, n = M.rows, M.cols
    diag = []
    for t in range(min(m, n)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                done &= a[i][t] == 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                done &= a[t][j] == 0
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                # fold the offending row in and go again
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]) if t < m and t < n else 0)
    nonzero = sorted(d for d in diag if d)
    factors = nonzero + [0] * (len(diag) - len(nonzero))
    return SmithForm(tuple(factors))


def cokernel_order(M: IntMatrix) -> int | float:
    """Order of ``Z^rows / im(M)``; infinite unless ``M`` is square and nonsingular."""
    if not M.is_square:
        return math.inf
    return smith_normal_form(M).order


def check_jacobi_identity(M: RatMatrix, I: Sequence[int], J: Sequence[int]) -> bool:
    """Compare ``det M_{I,J}`` with ``(-1)^(sum I + sum J) det M det (M^-1)_{J^o, I^o}``."""
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise DimensionError("Jacobi identity needs |I| = |J|")
    d = det_exact(M)
    if d == 0:
        raise SingularMatrixError("Jacobi identity needs an invertible matrix")
    n = M.rows
    Ic = tuple(i for i in range(1, n + 1) if i not in I)
    Jc = tuple(j for j in range(1, n + 1) if j not in J)
    sign = -1 if (sum(I) + sum(J)) % 2 else 1
    return minor(M, I, J) == sign * d * minor(inverse(M), Jc, Ic)


def check_cauchy_binet(A: RatMatrix, B: RatMatrix, I: Sequence[int], J: Sequence[int]) -> bool:
    """Compare ``det (AB)_{I,J}`` with the sum over ``K`` of ``det A_{I,K} det B_{K,J}``."""
    I, J = tuple(I), tuple(J)
    if A.cols != B.rows:
        raise DimensionError("Cauchy-Binet needs A.cols = B.rows")
    if len(I) != len(J):
        raise DimensionError("Cauchy-Binet needs |I| = |J|")
    lhs = minor(A @ B, I, J)
    rhs = sum((minor(A, I, K) * minor(B, K, J)
               for K in combinations(range(1, A.cols + 1), len(I))), Fraction(0))
    return lhs == rhs
