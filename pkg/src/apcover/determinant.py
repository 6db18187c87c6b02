"""Structured matrices behind the two counts and exact determinant routes.

The "available" matrix of a system is k x k with the moduli on the
diagonal and ones everywhere else; the "free" matrix borders it with an
all-ones first row, making it (k+1) x (k+1). Three independent ways to
evaluate them:

* ``available_det`` / ``free_det``: O(k) big-integer recurrences that
  exploit the structure (the free count is a bare product of (p - 1)
  factors; the available count folds the free prefix in at each step);
* ``det_bareiss``: fraction-free elimination, exact on any integer
  matrix, used as the general-purpose oracle;
* ``det_laplace``: cofactor expansion along the last row, for tiny
  matrices only, used as the oracle's oracle.

All arithmetic is arbitrary precision throughout; there is no fixed-width
fast path to diverge from the exact routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ModulusSystem
from .errors import DimensionTooLargeError

LAPLACE_MAX_DIMENSION = 8


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense square matrix of arbitrary-precision integers, row-major."""

    dimension: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if len(self.entries) != self.dimension * self.dimension:
            raise ValueError(
                f"{self.dimension}x{self.dimension} matrix needs "
                f"{self.dimension ** 2} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(dimension=n, entries=tuple(x for row in rows for x in row))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.dimension + j]

    def rows(self) -> list[list[int]]:
        n = self.dimension
        return [list(self.entries[i * n : (i + 1) * n]) for i in range(n)]


def build_available_matrix(system: ModulusSystem) -> IntegerMatrix:
    """k x k matrix with the moduli on the diagonal, ones elsewhere."""
    k = system.k
    entries = [1] * (k * k)
    for i, p in enumerate(system.moduli):
        entries[i * k + i] = p
    return IntegerMatrix(dimension=k, entries=tuple(entries))


def build_free_matrix(system: ModulusSystem) -> IntegerMatrix:
    """(k+1) x (k+1) bordered matrix: all-ones first row, then the moduli
    staggered one column left of the diagonal, ones elsewhere."""
    k = system.k
    n = k + 1
    entries = [1] * (n * n)
    for i, p in enumerate(system.moduli, start=1):
        entries[i * n + (i - 1)] = p
    return IntegerMatrix(dimension=n, entries=tuple(entries))


def det_bareiss(matrix: IntegerMatrix) -> int:
    """Exact determinant by fraction-free elimination.

    Partial pivoting on the first nonzero entry in column order with sign
    tracking; every intermediate division is exact, so the result is the
    true integer determinant. Singular matrices return 0.
    """
    n = matrix.dimension
    m = matrix.rows()
    sign = 1
    prev = 1
    for col in range(n - 1):
        if m[col][col] == 0:
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    m[col], m[r] = m[r], m[col]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[col][col]
        row_c = m[col]
        for r in range(col + 1, n):
            row_r = m[r]
            factor = row_r[col]
            for c in range(col + 1, n):
                row_r[c] = (row_r[c] * pivot - factor * row_c[c]) // prev
            row_r[col] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_laplace(matrix: IntegerMatrix) -> int:
    """Exact determinant by cofactor expansion along the last row.

    Factorially expensive; refused above dimension 8.
    """
    if matrix.dimension > LAPLACE_MAX_DIMENSION:
        raise DimensionTooLargeError(
            f"cofactor expansion limited to dimension {LAPLACE_MAX_DIMENSION}, "
            f"got {matrix.dimension}"
        )
    return _laplace(matrix.rows())


def _laplace(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    last = rows[n - 1]
    for j in range(n):
        v = last[j]
        if v == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[: n - 1]]
        cofactor = _laplace(minor)
        if (n - 1 + j) % 2:
            total -= v * cofactor
        else:
            total += v * cofactor
    return total


def free_det(system: ModulusSystem) -> int:
    """F_k, the free count: the product of (p_i - 1) over the system.

    Equals (-1)^k times the raw determinant of the bordered free matrix;
    the sign conversion lives here so the count is never negative.
    """
    result = 1
    for p in system.moduli:
        result *= p - 1
    return result


def available_det(system: ModulusSystem) -> int:
    """A_k, the available count, in O(k) big-integer multiplications.

    Consumes the moduli left to right: starting from A = p_1 and the free
    prefix F = p_1 - 1, each step folds the next modulus in as
    A -> F + (p - 1) * A, F -> (p - 1) * F. Equals the determinant of the
    available matrix for every modulus order.
    """
    moduli = system.moduli
    avail = moduli[0]
    free = moduli[0] - 1
    for p in moduli[1:]:
        avail = free + (p - 1) * avail
        free *= p - 1
    return avail
