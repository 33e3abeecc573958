"""Immutable complex vectors and matrices in dimension four.

Everything downstream lives in C^4 (two binary settings per side), so the
types are fixed-size and the routines favour clarity over generality:
plain tuples of Python ``complex``, no numerics library.  All values are
immutable and every operation is pure, so they can be shared freely
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

DIM = 4

#: Tolerance for checks that should hold to machine precision.
DEFAULT_TOL = 1e-9


def _checked_complex(value: object) -> complex:
    z = complex(value)  # type: ignore[arg-type]
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite amplitude: {value!r}")
    return z


@dataclass(frozen=True, init=False)
class CVector:
    """Four complex amplitudes."""

    amplitudes: tuple[complex, complex, complex, complex]

    def __init__(self, amplitudes: Iterable[object]) -> None:
        amps = tuple(_checked_complex(z) for z in amplitudes)
        if len(amps) != DIM:
            raise ValueError(f"expected {DIM} amplitudes, got {len(amps)}")
        object.__setattr__(self, "amplitudes", amps)

    def __iter__(self):
        return iter(self.amplitudes)

    def __getitem__(self, k: int) -> complex:
        return self.amplitudes[k]

    def norm(self) -> float:
        return math.sqrt(sum(abs(z) ** 2 for z in self.amplitudes))

    def normalized(self) -> CVector:
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return CVector(z / n for z in self.amplitudes)

    def scaled(self, factor: complex) -> CVector:
        return CVector(factor * z for z in self.amplitudes)

    def __add__(self, other: CVector) -> CVector:
        return CVector(a + b for a, b in zip(self.amplitudes, other.amplitudes))

    def __sub__(self, other: CVector) -> CVector:
        return CVector(a - b for a, b in zip(self.amplitudes, other.amplitudes))


CANONICAL_BASIS = tuple(
    CVector([1 if i == k else 0 for i in range(DIM)]) for k in range(DIM)
)


@dataclass(frozen=True, init=False)
class CMatrix:
    """A 4x4 complex matrix, stored row-major."""

    rows: tuple[tuple[complex, ...], ...]

    def __init__(self, rows: Iterable[Iterable[object]]) -> None:
        mat = tuple(tuple(_checked_complex(z) for z in row) for row in rows)
        if len(mat) != DIM or any(len(row) != DIM for row in mat):
            raise ValueError(f"expected a {DIM}x{DIM} matrix")
        object.__setattr__(self, "rows", mat)

    def __getitem__(self, i: int) -> tuple[complex, ...]:
        return self.rows[i]

    def entry(self, i: int, j: int) -> complex:
        return self.rows[i][j]

    @classmethod
    def identity(cls) -> CMatrix:
        return cls([[1 if i == j else 0 for j in range(DIM)] for i in range(DIM)])

    @classmethod
    def zero(cls) -> CMatrix:
        return cls([[0] * DIM for _ in range(DIM)])

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> CMatrix:
        vals = [_checked_complex(v) for v in values]
        if len(vals) != DIM:
            raise ValueError(f"expected {DIM} diagonal entries")
        return cls([[vals[i] if i == j else 0 for j in range(DIM)] for i in range(DIM)])

    def dagger(self) -> CMatrix:
        return CMatrix(
            [[self.rows[j][i].conjugate() for j in range(DIM)] for i in range(DIM)]
        )

    def scaled(self, factor: complex) -> CMatrix:
        return CMatrix([[factor * z for z in row] for row in self.rows])

    def __add__(self, other: CMatrix) -> CMatrix:
        return CMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: CMatrix) -> CMatrix:
        return CMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> CMatrix:
        return self.scaled(-1)


def inner(u: CVector, v: CVector) -> complex:
    """Hermitian inner product <u|v>, conjugating the first argument."""
    return sum((a.conjugate() * b for a, b in zip(u, v)), 0j)


def outer(u: CVector, v: CVector) -> CMatrix:
    """Rank-one matrix |u><v|."""
    return CMatrix([[a * b.conjugate() for b in v] for a in u])


def apply(m: CMatrix, v: CVector) -> CVector:
    """Matrix-vector product m @ v."""
    return CVector(sum((row[j] * v[j] for j in range(DIM)), 0j) for row in m.rows)


def matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    return CMatrix(
        [
            [sum((a[i][k] * b[k][j] for k in range(DIM)), 0j) for j in range(DIM)]
            for i in range(DIM)
        ]
    )


def hermiticity_residual(m: CMatrix) -> float:
    """Largest entrywise deviation of ``m`` from its conjugate transpose."""
    return max(
        abs(m[i][j] - m[j][i].conjugate()) for i in range(DIM) for j in range(DIM)
    )


def is_hermitian(m: CMatrix, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return hermiticity_residual(m) <= tol


def quadratic_form(m: CMatrix, v: CVector) -> complex:
    """Full complex value of <v|m|v>; the imaginary part is a diagnostic
    for how far ``m`` is from self-adjoint on ``v``."""
    return inner(v, apply(m, v))


def expectation(m: CMatrix, v: CVector) -> float:
    """Real part of <v|m|v>.

    Meaningful as an expectation value when ``m`` is Hermitian and ``v``
    is a unit vector; use :func:`quadratic_form` to inspect the imaginary
    residual.
    """
    return quadratic_form(m, v).real


def max_entry_difference(a: CMatrix, b: CMatrix) -> float:
    return max(abs(a[i][j] - b[i][j]) for i in range(DIM) for j in range(DIM))
