"""Exact Gaussian integers and Gaussian rationals.

Character values and eigenmatrices are integer or rational combinations of
1 and i; nothing in this package is allowed to round, so these are thin
exact wrappers: GaussInt over int, GaussRat over Fraction.  A Gauss-Jordan
inverse over GaussRat is provided for the second-eigenmatrix computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GaussInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussInt") -> "GaussInt":
        other = _as_gi(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        other = _as_gi(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussInt":
        return _as_gi(other) - self

    def __mul__(self, other) -> "GaussInt":
        other = _as_gi(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        return f"{self.re}{self.im:+}i"

    def sort_key(self) -> tuple[int, int]:
        return (self.re, self.im)


def _as_gi(v) -> GaussInt:
    if isinstance(v, GaussInt):
        return v
    if isinstance(v, int):
        return GaussInt(v, 0)
    raise TypeError(f"cannot coerce {v!r} to GaussInt")


I = GaussInt(0, 1)

# i^k for k mod 4
I_POWERS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


@dataclass(frozen=True)
class GaussRat:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, v) -> "GaussRat":
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, GaussInt):
            return cls(Fraction(v.re), Fraction(v.im))
        if isinstance(v, (int, Fraction)):
            return cls(Fraction(v), Fraction(0))
        raise TypeError(f"cannot coerce {v!r} to GaussRat")

    def __add__(self, other) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRat":
        return GaussRat.of(other) - self

    def __mul__(self, other) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussRat":
        other = GaussRat.of(other)
        nrm = other.re * other.re + other.im * other.im
        if nrm == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return self * GaussRat(other.re / nrm, -other.im / nrm)

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_gauss_int(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def to_gauss_int(self) -> GaussInt:
        if not self.is_gauss_int():
            raise ValueError(f"{self} is not a Gaussian integer")
        return GaussInt(int(self.re), int(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def mat_inverse(M: list[list]) -> list[list[GaussRat]]:
    """Exact inverse of a square matrix of GaussInt/GaussRat entries."""
    n = len(M)
    A = [[GaussRat.of(M[r][c]) for c in range(n)] for r in range(n)]
    B = [
        [GaussRat.of(1 if r == c else 0) for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if not A[r][col].is_zero()), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        B[col] = [v / p for v in B[col]]
        for r in range(n):
            if r == col or A[r][col].is_zero():
                continue
            f = A[r][col]
            A[r] = [a - f * b for a, b in zip(A[r], A[col])]
            B[r] = [a - f * b for a, b in zip(B[r], B[col])]
    return B


def mat_mul(A: list[list], B: list[list]) -> list[list[GaussRat]]:
    n, k, m = len(A), len(B), len(B[0])
    return [
        [
            sum((GaussRat.of(A[r][j]) * B[j][c] for j in range(k)), GaussRat())
            for c in range(m)
        ]
        for r in range(n)
    ]
