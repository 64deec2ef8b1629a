"""Exact scalars: rationals and the imaginary-quadratic field Q(sqrt(-d)).

Elements of ``Q(sqrt(-d))`` are stored as ``re + im * w`` with ``w**2 == -d``.
``d == 0`` is the degenerate case used when the endomorphism algebra of the
building-block elliptic curve is just ``Q``; then ``im`` must vanish.

Matrices over these scalars (:class:`QuadMatrix`) are small immutable
row-major tables; they are all the linear algebra the divisor model needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class DiscriminantMismatch(ValueError):
    """Raised when scalars or matrices over different fields are combined."""


def is_squarefree(n: int) -> bool:
    if n < 0:
        return False
    if n in (0, 1):
        return True
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def check_discriminant(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool) or not is_squarefree(d):
        raise ValueError(f"discriminant must be a non-negative square-free integer, got {d!r}")
    return d


@dataclass(frozen=True)
class QuadScalar:
    re: Fraction
    im: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if self.d == 0 and self.im != 0:
            raise DiscriminantMismatch("imaginary part must vanish when d = 0")

    @classmethod
    def of(cls, value: "QuadScalar | Number", d: int) -> "QuadScalar":
        if isinstance(value, QuadScalar):
            if value.d != d:
                raise DiscriminantMismatch(f"scalar over d={value.d} used where d={d} expected")
            return value
        return cls(Fraction(value), Fraction(0), d)

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise DiscriminantMismatch(
                    f"cannot combine scalars over d={self.d} and d={other.d}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.re + o.re, self.im + o.im, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.re - o.re, self.im - o.im, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QuadScalar(-self.re, -self.im, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(
            self.re * o.re - self.d * self.im * o.im,
            self.re * o.im + o.re * self.im,
            self.d,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, QuadScalar):
            return (self.re, self.im, self.d) == (other.re, other.im, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im, self.d))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conj(self) -> "QuadScalar":
        return QuadScalar(self.re, -self.im, self.d)

    def norm(self) -> Fraction:
        """``x * conj(x)``, which is rational and positive for ``x != 0``."""
        return self.re * self.re + self.d * self.im * self.im

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        c = self.conj()
        return QuadScalar(c.re / n, c.im / n, self.d)

    def is_rational(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"QuadScalar({self.re}, d={self.d})"
        return f"QuadScalar({self.re} + {self.im}w, d={self.d})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}w"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}w"


def qs_arith(x: QuadScalar, y: QuadScalar, op: str) -> QuadScalar:
    if not isinstance(x, QuadScalar) or not isinstance(y, QuadScalar):
        raise TypeError("qs_arith expects two QuadScalar values")
    if x.d != y.d:
        raise DiscriminantMismatch(f"cannot combine scalars over d={x.d} and d={y.d}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}; expected add, sub or mul")


def qs_conj(x: QuadScalar) -> QuadScalar:
    return x.conj()


@dataclass(frozen=True)
class QuadMatrix:
    """Immutable ``rows x cols`` matrix over ``Q(sqrt(-d))``."""

    d: int
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry table does not match the declared shape")
        for row in self.entries:
            for x in row:
                if not isinstance(x, QuadScalar) or x.d != self.d:
                    raise DiscriminantMismatch(f"matrix entry {x!r} is not over d={self.d}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], d: int) -> "QuadMatrix":
        entries = tuple(tuple(QuadScalar.of(x, d) for x in row) for row in rows)
        ncols = len(entries[0]) if entries else 0
        return cls(d, len(entries), ncols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int, d: int) -> "QuadMatrix":
        z = QuadScalar.of(0, d)
        return cls(d, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, d: int, scale: "Number | QuadScalar" = 1) -> "QuadMatrix":
        s = QuadScalar.of(scale, d)
        z = QuadScalar.of(0, d)
        return cls(d, n, n, tuple(tuple(s if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _same(self, other: "QuadMatrix"):
        if not isinstance(other, QuadMatrix):
            raise TypeError(f"expected QuadMatrix, got {type(other).__name__}")
        if other.d != self.d:
            raise DiscriminantMismatch(f"matrices over d={self.d} and d={other.d}")

    def __add__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same(other)
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return QuadMatrix(self.d, self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "QuadMatrix") -> "QuadMatrix":
        return self + (-other)

    def __neg__(self) -> "QuadMatrix":
        return QuadMatrix(self.d, self.rows, self.cols,
                          tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, s: "Number | QuadScalar") -> "QuadMatrix":
        s = QuadScalar.of(s, self.d)
        return QuadMatrix(self.d, self.rows, self.cols,
                          tuple(tuple(s * a for a in r) for r in self.entries))

    def __matmul__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = QuadScalar.of(0, self.d)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return QuadMatrix(self.d, self.rows, other.cols, tuple(out))

    def adjoint(self) -> "QuadMatrix":
        """Conjugate transpose; models the Rosati involution."""
        return QuadMatrix(self.d, self.cols, self.rows, tuple(
            tuple(self.entries[i][j].conj() for i in range(self.rows)) for j in range(self.cols)))

    def power(self, k: int) -> "QuadMatrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = QuadMatrix.identity(self.rows, self.d)
        for _ in range(k):
            out = out @ self
        return out

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == self.adjoint()

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def block_diag(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same(other)
        z = QuadScalar.of(0, self.d)
        top = tuple(r + (z,) * other.cols for r in self.entries)
        bottom = tuple((z,) * self.cols + r for r in other.entries)
        return QuadMatrix(self.d, self.rows + other.rows, self.cols + other.cols, top + bottom)

    def vstack(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same(other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return QuadMatrix(self.d, self.rows + other.rows, self.cols, self.entries + other.entries)

    def tolist(self) -> list[list[QuadScalar]]:
        return [list(r) for r in self.entries]

    def __iter__(self) -> Iterable[tuple]:
        return iter(self.entries)

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.entries) + "]"
