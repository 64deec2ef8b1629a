"""Arithmetic model of Pic(A)_Q for A = E^g.

* ``NS(A)_Q`` is modelled by g x g Hermitian matrices over ``End0(E)_Q``.
* ``Pic0(A)_Q`` is modelled by ``M^g`` with ``M = End0(E)_Q^rho``, the
  rationalized Mordell-Weil group; elements are g x rho matrices.
* A class ``D = (N, c)`` behaves like the quadratic function
  ``x -> x^+ N x / 2 + <c, x>`` modulo constants, so that

      f^*(N, c)   = (f^+ N f, f^+ c)
      t_a^*(N, c) = (N, c + N a)

  where ``f^+`` is the conjugate transpose (Rosati adjoint).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import DiscriminantMismatch, QuadMatrix, QuadScalar, check_discriminant


class ShapeMismatch(ValueError):
    pass


class NonHermitian(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    g: int
    d: int = 0
    rho: int = 1

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 1:
            raise ValueError(f"g must be a positive integer, got {self.g!r}")
        if not isinstance(self.rho, int) or self.rho < 1:
            raise ValueError(f"rho must be a positive integer, got {self.rho!r}")
        check_discriminant(self.d)

    @property
    def field_degree(self) -> int:
        return 1 if self.d == 0 else 2

    @property
    def pic0_dim(self) -> int:
        return self.g * self.rho * self.field_degree

    @property
    def ns_dim(self) -> int:
        g = self.g
        return g * (g + 1) // 2 if self.d == 0 else g * g

    @property
    def pic_dim(self) -> int:
        return self.ns_dim + self.pic0_dim

    def scalar(self, re=0, im=0) -> QuadScalar:
        return QuadScalar(Fraction(re), Fraction(im), self.d)

    def zero_ns(self) -> "HermClass":
        return HermClass(QuadMatrix.zeros(self.g, self.g, self.d))

    def zero_pic0(self) -> "Pic0Class":
        return Pic0Class(QuadMatrix.zeros(self.g, self.rho, self.d))

    def zero(self) -> "PicClass":
        return PicClass(self.zero_ns(), self.zero_pic0())

    def identity(self) -> "Endo":
        return Endo(QuadMatrix.identity(self.g, self.d))

    def multiplication(self, n) -> "Endo":
        """The endomorphism ``[n]``."""
        return Endo(QuadMatrix.identity(self.g, self.d, n))

    def origin(self) -> "Point":
        return Point(QuadMatrix.zeros(self.g, self.rho, self.d))

    def product(self) -> "ModelSpec":
        """Model of A x A^ = E^(2g), using the principal polarization A^ = A."""
        return ModelSpec(2 * self.g, self.d, self.rho)

    # -- Q-coordinates -----------------------------------------------------

    def pic_to_vector(self, D: "PicClass") -> tuple[Fraction, ...]:
        """Coordinates of ``D`` in the canonical Q-basis (see :meth:`basis`)."""
        self.check_pic(D)
        out = []
        N = D.ns.entries
        for i in range(self.g):
            out.append(N[i, i].re)
            for j in range(i + 1, self.g):
                out.append(N[i, j].re)
                if self.d:
                    out.append(N[i, j].im)
        c = D.alg0.coords
        for i in range(self.g):
            for k in range(self.rho):
                out.append(c[i, k].re)
                if self.d:
                    out.append(c[i, k].im)
        return tuple(out)

    def vector_to_pic(self, vec) -> "PicClass":
        vec = [Fraction(x) for x in vec]
        if len(vec) != self.pic_dim:
            raise ShapeMismatch(f"expected {self.pic_dim} coordinates, got {len(vec)}")
        it = iter(vec)
        d = self.d
        N = [[None] * self.g for _ in range(self.g)]
        for i in range(self.g):
            N[i][i] = self.scalar(next(it))
            for j in range(i + 1, self.g):
                re = next(it)
                im = next(it) if d else 0
                N[i][j] = self.scalar(re, im)
                N[j][i] = N[i][j].conj()
        c = [[None] * self.rho for _ in range(self.g)]
        for i in range(self.g):
            for k in range(self.rho):
                re = next(it)
                im = next(it) if d else 0
                c[i][k] = self.scalar(re, im)
        return PicClass(HermClass(QuadMatrix.from_rows(N, d)),
                        Pic0Class(QuadMatrix.from_rows(c, d)))

    def basis(self) -> list["PicClass"]:
        n = self.pic_dim
        return [self.vector_to_pic([1 if i == k else 0 for i in range(n)]) for k in range(n)]

    def basis_names(self) -> list[str]:
        names = []
        for i in range(1, self.g + 1):
            names.append(f"N{i}{i}")
            for j in range(i + 1, self.g + 1):
                names.append(f"N{i}{j}")
                if self.d:
                    names.append(f"N{i}{j}w")
        for i in range(1, self.g + 1):
            for k in range(1, self.rho + 1):
                names.append(f"c{i}.{k}")
                if self.d:
                    names.append(f"c{i}.{k}w")
        return names

    # -- validation --------------------------------------------------------

    def _check_matrix(self, m: QuadMatrix, shape: tuple[int, int], what: str):
        if m.d != self.d:
            raise DiscriminantMismatch(f"{what} is over d={m.d}, model has d={self.d}")
        if m.shape != shape:
            raise ShapeMismatch(f"{what} has shape {m.shape}, expected {shape}")

    def check_pic(self, D: "PicClass"):
        self._check_matrix(D.ns.entries, (self.g, self.g), "NS part")
        self._check_matrix(D.alg0.coords, (self.g, self.rho), "Pic0 part")

    def check_endo(self, f: "Endo"):
        self._check_matrix(f.matrix, (self.g, self.g), "endomorphism")

    def check_point(self, a: "Point"):
        self._check_matrix(a.coords, (self.g, self.rho), "point")


@dataclass(frozen=True)
class HermClass:
    entries: QuadMatrix

    def __post_init__(self):
        if not self.entries.is_hermitian():
            raise NonHermitian("NS matrix must satisfy N[i][j] == conj(N[j][i])")

    def __add__(self, other: "HermClass") -> "HermClass":
        return HermClass(self.entries + other.entries)

    def __neg__(self) -> "HermClass":
        return HermClass(-self.entries)

    def scale(self, q) -> "HermClass":
        return HermClass(self.entries.scale(Fraction(q)))


@dataclass(frozen=True)
class Pic0Class:
    coords: QuadMatrix

    def __add__(self, other: "Pic0Class") -> "Pic0Class":
        return Pic0Class(self.coords + other.coords)

    def __neg__(self) -> "Pic0Class":
        return Pic0Class(-self.coords)

    def scale(self, q) -> "Pic0Class":
        return Pic0Class(self.coords.scale(q))

    def is_zero(self) -> bool:
        return self.coords.is_zero()


@dataclass(frozen=True)
class PicClass:
    ns: HermClass
    alg0: Pic0Class

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(self.ns + other.ns, self.alg0 + other.alg0)

    def __neg__(self) -> "PicClass":
        return PicClass(-self.ns, -self.alg0)

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def scale(self, q) -> "PicClass":
        return PicClass(self.ns.scale(q), self.alg0.scale(Fraction(q)))


@dataclass(frozen=True)
class Endo:
    matrix: QuadMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ShapeMismatch("endomorphism matrix must be square")

    def __add__(self, other: "Endo") -> "Endo":
        return Endo(self.matrix + other.matrix)

    def __matmul__(self, other: "Endo") -> "Endo":
        """Composition ``self o other``."""
        return Endo(self.matrix @ other.matrix)

    def adjoint(self) -> "Endo":
        return Endo(self.matrix.adjoint())

    def __call__(self, a: "Point") -> "Point":
        return Point(self.matrix @ a.coords)


@dataclass(frozen=True)
class Point:
    coords: QuadMatrix

    def __add__(self, other: "Point") -> "Point":
        return Point(self.coords + other.coords)

    def __neg__(self) -> "Point":
        return Point(-self.coords)

    def scale(self, k) -> "Point":
        return Point(self.coords.scale(k))


def _same_shapes(D: PicClass, other: QuadMatrix, what: str):
    g = D.ns.entries.rows
    if other.d != D.ns.entries.d:
        raise DiscriminantMismatch(f"{what} is over d={other.d}, class is over d={D.ns.entries.d}")
    if other.rows != g:
        raise ShapeMismatch(f"{what} has {other.rows} rows, class has g={g}")


def endo_pullback(f: Endo, D: PicClass) -> PicClass:
    _same_shapes(D, f.matrix, "endomorphism")
    fa = f.matrix.adjoint()
    return PicClass(HermClass(fa @ D.ns.entries @ f.matrix), Pic0Class(fa @ D.alg0.coords))


def translate_pullback(a: Point, D: PicClass) -> PicClass:
    _same_shapes(D, a.coords, "point")
    if a.coords.shape != D.alg0.coords.shape:
        raise ShapeMismatch(f"point has shape {a.coords.shape}, expected {D.alg0.coords.shape}")
    return PicClass(D.ns, Pic0Class(D.alg0.coords + D.ns.entries @ a.coords))


def minus_one_pullback(D: PicClass) -> PicClass:
    return PicClass(D.ns, -D.alg0)


def split_antisym(D: PicClass) -> Pic0Class:
    return D.alg0


def phi(D: PicClass) -> PicClass:
    """``(D - [-1]^*D) / 2`` evaluated through the model's own [-1]^*."""
    return (D - minus_one_pullback(D)).scale(Fraction(1, 2))


def sym_antisym_projectors(D: PicClass) -> tuple[PicClass, PicClass]:
    m = minus_one_pullback(D)
    half = Fraction(1, 2)
    return (D + m).scale(half), (D - m).scale(half)


def ns_lift(N: HermClass, rho: int = 1) -> PicClass:
    g = N.entries.rows
    return PicClass(N, Pic0Class(QuadMatrix.zeros(g, rho, N.entries.d)))


def poincare_divisor(spec: ModelSpec) -> PicClass:
    """Poincare class on A x A^ inside the model of ``spec.product()``.

    Its NS part is the block matrix ``[[0, I], [I, 0]]``.
    """
    g = spec.g
    rows = [[1 if (j == i + g or i == j + g) else 0 for j in range(2 * g)] for i in range(2 * g)]
    return ns_lift(HermClass(QuadMatrix.from_rows(rows, spec.d)), spec.rho)
