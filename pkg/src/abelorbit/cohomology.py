"""Exterior algebra over Q: the cohomological model of CH(A)_Q.

A :class:`GroundSpace` lists the degree-one generators. Products of ground
spaces keep track of their factors so that pullback along a projection and
fiber integration (pushforward along a projection) can be expressed.

Conventions, fixed once for the whole package:

* The fundamental class of a factor is the wedge of its generators in
  increasing label order. Fiber integration over a factor keeps the terms
  containing that whole class and multiplies by the sign of the permutation
  moving those generators to the front.
* A :class:`LinearSubstitution` is the action ``f^*`` of a morphism ``f`` on
  degree one: column ``j`` is the image of generator ``j``. Composition of
  morphisms is contravariant, ``(T o S)^* = S^* o T^*``::

      pullback(T.compose(S), u) == pullback(S, pullback(T, u))

* Translations act trivially here; their arithmetic only exists in
  :mod:`abelorbit.divisor_model`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

FIRST = "first"
SECOND = "second"


class GroundMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroundSpace:
    labels: tuple[str, ...]
    factors: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("a ground space needs at least one generator")
        if len(set(labels)) != len(labels):
            raise ValueError(f"generator labels must be distinct: {labels}")
        factors = tuple(tuple(f) for f in self.factors) or (labels,)
        if sum(factors, ()) != labels:
            raise ValueError("factor labels must concatenate to the full label list")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def named(cls, prefix: str, m: int) -> "GroundSpace":
        return cls(tuple(f"{prefix}{i}" for i in range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def is_product(self) -> bool:
        return len(self.factors) == 2

    def product(self, other: "GroundSpace") -> "GroundSpace":
        return GroundSpace(self.labels + other.labels, (self.labels, other.labels))

    def factor(self, which: str) -> "GroundSpace":
        if not self.is_product:
            raise GroundMismatch("ground space is not a two-factor product")
        if which == FIRST:
            return GroundSpace(self.factors[0])
        if which == SECOND:
            return GroundSpace(self.factors[1])
        raise ValueError(f"factor must be 'first' or 'second', got {which!r}")

    def offset(self, which: str) -> int:
        return 0 if which == FIRST else len(self.factors[0])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroundMismatch(f"unknown generator {label!r}") from None


def merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of the shuffle sorting the concatenation ``a + b`` (both sorted, disjoint)."""
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return -1 if inversions & 1 else 1


class Multivector:
    """Sparse element of the exterior algebra on ``ground``.

    ``terms`` maps strictly increasing index tuples (0-based) to nonzero
    Fractions. Instances are treated as immutable.
    """

    __slots__ = ("ground", "terms")

    def __init__(self, ground: GroundSpace, terms: Mapping[tuple[int, ...], object] | None = None):
        self.ground = ground
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if any(not 0 <= i < ground.m for i in key):
                raise GroundMismatch(f"index set {key} out of range for m={ground.m}")
            if len(set(key)) != len(key):
                continue
            order = sorted(range(len(key)), key=key.__getitem__)
            sign = _perm_sign(order)
            skey = tuple(key[i] for i in order)
            clean[skey] = clean.get(skey, 0) + sign * Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, ground: GroundSpace, terms: dict) -> "Multivector":
        obj = cls.__new__(cls)
        obj.ground = ground
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, ground: GroundSpace, c=1) -> "Multivector":
        return cls._raw(ground, {(): Fraction(c)} if c else {})

    @classmethod
    def zero(cls, ground: GroundSpace) -> "Multivector":
        return cls._raw(ground, {})

    @classmethod
    def generator(cls, ground: GroundSpace, label: str | int) -> "Multivector":
        i = label if isinstance(label, int) else ground.index(label)
        return cls._raw(ground, {(i,): Fraction(1)})

    @classmethod
    def blade(cls, ground: GroundSpace, labels: Iterable[str], c=1) -> "Multivector":
        return cls(ground, {tuple(ground.index(s) for s in labels): c})

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.ground != self.ground:
            raise GroundMismatch("multivectors live on different ground spaces")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(self.ground, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Multivector._raw(self.ground, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.ground, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        c = Fraction(other)
        if not c:
            return Multivector.zero(self.ground)
        return Multivector._raw(self.ground, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.ground == other.ground and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def grade(self, k: int) -> "Multivector":
        return Multivector._raw(self.ground, {s: c for s, c in self.terms.items() if len(s) == k})

    def degrees(self) -> set[int]:
        return {len(s) for s in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"multivector is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def coefficient(self, labels: Iterable[str]) -> Fraction:
        key = Multivector.blade(self.ground, labels)
        ((k, sign),) = key.terms.items()
        return sign * self.terms.get(k, Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        return f"Multivector({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            blade = "^".join(self.ground.labels[i] for i in key)
            if not blade:
                parts.append(str(c))
            elif c == 1:
                parts.append(blade)
            elif c == -1:
                parts.append("-" + blade)
            else:
                parts.append(f"{c}*{blade}")
        return " + ".join(parts).replace("+ -", "- ")


def _perm_sign(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    out: dict[tuple[int, ...], Fraction] = {}
    for a, ca in u.terms.items():
        sa = set(a)
        for b, cb in v.terms.items():
            if sa.intersection(b):
                continue
            key = tuple(sorted(a + b))
            c = ca * cb if merge_sign(a, b) > 0 else -(ca * cb)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Multivector._raw(u.ground, out)


@dataclass(frozen=True)
class LinearSubstitution:
    ground: GroundSpace
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = self.ground.m
        mat = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if len(mat) != m or any(len(r) != m for r in mat):
            raise GroundMismatch(f"substitution matrix must be {m}x{m}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def scalar(cls, ground: GroundSpace, n) -> "LinearSubstitution":
        m = ground.m
        return cls(ground, tuple(tuple(n if i == j else 0 for j in range(m)) for i in range(m)))

    @classmethod
    def identity(cls, ground: GroundSpace) -> "LinearSubstitution":
        return cls.scalar(ground, 1)

    def image(self, j: int) -> Multivector:
        """Image of generator ``j`` (column ``j``)."""
        return Multivector._raw(self.ground, {
            (i,): self.matrix[i][j] for i in range(self.ground.m) if self.matrix[i][j]})

    def compose(self, other: "LinearSubstitution") -> "LinearSubstitution":
        """Substitution of the morphism ``self o other``; its matrix is ``other @ self``."""
        if other.ground != self.ground:
            raise GroundMismatch("substitutions live on different ground spaces")
        m = self.ground.m
        a, b = other.matrix, self.matrix
        return LinearSubstitution(self.ground, tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(m))
            for i in range(m)))

    def times(self, other: "LinearSubstitution", product_ground: GroundSpace | None = None
              ) -> "LinearSubstitution":
        """Block-diagonal substitution ``self x other`` on the product ground space."""
        ground = product_ground or self.ground.product(other.ground)
        m1, m2 = self.ground.m, other.ground.m
        if ground.m != m1 + m2:
            raise GroundMismatch("product ground space has the wrong dimension")
        rows = [tuple(self.matrix[i]) + (Fraction(0),) * m2 for i in range(m1)]
        rows += [(Fraction(0),) * m1 + tuple(other.matrix[i]) for i in range(m2)]
        return LinearSubstitution(ground, tuple(rows))


def pullback(T: LinearSubstitution, u: Multivector) -> Multivector:
    if T.ground != u.ground:
        raise GroundMismatch("substitution and multivector live on different ground spaces")
    images = [T.image(j) for j in range(u.ground.m)]
    one = Multivector.scalar(u.ground, 1)
    cache: dict[tuple[int, ...], Multivector] = {(): one}
    out = Multivector.zero(u.ground)
    for key, c in u.sorted_terms():
        # reuse the image of the longest already-expanded prefix
        img = cache.get(key)
        if img is None:
            k = len(key) - 1
            while key[:k] not in cache:
                k -= 1
            img = cache[key[:k]]
            for t in range(k, len(key)):
                img = wedge(img, images[key[t]])
                cache[key[:t + 1]] = img
        out = out + img * c
    return out


def project_pullback(factor: str, u: Multivector, product_ground: GroundSpace) -> Multivector:
    """Pull ``u`` back along the projection onto ``factor`` of ``product_ground``."""
    fac = product_ground.factor(factor)
    if fac.labels != u.ground.labels:
        raise GroundMismatch(
            f"multivector labels {u.ground.labels} are not the {factor} factor of the product")
    off = product_ground.offset(factor)
    return Multivector._raw(product_ground,
                            {tuple(i + off for i in k): c for k, c in u.terms.items()})


def fiber_integrate(factor: str, u: Multivector) -> Multivector:
    """Integrate over ``factor``; the result lives on the complementary factor."""
    ground = u.ground
    if not ground.is_product:
        raise GroundMismatch("fiber integration needs a two-factor product ground space")
    fiber = ground.factor(factor)
    rest_name = SECOND if factor == FIRST else FIRST
    rest = ground.factor(rest_name)
    f_off, r_off = ground.offset(factor), ground.offset(rest_name)
    fiber_idx = tuple(range(f_off, f_off + fiber.m))
    fiber_set = set(fiber_idx)
    out: dict[tuple[int, ...], Fraction] = {}
    for key, c in u.terms.items():
        if not fiber_set.issubset(key):
            continue
        remaining = tuple(i for i in key if i not in fiber_set)
        # number of transpositions moving the fiber generators in front of the rest
        inv = sum(1 for r in remaining for f in fiber_idx if r < f)
        newkey = tuple(i - r_off for i in remaining)
        out[newkey] = out.get(newkey, 0) + (-c if inv & 1 else c)
    return Multivector(rest, out)
