"""Words in endomorphisms and translations, and their affine normal form.

An :class:`AffineEndo` ``(F, c)`` is the map ``x -> F x + c``, i.e. ``t_c o F``.
The rewriting rule ``f o t_b = t_{f(b)} o f`` turns every word into this form.

Words are written outermost first, so ``[L1, L2, L3]`` is ``L1 o L2 o L3``::

    point:     x --L3--> . --L2--> . --L1--> h(x)
    pullback:  h^* = L3^* o L2^* o L1^*     (L1^* is applied first)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .divisor_model import (
    Endo,
    ModelSpec,
    PicClass,
    Point,
    endo_pullback,
    translate_pullback,
)

ENDO = "e"
TRANSLATION = "t"

_LETTER = re.compile(r"^([et])(\d+)(?:\^(-?\d+))?$")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    endos: tuple[Endo, ...] = ()
    points: tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "endos", tuple(self.endos))
        object.__setattr__(self, "points", tuple(self.points))

    def __len__(self):
        return len(self.endos) + len(self.points)

    def affine_letters(self, spec: ModelSpec) -> list["AffineEndo"]:
        """One affine map per generator, endomorphisms first, in declaration order."""
        return ([AffineEndo(f, spec.origin()) for f in self.endos]
                + [AffineEndo(spec.identity(), a) for a in self.points])


@dataclass(frozen=True)
class Letter:
    kind: str
    index: int  # 1-based, as in the word syntax
    exponent: int = 1

    def __str__(self):
        if self.kind == ENDO and self.exponent == 1:
            return f"e{self.index}"
        if self.kind == ENDO:
            return f"e{self.index}^{self.exponent}"
        return f"t{self.index}^{self.exponent}"


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = field(default=())

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for tok in text.split():
            m = _LETTER.match(tok)
            if not m:
                raise WordError(f"bad letter {tok!r}; expected e<i>, e<i>^<k> or t<i>^<k>")
            kind, idx, exp = m.group(1), int(m.group(2)), m.group(3)
            letters.append(Letter(kind, idx, 1 if exp is None else int(exp)))
        return cls(tuple(letters))

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def validate(self, gens: GeneratorSet):
        for x in self.letters:
            pool = gens.endos if x.kind == ENDO else gens.points
            if not 1 <= x.index <= len(pool):
                raise WordError(f"letter {x} refers to a missing generator "
                                f"({len(pool)} {'endomorphisms' if x.kind == ENDO else 'points'} declared)")
            if x.kind == ENDO and x.exponent < 1:
                raise WordError(f"endomorphism letter {x} needs a positive exponent")


@dataclass(frozen=True)
class AffineEndo:
    F: Endo
    c: Point

    def __matmul__(self, other: "AffineEndo") -> "AffineEndo":
        """``self o other``."""
        return AffineEndo(self.F @ other.F, self.F(other.c) + self.c)

    def __call__(self, x: Point) -> Point:
        return self.F(x) + self.c

    @classmethod
    def from_endo_then_translation(cls, f: Endo, b: Point) -> "AffineEndo":
        """The map ``f o t_b``; equal to ``t_{f(b)} o f``."""
        return cls(f, f(b))


def letter_map(x: Letter, gens: GeneratorSet, spec: ModelSpec) -> AffineEndo:
    if x.kind == ENDO:
        return AffineEndo(Endo(gens.endos[x.index - 1].matrix.power(x.exponent)), spec.origin())
    return AffineEndo(spec.identity(), gens.points[x.index - 1].scale(x.exponent))


def normalize(w: Word, gens: GeneratorSet, spec: ModelSpec) -> AffineEndo:
    w.validate(gens)
    h = AffineEndo(spec.identity(), spec.origin())
    for x in w.letters:
        h = h @ letter_map(x, gens, spec)
    return h


def affine_pullback(h: AffineEndo, D: PicClass) -> PicClass:
    """``(t_c o F)^* D = F^*(t_c^* D)``."""
    return endo_pullback(h.F, translate_pullback(h.c, D))


def word_pullback(w: Word, gens: GeneratorSet, D: PicClass) -> PicClass:
    w.validate(gens)
    for x in w.letters:
        if x.kind == ENDO:
            f = gens.endos[x.index - 1]
            for _ in range(x.exponent):
                D = endo_pullback(f, D)
        else:
            a = gens.points[x.index - 1]
            step = a if x.exponent >= 0 else -a
            for _ in range(abs(x.exponent)):
                D = translate_pullback(step, D)
    return D


def aa_witness(gens: GeneratorSet) -> list[Point]:
    """Translation points of the property-AA form ``f o t_{a_n}^{l_n} ... t_{a_1}^{l_1}``.

    The model's semigroups are generated inside ``T0 x| G0`` with ``T0`` spanned
    by the declared points, so these points are the witness by construction.
    With no points this is the endomorphism-only case and the list is empty.
    """
    return list(gens.points)
