"""Orbit spans in the truncated symmetric algebra on the Pic model.

The divisor-generated part of CH(A)_Q is modelled by the *free* symmetric
algebra on the Q-basis of the Pic model, truncated above ``degree_cap``.
The real Chow ring satisfies more relations, so a span computed here is an
upper bound for the span of the same orbit in any realization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .divisor_model import Endo, ModelSpec, PicClass, Point, poincare_divisor
from .scalars import QuadMatrix
from .semigroup import (
    ENDO,
    TRANSLATION,
    AffineEndo,
    GeneratorSet,
    Letter,
    Word,
    affine_pullback,
    normalize,
)

Monomial = tuple[int, ...]


class ModelMismatch(ValueError):
    pass


def monomial_key(m: Monomial):
    """Graded lexicographic order on sorted index tuples."""
    return (len(m), m)


def _add_into(acc: dict, key, c):
    s = acc.get(key, 0) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class SymCycle:
    """Truncated polynomial in the Pic-model basis classes."""

    __slots__ = ("spec", "degree_cap", "terms")

    def __init__(self, spec: ModelSpec, terms: Mapping[Sequence[int], object] | None = None,
                 degree_cap: int | None = None):
        self.spec = spec
        self.degree_cap = spec.g if degree_cap is None else degree_cap
        n = spec.pic_dim
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            if any(not 0 <= i < n for i in mono):
                raise ModelMismatch(f"monomial {mono} uses an index outside 0..{n - 1}")
            if len(mono) > self.degree_cap:
                continue
            _add_into(clean, mono, Fraction(c))
        self.terms = clean

    @classmethod
    def _raw(cls, spec, cap, terms) -> "SymCycle":
        obj = cls.__new__(cls)
        obj.spec, obj.degree_cap, obj.terms = spec, cap, terms
        return obj

    @classmethod
    def from_pic(cls, D: PicClass, spec: ModelSpec, degree_cap: int | None = None) -> "SymCycle":
        vec = spec.pic_to_vector(D)
        return cls(spec, {(k,): c for k, c in enumerate(vec) if c}, degree_cap)

    def _check(self, other: "SymCycle"):
        if other.spec != self.spec or other.degree_cap != self.degree_cap:
            raise ModelMismatch("symmetric cycles belong to different models")

    def __add__(self, other: "SymCycle") -> "SymCycle":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return SymCycle._raw(self.spec, self.degree_cap, out)

    def __neg__(self):
        return SymCycle._raw(self.spec, self.degree_cap, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "SymCycle":
        q = Fraction(q)
        if not q:
            return SymCycle._raw(self.spec, self.degree_cap, {})
        return SymCycle._raw(self.spec, self.degree_cap, {k: q * v for k, v in self.terms.items()})

    def __mul__(self, other: "SymCycle") -> "SymCycle":
        self._check(other)
        cap = self.degree_cap
        out: dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if len(a) + len(b) > cap:
                    continue
                _add_into(out, tuple(sorted(a + b)), ca * cb)
        return SymCycle._raw(self.spec, cap, out)

    def power(self, n: int) -> "SymCycle":
        out = SymCycle(self.spec, {(): 1}, self.degree_cap)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymCycle):
            return NotImplemented
        return (self.spec, self.degree_cap, self.terms) == (other.spec, other.degree_cap, other.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def homogeneous_parts(self) -> list["SymCycle"]:
        parts = []
        for k in sorted(self.degrees()):
            parts.append(SymCycle._raw(self.spec, self.degree_cap,
                                       {m: c for m, c in self.terms.items() if len(m) == k}))
        return parts

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.basis_names()
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(names[i] for i in m) or "1"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _linear_images(h: AffineEndo, spec: ModelSpec) -> list[dict[Monomial, Fraction]]:
    images = []
    for b in spec.basis():
        vec = spec.pic_to_vector(affine_pullback(h, b))
        images.append({(i,): c for i, c in enumerate(vec) if c})
    return images


def _poly_mul(a: dict, b: dict, cap: int) -> dict:
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if len(ma) + len(mb) <= cap:
                _add_into(out, tuple(sorted(ma + mb)), ca * cb)
    return out


def sym_pullback(h: AffineEndo, x: SymCycle, _images=None) -> SymCycle:
    spec = x.spec
    if h.F.matrix.shape != (spec.g, spec.g) or h.F.matrix.d != spec.d:
        raise ModelMismatch("affine map does not act on this model")
    images = _images if _images is not None else _linear_images(h, spec)
    cap = x.degree_cap
    cache: dict[Monomial, dict] = {(): {(): Fraction(1)}}
    out: dict[Monomial, Fraction] = {}
    for mono, c in x.sorted_terms():
        img = cache.get(mono)
        if img is None:
            k = len(mono) - 1
            while mono[:k] not in cache:
                k -= 1
            img = cache[mono[:k]]
            for t in range(k, len(mono)):
                img = _poly_mul(img, images[mono[t]], cap)
                cache[mono[:t + 1]] = img
        for m, v in img.items():
            _add_into(out, m, c * v)
    return SymCycle._raw(spec, cap, out)


class EchelonBasis:
    """Reduced row-echelon basis over the graded-lex monomial order."""

    def __init__(self):
        self.rows: dict[Monomial, dict[Monomial, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        v = dict(vec)
        for p in [m for m in v if m in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for m, r in self.rows[p].items():
                _add_into(v, m, -c * r)
        return v

    def contains(self, vec: Mapping[Monomial, Fraction]) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Mapping[Monomial, Fraction]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v, key=monomial_key)
        inv = 1 / v[pivot]
        v = {m: c * inv for m, c in v.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                for m, r in v.items():
                    _add_into(row, m, -c * r)
        self.rows[pivot] = v
        return True

    def vectors(self) -> list[dict[Monomial, Fraction]]:
        return [self.rows[p] for p in sorted(self.rows, key=monomial_key)]


def ambient_dimension(n_vars: int, degrees: Iterable[int]) -> int:
    """Number of monomials of the listed degrees in ``n_vars`` variables."""
    return sum(comb(n_vars + k - 1, k) for k in set(degrees))


@dataclass
class OrbitReport:
    dimension: int
    basis: list[SymCycle]
    generators_applied: int
    rounds: int
    converged: bool = True
    ambient_dimension: int = 0

    def contains(self, x: SymCycle) -> bool:
        ech = EchelonBasis()
        for b in self.basis:
            ech.insert(b.terms)
        return ech.contains(x.terms)

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "converged": self.converged,
            "rounds": self.rounds,
            "generators_applied": self.generators_applied,
            "ambient_dimension": self.ambient_dimension,
            "basis": [str(b) for b in self.basis],
        }


def _as_letters(gens, spec: ModelSpec) -> list[AffineEndo]:
    if isinstance(gens, GeneratorSet):
        return gens.affine_letters(spec)
    return list(gens)


def orbit_span(gens: GeneratorSet | Sequence[AffineEndo], x: SymCycle,
               max_rounds: int | None = None) -> OrbitReport:
    """Span of ``x`` and its images under the semigroup generated by ``gens``.

    ``x`` is split into homogeneous parts first (pullbacks preserve degree),
    so every basis vector of the result is homogeneous. Generators are
    applied to the frontier in declaration order each round.
    """
    if not x:
        raise ValueError("orbit_span needs a nonzero cycle")
    spec = x.spec
    ambient = ambient_dimension(spec.pic_dim, x.degrees())
    if max_rounds is None:
        max_rounds = ambient + 1
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    letters = _as_letters(gens, spec)
    images = [_linear_images(h, spec) for h in letters]

    ech = EchelonBasis()
    frontier = []
    for part in x.homogeneous_parts():
        if ech.insert(part.terms):
            frontier.append(part)
    rounds = applied = 0
    while frontier and rounds < max_rounds:
        rounds += 1
        nxt = []
        for y in frontier:
            for h, im in zip(letters, images):
                z = sym_pullback(h, y, im)
                applied += 1
                if ech.insert(z.terms):
                    nxt.append(z)
        frontier = nxt
    basis = [SymCycle._raw(spec, x.degree_cap, v) for v in ech.vectors()]
    return OrbitReport(len(basis), basis, applied, rounds, not frontier, ambient)


def is_invariant(report: OrbitReport, gens, spec: ModelSpec) -> bool:
    """Re-apply every generator to the final basis and check for growth."""
    ech = EchelonBasis()
    for b in report.basis:
        ech.insert(b.terms)
    for h in _as_letters(gens, spec):
        for b in report.basis:
            if not ech.contains(sym_pullback(h, b).terms):
                return False
    return True


def random_word(gens: GeneratorSet, rng: random.Random, max_length: int = 8,
                max_shift: int = 3) -> Word:
    letters = []
    for _ in range(rng.randint(0, max_length)):
        use_endo = gens.endos and (not gens.points or rng.random() < 0.5)
        if use_endo:
            letters.append(Letter(ENDO, rng.randint(1, len(gens.endos)), 1))
        else:
            letters.append(Letter(TRANSLATION, rng.randint(1, len(gens.points)),
                                  rng.randint(-max_shift, max_shift)))
    return Word(tuple(letters))


def certify(report: OrbitReport, gens: GeneratorSet, x: SymCycle, samples: int = 50,
            seed: int = 0, max_length: int = 8) -> tuple[int, int]:
    """Check that ``h^* x`` lies in the reported span for random words ``h``.

    Returns ``(hits, samples)``.
    """
    rng = random.Random(seed)
    ech = EchelonBasis()
    for b in report.basis:
        ech.insert(b.terms)
    hits = 0
    for _ in range(samples):
        w = random_word(gens, rng, max_length)
        h = normalize(w, gens, x.spec)
        hits += ech.contains(sym_pullback(h, x).terms)
    return hits, samples


# -- the Poincare-class pipeline -------------------------------------------

def lift_generators(spec: ModelSpec, gens: GeneratorSet) -> GeneratorSet:
    """Generators of H' on A x A^: ``f -> f x Id`` and ``t_a -> t_(-a, 0)``."""
    eye = QuadMatrix.identity(spec.g, spec.d)
    zero = QuadMatrix.zeros(spec.g, spec.rho, spec.d)
    endos = [Endo(f.matrix.block_diag(eye)) for f in gens.endos]
    points = [Point((-a.coords).vstack(zero)) for a in gens.points]
    return GeneratorSet(endos, points)


@dataclass
class PowerSpan:
    n: int
    dimension: int
    bound: int
    converged: bool

    def as_dict(self) -> dict:
        return {"n": self.n, "dimension": self.dimension, "bound": self.bound,
                "converged": self.converged}


@dataclass
class Step3Report:
    poincare: OrbitReport
    powers: list[PowerSpan] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.poincare.converged and all(
            p.converged and p.dimension <= p.bound for p in self.powers)

    def as_dict(self) -> dict:
        return {"poincare_orbit": self.poincare.as_dict(),
                "powers": [p.as_dict() for p in self.powers],
                "verdict": "pass" if self.ok else "fail"}


def power_bound(dim_span: int, n: int) -> int:
    """``dim Sym^n(V) = C(dim V + n - 1, n)``."""
    return comb(dim_span + n - 1, n)


def step3_pipeline(spec: ModelSpec, gens: GeneratorSet, max_power: int | None = None,
                   max_rounds: int | None = None) -> Step3Report:
    big = spec.product()
    lifted = lift_generators(spec, gens)
    l_cycle = SymCycle.from_pic(poincare_divisor(spec), big, degree_cap=big.g)
    base = orbit_span(lifted, l_cycle, max_rounds)
    report = Step3Report(base)
    top = big.g if max_power is None else min(max_power, big.g)
    for n in range(1, top + 1):
        ln = l_cycle.power(n)
        if not ln:
            break
        r = orbit_span(lifted, ln, max_rounds)
        report.powers.append(PowerSpan(n, r.dimension, power_bound(base.dimension, n), r.converged))
    return report
