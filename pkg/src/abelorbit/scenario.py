"""JSON scenarios: parsing, validation, serialization and presets.

Schema (all numbers are integers; no floats anywhere)::

    {
      "model": {"g": 1, "d": 0, "rho": 1},
      "cycle": {"ns": [[Q]], "pic0": [[Q]]}
             | {"sym": [{"monomial": [i, ...], "coeff": [num, den]}, ...]},
      "generators": [{"type": "endo", "matrix": [[Q]]},
                     {"type": "translation", "point": [[Q]]}],
      "options": {"degree": int?, "max_rounds": int?, "seed": int?},
      "word": "e1 t1^2"            # optional, used by `normalize`
    }

``Q`` is a scalar of Q(sqrt(-d)) written ``[re_num, re_den, im_num, im_den]``.
A bare integer or ``[num, den]`` is accepted on input as a rational shorthand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .divisor_model import (
    Endo,
    HermClass,
    ModelSpec,
    NonHermitian,
    Pic0Class,
    PicClass,
    Point,
    ShapeMismatch,
)
from .orbit import SymCycle
from .scalars import DiscriminantMismatch, QuadMatrix, QuadScalar
from .semigroup import GeneratorSet, Word, WordError

ERROR_CODES = {
    "invalid-json": "E001",
    "schema": "E002",
    "non-hermitian": "E003",
    "d-mismatch": "E004",
    "shape": "E005",
    "bad-generator-index": "E006",
    "bad-expression": "E007",
    "unknown-preset": "E008",
    "usage": "E009",
}


class ScenarioError(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.code = ERROR_CODES[kind]
        self.message = message


@dataclass(frozen=True)
class Options:
    degree: int | None = None
    max_rounds: int | None = None
    seed: int = 0


@dataclass
class Scenario:
    model: ModelSpec
    cycle: PicClass | SymCycle
    generators: GeneratorSet
    options: Options = field(default_factory=Options)
    word: str | None = None

    def sym_cycle(self) -> SymCycle:
        if isinstance(self.cycle, SymCycle):
            return self.cycle
        return SymCycle.from_pic(self.cycle, self.model, self.options.degree)

    def to_dict(self) -> dict:
        return serialize_scenario(self)

    def to_json(self) -> str:
        return json.dumps(serialize_scenario(self), indent=2, sort_keys=True)


# -- scalars and matrices ----------------------------------------------------

def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ScenarioError("schema", f"{where}: expected an integer, got {x!r}")
    return x


def _frac(num, den, where: str) -> Fraction:
    num, den = _int(num, where), _int(den, where)
    if den == 0:
        raise ScenarioError("schema", f"{where}: zero denominator")
    return Fraction(num, den)


def parse_scalar(obj, d: int, where: str) -> QuadScalar:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return QuadScalar(Fraction(obj), Fraction(0), d)
    if not isinstance(obj, list) or len(obj) not in (2, 4):
        raise ScenarioError("schema", f"{where}: scalar must be [num, den, num_w, den_w]")
    re = _frac(obj[0], obj[1], where)
    im = _frac(obj[2], obj[3], where) if len(obj) == 4 else Fraction(0)
    if d == 0 and im != 0:
        raise ScenarioError("d-mismatch", f"{where}: imaginary part given but model has d = 0")
    return QuadScalar(re, im, d)


def dump_scalar(x: QuadScalar) -> list[int]:
    return [x.re.numerator, x.re.denominator, x.im.numerator, x.im.denominator]


def parse_matrix(obj, d: int, shape: tuple[int, int], where: str) -> QuadMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ScenarioError("schema", f"{where}: matrix must be a list of rows")
    got = (len(obj), len(obj[0]) if obj else 0)
    if got != shape or any(len(r) != shape[1] for r in obj):
        raise ScenarioError("shape", f"{where}: expected a {shape[0]}x{shape[1]} matrix")
    rows = [[parse_scalar(x, d, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
            for i, r in enumerate(obj)]
    return QuadMatrix.from_rows(rows, d)


def dump_matrix(m: QuadMatrix) -> list:
    return [[dump_scalar(x) for x in row] for row in m.entries]


def dump_pic(D: PicClass) -> dict:
    return {"ns": dump_matrix(D.ns.entries), "pic0": dump_matrix(D.alg0.coords)}


def parse_pic(obj: dict, spec: ModelSpec, where: str = "cycle") -> PicClass:
    for key in ("ns", "pic0"):
        if key not in obj:
            raise ScenarioError("schema", f"{where}: missing key {key!r}")
    ns = parse_matrix(obj["ns"], spec.d, (spec.g, spec.g), f"{where}.ns")
    if not ns.is_hermitian():
        raise ScenarioError("non-hermitian", f"{where}.ns: entries[i][j] must equal conj(entries[j][i])")
    c = parse_matrix(obj["pic0"], spec.d, (spec.g, spec.rho), f"{where}.pic0")
    return PicClass(HermClass(ns), Pic0Class(c))


# -- whole documents ---------------------------------------------------------

def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ScenarioError("schema", f"{where}: missing key {key!r}")
    v = obj[key]
    if not isinstance(v, kind):
        raise ScenarioError("schema", f"{where}.{key}: wrong type {type(v).__name__}")
    return v


def scenario_from_dict(doc: Any) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("schema", "top level must be a JSON object")
    model = _require(doc, "model", dict, "scenario")
    try:
        spec = ModelSpec(_int(model.get("g"), "model.g"), _int(model.get("d", 0), "model.d"),
                         _int(model.get("rho", 1), "model.rho"))
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError("schema", f"model: {exc}") from None

    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise ScenarioError("schema", "options must be an object")
    unknown = set(opts) - {"degree", "max_rounds", "seed"}
    if unknown:
        raise ScenarioError("schema", f"options: unknown keys {sorted(unknown)}")
    options = Options(
        degree=None if opts.get("degree") is None else _int(opts["degree"], "options.degree"),
        max_rounds=None if opts.get("max_rounds") is None else _int(opts["max_rounds"], "options.max_rounds"),
        seed=_int(opts.get("seed", 0), "options.seed"),
    )
    if options.degree is not None and options.degree < 1:
        raise ScenarioError("schema", "options.degree must be positive")
    if options.max_rounds is not None and options.max_rounds < 1:
        raise ScenarioError("schema", "options.max_rounds must be positive")

    cyc = _require(doc, "cycle", dict, "scenario")
    if "sym" in cyc:
        terms = {}
        if not isinstance(cyc["sym"], list):
            raise ScenarioError("schema", "cycle.sym must be a list")
        for k, t in enumerate(cyc["sym"]):
            mono = _require(t, "monomial", list, f"cycle.sym[{k}]")
            coeff = _require(t, "coeff", list, f"cycle.sym[{k}]")
            if len(coeff) != 2:
                raise ScenarioError("schema", f"cycle.sym[{k}].coeff must be [num, den]")
            key = tuple(sorted(_int(i, f"cycle.sym[{k}].monomial") for i in mono))
            if any(not 0 <= i < spec.pic_dim for i in key):
                raise ScenarioError("shape", f"cycle.sym[{k}]: basis index out of range 0..{spec.pic_dim - 1}")
            terms[key] = terms.get(key, 0) + _frac(coeff[0], coeff[1], f"cycle.sym[{k}].coeff")
        cycle: PicClass | SymCycle = SymCycle(spec, terms, options.degree)
    else:
        cycle = parse_pic(cyc, spec)

    raw_gens = doc.get("generators", [])
    if not isinstance(raw_gens, list):
        raise ScenarioError("schema", "generators must be a list")
    endos, points = [], []
    for k, gen in enumerate(raw_gens):
        where = f"generators[{k}]"
        kind = _require(gen, "type", str, where)
        if kind == "endo":
            m = parse_matrix(_require(gen, "matrix", list, where), spec.d, (spec.g, spec.g), f"{where}.matrix")
            endos.append(Endo(m))
        elif kind == "translation":
            p = parse_matrix(_require(gen, "point", list, where), spec.d, (spec.g, spec.rho), f"{where}.point")
            points.append(Point(p))
        else:
            raise ScenarioError("schema", f"{where}.type must be 'endo' or 'translation'")
    gens = GeneratorSet(tuple(endos), tuple(points))

    word = doc.get("word")
    if word is not None:
        if not isinstance(word, str):
            raise ScenarioError("schema", "word must be a string")
        check_word(word, gens)
    return Scenario(spec, cycle, gens, options, word)


def check_word(text: str, gens: GeneratorSet) -> Word:
    try:
        w = Word.parse(text)
        w.validate(gens)
    except WordError as exc:
        raise ScenarioError("bad-generator-index", str(exc)) from None
    return w


def parse_scenario(data: bytes | str) -> Scenario:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioError("invalid-json", f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScenarioError("invalid-json", f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return scenario_from_dict(doc)
    except (NonHermitian,) as exc:
        raise ScenarioError("non-hermitian", str(exc)) from None
    except DiscriminantMismatch as exc:
        raise ScenarioError("d-mismatch", str(exc)) from None
    except ShapeMismatch as exc:
        raise ScenarioError("shape", str(exc)) from None


def serialize_scenario(sc: Scenario) -> dict:
    spec = sc.model
    if isinstance(sc.cycle, SymCycle):
        cycle = {"sym": [{"monomial": list(m), "coeff": [c.numerator, c.denominator]}
                         for m, c in sc.cycle.sorted_terms()]}
    else:
        cycle = dump_pic(sc.cycle)
    gens = [{"type": "endo", "matrix": dump_matrix(f.matrix)} for f in sc.generators.endos]
    gens += [{"type": "translation", "point": dump_matrix(a.coords)} for a in sc.generators.points]
    opts = {"seed": sc.options.seed}
    if sc.options.degree is not None:
        opts["degree"] = sc.options.degree
    if sc.options.max_rounds is not None:
        opts["max_rounds"] = sc.options.max_rounds
    doc = {"model": {"g": spec.g, "d": spec.d, "rho": spec.rho}, "cycle": cycle,
           "generators": gens, "options": opts}
    if sc.word is not None:
        doc["word"] = sc.word
    return doc


# -- presets -----------------------------------------------------------------

def _unit(spec: ModelSpec, i: int, j: int, s: QuadScalar) -> Endo:
    rows = [[s if (r, c) == (i, j) else 0 for c in range(spec.g)] for r in range(spec.g)]
    return Endo(QuadMatrix.from_rows(rows, spec.d))


def endo_generators(spec: ModelSpec) -> list[Endo]:
    """A generating family for End0(A)_Q = Mat_g(End0(E)_Q) used by the presets.

    Matrix units (and their w-multiples), [-1], [2], and the transvections
    ``1 + E_ij``; together they span the endomorphism algebra and generate
    a semigroup rich enough to move every Pic-model coordinate.
    """
    scalars = [spec.scalar(1)] + ([spec.scalar(0, 1)] if spec.d else [])
    out = [spec.multiplication(-1), spec.multiplication(2)]
    for s in scalars:
        for i in range(spec.g):
            for j in range(spec.g):
                out.append(_unit(spec, i, j, s))
    for i in range(spec.g):
        for j in range(spec.g):
            if i != j:
                out.append(spec.identity() + _unit(spec, i, j, spec.scalar(1)))
    if spec.d:
        out.append(spec.identity() + _unit(spec, 0, 0, spec.scalar(0, 1)))
    return out


def mordell_weil_points(spec: ModelSpec) -> list[Point]:
    """Z-basis of M^g: the generator m_k of M placed at factor i."""
    pts = []
    for i in range(spec.g):
        for k in range(spec.rho):
            rows = [[1 if (r, c) == (i, k) else 0 for c in range(spec.rho)] for r in range(spec.g)]
            pts.append(Point(QuadMatrix.from_rows(rows, spec.d)))
    return pts


def generic_class(spec: ModelSpec) -> PicClass:
    g = spec.g
    rows = [[(i + 1) if i == j else 1 for j in range(g)] for i in range(g)]
    ns = HermClass(QuadMatrix.from_rows(rows, spec.d))
    c = Pic0Class(QuadMatrix.from_rows([[1] * spec.rho for _ in range(g)], spec.d))
    return PicClass(ns, c)


PRESETS = {
    "endo-only": "group endomorphisms only, no translations",
    "fg-translations": "a finitely generated group of translations, no endomorphisms",
    "semidirect": "T0 x| G0 for a small T0 and a few endomorphisms",
    "number-field": "all endomorphisms together with a Mordell-Weil basis of points",
    "cor-translation": "the cyclic group generated by a single translation t_x",
    "cor-endo": "the full endomorphism semigroup End0(A)",
    "cor-number-field": "all endomorphisms over a number field",
}


def build_preset(name: str, g: int = 2, d: int = 0, rho: int = 1, seed: int = 0) -> Scenario:
    spec = ModelSpec(g, d, rho)
    mw = mordell_weil_points(spec)
    if name in ("endo-only", "cor-endo"):
        gens = GeneratorSet(tuple(endo_generators(spec)), ())
    elif name == "fg-translations":
        pts = mw[:2] if len(mw) >= 2 else mw + [mw[0].scale(3)]
        gens = GeneratorSet((), tuple(pts))
    elif name == "cor-translation":
        gens = GeneratorSet((), (sum(mw[1:], mw[0]),))
    elif name == "semidirect":
        endos = (spec.multiplication(2), spec.identity() + _unit(spec, 0, g - 1, spec.scalar(1)))
        gens = GeneratorSet(endos, (mw[0],))
    elif name in ("number-field", "cor-number-field"):
        gens = GeneratorSet(tuple(endo_generators(spec)), tuple(mw))
    else:
        raise ScenarioError("unknown-preset", f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return Scenario(spec, generic_class(spec), gens, Options(seed=seed))
