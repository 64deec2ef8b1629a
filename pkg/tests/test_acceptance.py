"""Acceptance gate: one test per criterion, all with exact rational equality."""

import io
import json
import random

import pytest

from abelorbit.cli import run
from abelorbit.cohomology import (
    FIRST,
    SECOND,
    LinearSubstitution,
    fiber_integrate,
    project_pullback,
    pullback,
    wedge,
)
from abelorbit.divisor_model import (
    Endo,
    PicClass,
    Point,
    endo_pullback,
    ns_lift,
    phi,
    sym_antisym_projectors,
    translate_pullback,
)
from abelorbit.fourier import check_inversion, exp_class, poincare_class
from abelorbit.orbit import (
    ambient_dimension,
    is_invariant,
    orbit_span,
    power_bound,
    random_word,
    step3_pipeline,
)
from abelorbit.scenario import PRESETS, build_preset, parse_scenario, serialize_scenario
from abelorbit.semigroup import (
    GeneratorSet,
    Letter,
    TRANSLATION,
    Word,
    affine_pullback,
    normalize,
    word_pullback,
)
from factories import model_specs, rand_endo, rand_multivector, rand_pic, rand_point, rand_substitution
from test_orbit import S1, cls1, orbit_rank_by_enumeration, q1, sym1


def _cycle(specs):
    while True:
        yield from specs


@pytest.mark.criterion(1, "Fourier-Mukai inversion for g = 1, 2, 3")
@pytest.mark.parametrize("g", [1, 2, 3])
def test_fm_inversion(g):
    rep = check_inversion(g)
    assert len(rep.results) == 2 ** (2 * g)
    assert rep.passed, rep.failures


@pytest.mark.criterion(2, "[n]^*, additivity on Pic0 and its counterexample, t_a^* on Pic0")
def test_multiplication_additivity_translation():
    rng = random.Random(2)
    specs = _cycle(model_specs())
    for _ in range(100):
        spec = next(specs)
        D = rand_pic(rng, spec)
        for n in range(-5, 6):
            assert endo_pullback(spec.multiplication(n), D) == PicClass(
                D.ns.scale(n * n), D.alg0.scale(n))
        D0 = rand_pic(rng, spec, ns=False)
        f, h = rand_endo(rng, spec), rand_endo(rng, spec)
        assert endo_pullback(f + h, D0) == endo_pullback(f, D0) + endo_pullback(h, D0)
        assert translate_pullback(rand_point(rng, spec), D0) == D0
    # the additivity counterexample: (1 + 1)^* on a class with N != 0
    I = S1.identity()
    D = cls1(1, 0)
    assert endo_pullback(I + I, D) == cls1(4, 0)
    assert endo_pullback(I, D) + endo_pullback(I, D) == cls1(2, 0)


@pytest.mark.criterion(3, "symmetric/antisymmetric splitting")
def test_splitting_suite():
    rng = random.Random(3)
    specs = _cycle(model_specs())
    for _ in range(100):
        spec = next(specs)
        D, f = rand_pic(rng, spec), rand_endo(rng, spec)
        plus, minus = sym_antisym_projectors(D)
        assert plus + minus == D
        assert sym_antisym_projectors(plus) == (plus, spec.zero())
        assert sym_antisym_projectors(minus) == (spec.zero(), minus)
        assert phi(D) == PicClass(spec.zero_ns(), D.alg0)
        assert plus == ns_lift(D.ns, spec.rho)
        fp, fm = sym_antisym_projectors(endo_pullback(f, D))
        assert (fp, fm) == (endo_pullback(f, plus), endo_pullback(f, minus))


@pytest.mark.criterion(4, "word pullback equals the normal-form pullback")
def test_word_oracle_equivalence():
    rng = random.Random(4)
    specs = _cycle(model_specs())
    for _ in range(100):
        spec = next(specs)
        gens = GeneratorSet(tuple(rand_endo(rng, spec) for _ in range(2)),
                            tuple(rand_point(rng, spec) for _ in range(2)))
        w = random_word(gens, rng, max_length=8)
        assert len(w.letters) <= 8
        D = rand_pic(rng, spec)
        assert word_pullback(w, gens, D) == affine_pullback(normalize(w, gens, spec), D)
    for _ in range(50):
        spec = next(specs)
        points = tuple(rand_point(rng, spec) for _ in range(3))
        exps = [rng.randint(-4, 4) for _ in points]
        letters = [Letter(TRANSLATION, i + 1, k) for i, k in enumerate(exps) if k]
        D = rand_pic(rng, spec)
        shift = D.alg0.coords
        for a, k in zip(points, exps):
            shift = shift + (D.ns.entries @ a.coords).scale(k)
        got = word_pullback(Word(tuple(letters)), GeneratorSet((), points), D)
        assert got.ns == D.ns and got.alg0.coords == shift


@pytest.mark.criterion(5, "orbit spans are finite on the preset families")
@pytest.mark.parametrize("name", ["endo-only", "fg-translations", "semidirect", "number-field"])
@pytest.mark.parametrize("g", [1, 2])
def test_orbit_finiteness(name, g):
    sc = build_preset(name, g)
    x = sc.sym_cycle()
    rep = orbit_span(sc.generators, x)
    assert rep.converged
    assert rep.dimension <= ambient_dimension(sc.model.pic_dim, x.degrees())
    assert rep.contains(x)
    assert is_invariant(rep, sc.generators, sc.model)


@pytest.mark.criterion(5, "orbit spans are finite on the preset families")
def test_documented_g1_dimensions():
    t1 = GeneratorSet((), (Point(q1(1)),))
    assert orbit_rank_by_enumeration(S1, t1, cls1(1, 0)) == 2
    assert orbit_span(t1, sym1(1, 0)).dimension == 2
    mixed = GeneratorSet((Endo(q1(2)),), (Point(q1(1)),))
    assert orbit_rank_by_enumeration(S1, mixed, cls1(0, 1)) == 1
    assert orbit_span(mixed, sym1(0, 1)).dimension == 1


def _product_substitution(ctx, f_a=None, f_dual=None):
    a = f_a or LinearSubstitution.identity(ctx.a_ground)
    b = f_dual or LinearSubstitution.identity(ctx.dual_ground)
    return a.times(b, ctx.product)


@pytest.mark.criterion(6, "projection formula, base change and the exp identity")
@pytest.mark.parametrize("g", [1, 2])
def test_step3_identities(g):
    rng = random.Random(60 + g)
    ctx = poincare_class(g)
    P, A, B = ctx.product, ctx.a_ground, ctx.dual_ground
    for _ in range(50):
        u = rand_multivector(rng, P, 6)
        alpha = rand_multivector(rng, A, 3)
        beta = rand_multivector(rng, B, 3)
        # projection formula on both factors
        assert fiber_integrate(FIRST, wedge(project_pullback(SECOND, beta, P), u)) == \
            wedge(beta, fiber_integrate(FIRST, u))
        assert fiber_integrate(SECOND, wedge(u, project_pullback(FIRST, alpha, P))) == \
            wedge(fiber_integrate(SECOND, u), alpha)
        # base change: pulling back on the base commutes with integrating over the fibre
        fa, fb = rand_substitution(rng, A), rand_substitution(rng, B)
        assert pullback(fb, fiber_integrate(FIRST, u)) == \
            fiber_integrate(FIRST, pullback(_product_substitution(ctx, f_dual=fb), u))
        assert pullback(fa, fiber_integrate(SECOND, u)) == \
            fiber_integrate(SECOND, pullback(_product_substitution(ctx, f_a=fa), u))
        # (f x 1)^*(p2^* eta . exp l) = p2^* eta . exp((f x 1)^* l)
        lifted = _product_substitution(ctx, f_a=fa)
        eta = project_pullback(SECOND, rand_multivector(rng, B, 3), P)
        assert pullback(lifted, eta) == eta
        assert pullback(lifted, wedge(eta, ctx.exp_l)) == \
            wedge(eta, exp_class(pullback(lifted, ctx.l), P.m))


@pytest.mark.criterion(7, "Poincare class orbit and its power spans are bounded")
@pytest.mark.parametrize("g", [1, 2])
def test_step3_pipeline(g):
    sc = build_preset("number-field", g)
    rep = step3_pipeline(sc.model, sc.generators)
    assert rep.poincare.converged
    assert [p.n for p in rep.powers] == list(range(1, 2 * g + 1))
    for p in rep.powers:
        assert p.converged
        assert p.dimension <= power_bound(rep.poincare.dimension, p.n)
    assert rep.ok


def _cli(argv):
    out = io.StringIO()
    return run(argv, out), out.getvalue()


@pytest.mark.criterion(8, "scenario round trip and deterministic reports")
@pytest.mark.parametrize("name", sorted(PRESETS))
def test_cli_round_trip_and_determinism(name, tmp_path):
    sc = build_preset(name, 2, 1, 2, seed=7)
    text = json.dumps(serialize_scenario(sc), sort_keys=True)
    again = parse_scenario(text)
    assert again == sc
    assert json.dumps(serialize_scenario(again), sort_keys=True) == text
    path = tmp_path / f"{name}.json"
    path.write_text(text)
    first = _cli(["orbit-span", str(path), "--json"])
    assert first[0] == 0
    assert first == _cli(["orbit-span", str(path), "--json"])
    assert _cli(["orbit-span", "--preset", name, "--g", "1", "--seed", "3", "--json"]) == \
        _cli(["orbit-span", "--preset", name, "--g", "1", "--seed", "3", "--json"])
