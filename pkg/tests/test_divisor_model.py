import random

import pytest

from abelorbit.divisor_model import (
    Endo,
    HermClass,
    ModelSpec,
    NonHermitian,
    Pic0Class,
    PicClass,
    Point,
    ShapeMismatch,
    endo_pullback,
    minus_one_pullback,
    ns_lift,
    phi,
    poincare_divisor,
    split_antisym,
    sym_antisym_projectors,
    translate_pullback,
)
from abelorbit.scalars import QuadMatrix
from factories import model_specs, rand_endo, rand_herm, rand_pic, rand_point

S1 = ModelSpec(1, 0, 1)


def cls1(n, c):
    """g = 1, d = 0, rho = 1 class (N, c)."""
    return PicClass(HermClass(QuadMatrix.from_rows([[n]], 0)), Pic0Class(QuadMatrix.from_rows([[c]], 0)))


def pt1(a):
    return Point(QuadMatrix.from_rows([[a]], 0))


specs = pytest.mark.parametrize("spec", model_specs(), ids=str)


def test_dimensions():
    assert ModelSpec(3, 0, 2).pic0_dim == 6
    assert ModelSpec(3, 0, 2).ns_dim == 6
    assert ModelSpec(3, 5, 2).pic0_dim == 12
    assert ModelSpec(3, 5, 2).ns_dim == 9


@specs
def test_vector_round_trip(spec):
    rng = random.Random(1)
    D = rand_pic(rng, spec)
    v = spec.pic_to_vector(D)
    assert len(v) == spec.pic_dim
    assert spec.vector_to_pic(v) == D
    assert len(spec.basis()) == len(spec.basis_names()) == spec.pic_dim


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitian):
        HermClass(QuadMatrix.from_rows([[1, 2], [3, 1]], 0))


def test_endo_pullback_examples():
    assert endo_pullback(Endo(QuadMatrix.from_rows([[2]], 0)), cls1(1, 3)) == cls1(4, 6)
    D = cls1(5, -2)
    assert endo_pullback(S1.identity(), D) == D


@specs
@pytest.mark.parametrize("n", range(-5, 6))
def test_multiplication_by_n(spec, n):
    rng = random.Random(n)
    N = rand_herm(rng, spec)
    c = Pic0Class(rand_point(rng, spec).coords)
    D = PicClass(N, c)
    assert endo_pullback(spec.multiplication(n), D) == PicClass(N.scale(n * n), c.scale(n))


def test_translate_pullback_examples():
    assert translate_pullback(pt1(1), cls1(1, 0)) == cls1(1, 1)
    D = cls1(0, 7)
    assert translate_pullback(pt1(9), D) == D
    assert translate_pullback(pt1(0), cls1(3, 2)) == cls1(3, 2)


@specs
def test_translations_fix_pic0_and_differences_are_pic0(spec):
    rng = random.Random(2)
    for _ in range(20):
        a = rand_point(rng, spec)
        D0 = rand_pic(rng, spec, ns=False)
        assert translate_pullback(a, D0) == D0
        D = rand_pic(rng, spec)
        assert (translate_pullback(a, D) - D).ns.entries.is_zero()


@specs
def test_additivity_only_on_pic0(spec):
    rng = random.Random(3)
    for _ in range(20):
        f, h = rand_endo(rng, spec), rand_endo(rng, spec)
        D0 = rand_pic(rng, spec, ns=False)
        assert endo_pullback(f + h, D0) == endo_pullback(f, D0) + endo_pullback(h, D0)
    # witness with N != 0: (1 + 1)^* N = 4N but 1^*N + 1^*N = 2N
    I = spec.identity()
    D = ns_lift(HermClass(QuadMatrix.identity(spec.g, spec.d)), spec.rho)
    assert endo_pullback(I + I, D) != endo_pullback(I, D) + endo_pullback(I, D)


def test_split_examples():
    assert split_antisym(cls1(4, 0)).is_zero()
    assert split_antisym(cls1(0, 5)) == Pic0Class(QuadMatrix.from_rows([[5]], 0))
    D = cls1(4, 5)
    assert phi(D) == cls1(0, 5)
    assert phi(D).alg0 == split_antisym(D)


def test_projector_examples():
    D = cls1(4, 5)
    plus, minus = sym_antisym_projectors(D)
    assert (plus, minus) == (cls1(4, 0), cls1(0, 5))
    assert sym_antisym_projectors(plus)[0] == plus
    assert plus + minus == D


def test_minus_one_examples():
    assert minus_one_pullback(cls1(3, 0)) == cls1(3, 0)
    assert minus_one_pullback(cls1(0, 2)) == cls1(0, -2)
    assert minus_one_pullback(minus_one_pullback(cls1(3, 2))) == cls1(3, 2)


@specs
def test_splitting_properties(spec):
    rng = random.Random(4)
    for _ in range(20):
        D = rand_pic(rng, spec)
        f = rand_endo(rng, spec)
        plus, minus = sym_antisym_projectors(D)
        assert plus + minus == D
        assert sym_antisym_projectors(plus) == (plus, spec.zero())
        assert sym_antisym_projectors(minus) == (spec.zero(), minus)
        assert phi(D).alg0 == split_antisym(D)
        assert D == ns_lift(D.ns, spec.rho) + PicClass(spec.zero_ns(), split_antisym(D))
        fp, fm = sym_antisym_projectors(endo_pullback(f, D))
        assert fp == endo_pullback(f, plus) and fm == endo_pullback(f, minus)
        assert endo_pullback(f, ns_lift(D.ns, spec.rho)) == ns_lift(
            HermClass(f.matrix.adjoint() @ D.ns.entries @ f.matrix), spec.rho)


@specs
def test_rosati(spec):
    rng = random.Random(5)
    n = spec.multiplication(3)
    assert n.adjoint() == n
    for _ in range(10):
        f, h = rand_endo(rng, spec), rand_endo(rng, spec)
        assert (f @ h).adjoint() == h.adjoint() @ f.adjoint()


def test_shape_errors():
    spec = ModelSpec(2, 0, 1)
    D = spec.zero()
    with pytest.raises(ShapeMismatch):
        endo_pullback(S1.identity(), D)
    with pytest.raises(ShapeMismatch):
        translate_pullback(S1.origin(), D)


def test_poincare_divisor_block():
    l = poincare_divisor(ModelSpec(1, 0, 1))
    assert l.ns.entries == QuadMatrix.from_rows([[0, 1], [1, 0]], 0)
    assert l.alg0.is_zero()
