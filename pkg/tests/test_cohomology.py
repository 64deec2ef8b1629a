import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abelorbit.cohomology import (
    FIRST,
    SECOND,
    GroundMismatch,
    GroundSpace,
    LinearSubstitution,
    Multivector,
    fiber_integrate,
    project_pullback,
    pullback,
    wedge,
)
from factories import (
    bubble_sign,
    pullback_oracle,
    rand_multivector,
    rand_substitution,
    wedge_oracle,
)

A2 = GroundSpace.named("e", 2)
D2 = GroundSpace.named("f", 2)
P22 = A2.product(D2)


def mv(ground, *blades):
    """``mv(G, (c, 'e1', 'e2'), ...)``"""
    out = Multivector.zero(ground)
    for c, *labels in blades:
        out = out + Multivector.blade(ground, labels, c)
    return out


def test_wedge_examples():
    e1 = Multivector.generator(A2, "e1")
    e2 = Multivector.generator(A2, "e2")
    assert wedge(e1, e1) == 0
    assert wedge(e1, e2) + wedge(e2, e1) == 0
    assert wedge(e1 + e2, e2) == mv(A2, (1, "e1", "e2"))


def test_wedge_rejects_mismatched_grounds():
    with pytest.raises(GroundMismatch):
        wedge(Multivector.scalar(A2), Multivector.scalar(D2))


def test_constructor_sorts_with_sign():
    assert Multivector(A2, {(1, 0): 3}) == mv(A2, (-3, "e1", "e2"))
    assert Multivector(A2, {(0, 0): 3}) == 0


def test_pullback_examples():
    u = mv(A2, (1, "e1", "e2"))
    assert pullback(LinearSubstitution.scalar(A2, 2), u) == u * 4
    assert pullback(LinearSubstitution.identity(A2), u) == u
    # e1 -> e1 + e2, e2 -> e2
    T = LinearSubstitution(A2, [[1, 0], [1, 1]])
    assert pullback(T, u) == u


def test_pullback_rejects_mismatch():
    with pytest.raises(GroundMismatch):
        pullback(LinearSubstitution.identity(D2), Multivector.scalar(A2))
    with pytest.raises(GroundMismatch):
        LinearSubstitution(A2, [[1, 0, 0]])


def test_project_pullback_examples():
    assert project_pullback(FIRST, Multivector.scalar(A2), P22) == Multivector.scalar(P22)
    assert project_pullback(FIRST, Multivector.generator(A2, "e1"), P22) == Multivector.generator(P22, "e1")
    assert project_pullback(FIRST, mv(A2, (1, "e1", "e2")), P22) == mv(P22, (1, "e1", "e2"))
    assert project_pullback(SECOND, mv(D2, (2, "f2")), P22) == mv(P22, (2, "f2"))
    with pytest.raises(GroundMismatch):
        project_pullback(SECOND, Multivector.scalar(A2), P22)


def test_fiber_integrate_examples():
    assert fiber_integrate(FIRST, mv(P22, (1, "e1", "e2"))) == Multivector.scalar(D2)
    assert fiber_integrate(FIRST, mv(P22, (1, "e1", "f1"))) == 0
    u = mv(P22, (1, "e1", "f1", "e2", "f2"))
    assert fiber_integrate(FIRST, u) == mv(D2, (-1, "f1", "f2"))
    with pytest.raises(GroundMismatch):
        fiber_integrate(FIRST, Multivector.scalar(A2))


def test_fiber_integrate_sign_matches_bubble_oracle():
    rng = random.Random(7)
    G = GroundSpace.named("e", 4).product(GroundSpace.named("f", 4))
    for _ in range(50):
        rest = sorted(rng.sample(range(4, 8), rng.randint(0, 4)))
        word = list(range(4)) + rest
        rng.shuffle(word)
        u = Multivector(G, {tuple(word): 1})
        # oracle: sign of bringing the word to (fiber, rest) order
        target_sign = bubble_sign(word) * bubble_sign(list(range(4)) + rest)
        got = fiber_integrate(FIRST, u)
        key = tuple(i - 4 for i in rest)
        assert got.terms == {key: target_sign}


def test_composition_convention():
    rng = random.Random(3)
    G = GroundSpace.named("e", 4)
    for _ in range(10):
        T, S = rand_substitution(rng, G), rand_substitution(rng, G)
        u = rand_multivector(rng, G, 5)
        assert pullback(T.compose(S), u) == pullback(S, pullback(T, u))


grounds = st.sampled_from([GroundSpace.named("e", m) for m in (2, 3, 4, 6)])


@settings(max_examples=60, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_wedge_agrees_with_oracle(G, rng):
    u, v = rand_multivector(rng, G), rand_multivector(rng, G)
    assert wedge(u, v).terms == wedge_oracle(u, v)


@settings(max_examples=60, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_graded_commutativity(G, rng):
    p, q = rng.randint(0, G.m), rng.randint(0, G.m)
    u = rand_multivector(rng, G, 3, p)
    v = rand_multivector(rng, G, 3, q)
    assert wedge(u, v) == wedge(v, u) * (-1) ** (p * q)


@settings(max_examples=40, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_wedge_associative(G, rng):
    u, v, w = (rand_multivector(rng, G, 3) for _ in range(3))
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@settings(max_examples=40, deadline=None)
@given(grounds, st.randoms(use_true_random=False))
def test_pullback_is_ring_hom_and_matches_minors(G, rng):
    T = rand_substitution(rng, G)
    u, v = rand_multivector(rng, G, 3), rand_multivector(rng, G, 3)
    assert pullback(T, wedge(u, v)) == wedge(pullback(T, u), pullback(T, v))
    assert pullback(T, u).terms == pullback_oracle(T, u)


@pytest.mark.parametrize("n", range(-5, 6))
def test_multiplication_scales_by_power(n):
    rng = random.Random(n)
    G = GroundSpace.named("e", 4)
    for k in range(G.m + 1):
        u = rand_multivector(rng, G, 3, k)
        assert pullback(LinearSubstitution.scalar(G, n), u) == u * Fraction(n) ** k


def _product(g):
    return GroundSpace.named("e", 2 * g).product(GroundSpace.named("f", 2 * g))


@pytest.mark.parametrize("g", [1, 2])
def test_projection_formula(g):
    rng = random.Random(100 + g)
    P = _product(g)
    A, D = P.factor(FIRST), P.factor(SECOND)
    for _ in range(20):
        x = rand_multivector(rng, D, 3)
        y = rand_multivector(rng, P, 6)
        assert fiber_integrate(FIRST, wedge(project_pullback(SECOND, x, P), y)) == \
            wedge(x, fiber_integrate(FIRST, y))
        x = rand_multivector(rng, A, 3)
        assert fiber_integrate(SECOND, wedge(project_pullback(FIRST, x, P), y)) == \
            wedge(x, fiber_integrate(SECOND, y))


@pytest.mark.parametrize("g", [1, 2])
def test_base_change(g):
    rng = random.Random(200 + g)
    P = _product(g)
    A, D = P.factor(FIRST), P.factor(SECOND)
    for _ in range(20):
        f = rand_substitution(rng, A)
        lifted = f.times(LinearSubstitution.identity(D), P)
        u = rand_multivector(rng, P, 6)
        assert pullback(f, fiber_integrate(SECOND, u)) == fiber_integrate(SECOND, pullback(lifted, u))
