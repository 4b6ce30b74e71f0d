"""Tests for the Freudenthal module: forms, rank and the generators"""

import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import random
from fractions import Fraction

import pytest
from hypothesis import example, given, settings, strategies as st

from models.composition import ScalarDomain
from models.freudenthal import (
    FreudenthalElement,
    GroupWord,
    Phi,
    Psi,
    Struct,
    Tau,
    apply_generator,
    content,
    is_primitive,
    minus_identity_word,
    module_basis,
    q_operator,
    apply_q_operator,
    quartic_q,
    quartic_qprime,
    r1_form,
    random_element,
    random_generator,
    random_norm_preserving_map,
    random_word,
    rank,
    symplectic,
    t_polarized,
    t_xxx,
)
from models.jordan import JordanElement, JordanKind, jnorm, jtrace, random_jordan, sharp, trace_form
from models.structure import DiagUnits, ScaleMove, StructureMap
from utils.errors import DomainError

QUICK = settings(max_examples=25, deadline=None)
kinds = st.sampled_from(list(JordanKind))


def reduced(kind, alpha, beta, diag, domain=ScalarDomain.INT):
    return FreudenthalElement.reduced(kind, alpha, beta, diag, domain)


@pytest.mark.parametrize("eps,k", [(0, 3), (1, 1), (1, -2), (0, 0), (1, 7)])
def test_norm_of_projective_representative(eps, k):
    assert quartic_qprime(reduced(JordanKind.H3O, 1, eps, (1, 1, k))) == 4 * k + eps * eps


def test_norm_examples():
    assert quartic_qprime(reduced(JordanKind.DIAG3, 1, 1, (1, 1, 1))) == 5
    A = random_jordan(JordanKind.H3H, random.Random(7), 5)
    x = FreudenthalElement.build(1, 0, A, JordanElement.zero(JordanKind.H3H))
    assert quartic_q(x) == -8 * jnorm(A)


def test_t_xxx_on_reduced_elements():
    A = JordanElement.diagonal(JordanKind.H3B, (2, -1, 3))
    x = FreudenthalElement.build(2, 5, A, JordanElement.zero(JordanKind.H3B))
    t = t_xxx(x)
    assert t.alpha == -(2 * 2 * 5)
    assert t.beta == 2 * 25 + 2 * jnorm(A)
    assert t.A == A.scale(10)
    assert t.B == sharp(A).scale(4)


def test_t_xxx_examples():
    for kind in JordanKind:
        unit = JordanElement.unit(kind)
        x = FreudenthalElement.build(1, 0, unit, JordanElement.zero(kind))
        assert t_xxx(x) == FreudenthalElement.build(0, 2, JordanElement.zero(kind), unit.scale(2))
        assert t_xxx(reduced(kind, 1, 0, (0, 0, 0))).is_zero()


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_half_gradient_of_norm_is_minus_t(rng, kind):
    x = random_element(kind, rng, 4)
    t = t_xxx(x)
    for e in module_basis(kind):
        f = {s: quartic_qprime(x + e.scale(s)) for s in (-2, -1, 1, 2)}
        # five-point stencil, exact on quartics
        derivative = Fraction(f[-2] - 8 * f[-1] + 8 * f[1] - f[2], 12)
        assert derivative / 2 == -symplectic(t, e)


def test_q_operator_examples():
    x = reduced(JordanKind.H3H, 1, 1, (0, 0, 0))
    dim = JordanKind.H3H.dim
    assert q_operator(x) == tuple(tuple(1 if r == c else 0 for c in range(dim)) for r in range(dim))


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_trace_of_q_operator_on_unit(rng, kind):
    x = random_element(kind, rng, 5)
    image = apply_q_operator(x, JordanElement.unit(kind))
    assert jtrace(image) == 3 * x.alpha * x.beta - trace_form(x.A, x.B)


def test_rank_examples():
    kind = JordanKind.H3O
    assert rank(reduced(kind, 1, 0, (1, 1, 5))) == 4
    assert rank(reduced(kind, 1, 0, (1, 1, 0))) == 3
    assert rank(reduced(kind, 1, 0, (1, 0, 0))) == 2
    assert rank(reduced(kind, 1, 0, (0, 0, 0))) == 1
    assert rank(FreudenthalElement.zero(kind)) == 0


@pytest.mark.parametrize("kind", list(JordanKind))
def test_rank_one_elements_kill_the_linear_form(kind):
    x = reduced(kind, 3, 0, (0, 0, 0))
    for y in module_basis(kind):
        assert r1_form(x, y).is_zero()


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_linear_form_matches_polarization(rng, kind):
    x = random_element(kind, rng, 3, ScalarDomain.RAT)
    y = random_element(kind, rng, 3, ScalarDomain.RAT)
    assert r1_form(x, y) == t_polarized(x, y) + x.scale(symplectic(x, y))


def test_tau_example():
    kind = JordanKind.H3B
    A = JordanElement.diagonal(kind, (1, 2, 3))
    B = JordanElement.diagonal(kind, (4, 5, 6))
    x = FreudenthalElement.build(7, 8, A, B)
    assert Tau().apply(x) == FreudenthalElement.build(-8, 7, -B, A)


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_tau_squared_is_minus_identity(rng, kind):
    x = random_element(kind, rng, 6)
    assert Tau().apply(Tau().apply(x)) == -x
    assert minus_identity_word().apply(x) == -x


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_generators_preserve_forms(rng, kind):
    x, y = random_element(kind, rng, 4), random_element(kind, rng, 4)
    g = random_generator(kind, rng, 2)
    assert quartic_qprime(g.apply(x)) == quartic_qprime(x)
    assert symplectic(g.apply(x), g.apply(y)) == symplectic(x, y)
    assert rank(g.apply(x)) == rank(x)


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_words_invert(rng, kind):
    x = random_element(kind, rng, 4)
    w = random_word(kind, rng, 4, 1)
    assert w.inverse().apply(w.apply(x)) == x
    assert content(w.apply(x)) == content(x)


@QUICK
@given(st.randoms(use_true_random=False), kinds)
@example(random.Random(0), JordanKind.DIAG3)
def test_norm_congruence(rng, kind):
    x = random_element(kind, rng, 9)
    assert quartic_qprime(x) % 4 in (0, 1)
    assert quartic_q(x) == -2 * quartic_qprime(x)


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_symplectic_form_is_alternating(rng, kind):
    x, y = random_element(kind, rng, 5), random_element(kind, rng, 5)
    assert symplectic(x, x) == 0
    assert symplectic(x, y) == -symplectic(y, x)


def test_struct_with_scaling_multiplier():
    kind = JordanKind.DIAG3
    x = reduced(kind, 4, 1, (1, 2, 3), ScalarDomain.RAT)
    g = Struct(StructureMap(kind, (ScaleMove(2),), ScalarDomain.RAT))
    image = g.apply(x)
    assert image.alpha == Fraction(1, 2) and image.beta == 8
    assert quartic_qprime(image) == quartic_qprime(x)


def test_struct_with_non_unit_diagonal_over_rationals():
    kind, rat = JordanKind.DIAG3, ScalarDomain.RAT
    A = JordanElement.diagonal(kind, (1, 2, 3), rat)
    B = JordanElement.diagonal(kind, (2, 4, 6), rat)
    x = FreudenthalElement.build(4, 1, A, B)
    g = Struct(StructureMap(kind, (DiagUnits((2, 1, 1)),), rat))
    image = apply_generator(g, x)
    assert (image.alpha, image.beta) == (2, 2)
    assert image.A == JordanElement.diagonal(kind, (2, 2, 3), rat)
    assert image.B == JordanElement.diagonal(kind, (1, 4, 6), rat)
    assert quartic_qprime(image) == quartic_qprime(x)
    y = FreudenthalElement.build(1, 5, B, A)
    assert symplectic(image, apply_generator(g, y)) == symplectic(x, y)
    assert g.inverse()[0].apply(image) == x


def test_struct_rejects_inexact_integral_division():
    x = reduced(JordanKind.DIAG3, 1, 1, (1, 1, 1))
    g = Struct(StructureMap(JordanKind.DIAG3, (ScaleMove(2),)))
    with pytest.raises(DomainError):
        g.apply(x)


def test_phi_and_psi_shift_by_the_unit():
    kind = JordanKind.H3B
    unit = JordanElement.unit(kind)
    x = reduced(kind, 0, 1, (0, 0, 0))
    assert Phi(unit).apply(x) == FreudenthalElement.build(1, 1, unit, unit)
    assert Psi(unit).apply(reduced(kind, 1, 0, (0, 0, 0))) == FreudenthalElement.build(1, 1, unit, unit)
    assert GroupWord((Phi(unit),)).inverse().apply(Phi(unit).apply(x)) == x


def test_content_and_primitivity():
    assert content(reduced(JordanKind.DIAG3, 4, 6, (2, 0, 8))) == 2
    assert is_primitive(reduced(JordanKind.DIAG3, 1, 2, (1, 1, 2)))


def test_coordinate_count_is_checked():
    with pytest.raises(DomainError):
        FreudenthalElement.from_coordinates(JordanKind.DIAG3, (1, 2, 3))


def test_mixed_kinds_are_rejected():
    with pytest.raises(DomainError):
        FreudenthalElement.build(1, 1, JordanElement.unit(JordanKind.H3B), JordanElement.unit(JordanKind.H3H))


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_norm_preserving_structure_generator(rng, kind):
    x = random_element(kind, rng, 4)
    g = Struct(random_norm_preserving_map(kind, rng, 2))
    assert g.inverse()[0].apply(g.apply(x)) == x


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_t_commutes_with_words(rng, kind):
    x = random_element(kind, rng, 4)
    w = random_word(kind, rng, 3, 1)
    assert w.apply(t_xxx(x)) == t_xxx(w.apply(x))
    assert content(t_xxx(w.apply(x))) == content(t_xxx(x))


@QUICK
@given(st.randoms(use_true_random=False), kinds)
def test_phi_psi_phi_acts_as_tau(rng, kind):
    unit = JordanElement.unit(kind)
    word = GroupWord((Phi(-unit), Psi(unit), Phi(-unit)))
    for x in module_basis(kind) + [random_element(kind, rng, 5)]:
        assert word.apply(x) == Tau().apply(x)
