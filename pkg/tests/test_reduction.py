"""Tests for diagonal reduction, projectivity, canonical forms and orbit labels"""

import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from models.composition import ScalarDomain
from models.freudenthal import (
    FreudenthalElement,
    GroupWord,
    Phi,
    Psi,
    Struct,
    Tau,
    quartic_q,
    quartic_qprime,
    random_element,
    random_word,
    rank,
)
from models.jordan import JordanElement, JordanKind, diag_unit_vector, embed_jordan
from models.reduction import (
    REDUCIBLE_KINDS,
    classify_orbit,
    connect,
    d2_prime,
    field_canonicalize,
    fundamental_discriminants,
    invariants,
    is_fundamental_discriminant,
    is_projective,
    lcomp_move,
    lcomp_word,
    projective_canonicalize,
    projectivity_report,
    reduce_diagonal,
)
from models.structure import SMITH_KINDS, DiagUnits, Permute, StructureMap
from utils.errors import DomainError, PreconditionError
from utils.serialization import label_key

QUICK = settings(max_examples=20, deadline=None)
reducible = st.sampled_from(REDUCIBLE_KINDS)
smith_kinds = st.sampled_from(SMITH_KINDS)


def reduced(kind, alpha, beta, diag, domain=ScalarDomain.INT):
    return FreudenthalElement.reduced(kind, alpha, beta, diag, domain)


# -- diagonal reduction


def test_reduced_input_is_returned_unchanged():
    x = reduced(JordanKind.H3O, 2, 4, (2, 6, -8))
    red = reduce_diagonal(x)
    assert red.element == x
    assert len(red.witness) == 0


def test_reduction_of_pure_b_part():
    kind = JordanKind.H3B
    x = FreudenthalElement.build(0, 0, JordanElement.zero(kind), JordanElement.unit(kind))
    red = reduce_diagonal(x)
    assert red.alpha == 1
    assert red.element.B.is_zero() and red.element.A.is_diagonal()
    assert red.witness.apply(x) == red.element


@QUICK
@given(st.randoms(use_true_random=False), reducible)
def test_reduction_replays_and_keeps_invariants(rng, kind):
    x = random_element(kind, rng, 6)
    if x.is_zero():
        return
    red = reduce_diagonal(x)
    y = red.element
    assert red.witness.apply(x) == y
    assert y.B.is_zero() and y.A.is_diagonal()
    assert y.alpha == invariants(x).d1
    assert y.beta % y.alpha == 0
    assert all(v % y.alpha == 0 for v in red.a)
    assert quartic_qprime(y) == quartic_qprime(x)
    assert rank(y) == rank(x)
    assert invariants(y) == invariants(x)


def test_reduction_preconditions():
    with pytest.raises(PreconditionError):
        reduce_diagonal(FreudenthalElement.zero(JordanKind.H3B))
    with pytest.raises(PreconditionError):
        reduce_diagonal(reduced(JordanKind.H3F, 1, 0, (1, 0, 0)))
    with pytest.raises(DomainError):
        reduce_diagonal(reduced(JordanKind.H3B, 1, 0, (1, 0, 0), ScalarDomain.RAT))


# -- lcomp


@pytest.mark.parametrize("kind", [JordanKind.DIAG3, JordanKind.H3B, JordanKind.H3O])
def test_lcomp_example(kind):
    x = reduced(kind, 1, 2, (1, 1, 2))
    assert lcomp_move(x, 3, 1) == reduced(kind, 1, 0, (1, 1, 3))
    assert lcomp_move(x, 3, 0) == x
    assert len(lcomp_word(x, 3, 0)) == 0


def test_lcomp_general_slot_three():
    alpha, beta, a1, a2, a3, c = 2, 6, 4, 2, 10, 3
    x = reduced(JordanKind.H3H, alpha, beta, (a1, a2, a3))
    m = a1 * a2 // alpha
    assert lcomp_move(x, 3, c) == reduced(JordanKind.H3H, alpha, beta - 2 * m * c, (a1, a2, a3 + beta * c - m * c * c))


def test_lcomp_preconditions():
    with pytest.raises(PreconditionError):
        lcomp_move(reduced(JordanKind.H3B, 0, 1, (1, 1, 1)), 3, 1)
    with pytest.raises(PreconditionError):
        lcomp_move(reduced(JordanKind.H3B, 2, 0, (1, 1, 1)), 3, 1)
    with pytest.raises(PreconditionError):
        lcomp_move(reduced(JordanKind.H3B, 1, 0, (1, 1, 1)), 4, 1)


# -- invariants


def test_invariants_of_degenerate_representatives():
    inv = invariants(reduced(JordanKind.H3B, 2, 0, (6, 0, 0)))
    assert (inv.d1, inv.d2, inv.d3, inv.d4) == (2, 24, 0, 0)
    inv = invariants(reduced(JordanKind.DIAG3, 1, 0, (0, 0, 0)))
    assert inv.as_tuple() == (1, 0, 0, 0)


@QUICK
@given(st.randoms(use_true_random=False), st.sampled_from(list(JordanKind)))
def test_invariants_are_constant_along_words(rng, kind):
    x = random_element(kind, rng, 3)
    w = random_word(kind, rng, 4, 1)
    y = w.apply(x)
    assert invariants(y) == invariants(x)
    assert d2_prime(y) == d2_prime(x)


# -- projectivity


def test_known_projective_pair():
    kind = JordanKind.H3B
    x1 = reduced(kind, 1, 2, (1, 1, 2))
    x2 = reduced(kind, 1, 2, (1, 2, 2))
    assert projectivity_report(x1).gcd_t == 2
    assert projectivity_report(x2).gcd_t == 2
    assert is_projective(x1)
    assert not is_projective(x2)


def test_unit_element_projective_through_fallback():
    report = projectivity_report(reduced(JordanKind.H3O, 1, 0, (1, 1, 1)))
    assert report.projective
    assert report.gcd_t == 2
    assert report.via_representative


def test_non_primitive_elements_are_not_projective():
    assert not is_projective(reduced(JordanKind.H3B, 2, 4, (2, 2, 6)))
    assert not is_projective(reduced(JordanKind.DIAG3, 3, 0, (3, 3, 3)))


@QUICK
@given(st.randoms(use_true_random=False))
def test_diag3_projectivity_is_word_invariant(rng):
    x = random_element(JordanKind.DIAG3, rng, 3)
    w = random_word(JordanKind.DIAG3, rng, 3, 1)
    assert is_projective(w.apply(x)) == is_projective(x)


# -- projective canonical form


@pytest.mark.parametrize("kind", list(SMITH_KINDS))
def test_canonical_form_examples(kind):
    eps, k, word = projective_canonicalize(reduced(kind, 1, 2, (1, 1, 2)))
    assert (eps, k) == (0, 3)
    assert word.apply(reduced(kind, 1, 2, (1, 1, 2))) == reduced(kind, 1, 0, (1, 1, 3))

    x = reduced(kind, 1, 1, (1, 1, 1))
    eps, k, word = projective_canonicalize(x)
    assert (eps, k) == (1, 1)
    assert word.apply(x) == x

    eps, k, _ = projective_canonicalize(reduced(kind, 1, 0, (1, 1, 0)))
    assert (eps, k) == (0, 0)


def test_diag3_canonical_form_runs_in_h3b():
    x = reduced(JordanKind.DIAG3, 1, 2, (1, 1, 2))
    eps, k, word = projective_canonicalize(x)
    assert (eps, k) == (0, 3)
    lifted = FreudenthalElement(x.alpha, x.beta, embed_jordan(x.A, JordanKind.H3B), embed_jordan(x.B, JordanKind.H3B))
    assert word.apply(lifted) == reduced(JordanKind.H3B, 1, 0, (1, 1, 3))


def test_canonical_form_needs_projective_input():
    with pytest.raises(PreconditionError):
        projective_canonicalize(reduced(JordanKind.H3B, 1, 2, (1, 2, 2)))


@QUICK
@given(st.randoms(use_true_random=False), smith_kinds, st.integers(-6, 6))
def test_equal_norms_share_a_canonical_form(rng, kind, k):
    eps = 1
    base = reduced(kind, 1, eps, (1, 1, k))
    x = random_word(kind, rng, 4, 1).apply(base)
    got_eps, got_k, word = projective_canonicalize(x)
    assert (got_eps, got_k) == (eps, k)
    assert word.apply(x) == base
    y = random_word(kind, rng, 4, 1).apply(base)
    assert connect(x, y).apply(x) == y


# -- orbit labels


def test_classify_examples():
    label = classify_orbit(reduced(JordanKind.H3B, 3, 0, (0, 0, 0)))
    assert (label.variant, label.d1) == ("Rank1", 3)

    label = classify_orbit(reduced(JordanKind.H3B, 2, 0, (6, 0, 0)))
    assert (label.variant, label.d1, label.m) == ("Rank2", 2, 6)
    assert label.representative == reduced(JordanKind.H3B, 2, 0, (6, 0, 0))

    label = classify_orbit(reduced(JordanKind.H3O, 1, 1, (1, 1, 1)))
    assert (label.variant, label.epsilon, label.k) == ("Projective", 1, 1)

    assert classify_orbit(FreudenthalElement.zero(JordanKind.DIAG3)).variant == "Rank0"


def test_classify_unclassified_cases():
    label = classify_orbit(reduced(JordanKind.H3B, 1, 2, (1, 2, 2)))
    assert label.variant == "Unclassified"
    assert label.invariants == invariants(reduced(JordanKind.H3B, 1, 2, (1, 2, 2)))
    assert label.representative is not None

    label = classify_orbit(reduced(JordanKind.H3F, 1, 0, (1, 1, 1)))
    assert label.variant == "Unclassified" and label.representative is None


@QUICK
@given(st.randoms(use_true_random=False), reducible)
def test_degenerate_labels_survive_words(rng, kind):
    d1, m = rng.randint(1, 4), rng.randint(1, 4)
    for base in (reduced(kind, d1, 0, (0, 0, 0)), reduced(kind, d1, 0, (d1 * m, 0, 0))):
        x = random_word(kind, rng, 4, 1).apply(base)
        assert classify_orbit(x) == classify_orbit(base)
        if kind is not JordanKind.DIAG3:
            assert connect(x, base).apply(x) == base


def test_connect_refuses_projective_diag3():
    x = reduced(JordanKind.DIAG3, 1, 1, (1, 1, 1))
    with pytest.raises(PreconditionError):
        connect(x, x)


def test_connect_refuses_different_orbits():
    with pytest.raises(PreconditionError):
        connect(reduced(JordanKind.H3B, 1, 0, (0, 0, 0)), reduced(JordanKind.H3B, 2, 0, (0, 0, 0)))


def _diag3_generators():
    kind = JordanKind.DIAG3
    gens = [Tau()]
    for i in range(3):
        for c in (1, -1):
            E = diag_unit_vector(kind, i, c)
            gens += [Phi(E), Psi(E)]
    for i, j in ((0, 1), (1, 2)):
        gens.append(Struct(StructureMap(kind, (Permute.swap(i, j),))))
    gens.append(Struct(StructureMap(kind, (DiagUnits((-1, -1, 1)),))))
    return gens


def test_orbit_labels_match_connectivity_in_the_unit_box():
    kind = JordanKind.DIAG3
    box = [FreudenthalElement.from_coordinates(kind, c) for c in product((-1, 0, 1), repeat=8)]
    index = {x.coordinates(): n for n, x in enumerate(box)}
    parent = list(range(len(box)))

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    gens = _diag3_generators()
    for n, x in enumerate(box):
        for g in gens:
            m = index.get(g.apply(x).coordinates())
            if m is not None:
                parent[find(m)] = find(n)

    labels_by_component = {}
    rank_one_components = set()
    for n, x in enumerate(box):
        key = label_key(classify_orbit(x))
        labels_by_component.setdefault(find(n), set()).add(key)
        if key == "Rank1(d1=1)":
            rank_one_components.add(find(n))
    assert all(len(keys) == 1 for keys in labels_by_component.values())
    assert len(rank_one_components) == 1


# -- discriminants


@pytest.mark.parametrize("n,expected", [
    (1, True), (5, True), (8, True), (12, True), (13, True),
    (-3, True), (-4, True), (-8, True), (0, False), (4, False), (9, False), (2, False),
])
def test_fundamental_discriminants(n, expected):
    assert is_fundamental_discriminant(n) is expected


def test_fundamental_discriminant_listing():
    assert fundamental_discriminants(13) == [-11, -8, -7, -4, -3, 1, 5, 8, 12, 13]


@pytest.mark.parametrize("n", [n for n in range(-60, 61) if is_fundamental_discriminant(n)])
def test_fundamental_norms_are_projective(n):
    eps = n % 2
    k = (n - eps) // 4
    base = reduced(JordanKind.H3B, 1, eps, (1, 1, k))
    assert is_projective(base)
    assert is_projective(Phi(diag_unit_vector(JordanKind.H3B, 0, 2)).apply(base))


def test_fundamental_norms_are_projective_at_height_two():
    kind = JordanKind.DIAG3
    fundamental = {}
    for coords in product(range(-2, 3), repeat=8):
        x = FreudenthalElement.from_coordinates(kind, coords)
        n = quartic_qprime(x)
        if n not in fundamental:
            fundamental[n] = is_fundamental_discriminant(n)
        if fundamental[n]:
            assert is_projective(x), coords


# -- field case


def test_field_canonical_form_example():
    x = reduced(JordanKind.H3O, 1, 0, (1, 1, 5), ScalarDomain.RAT)
    rep, word = field_canonicalize(x)
    assert rep == x
    assert quartic_q(x) == -40
    assert word.apply(x) == rep


def test_field_canonical_form_rank_one():
    kind = JordanKind.H3B
    C = diag_unit_vector(kind, 0, 1, ScalarDomain.RAT)
    x = FreudenthalElement.build(0, 0, C, JordanElement.zero(kind, ScalarDomain.RAT))
    rep, word = field_canonicalize(x)
    assert rep == reduced(kind, 1, 0, (0, 0, 0), ScalarDomain.RAT)
    assert word.apply(x) == rep
    assert rank(rep) == rank(x) == 1


@QUICK
@given(st.randoms(use_true_random=False), smith_kinds)
def test_field_canonical_form_replays(rng, kind):
    x = random_element(kind, rng, 4, ScalarDomain.RAT)
    if x.is_zero():
        return
    rep, word = field_canonicalize(x)
    assert word.apply(x) == rep
    assert rank(rep) == rank(x)
    assert quartic_q(rep) == quartic_q(x)


def test_field_canonical_form_needs_rationals():
    with pytest.raises(DomainError):
        field_canonicalize(reduced(JordanKind.H3B, 1, 0, (1, 1, 1)))
    with pytest.raises(PreconditionError):
        field_canonicalize(FreudenthalElement.zero(JordanKind.H3B, ScalarDomain.RAT))


def test_empty_word_is_identity():
    x = reduced(JordanKind.H3H, 1, 0, (1, 1, 1))
    assert GroupWord().apply(x) == x
