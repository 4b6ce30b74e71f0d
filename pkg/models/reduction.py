"""
Reductions and orbit labels for the integral Freudenthal module.

``reduce_diagonal`` brings any nonzero element of M(J) (J = Diag3, H3B,
H3H, H3O) to a diagonal reduced element (alpha, beta, diag(a), 0) with
alpha = gcd(x) dividing beta and every a_i. ``projective_canonicalize``
continues from there to (1, eps, diag(1, 1, k), 0). Every routine returns
the generator word it used so callers can replay it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import factorint

from config.settings import FreudenthalConfig
from models.composition import ScalarDomain
from models.cubes import BinaryQuadraticForm, display_forms
from models.freudenthal import (
    FreudenthalElement,
    GroupWord,
    Phi,
    Psi,
    Struct,
    Tau,
    content,
    q_operator,
    quartic_q,
    quartic_qprime,
    rank,
    t_xxx,
)
from models.jordan import (
    JordanElement,
    JordanKind,
    cross,
    diag_unit_vector,
    embed_jordan,
    jrank,
    rank_one_basis,
    sharp,
    trace_form,
)
from models.structure import SMITH_KINDS, Permute, StructureMap, diagonalize, unit_move
from utils.errors import InvariantError, PreconditionError, ResourceLimitError
from utils.helpers import exact_div, gcd_all, nearest_quotient, positive_residue_shift, sign
from utils.validation import (
    validate_int_domain,
    validate_kind_in,
    validate_nonzero,
    validate_rat_domain,
    validate_same_kind,
    validate_slot,
)

logger = logging.getLogger(__name__)

REDUCIBLE_KINDS = (JordanKind.DIAG3,) + SMITH_KINDS


# -- result types ----------------------------------------------------


@dataclass(frozen=True)
class DiagonalReduced:
    element: FreudenthalElement
    witness: GroupWord

    @property
    def alpha(self):
        return self.element.alpha

    @property
    def beta(self):
        return self.element.beta

    @property
    def a(self) -> Tuple:
        return tuple(self.element.A.diag)


@dataclass(frozen=True)
class InvariantVector:
    d1: int
    d2: int
    d3: int
    d4: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.d1, self.d2, self.d3, self.d4)


@dataclass(frozen=True)
class OrbitLabel:
    """variant is one of Rank0, Rank1, Rank2, Projective, Unclassified; unused fields stay None."""

    variant: str
    d1: Optional[int] = None
    m: Optional[int] = None
    epsilon: Optional[int] = None
    k: Optional[int] = None
    invariants: Optional[InvariantVector] = None
    representative: Optional[FreudenthalElement] = None


@dataclass(frozen=True)
class ProjectivityReport:
    projective: bool
    gcd_t: int
    # True when the answer came from the g = 2 test on one diagonal reduced representative
    via_representative: bool = False


# -- tracer ----------------------------------------------------------


class _Reducer:
    """Current element plus the generators applied so far."""

    def __init__(self, x: FreudenthalElement, gens: Tuple = ()):
        self.x = x
        self.gens: List = list(gens)
        self.steps = 0

    def push(self, g) -> None:
        self.steps += 1
        if self.steps > FreudenthalConfig.MAX_STEPS:
            raise ResourceLimitError("Reduction exceeded the step limit.")
        self.gens.append(g)
        self.x = g.apply(self.x)
        logger.debug("%s -> alpha=%s beta=%s", type(g).__name__, self.x.alpha, self.x.beta)

    def push_word(self, word: GroupWord) -> None:
        for g in word:
            self.push(g)

    @property
    def word(self) -> GroupWord:
        return GroupWord(tuple(self.gens))


def _coords_element(kind: JordanKind, coords, domain: ScalarDomain) -> JordanElement:
    return JordanElement.from_coordinates(kind, [domain.coerce(v) for v in coords], domain)


def _is_reduced(x: FreudenthalElement) -> bool:
    a = x.alpha
    if a <= 0 or not x.B.is_zero():
        return False
    return x.beta % a == 0 and all(v % a == 0 for v in x.A.coordinates())


# -- diagonal reduction ------------------------------------------------


def _clear_b(r: _Reducer) -> None:
    """Euclid between alpha and the coordinates of B until B = 0 and alpha > 0."""
    kind, domain = r.x.kind, r.x.domain
    basis = rank_one_basis(kind, domain)
    while not r.x.B.is_zero():
        x = r.x
        b = x.B.coordinates()
        m = min(abs(v) for v in b if v != 0)
        if x.alpha != 0 and abs(x.alpha) <= m:
            D = _coords_element(kind, [-nearest_quotient(v, x.alpha) for v in b], domain)
            r.push(Psi(D))
            continue
        for C in basis:
            value = trace_form(x.B, C)
            if abs(value) == m:
                break
        c = -sign(value) * positive_residue_shift(x.alpha, m)
        r.push(Phi(C.scale(c)))
    if r.x.alpha < 0:
        r.push(Tau())
        r.push(Tau())


def _sharp_trick(kind: JordanKind, index: int, d, domain: ScalarDomain) -> Tuple[JordanElement, int]:
    """D whose sharp is coef * d on coordinate ``index`` only; returns (D, coef)."""
    if index < 3:
        j, k = (index + 1) % 3, (index + 2) % 3
        values = [0, 0, 0]
        values[j] = 1
        values[k] = d
        return JordanElement.diagonal(kind, values, domain), 1
    coords = [0] * kind.dim
    slot = (index - 3) // kind.algebra.dim
    coords[slot] = 1
    coords[index] = d
    return _coords_element(kind, coords, domain), -1


def _shrink_remainder(r: _Reducer) -> None:
    """alpha > 0, B = 0, alpha not dividing everything: leave a residue in [1, alpha - 1]."""
    x = r.x
    kind, domain, alpha = x.kind, x.domain, x.alpha
    coords = x.A.coordinates()
    for index, value in enumerate(coords):
        if value % alpha:
            _, coef = _sharp_trick(kind, index, 1, domain)
            D, _ = _sharp_trick(kind, index, -coef * (value // alpha), domain)
            r.push(Psi(D))
            return
    a11 = coords[0]
    r.push(Psi(JordanElement.diagonal(kind, (0, 1, (alpha - a11) // alpha), domain)))
    r.push(Psi(diag_unit_vector(kind, 0, -(r.x.beta // alpha), domain)))


def reduce_diagonal(x: FreudenthalElement) -> DiagonalReduced:
    """Diagonal reduced form (alpha, beta, diag(a), 0) with alpha = gcd(x), plus the witness."""
    validate_int_domain(x.domain, "reduce_diagonal")
    validate_kind_in(x.kind, REDUCIBLE_KINDS, "reduce_diagonal")
    validate_nonzero(x, "The element to reduce")
    if _is_reduced(x) and x.A.is_diagonal():
        return DiagonalReduced(x, GroupWord())
    r = _Reducer(x)
    while True:
        if r.x.alpha == 0 and r.x.B.is_zero():
            r.push(Tau())
        _clear_b(r)
        if _is_reduced(r.x):
            break
        _shrink_remainder(r)
        r.push(Tau())
    if not r.x.A.is_diagonal():
        _, s = diagonalize(r.x.A)
        if s.moves:
            r.push(Struct(s))
    if r.x.alpha != content(x):
        raise InvariantError(f"Reduction ended with alpha={r.x.alpha}, expected gcd {content(x)}.")
    logger.debug("reduced in %d generators: alpha=%s beta=%s a=%s", len(r.gens), r.x.alpha, r.x.beta, r.x.A.diag)
    return DiagonalReduced(r.x, r.word)


# -- lcomp -----------------------------------------------------------


def _check_lcomp(x: FreudenthalElement, slot: int):
    i = validate_slot(slot)
    if not x.B.is_zero() or not x.A.is_diagonal():
        raise PreconditionError("lcomp needs an element of the form (alpha, beta, diag(a), 0).")
    if x.alpha == 0:
        raise PreconditionError("lcomp needs alpha != 0.")
    return i


def lcomp_word(x: FreudenthalElement, slot: int, c) -> GroupWord:
    """phi(c E_ii) followed by the psi that clears B again."""
    i = _check_lcomp(x, slot)
    kind, domain = x.kind, x.domain
    c = domain.coerce(c)
    if c == 0:
        return GroupWord()
    if domain.integral:
        for j in range(3):
            if j != i and (c * x.A.diag[j]) % x.alpha:
                raise PreconditionError(f"alpha={x.alpha} must divide c*a_{j + 1}={c * x.A.diag[j]}.")
    C = diag_unit_vector(kind, i, c, domain)
    image = cross(x.A, C)
    D = _coords_element(kind, [exact_div(-v, x.alpha, domain.integral) for v in image.coordinates()], domain)
    return GroupWord((Phi(C), Psi(D)))


def lcomp_move(x: FreudenthalElement, slot: int, c) -> FreudenthalElement:
    """Slot 3: (alpha, beta - 2(a1 a2/alpha)c, diag(a1, a2, a3 + beta c - (a1 a2/alpha)c^2), 0)."""
    return lcomp_word(x, slot, c).apply(x)


# -- invariants ------------------------------------------------------


def _q_entries(x: FreudenthalElement):
    return [v for row in q_operator(x) for v in row]


def invariants(x: FreudenthalElement) -> InvariantVector:
    validate_int_domain(x.domain, "invariants")
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    d2_values = [3 * a * b - trace_form(A, B)]
    d2_values += [2 * v for v in (A.scale(a) - sharp(B)).coordinates()]
    d2_values += [2 * v for v in (B.scale(b) - sharp(A)).coordinates()]
    d2_values += [2 * v for v in _q_entries(x)]
    return InvariantVector(
        content(x),
        gcd_all(d2_values),
        gcd_all(t_xxx(x).coordinates()),
        quartic_qprime(x),
    )


def d2_prime(x: FreudenthalElement) -> int:
    """gcd(alpha A - B#, beta B - A#, Q(x)); finer than d2, invariance checked empirically."""
    validate_int_domain(x.domain, "d2_prime")
    values = list((x.A.scale(x.alpha) - sharp(x.B)).coordinates())
    values += list((x.B.scale(x.beta) - sharp(x.A)).coordinates())
    values += _q_entries(x)
    return gcd_all(values)


# -- projectivity ----------------------------------------------------


def projective_forms(x: FreudenthalElement) -> Tuple[BinaryQuadraticForm, ...]:
    return display_forms(x)


def _reduced_criterion(x: FreudenthalElement) -> bool:
    a, b, d = x.alpha, x.beta, x.A.diag
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if gcd_all((a * d[i], a * b, d[j] * d[k])) != 1:
            return False
    return True


def projectivity_report(x: FreudenthalElement) -> ProjectivityReport:
    validate_int_domain(x.domain, "is_projective")
    t = t_xxx(x)
    g = gcd_all(t.coordinates())
    if x.kind is JordanKind.DIAG3:
        return ProjectivityReport(all(f.is_primitive() for f in projective_forms(x)), g)
    if g == 1:
        return ProjectivityReport(True, g)
    if g != 2:
        return ProjectivityReport(False, g)
    validate_kind_in(x.kind, REDUCIBLE_KINDS, "is_projective")
    logger.warning("gcd T(x,x,x) = 2: projectivity read off one diagonal reduced representative")
    return ProjectivityReport(_reduced_criterion(reduce_diagonal(x).element), g, True)


def is_projective(x: FreudenthalElement) -> bool:
    return projectivity_report(x).projective


def _normalize_int(r: _Reducer) -> None:
    if r.x.kind is JordanKind.DIAG3:
        return
    _, s = diagonalize(r.x.A)
    if s.moves:
        r.push(Struct(s))


def _embed_element(x: FreudenthalElement, target: JordanKind) -> FreudenthalElement:
    return FreudenthalElement(x.alpha, x.beta, embed_jordan(x.A, target), embed_jordan(x.B, target))


def _raise_entry_to_one(r: _Reducer, index: int) -> None:
    for _ in range(4):
        if r.x.A.diag[index] == 1:
            return
        r.push_word(lcomp_word(r.x, 3, 1))
        _normalize_int(r)
    if r.x.A.diag[index] != 1:
        raise InvariantError(f"Could not bring a_{index + 1} to 1; is the element projective?")


def projective_canonicalize(x: FreudenthalElement) -> Tuple[int, int, GroupWord]:
    """(eps, k, witness) with witness . x = (1, eps, diag(1, 1, k), 0) and 4k + eps^2 = q'(x).

    Diag3 elements are worked on inside H3B, so their witness is an H3B word.
    """
    if not is_projective(x):
        raise PreconditionError("projective_canonicalize needs a projective element.")
    work = _embed_element(x, JordanKind.H3B) if x.kind is JordanKind.DIAG3 else x
    red = reduce_diagonal(work)
    r = _Reducer(red.element, red.witness.gens)
    _normalize_int(r)
    _raise_entry_to_one(r, 0)
    _raise_entry_to_one(r, 1)
    c = r.x.beta // 2
    if c:
        r.push_word(lcomp_word(r.x, 3, c))
    eps, k = r.x.beta, r.x.A.diag[2]
    expected = FreudenthalElement.reduced(r.x.kind, 1, eps, (1, 1, k), r.x.domain)
    if r.x != expected or 4 * k + eps * eps != quartic_qprime(x):
        raise InvariantError(f"Projective reduction ended at {r.x.coordinates()}.")
    return eps, k, r.word


# -- degenerate orbits and labels ------------------------------------


def _degenerate_canonical(x: FreudenthalElement, x_rank: int) -> Tuple[FreudenthalElement, GroupWord]:
    red = reduce_diagonal(x)
    r = _Reducer(red.element, red.witness.gens)
    if x_rank == 2:
        if x.kind is JordanKind.DIAG3:
            a = r.x.A.diag
            index = next(i for i, v in enumerate(a) if v != 0)
            if index:
                r.push(Struct(StructureMap(x.kind, (Permute.swap(0, index),), x.domain)))
            if r.x.A.diag[0] < 0:
                r.push(Struct(StructureMap(x.kind, (unit_move(x.kind, (-1, -1, 1), x.domain),), x.domain)))
        else:
            _normalize_int(r)
    d1 = content(x)
    if x_rank == 1:
        expected = FreudenthalElement.reduced(x.kind, d1, 0, (0, 0, 0), x.domain)
    else:
        m = exact_div(invariants(x).d2, 2 * d1)
        expected = FreudenthalElement.reduced(x.kind, d1, 0, (m, 0, 0), x.domain)
    if r.x != expected:
        raise InvariantError(f"Rank {x_rank} reduction ended at {r.x.coordinates()}.")
    return expected, r.word


def classify_orbit(x: FreudenthalElement) -> OrbitLabel:
    validate_int_domain(x.domain, "classify_orbit")
    x_rank = rank(x)
    if x_rank == 0:
        return OrbitLabel("Rank0", representative=x)
    if x.kind not in REDUCIBLE_KINDS:
        inv = invariants(x)
        return OrbitLabel("Unclassified", d1=inv.d1, invariants=inv)
    if x_rank == 1:
        rep, _ = _degenerate_canonical(x, 1)
        return OrbitLabel("Rank1", d1=rep.alpha, representative=rep)
    if x_rank == 2:
        rep, _ = _degenerate_canonical(x, 2)
        return OrbitLabel("Rank2", d1=rep.alpha, m=rep.A.diag[0], representative=rep)
    if is_projective(x):
        eps, k, _ = projective_canonicalize(x)
        rep = FreudenthalElement.reduced(x.kind, 1, eps, (1, 1, k), x.domain)
        return OrbitLabel("Projective", epsilon=eps, k=k, representative=rep)
    rep = reduce_diagonal(x).element
    inv = invariants(x)
    return OrbitLabel("Unclassified", d1=inv.d1, invariants=inv, representative=rep)


def connect(x: FreudenthalElement, y: FreudenthalElement) -> GroupWord:
    """A word w with w . x = y, when both reach the same canonical representative."""
    validate_same_kind(x.kind, y.kind)
    validate_int_domain(x.domain, "connect")

    def canonical(z):
        z_rank = rank(z)
        if z_rank == 0:
            return z, GroupWord()
        if z_rank <= 2:
            return _degenerate_canonical(z, z_rank)
        if z.kind is JordanKind.DIAG3:
            raise PreconditionError("Projective Diag3 orbits are not transitive; connect works on H3B, H3H, H3O.")
        if not is_projective(z):
            raise PreconditionError("connect needs degenerate or projective elements.")
        eps, k, word = projective_canonicalize(z)
        return FreudenthalElement.reduced(z.kind, 1, eps, (1, 1, k), z.domain), word

    rep_x, word_x = canonical(x)
    rep_y, word_y = canonical(y)
    if rep_x != rep_y:
        raise PreconditionError("The two elements lie in different orbits.")
    return word_x + word_y.inverse()


# -- discriminants ---------------------------------------------------


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental_discriminant(n: int) -> bool:
    """n = 1, squarefree n = 1 mod 4, or n = 4m with m squarefree and m = 2, 3 mod 4."""
    if n == 0:
        return False
    if n % 4 == 1:
        return _squarefree(n)
    if n % 4 == 0:
        m = n // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_discriminants(bound: int) -> List[int]:
    return [n for n in range(-bound, bound + 1) if is_fundamental_discriminant(n)]


# -- field case ------------------------------------------------------


def _normalize_field(r: _Reducer) -> None:
    d, s = diagonalize(r.x.A)
    if s.moves:
        r.push(Struct(s))
    nonzero = sum(1 for v in d if v != 0)
    if nonzero >= 2:
        norms = (1 / d[0], 1 / d[1], d[0] * d[1])
    elif nonzero == 1:
        norms = (1 / d[0], d[0], 1)
    else:
        return
    if any(n != 1 for n in norms):
        move = unit_move(r.x.kind, norms, r.x.domain)
        r.push(Struct(StructureMap(r.x.kind, (move,), r.x.domain)))


def field_canonicalize(x: FreudenthalElement) -> Tuple[FreudenthalElement, GroupWord]:
    """(1,0,0,0), (1,0,diag(1,0,0),0), (1,0,diag(1,1,0),0) or (1,0,diag(1,1,k),0) with k = -q/8."""
    validate_rat_domain(x.domain, "field_canonicalize")
    validate_kind_in(x.kind, SMITH_KINDS, "field_canonicalize")
    validate_nonzero(x, "The element to canonicalize")
    kind, domain = x.kind, x.domain
    r = _Reducer(x)
    if not (r.x.alpha == 1 and r.x.B.is_zero()):
        if r.x.B.is_zero():
            if r.x.A.is_zero():
                if r.x.alpha == 0:
                    r.push(Tau())
                r.push(Psi(JordanElement.unit(kind, domain)))
            else:
                r.push(Tau())
        B = r.x.B
        for C in rank_one_basis(kind, domain):
            value = trace_form(B, C)
            if value != 0:
                break
        c = (1 - r.x.alpha) / Fraction(value)
        if c:
            r.push(Phi(C.scale(c)))
        r.push(Psi(-r.x.B))
    _normalize_field(r)
    beta = r.x.beta
    if beta != 0:
        if jrank(r.x.A) <= 1:
            r.push_word(lcomp_word(r.x, 2, 1 / Fraction(beta)))
            if r.x.A.diag[0] == 0:
                r.push_word(lcomp_word(r.x, 1, 1 / Fraction(beta)))
        r.push_word(lcomp_word(r.x, 3, Fraction(r.x.beta) / 2))
        _normalize_field(r)
    d = r.x.A.diag
    patterns = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, d[2])]
    if r.x.alpha != 1 or r.x.beta != 0 or not r.x.B.is_zero() or tuple(d) not in patterns or not r.x.A.is_diagonal():
        raise InvariantError(f"Field reduction ended at {r.x.coordinates()}.")
    if d[2] != 0 and d[2] != -quartic_q(x) / 8:
        raise InvariantError(f"Field reduction gave k={d[2]}, expected {-quartic_q(x) / 8}.")
    return r.x, r.word
