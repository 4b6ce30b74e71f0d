"""
The Freudenthal module M(J) = F + F + J + J.

An element is written x = (alpha, beta, A, B). This module houses the
symplectic form, the quartic forms q' and q = -2q', the trilinear
contraction T(x, x, x), the quadratic rank data, and the group
generators phi, psi, T(s) and tau together with words over them.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from models.composition import ScalarDomain
from models.jordan import (
    JordanElement,
    JordanKind,
    cross,
    jnorm,
    random_jordan,
    sharp,
    standard_basis,
    trace_form,
)
from models.structure import Congruence, DiagUnits, Permute, StructureMap, unit_move
from models.composition import random_element as random_comp
from utils.errors import DomainError
from utils.helpers import exact_div, gcd_all, random_scalar
from utils.validation import validate_same_domain, validate_same_kind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreudenthalElement:
    alpha: object
    beta: object
    A: JordanElement
    B: JordanElement

    @property
    def kind(self) -> JordanKind:
        return self.A.kind

    @property
    def domain(self) -> ScalarDomain:
        return self.A.domain

    @classmethod
    def zero(cls, kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> "FreudenthalElement":
        z = JordanElement.zero(kind, domain)
        return cls(domain.coerce(0), domain.coerce(0), z, z)

    @classmethod
    def build(cls, alpha, beta, A: JordanElement, B: JordanElement) -> "FreudenthalElement":
        """Validated constructor."""
        validate_same_kind(A.kind, B.kind)
        validate_same_domain(A.domain, B.domain)
        return cls(A.domain.coerce(alpha), A.domain.coerce(beta), A, B)

    @classmethod
    def reduced(cls, kind: JordanKind, alpha, beta, diag: Sequence,
                domain: ScalarDomain = ScalarDomain.INT) -> "FreudenthalElement":
        """(alpha, beta, diag(a1, a2, a3), 0)."""
        return cls.build(alpha, beta, JordanElement.diagonal(kind, diag, domain), JordanElement.zero(kind, domain))

    @classmethod
    def from_coordinates(cls, kind: JordanKind, coords: Sequence,
                         domain: ScalarDomain = ScalarDomain.INT) -> "FreudenthalElement":
        coords = tuple(coords)
        if len(coords) != kind.module_dim:
            raise DomainError(f"M({kind.value}) has {kind.module_dim} coordinates, got {len(coords)}.")
        d = kind.dim
        A = JordanElement.from_coordinates(kind, coords[2:2 + d], domain)
        B = JordanElement.from_coordinates(kind, coords[2 + d:], domain)
        return cls(coords[0], coords[1], A, B)

    def coordinates(self) -> Tuple:
        return (self.alpha, self.beta) + self.A.coordinates() + self.B.coordinates()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coordinates())

    def _check(self, other: "FreudenthalElement") -> None:
        if not isinstance(other, FreudenthalElement):
            raise DomainError(f"Expected a module element, got {type(other).__name__}.")
        validate_same_kind(self.kind, other.kind)
        validate_same_domain(self.domain, other.domain)

    def __add__(self, other: "FreudenthalElement") -> "FreudenthalElement":
        self._check(other)
        return FreudenthalElement(self.alpha + other.alpha, self.beta + other.beta, self.A + other.A, self.B + other.B)

    def __sub__(self, other: "FreudenthalElement") -> "FreudenthalElement":
        self._check(other)
        return FreudenthalElement(self.alpha - other.alpha, self.beta - other.beta, self.A - other.A, self.B - other.B)

    def __neg__(self) -> "FreudenthalElement":
        return self.scale(-1)

    def scale(self, k) -> "FreudenthalElement":
        return FreudenthalElement(k * self.alpha, k * self.beta, self.A.scale(k), self.B.scale(k))

    def __rmul__(self, k) -> "FreudenthalElement":
        return self.scale(k)

    def swapped(self) -> "FreudenthalElement":
        """x' = (beta, alpha, B, A)."""
        return FreudenthalElement(self.beta, self.alpha, self.B, self.A)


def module_basis(kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> List[FreudenthalElement]:
    result = []
    for k in range(kind.module_dim):
        coords = [domain.coerce(0)] * kind.module_dim
        coords[k] = domain.coerce(1)
        result.append(FreudenthalElement.from_coordinates(kind, coords, domain))
    return result


# -- forms -----------------------------------------------------------


def symplectic(x: FreudenthalElement, y: FreudenthalElement):
    """{x, y} = alpha delta - beta gamma + (A, D) - (B, C)."""
    x._check(y)
    return x.alpha * y.beta - x.beta * y.alpha + trace_form(x.A, y.B) - trace_form(x.B, y.A)


def quartic_qprime(x: FreudenthalElement):
    """q'(x) = ((A,B) - alpha beta)^2 - 4(A#, B#) + 4 alpha N(A) + 4 beta N(B)."""
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    core = trace_form(A, B) - a * b
    return core * core - 4 * trace_form(sharp(A), sharp(B)) + 4 * a * jnorm(A) + 4 * b * jnorm(B)


def quartic_q(x: FreudenthalElement):
    return -2 * quartic_qprime(x)


def t_xxx(x: FreudenthalElement) -> FreudenthalElement:
    """T(x, x, x) in closed form."""
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    AB = trace_form(A, B)
    As, Bs = sharp(A), sharp(B)
    first = -a * a * b + a * AB - 2 * jnorm(B)
    second = a * b * b - b * AB + 2 * jnorm(A)
    third = cross(B, As).scale(2) - Bs.scale(2 * b) - A.scale(AB - a * b)
    fourth = -cross(A, Bs).scale(2) + As.scale(2 * a) + B.scale(AB - a * b)
    return FreudenthalElement(first, second, third, fourth)


def t_polarized(x: FreudenthalElement, y: FreudenthalElement) -> FreudenthalElement:
    """3T(x, x, y) from the cubic t_xxx by polarization (rational scalars)."""
    x._check(y)
    plus = t_xxx(x + y)
    minus = t_xxx(x - y)
    twice = t_xxx(y).scale(2)
    return (plus - minus - twice).scale(Fraction(1, 2))


def apply_q_operator(x: FreudenthalElement, C: JordanElement) -> JordanElement:
    """Q(x)(C) = alpha beta C + (C, B) A - (A x C) x B."""
    return C.scale(x.alpha * x.beta) + x.A.scale(trace_form(C, x.B)) - cross(cross(x.A, C), x.B)


def q_operator(x: FreudenthalElement) -> Tuple[Tuple, ...]:
    """Matrix of Q(x) on the standard basis of J: column j holds Q(x)(e_j)."""
    columns = [apply_q_operator(x, e).coordinates() for e in standard_basis(x.kind, x.domain)]
    return tuple(tuple(col[r] for col in columns) for r in range(x.kind.dim))


def r1_form(x: FreudenthalElement, y: FreudenthalElement) -> FreudenthalElement:
    """3T(x, x, y) + {x, y} x in closed form; linear in y."""
    x._check(y)
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    g, d, C, D = y.alpha, y.beta, y.A, y.B
    lead = 3 * a * b - trace_form(A, B)
    u = A.scale(a) - sharp(B)
    w = B.scale(b) - sharp(A)
    first = -lead * g + 2 * trace_form(u, D)
    second = lead * d - 2 * trace_form(w, C)
    third = C.scale(lead) - cross(w, D).scale(2) + u.scale(2 * d) - apply_q_operator(x, C).scale(2)
    fourth = -D.scale(lead) + cross(u, C).scale(2) - w.scale(2 * g) + apply_q_operator(x.swapped(), D).scale(2)
    return FreudenthalElement(first, second, third, fourth)


def rank_polynomials(x: FreudenthalElement) -> Dict[str, object]:
    """Named rank data: the quartic, the cubic and the quadratic covariants."""
    a, b, A, B = x.alpha, x.beta, x.A, x.B
    return {
        "q": quartic_q(x),
        "t_xxx": t_xxx(x),
        "alpha_A_minus_B_sharp": A.scale(a) - sharp(B),
        "beta_B_minus_A_sharp": B.scale(b) - sharp(A),
        "q_operator": q_operator(x),
        "three_alpha_beta_minus_AB": 3 * a * b - trace_form(A, B),
    }


def rank(x: FreudenthalElement) -> int:
    if quartic_q(x) != 0:
        return 4
    if not t_xxx(x).is_zero():
        return 3
    data = rank_polynomials(x)
    quadratic = (
        not data["alpha_A_minus_B_sharp"].is_zero()
        or not data["beta_B_minus_A_sharp"].is_zero()
        or any(v != 0 for row in data["q_operator"] for v in row)
        or data["three_alpha_beta_minus_AB"] != 0
    )
    if quadratic:
        return 2
    return 1 if not x.is_zero() else 0


def content(x: FreudenthalElement) -> int:
    """gcd of all integer coordinates."""
    return gcd_all(x.coordinates())


def is_primitive(x: FreudenthalElement) -> bool:
    return content(x) == 1


# -- generators and words --------------------------------------------


@dataclass(frozen=True)
class Phi:
    C: JordanElement

    def apply(self, x: FreudenthalElement) -> FreudenthalElement:
        C, a, b, A, B = self.C, x.alpha, x.beta, x.A, x.B
        validate_same_kind(A.kind, C.kind)
        Cs = sharp(C)
        return FreudenthalElement(
            a + trace_form(B, C) + trace_form(A, Cs) + b * jnorm(C),
            b,
            A + C.scale(b),
            B + cross(A, C) + Cs.scale(b),
        )

    def inverse(self) -> Tuple["Phi"]:
        return (Phi(-self.C),)


@dataclass(frozen=True)
class Psi:
    D: JordanElement

    def apply(self, x: FreudenthalElement) -> FreudenthalElement:
        D, a, b, A, B = self.D, x.alpha, x.beta, x.A, x.B
        validate_same_kind(A.kind, D.kind)
        Ds = sharp(D)
        return FreudenthalElement(
            a,
            b + trace_form(A, D) + trace_form(B, Ds) + a * jnorm(D),
            A + cross(B, D) + Ds.scale(a),
            B + D.scale(a),
        )

    def inverse(self) -> Tuple["Psi"]:
        return (Psi(-self.D),)


@dataclass(frozen=True)
class Struct:
    """T(s): (alpha, beta, A, B) -> (alpha/lambda, lambda beta, s(A), s*^-1(B))."""

    s: StructureMap

    def apply(self, x: FreudenthalElement) -> FreudenthalElement:
        validate_same_kind(self.s.kind, x.kind)
        lam = self.s.multiplier
        integral = x.domain.integral
        if integral and lam == 0:
            raise DomainError("Structure map with zero multiplier.")
        alpha = exact_div(x.alpha, lam, integral)
        return FreudenthalElement(
            x.domain.coerce(alpha),
            x.domain.coerce(lam * x.beta),
            self.s.apply(x.A),
            self.s.adjoint_inverse().apply(x.B),
        )

    def inverse(self) -> Tuple["Struct"]:
        return (Struct(self.s.inverse()),)


@dataclass(frozen=True)
class Tau:
    def apply(self, x: FreudenthalElement) -> FreudenthalElement:
        return FreudenthalElement(-x.beta, x.alpha, -x.B, x.A)

    def inverse(self) -> Tuple["Tau", "Tau", "Tau"]:
        # tau^2 = -Id, so tau^-1 = tau^3
        return (Tau(), Tau(), Tau())


GroupGenerator = Union[Phi, Psi, Struct, Tau]


def apply_generator(g: GroupGenerator, x: FreudenthalElement) -> FreudenthalElement:
    return g.apply(x)


@dataclass(frozen=True)
class GroupWord:
    """Generators applied left to right."""

    gens: Tuple = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.gens + other.gens)

    def append(self, g: GroupGenerator) -> "GroupWord":
        return GroupWord(self.gens + (g,))

    def apply(self, x: FreudenthalElement) -> FreudenthalElement:
        for g in self.gens:
            x = g.apply(x)
        return x

    def inverse(self) -> "GroupWord":
        gens: List = []
        for g in reversed(self.gens):
            gens.extend(g.inverse())
        return GroupWord(tuple(gens))


def apply_word(w: GroupWord, x: FreudenthalElement) -> FreudenthalElement:
    return w.apply(x)


def minus_identity_word() -> GroupWord:
    return GroupWord((Tau(), Tau()))


# -- random data for tests, census and self-test ---------------------


def random_element(kind: JordanKind, rng: random.Random, height: int = 10,
                   domain: ScalarDomain = ScalarDomain.INT) -> FreudenthalElement:
    return FreudenthalElement(
        domain.coerce(random_scalar(rng, height)),
        domain.coerce(random_scalar(rng, height)),
        random_jordan(kind, rng, height, domain),
        random_jordan(kind, rng, height, domain),
    )


def random_norm_preserving_map(kind: JordanKind, rng: random.Random, height: int = 2,
                               domain: ScalarDomain = ScalarDomain.INT, moves: int = 2) -> StructureMap:
    """A short random word in Permute, sign units and (Hermitian) Congruence moves, multiplier 1."""
    catalog = []
    for _ in range(moves):
        choice = rng.randrange(3)
        if choice == 0:
            sigma = [0, 1, 2]
            rng.shuffle(sigma)
            catalog.append(Permute(tuple(sigma)))
        elif choice == 1 and kind is not JordanKind.H3F:
            signs = [-1, -1, 1]
            rng.shuffle(signs)
            catalog.append(unit_move(kind, signs, domain))
        elif kind.hermitian:
            i, j = rng.sample(range(3), 2)
            catalog.append(Congruence(i, j, random_comp(kind.algebra, rng, height, domain)))
        else:
            catalog.append(DiagUnits(tuple(domain.coerce(v) for v in (1, 1, 1))))
    return StructureMap(kind, tuple(catalog), domain)


def random_generator(kind: JordanKind, rng: random.Random, height: int = 2,
                     domain: ScalarDomain = ScalarDomain.INT) -> GroupGenerator:
    choice = rng.randrange(4)
    if choice == 0:
        return Phi(random_jordan(kind, rng, height, domain))
    if choice == 1:
        return Psi(random_jordan(kind, rng, height, domain))
    if choice == 2:
        return Struct(random_norm_preserving_map(kind, rng, height, domain))
    return Tau()


def random_word(kind: JordanKind, rng: random.Random, length: int = 5, height: int = 2,
                domain: ScalarDomain = ScalarDomain.INT) -> GroupWord:
    return GroupWord(tuple(random_generator(kind, rng, height, domain) for _ in range(length)))
