"""
Cubic Jordan algebras: the diagonal algebra Z+Z+Z and the Hermitian
algebras H3(C) for C in {F, B, H, O}.

Hermitian layout::

    [[a,  z,  y'],
     [z', b,  x ],
     [y,  x', c ]]

x sits opposite row/column 1, y opposite 2, z opposite 3 (' is
conjugation). The grid accessor returns the nine entries in this layout.
"""

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from models.composition import (
    Algebra,
    CompositionElement,
    ScalarDomain,
    comp_conj,
    comp_mul,
    comp_norm,
    comp_trace,
    embed,
    random_element,
    zero as comp_zero,
)
from utils.errors import DomainError
from utils.helpers import random_scalar


class JordanKind(Enum):
    DIAG3 = "Diag3"
    H3F = "H3F"
    H3B = "H3B"
    H3H = "H3H"
    H3O = "H3O"

    @property
    def algebra(self) -> Optional[Algebra]:
        return {
            JordanKind.DIAG3: None,
            JordanKind.H3F: Algebra.F,
            JordanKind.H3B: Algebra.B,
            JordanKind.H3H: Algebra.H,
            JordanKind.H3O: Algebra.O,
        }[self]

    @property
    def dim(self) -> int:
        if self is JordanKind.DIAG3:
            return 3
        return 3 + 3 * self.algebra.dim

    @property
    def module_dim(self) -> int:
        """Dimension of the Freudenthal module F+F+J+J."""
        return 2 + 2 * self.dim

    @property
    def hermitian(self) -> bool:
        return self is not JordanKind.DIAG3

    @classmethod
    def parse(cls, raw: str) -> "JordanKind":
        for kind in cls:
            if kind.value.lower() == str(raw).strip().lower():
                return kind
        allowed = ", ".join(k.value for k in cls)
        raise DomainError(f"Unknown Jordan kind {raw!r}; expected one of: {allowed}.")


@dataclass(frozen=True)
class JordanElement:
    kind: JordanKind
    diag: Tuple
    off: Optional[Tuple[CompositionElement, CompositionElement, CompositionElement]] = None
    domain: ScalarDomain = ScalarDomain.INT

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> "JordanElement":
        return cls.diagonal(kind, (0, 0, 0), domain)

    @classmethod
    def unit(cls, kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> "JordanElement":
        return cls.diagonal(kind, (1, 1, 1), domain)

    @classmethod
    def diagonal(cls, kind: JordanKind, values: Sequence, domain: ScalarDomain = ScalarDomain.INT) -> "JordanElement":
        values = tuple(domain.coerce(v) for v in values)
        if len(values) != 3:
            raise DomainError("A diagonal needs exactly three entries.")
        if kind is JordanKind.DIAG3:
            return cls(kind, values, None, domain)
        z = comp_zero(kind.algebra, domain)
        return cls(kind, values, (z, z, z), domain)

    @classmethod
    def hermitian_element(cls, kind: JordanKind, diag: Sequence, off: Sequence[CompositionElement],
                          domain: ScalarDomain = ScalarDomain.INT) -> "JordanElement":
        if kind is JordanKind.DIAG3:
            raise DomainError("Diag3 elements have no off-diagonal entries.")
        off = tuple(off)
        if len(off) != 3 or any(o.algebra is not kind.algebra or o.domain is not domain for o in off):
            raise DomainError(f"{kind.value} needs three {kind.algebra.name} entries over {domain.value}.")
        return cls(kind, tuple(domain.coerce(v) for v in diag), off, domain)

    @classmethod
    def from_coordinates(cls, kind: JordanKind, coords: Sequence,
                         domain: ScalarDomain = ScalarDomain.INT) -> "JordanElement":
        """Inverse of ``coordinates``: diagonal first, then x, y, z."""
        coords = tuple(coords)
        if len(coords) != kind.dim:
            raise DomainError(f"{kind.value} has {kind.dim} coordinates, got {len(coords)}.")
        if kind is JordanKind.DIAG3:
            return cls(kind, coords, None, domain)
        d = kind.algebra.dim
        off = tuple(
            CompositionElement(kind.algebra, coords[3 + i * d:3 + (i + 1) * d], domain)
            for i in range(3)
        )
        return cls(kind, coords[:3], off, domain)

    @classmethod
    def from_grid(cls, kind: JordanKind, grid, domain: ScalarDomain) -> "JordanElement":
        diag = (grid[0][0], grid[1][1], grid[2][2])
        if kind is JordanKind.DIAG3:
            return cls(kind, diag, None, domain)
        return cls(kind, diag, (grid[1][2], grid[2][0], grid[0][1]), domain)

    # -- access -------------------------------------------------------

    def coordinates(self) -> Tuple:
        if self.off is None:
            return tuple(self.diag)
        return tuple(self.diag) + self.off[0].coords + self.off[1].coords + self.off[2].coords

    def grid(self) -> List[list]:
        """3x3 array in the Hermitian layout (scalars on the diagonal)."""
        if self.off is None:
            raise DomainError("Diag3 elements have no Hermitian grid.")
        a, b, c = self.diag
        x, y, z = self.off
        return [
            [a, z, comp_conj(y)],
            [comp_conj(z), b, x],
            [y, comp_conj(x), c],
        ]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coordinates())

    def is_diagonal(self) -> bool:
        return self.off is None or all(o.is_zero() for o in self.off)

    # -- vector space -------------------------------------------------

    def _check(self, other: "JordanElement") -> None:
        if not isinstance(other, JordanElement):
            raise DomainError(f"Expected a Jordan element, got {type(other).__name__}.")
        if other.kind is not self.kind:
            raise DomainError(f"Cannot combine {self.kind.value} with {other.kind.value}.")
        if other.domain is not self.domain:
            raise DomainError("Cannot combine integer and rational elements.")

    def _zip(self, other, op) -> "JordanElement":
        self._check(other)
        diag = tuple(op(a, b) for a, b in zip(self.diag, other.diag))
        if self.off is None:
            return JordanElement(self.kind, diag, None, self.domain)
        off = tuple(
            CompositionElement(u.algebra, tuple(op(p, q) for p, q in zip(u.coords, v.coords)), self.domain)
            for u, v in zip(self.off, other.off)
        )
        return JordanElement(self.kind, diag, off, self.domain)

    def __add__(self, other: "JordanElement") -> "JordanElement":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "JordanElement") -> "JordanElement":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "JordanElement":
        return self.scale(-1)

    def scale(self, k) -> "JordanElement":
        diag = tuple(k * a for a in self.diag)
        off = None if self.off is None else tuple(o.scale(k) for o in self.off)
        return JordanElement(self.kind, diag, off, self.domain)

    def __rmul__(self, k) -> "JordanElement":
        return self.scale(k)


# -- Springer operations ---------------------------------------------


def jnorm(A: JordanElement):
    """Cubic norm N(A)."""
    a, b, c = A.diag
    if A.off is None:
        return a * b * c
    x, y, z = A.off
    return (
        a * b * c
        - a * comp_norm(x)
        - b * comp_norm(y)
        - c * comp_norm(z)
        + comp_trace(comp_mul(comp_mul(x, y), z))
    )


def sharp(A: JordanElement) -> JordanElement:
    """Quadratic adjoint A#, with (A#)# = N(A) A."""
    a, b, c = A.diag
    if A.off is None:
        return JordanElement(A.kind, (b * c, c * a, a * b), None, A.domain)
    x, y, z = A.off
    diag = (b * c - comp_norm(x), c * a - comp_norm(y), a * b - comp_norm(z))
    xs = comp_mul(comp_conj(z), comp_conj(y)) - x.scale(a)
    ys = comp_mul(comp_conj(x), comp_conj(z)) - y.scale(b)
    zs = comp_mul(comp_conj(y), comp_conj(x)) - z.scale(c)
    return JordanElement(A.kind, diag, (xs, ys, zs), A.domain)


def cross(A: JordanElement, B: JordanElement) -> JordanElement:
    """A x B = (A+B)# - A# - B#."""
    A._check(B)
    return sharp(A + B) - sharp(A) - sharp(B)


def jtrace(A: JordanElement):
    return sum(A.diag)


def trace_form(A: JordanElement, B: JordanElement):
    """(A, B) = sum a_i a'_i + sum t(x x'^*) over the off-diagonal slots."""
    A._check(B)
    total = sum(p * q for p, q in zip(A.diag, B.diag))
    if A.off is not None:
        for u, v in zip(A.off, B.off):
            total += comp_trace(comp_mul(u, comp_conj(v)))
    return total


def spur(A: JordanElement):
    """S(A) = tr(A#)."""
    return jtrace(sharp(A))


def spur_bilinear(A: JordanElement, B: JordanElement):
    """S(A, B) = tr(A x B)."""
    return jtrace(cross(A, B))


def triple_doubled(X: JordanElement, Y: JordanElement, Z: JordanElement) -> JordanElement:
    """2{X, Y, Z} = (X,Y) Z + (Z,Y) X - (X x Z) x Y; integral on integral input."""
    X._check(Y)
    X._check(Z)
    return Z.scale(trace_form(X, Y)) + X.scale(trace_form(Z, Y)) - cross(cross(X, Z), Y)


def jordan_product(X: JordanElement, Y: JordanElement) -> JordanElement:
    """X . Y = 1/2 (X x Y + tr(X) Y + tr(Y) X - S(X, Y) 1); rational scalars only."""
    X._check(Y)
    if X.domain is not ScalarDomain.RAT:
        raise DomainError("The Jordan product divides by 2 and needs --scalars rat.")
    unit = JordanElement.unit(X.kind, X.domain)
    doubled = cross(X, Y) + Y.scale(jtrace(X)) + X.scale(jtrace(Y)) - unit.scale(spur_bilinear(X, Y))
    return doubled.scale(Fraction(1, 2))


def jrank(A: JordanElement) -> int:
    if jnorm(A) != 0:
        return 3
    if not sharp(A).is_zero():
        return 2
    if not A.is_zero():
        return 1
    return 0


# -- bases, embeddings and the matrix model --------------------------


def standard_basis(kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> List[JordanElement]:
    result = []
    for k in range(kind.dim):
        coords = [0] * kind.dim
        coords[k] = 1
        result.append(JordanElement.from_coordinates(kind, [domain.coerce(v) for v in coords], domain))
    return result


def rank_one_basis(kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> List[JordanElement]:
    """Standard basis of J, all of whose members have rank one (not available for H3F)."""
    if kind is JordanKind.H3F:
        raise DomainError("H3F has no rank-one coordinate basis.")
    return standard_basis(kind, domain)


def diag_unit_vector(kind: JordanKind, i: int, value=1, domain: ScalarDomain = ScalarDomain.INT) -> JordanElement:
    """value * E_ii."""
    values = [0, 0, 0]
    values[i] = value
    return JordanElement.diagonal(kind, values, domain)


def off_vector(kind: JordanKind, slot: int, c: CompositionElement) -> JordanElement:
    """Element whose only nonzero entry is c in off-diagonal slot (0 = x, 1 = y, 2 = z)."""
    base = JordanElement.zero(kind, c.domain)
    off = list(base.off)
    off[slot] = c
    return JordanElement(kind, base.diag, tuple(off), c.domain)


def embed_jordan(A: JordanElement, target: JordanKind) -> JordanElement:
    """Diag3 -> H3F as diagonal matrices, and H3(C) -> H3(C') entrywise."""
    if A.kind is target:
        return A
    if target is JordanKind.DIAG3:
        raise DomainError("Nothing embeds into Diag3.")
    if A.kind is JordanKind.DIAG3:
        return JordanElement.diagonal(target, A.diag, A.domain)
    if A.kind.algebra.dim > target.algebra.dim:
        raise DomainError(f"Cannot embed {A.kind.value} into {target.value}.")
    off = tuple(embed(o, target.algebra) for o in A.off)
    return JordanElement(target, A.diag, off, A.domain)


def to_matrix(A: JordanElement) -> List[List]:
    """H3B -> 3x3 matrix: M[r][s] is the first coordinate of the (r, s) entry."""
    if A.kind is not JordanKind.H3B:
        raise DomainError("The matrix model exists only for H3B.")
    g = A.grid()
    return [[g[r][s] if r == s else g[r][s].coords[0] for s in range(3)] for r in range(3)]


def from_matrix(M: Sequence[Sequence], domain: ScalarDomain = ScalarDomain.INT) -> JordanElement:
    """Inverse of ``to_matrix``."""
    M = [[domain.coerce(v) for v in row] for row in M]

    def entry(r, s):
        return CompositionElement(Algebra.B, (M[r][s], M[s][r]), domain)

    return JordanElement(JordanKind.H3B, (M[0][0], M[1][1], M[2][2]), (entry(1, 2), entry(2, 0), entry(0, 1)), domain)


def random_jordan(kind: JordanKind, rng: random.Random, height: int = 10,
                  domain: ScalarDomain = ScalarDomain.INT) -> JordanElement:
    diag = [random_scalar(rng, height) for _ in range(3)]
    if kind is JordanKind.DIAG3:
        return JordanElement.diagonal(kind, diag, domain)
    off = [random_element(kind.algebra, rng, height, domain) for _ in range(3)]
    return JordanElement.hermitian_element(kind, diag, off, domain)
