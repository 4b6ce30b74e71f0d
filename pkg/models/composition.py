"""
Split composition algebras F, B, H and O with exact coordinates.

Coordinate conventions:

    F  (a,)                 the scalars themselves, n(a) = a^2
    B  (a, d)               the diagonal pair diag(a, d)
    H  (a, b, c, d)         the 2x2 matrix [[a, b], [c, d]], row-major
    O  (p0..p3, r0..r3)     p + r*v with p, r quaternions, first then second

The octonion product is the doubling rule
(p + r v)(s + t v) = (p s - t' r) + (t p + r s') v, where ' is conjugation.
"""

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from utils.errors import DomainError
from utils.helpers import random_scalar


class ScalarDomain(Enum):
    INT = "int"
    RAT = "rat"

    @property
    def integral(self) -> bool:
        return self is ScalarDomain.INT

    def coerce(self, value):
        """Bring a raw number into this domain (ints stay ints over INT)."""
        if self is ScalarDomain.INT:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise DomainError(f"{value} is not an integer.")
                return int(value)
            return value
        if isinstance(value, int):
            return Fraction(value)
        return value


class Algebra(Enum):
    """The four split composition algebras; the value is the dimension."""

    F = 1
    B = 2
    H = 4
    O = 8

    @property
    def dim(self) -> int:
        return self.value


# Embedding chain F -> B -> H -> O.
_NEXT = {Algebra.F: Algebra.B, Algebra.B: Algebra.H, Algebra.H: Algebra.O}


def _qmul(p, q):
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _qconj(p):
    a, b, c, d = p
    return (d, -b, -c, a)


def _qadd(p, q):
    return tuple(x + y for x, y in zip(p, q))


def _qsub(p, q):
    return tuple(x - y for x, y in zip(p, q))


def _qdet(p):
    a, b, c, d = p
    return a * d - b * c


def _mul_coords(algebra: Algebra, x, y):
    if algebra is Algebra.F:
        return (x[0] * y[0],)
    if algebra is Algebra.B:
        return (x[0] * y[0], x[1] * y[1])
    if algebra is Algebra.H:
        return _qmul(x, y)
    p, r = x[:4], x[4:]
    s, t = y[:4], y[4:]
    first = _qsub(_qmul(p, s), _qmul(_qconj(t), r))
    second = _qadd(_qmul(t, p), _qmul(r, _qconj(s)))
    return first + second


def _conj_coords(algebra: Algebra, x):
    if algebra is Algebra.F:
        return tuple(x)
    if algebra is Algebra.B:
        return (x[1], x[0])
    if algebra is Algebra.H:
        return _qconj(x)
    return _qconj(x[:4]) + tuple(-v for v in x[4:])


def _norm_coords(algebra: Algebra, x):
    if algebra is Algebra.F:
        return x[0] * x[0]
    if algebra is Algebra.B:
        return x[0] * x[1]
    if algebra is Algebra.H:
        return _qdet(x)
    return _qdet(x[:4]) + _qdet(x[4:])


def _trace_coords(algebra: Algebra, x):
    if algebra is Algebra.F:
        return 2 * x[0]
    if algebra is Algebra.B:
        return x[0] + x[1]
    if algebra is Algebra.H:
        return x[0] + x[3]
    return x[0] + x[3]


@dataclass(frozen=True)
class CompositionElement:
    """Element of a split composition ring.

    The constructor does not check coordinate types, so symbolic
    coordinates pass through for polynomial-identity checks. Use the
    module factories for validated construction.
    """

    algebra: Algebra
    coords: Tuple
    domain: ScalarDomain = ScalarDomain.INT

    def _check(self, other: "CompositionElement") -> None:
        if not isinstance(other, CompositionElement):
            raise DomainError(f"Expected a composition element, got {type(other).__name__}.")
        if other.algebra is not self.algebra:
            raise DomainError(
                f"Cannot combine elements of {self.algebra.name} and {other.algebra.name}."
            )
        if other.domain is not self.domain:
            raise DomainError("Cannot combine integer and rational elements.")

    def __add__(self, other: "CompositionElement") -> "CompositionElement":
        self._check(other)
        return CompositionElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)), self.domain
        )

    def __sub__(self, other: "CompositionElement") -> "CompositionElement":
        self._check(other)
        return CompositionElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)), self.domain
        )

    def __neg__(self) -> "CompositionElement":
        return CompositionElement(self.algebra, tuple(-a for a in self.coords), self.domain)

    def __mul__(self, other):
        if isinstance(other, CompositionElement):
            return comp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, k) -> "CompositionElement":
        return CompositionElement(self.algebra, tuple(k * a for a in self.coords), self.domain)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def conj(self) -> "CompositionElement":
        return comp_conj(self)

    def norm(self):
        return comp_norm(self)

    def trace(self):
        return comp_trace(self)


def comp_mul(x: CompositionElement, y: CompositionElement) -> CompositionElement:
    """Product x*y; mixed algebras or domains raise DomainError."""
    x._check(y)
    return CompositionElement(x.algebra, _mul_coords(x.algebra, x.coords, y.coords), x.domain)


def comp_conj(x: CompositionElement) -> CompositionElement:
    return CompositionElement(x.algebra, _conj_coords(x.algebra, x.coords), x.domain)


def comp_norm(x: CompositionElement):
    return _norm_coords(x.algebra, x.coords)


def comp_trace(x: CompositionElement):
    return _trace_coords(x.algebra, x.coords)


def element(algebra: Algebra, coords: Sequence, domain: ScalarDomain = ScalarDomain.INT) -> CompositionElement:
    """Validated factory."""
    coords = tuple(coords)
    if len(coords) != algebra.dim:
        raise DomainError(
            f"{algebra.name} needs {algebra.dim} coordinates, got {len(coords)}."
        )
    return CompositionElement(algebra, tuple(domain.coerce(c) for c in coords), domain)


def zero(algebra: Algebra, domain: ScalarDomain = ScalarDomain.INT) -> CompositionElement:
    return CompositionElement(algebra, tuple(domain.coerce(0) for _ in range(algebra.dim)), domain)


def one(algebra: Algebra, domain: ScalarDomain = ScalarDomain.INT) -> CompositionElement:
    """Multiplicative identity."""
    coords = {
        Algebra.F: (1,),
        Algebra.B: (1, 1),
        Algebra.H: (1, 0, 0, 1),
        Algebra.O: (1, 0, 0, 1, 0, 0, 0, 0),
    }[algebra]
    return element(algebra, coords, domain)


def basis(algebra: Algebra, domain: ScalarDomain = ScalarDomain.INT) -> List[CompositionElement]:
    """Standard coordinate basis (every vector has norm zero except in F)."""
    result = []
    for k in range(algebra.dim):
        coords = [0] * algebra.dim
        coords[k] = 1
        result.append(element(algebra, coords, domain))
    return result


def idempotents(algebra: Algebra, domain: ScalarDomain = ScalarDomain.INT) -> Tuple[CompositionElement, CompositionElement]:
    """The pair e1, e2 with e1 + e2 = 1 and n(e1) = n(e2) = 0."""
    if algebra is Algebra.F:
        raise DomainError("F has no nontrivial idempotents.")
    coords = {
        Algebra.B: ((1, 0), (0, 1)),
        Algebra.H: ((1, 0, 0, 0), (0, 0, 0, 1)),
        Algebra.O: ((1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0, 0)),
    }[algebra]
    return element(algebra, coords[0], domain), element(algebra, coords[1], domain)


def binarion(algebra: Algebra, a, d, domain: ScalarDomain = ScalarDomain.INT) -> CompositionElement:
    """The element a*e1 + d*e2 of the binarion subring of a B, H or O algebra."""
    e1, e2 = idempotents(algebra, domain)
    return e1.scale(domain.coerce(a)) + e2.scale(domain.coerce(d))


def in_binarion_subring(x: CompositionElement) -> bool:
    if x.algebra is Algebra.F:
        return True
    e1, e2 = idempotents(x.algebra, x.domain)
    a = comp_trace(comp_mul(x, e1))
    d = comp_trace(comp_mul(x, e2))
    return x == e1.scale(a) + e2.scale(d)


def embed(x: CompositionElement, target: Algebra) -> CompositionElement:
    """Map x along F -> B -> H -> O; an injective algebra homomorphism."""
    current = x
    while current.algebra is not target:
        if current.algebra not in _NEXT or current.algebra.dim > target.dim:
            raise DomainError(f"Cannot embed {x.algebra.name} into {target.name}.")
        c = current.coords
        if current.algebra is Algebra.F:
            coords = (c[0], c[0])
        elif current.algebra is Algebra.B:
            coords = (c[0], 0 * c[0], 0 * c[0], c[1])
        else:
            coords = tuple(c) + tuple(0 * v for v in c)
        current = CompositionElement(_NEXT[current.algebra], coords, current.domain)
    return current


def inverse(x: CompositionElement) -> CompositionElement:
    """x^-1 = conj(x)/n(x); over INT only units of norm +-1 are invertible."""
    n = comp_norm(x)
    if n == 0:
        raise DomainError("Element of norm zero is not invertible.")
    if x.domain.integral:
        if n not in (1, -1):
            raise DomainError(f"Element of norm {n} is not a unit over the integers.")
        return comp_conj(x).scale(n)
    return comp_conj(x).scale(Fraction(1) / n)


def _trace_pairing(algebra: Algebra) -> List[Tuple[int, int]]:
    """For each basis vector e_k: (index, coefficient) with t(e_k * w) = coefficient * w[index]."""
    table = []
    dim = algebra.dim
    for k in range(dim):
        ek = [0] * dim
        ek[k] = 1
        hits = []
        for m in range(dim):
            em = [0] * dim
            em[m] = 1
            value = _trace_coords(algebra, _mul_coords(algebra, ek, em))
            if value:
                hits.append((m, value))
        # each row of the pairing picks out a single coordinate
        assert len(hits) == 1, (algebra, k, hits)
        table.append(hits[0])
    return table


TRACE_PAIRING: Dict[Algebra, List[Tuple[int, int]]] = {
    algebra: _trace_pairing(algebra) for algebra in Algebra
}


def multiplication_table(algebra: Algebra = Algebra.O) -> List[List[Tuple[int, ...]]]:
    """table[i][j] = coordinates of e_i * e_j, derived from the pair formula."""
    dim = algebra.dim
    rows = []
    for i in range(dim):
        ei = [0] * dim
        ei[i] = 1
        row = []
        for j in range(dim):
            ej = [0] * dim
            ej[j] = 1
            row.append(tuple(_mul_coords(algebra, ei, ej)))
        rows.append(row)
    return rows


def random_element(
    algebra: Algebra,
    rng: random.Random,
    height: int = 10,
    domain: ScalarDomain = ScalarDomain.INT,
) -> CompositionElement:
    """Coordinates drawn uniformly from [-height, height]."""
    return element(algebra, [random_scalar(rng, height) for _ in range(algebra.dim)], domain)


# Stored witness that O is not associative: (e12 e21) v != e12 (e21 v).
NON_ASSOCIATIVE_WITNESS = (
    (0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 1),
)
