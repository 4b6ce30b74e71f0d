"""
Binary quadratic forms attached to a Diag3 element.

Two realizations are built: the slicing forms Q1, Q2, Q3 of the 2x2x2
cube (Q_i = -det(M_i x - N_i y)) and the rotation forms R1, R2, R3 read
off the diagonal of

    (alpha A - B#) x^2 - ((alpha beta - (A, B)) I + 2AB) xy + (beta B - A#) y^2

which equals diag(-R1, -R2, -R3). Under the cube map Q1 = R3, Q2 = R1 and
Q3 = R2, and every one of these forms has discriminant q'(x).
"""

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple

from models.composition import ScalarDomain
from models.freudenthal import FreudenthalElement
from models.isomorphisms import Cube, from_cube, to_cube
from models.jordan import JordanKind
from utils.errors import DomainError
from utils.helpers import gcd_all


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """a x^2 + b xy + c y^2."""

    a: object
    b: object
    c: object

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd_all((self.a, self.b, self.c))

    def is_primitive(self) -> bool:
        return self.content == 1

    def evaluate(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g: Sequence[Sequence]) -> "BinaryQuadraticForm":
        """f(px + qy, rx + sy) for g = [[p, q], [r, s]]."""
        (p, q), (r, s) = g
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __neg__(self) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(-self.a, -self.b, -self.c)

    def as_tuple(self) -> Tuple:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class LabeledCube:
    """The Diag3 element with its vertices named: alpha and beta sit on opposite corners."""

    alpha: object
    beta: object
    a: Tuple
    b: Tuple

    @classmethod
    def from_element(cls, x: FreudenthalElement) -> "LabeledCube":
        if x.kind is not JordanKind.DIAG3:
            raise DomainError(f"Labeled cubes come from Diag3 elements, not {x.kind.value}.")
        return cls(x.alpha, x.beta, tuple(x.A.diag), tuple(x.B.diag))

    @classmethod
    def from_cube(cls, cube: Cube) -> "LabeledCube":
        return cls.from_element(from_cube(cube))

    def to_element(self, domain: ScalarDomain = ScalarDomain.INT) -> FreudenthalElement:
        return FreudenthalElement.from_coordinates(
            JordanKind.DIAG3, (self.alpha, self.beta) + tuple(self.a) + tuple(self.b), domain
        )

    def to_cube(self) -> Cube:
        return to_cube(self.to_element())


def slicings(cube: Cube):
    """The three (M_i, N_i) pairs, one per direction of the cube."""
    c = cube.entries
    M1 = [[c[s][r][0] for s in range(2)] for r in range(2)]
    N1 = [[c[s][r][1] for s in range(2)] for r in range(2)]
    M2 = [[c[0][s][r] for s in range(2)] for r in range(2)]
    N2 = [[c[1][s][r] for s in range(2)] for r in range(2)]
    M3 = [[c[r][0][s] for s in range(2)] for r in range(2)]
    N3 = [[c[r][1][s] for s in range(2)] for r in range(2)]
    return [(M1, N1), (M2, N2), (M3, N3)]


def _minus_det_pencil(M, N) -> BinaryQuadraticForm:
    x2 = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    xy = -(M[0][0] * N[1][1] + N[0][0] * M[1][1]) + (M[0][1] * N[1][0] + N[0][1] * M[1][0])
    y2 = N[0][0] * N[1][1] - N[0][1] * N[1][0]
    return BinaryQuadraticForm(-x2, -xy, -y2)


def slicing_forms(cube: Cube) -> Tuple[BinaryQuadraticForm, BinaryQuadraticForm, BinaryQuadraticForm]:
    return tuple(_minus_det_pencil(M, N) for M, N in slicings(cube))


def display_forms(x: FreudenthalElement) -> Tuple[BinaryQuadraticForm, ...]:
    """Diagonal entries of the displayed matrix expression; projectivity asks all three to be primitive."""
    if x.kind is not JordanKind.DIAG3:
        raise DomainError(f"Rotation forms are defined on Diag3, not {x.kind.value}.")
    alpha, beta = x.alpha, x.beta
    a, b = x.A.diag, x.B.diag
    forms = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        forms.append(BinaryQuadraticForm(
            alpha * a[i] - b[j] * b[k],
            -alpha * beta - a[i] * b[i] + a[j] * b[j] + a[k] * b[k],
            beta * b[i] - a[j] * a[k],
        ))
    return tuple(forms)


def rotation_forms(x: FreudenthalElement) -> Tuple[BinaryQuadraticForm, ...]:
    return tuple(-f for f in display_forms(x))


def correspondence_check(x: FreudenthalElement) -> bool:
    """True when {R1, R2, R3} and {Q1, Q2, Q3} agree as multisets."""
    rotations = Counter(f.as_tuple() for f in rotation_forms(x))
    slices = Counter(f.as_tuple() for f in slicing_forms(to_cube(x)))
    return rotations == slices
