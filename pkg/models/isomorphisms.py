"""
Equivariant isomorphisms of the Freudenthal module:

* M(Z+Z+Z) with Z^2 (x) Z^2 (x) Z^2, where the group generators go to
  triples of 2x2 matrices (modulo the sign kernel K4);
* M(H3(B_Z)) with the third exterior power of Z^6, where the generators
  go to SL6(Z).

Matrices act on column vectors. Z^6 has the ordered basis
e1, e2, e3, f1, f2, f3 (indices 0..5) and fj* = f(j+1) ^ f(j+2), ej*
likewise, indices mod 3. With this convention phi(A) is the block
[[I, A], [0, I]], psi(B) is [[I, 0], [B, I]] and eta(P, Q) is
diag(det(Q) P, det(P) Q).
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix
from sympy.combinatorics import Permutation

from models.composition import ScalarDomain
from models.freudenthal import FreudenthalElement, GroupWord, Phi, Psi, Struct, Tau
from models.jordan import JordanElement, JordanKind, from_matrix, standard_basis, to_matrix
from models.structure import Congruence, DiagUnits, EtaMove, Permute, ScaleMove, StructureMap
from utils.errors import DomainError, PreconditionError
from utils.validation import validate_same_kind

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY2: Matrix2 = ((1, 0), (0, 1))


# -- cubes -----------------------------------------------------------


@dataclass(frozen=True)
class Cube:
    """entries[i][j][k] is the coefficient of e_(i+1) (x) e_(j+1) (x) e_(k+1)."""

    entries: Tuple

    @classmethod
    def zero(cls) -> "Cube":
        return cls.from_function(lambda i, j, k: 0)

    @classmethod
    def from_function(cls, fn) -> "Cube":
        return cls(tuple(tuple(tuple(fn(i, j, k) for k in range(2)) for j in range(2)) for i in range(2)))

    def at(self, i: int, j: int, k: int):
        return self.entries[i][j][k]


# Freudenthal coordinate -> cube vertex, 0-based.
CUBE_VERTICES: Dict[str, Tuple[int, int, int]] = {
    "alpha": (0, 0, 0),
    "beta": (1, 1, 1),
    "a1": (0, 1, 1),
    "a2": (1, 0, 1),
    "a3": (1, 1, 0),
    "b1": (1, 0, 0),
    "b2": (0, 1, 0),
    "b3": (0, 0, 1),
}


def _diag3_values(x: FreudenthalElement) -> Dict[str, object]:
    if x.kind is not JordanKind.DIAG3:
        raise DomainError(f"The cube isomorphism needs Diag3, not {x.kind.value}.")
    a, b = x.A.diag, x.B.diag
    return {
        "alpha": x.alpha, "beta": x.beta,
        "a1": a[0], "a2": a[1], "a3": a[2],
        "b1": b[0], "b2": b[1], "b3": b[2],
    }


def to_cube(x: FreudenthalElement) -> Cube:
    values = _diag3_values(x)
    by_vertex = {vertex: values[name] for name, vertex in CUBE_VERTICES.items()}
    return Cube.from_function(lambda i, j, k: by_vertex[(i, j, k)])


def from_cube(cube: Cube, domain: ScalarDomain = ScalarDomain.INT) -> FreudenthalElement:
    v = {name: cube.at(*vertex) for name, vertex in CUBE_VERTICES.items()}
    return FreudenthalElement.build(
        v["alpha"], v["beta"],
        JordanElement.diagonal(JordanKind.DIAG3, (v["a1"], v["a2"], v["a3"]), domain),
        JordanElement.diagonal(JordanKind.DIAG3, (v["b1"], v["b2"], v["b3"]), domain),
    )


def act_on_cube(g1: Sequence[Sequence], g2: Sequence[Sequence], g3: Sequence[Sequence], cube: Cube) -> Cube:
    """(g1 (x) g2 (x) g3) applied to the cube; g e_1 is the first column of g."""

    def entry(p, q, r):
        total = 0
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    total += g1[p][i] * g2[q][j] * g3[r][k] * cube.at(i, j, k)
        return total

    return Cube.from_function(entry)


def _acts_as_sign(s: StructureMap) -> int:
    """+1 or -1 if T(s) is +Id or -Id on M(Diag3), else 0."""
    for sgn in (1, -1):
        if s.multiplier != sgn:
            continue
        ok = all(
            s.apply(e) == e.scale(sgn) and s.adjoint_inverse().apply(e) == e.scale(sgn)
            for e in standard_basis(s.kind, s.domain)
        )
        if ok:
            return sgn
    return 0


def cube_generator_image(g) -> Tuple[Matrix2, Matrix2, Matrix2]:
    """Triple of 2x2 integer matrices representing a Diag3 generator."""
    if isinstance(g, Phi):
        validate_same_kind(JordanKind.DIAG3, g.C.kind)
        return tuple(((1, int(c)), (0, 1)) for c in g.C.diag)
    if isinstance(g, Psi):
        validate_same_kind(JordanKind.DIAG3, g.D.kind)
        return tuple(((1, 0), (int(d), 1)) for d in g.D.diag)
    if isinstance(g, Struct):
        validate_same_kind(JordanKind.DIAG3, g.s.kind)
        sgn = _acts_as_sign(g.s)
        if sgn == 0:
            raise PreconditionError("Only T(+Id) and T(-Id) have cube images.")
        return (((sgn, 0), (0, sgn)), IDENTITY2, IDENTITY2)
    if isinstance(g, Tau):
        raise PreconditionError("tau has no direct cube image; expand it as phi(-1) psi(1) phi(-1).")
    raise PreconditionError(f"Unsupported generator {g!r}.")


def _mul2(p, q) -> Matrix2:
    product = Matrix(p) * Matrix(q)
    return tuple(tuple(int(product[r, c]) for c in range(2)) for r in range(2))


def cube_word_image(word: GroupWord) -> Tuple[Matrix2, Matrix2, Matrix2]:
    """Image of a word; later generators multiply on the left."""
    result = (IDENTITY2, IDENTITY2, IDENTITY2)
    for g in word:
        image = cube_generator_image(g)
        result = tuple(_mul2(image[i], result[i]) for i in range(3))
    return result


# -- third exterior power of Z^6 -------------------------------------


def _e(i: int) -> int:
    return i


def _f(i: int) -> int:
    return 3 + i


def _build_wedge_basis() -> List[Tuple[int, int, int]]:
    basis = [(0, 1, 2), (3, 4, 5)]
    for i in range(3):
        for j in range(3):
            basis.append((_e(i), _f((j + 1) % 3), _f((j + 2) % 3)))
    for i in range(3):
        for j in range(3):
            basis.append((_f(i), _e((j + 1) % 3), _e((j + 2) % 3)))
    return basis


WEDGE_BASIS: List[Tuple[int, int, int]] = _build_wedge_basis()

WEDGE_LABELS: List[str] = (
    ["e1^e2^e3", "f1^f2^f3"]
    + [f"e{i + 1}^f{j + 1}*" for i in range(3) for j in range(3)]
    + [f"f{i + 1}^e{j + 1}*" for i in range(3) for j in range(3)]
)


def _sort_with_sign(triple) -> Tuple[Tuple[int, int, int], int]:
    order = sorted(range(len(triple)), key=lambda i: triple[i])
    sgn = -1 if Permutation(order).parity() else 1
    return tuple(triple[i] for i in order), sgn


_SORTED_POSITION: Dict[Tuple[int, int, int], Tuple[int, int]] = {}
for _pos, _mono in enumerate(WEDGE_BASIS):
    _key, _sgn = _sort_with_sign(_mono)
    _SORTED_POSITION[_key] = (_pos, _sgn)
assert len(_SORTED_POSITION) == 20


@dataclass(frozen=True)
class WedgeElement:
    """Coordinates on WEDGE_BASIS."""

    coords: Tuple


def to_wedge(x: FreudenthalElement) -> WedgeElement:
    if x.kind is not JordanKind.H3B:
        raise DomainError(f"The wedge isomorphism needs H3B, not {x.kind.value}.")
    MA, MB = to_matrix(x.A), to_matrix(x.B)
    coords = [x.alpha, x.beta]
    coords += [MA[i][j] for i in range(3) for j in range(3)]
    coords += [MB[i][j] for i in range(3) for j in range(3)]
    return WedgeElement(tuple(coords))


def from_wedge(w: WedgeElement, domain: ScalarDomain = ScalarDomain.INT) -> FreudenthalElement:
    c = w.coords
    if len(c) != 20:
        raise DomainError(f"A wedge element has 20 coordinates, got {len(c)}.")
    MA = [c[2 + 3 * i:5 + 3 * i] for i in range(3)]
    MB = [c[11 + 3 * i:14 + 3 * i] for i in range(3)]
    return FreudenthalElement.build(c[0], c[1], from_matrix(MA, domain), from_matrix(MB, domain))


def wedge_act(g: Sequence[Sequence], w: WedgeElement) -> WedgeElement:
    """Action of a 6x6 matrix on the third exterior power, through 3x3 minors."""
    G = Matrix(g)
    sorted_coeffs: Dict[Tuple[int, int, int], object] = {}
    for coeff, mono in zip(w.coords, WEDGE_BASIS):
        if coeff == 0:
            continue
        for rows in combinations(range(6), 3):
            minor = G.extract(list(rows), list(mono)).det()
            if minor != 0:
                sorted_coeffs[rows] = sorted_coeffs.get(rows, 0) + coeff * int(minor)
    coords = [0] * 20
    for key, value in sorted_coeffs.items():
        pos, sgn = _SORTED_POSITION[key]
        coords[pos] = sgn * value
    return WedgeElement(tuple(coords))


def _identity(n: int) -> List[List[int]]:
    return [[1 if r == c else 0 for c in range(n)] for r in range(n)]


def _eta_pair(s: StructureMap) -> Tuple[Matrix, Matrix]:
    """(P, Q) with s(M) = P M Q^-1 in the matrix model of H3B."""
    P, Q = Matrix(_identity(3)), Matrix(_identity(3))
    for move in s.moves:
        if isinstance(move, EtaMove):
            left, right = Matrix(move.A), Matrix(move.B)
        elif isinstance(move, Permute):
            left = Matrix([[1 if c == move.sigma[r] else 0 for c in range(3)] for r in range(3)])
            right = left
        elif isinstance(move, ScaleMove):
            left, right = Matrix(_identity(3)) * move.factor, Matrix(_identity(3))
        elif isinstance(move, DiagUnits):
            left = Matrix.diag(*[u.coords[0] for u in move.units])
            right = Matrix.diag(*[u.coords[1] for u in move.units]).inv()
        elif isinstance(move, Congruence):
            i, j = move.i, move.j
            left = Matrix(_identity(3))
            left[i, j] = move.c.coords[0]
            right = Matrix(_identity(3))
            right[j, i] = -move.c.coords[1]
        else:
            raise PreconditionError(f"{type(move).__name__} lies outside the connected part and has no SL6 image.")
        P, Q = left * P, right * Q
    return P, Q


def wedge_generator_image(g) -> Tuple[Tuple[int, ...], ...]:
    """6x6 integer matrix of determinant 1 representing an H3B generator."""
    block = _identity(6)
    if isinstance(g, Phi):
        validate_same_kind(JordanKind.H3B, g.C.kind)
        M = to_matrix(g.C)
        for i in range(3):
            for j in range(3):
                block[i][3 + j] = int(M[i][j])
        return tuple(tuple(row) for row in block)
    if isinstance(g, Psi):
        validate_same_kind(JordanKind.H3B, g.D.kind)
        M = to_matrix(g.D)
        for i in range(3):
            for j in range(3):
                block[3 + i][j] = int(M[i][j])
        return tuple(tuple(row) for row in block)
    if isinstance(g, Struct):
        validate_same_kind(JordanKind.H3B, g.s.kind)
        P, Q = _eta_pair(g.s)
        det_p, det_q = P.det(), Q.det()
        if det_p not in (1, -1) or det_q not in (1, -1) or not all(v.is_integer for v in list(P) + list(Q)):
            raise DomainError("Structure data is not unimodular over the integers.")
        image = Matrix.diag(P * det_q, Q * det_p)
        return tuple(tuple(int(image[r, c]) for c in range(6)) for r in range(6))
    if isinstance(g, Tau):
        raise PreconditionError("tau has no direct SL6 image; expand it as phi(-1) psi(1) phi(-1).")
    raise PreconditionError(f"Unsupported generator {g!r}.")


def wedge_word_image(word: GroupWord) -> Tuple[Tuple[int, ...], ...]:
    result = Matrix(_identity(6))
    for g in word:
        result = Matrix(wedge_generator_image(g)) * result
    return tuple(tuple(int(result[r, c]) for c in range(6)) for r in range(6))


def tau_word(kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> GroupWord:
    """phi(-1) psi(1) phi(-1), which acts as tau."""
    unit = JordanElement.unit(kind, domain)
    return GroupWord((Phi(-unit), Psi(unit), Phi(-unit)))
