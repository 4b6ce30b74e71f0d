"""
Structure-group catalog for the cubic Jordan algebras, and the Smith
normal form of Hermitian matrices over B, H and O.

A ``StructureMap`` is an ordered list of elementary moves applied first to
last. Every move knows its norm multiplier, its inverse, its adjoint with
respect to the trace form and its adjoint-inverse, so the Freudenthal
``T(s)`` generator can be built from any map.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from config.settings import FreudenthalConfig
from models.composition import (
    Algebra,
    CompositionElement,
    ScalarDomain,
    TRACE_PAIRING,
    binarion,
    comp_conj,
    comp_mul,
    comp_norm,
    comp_trace,
    element,
    idempotents,
    in_binarion_subring,
    inverse as comp_inverse,
    one as comp_one,
)
from models.jordan import (
    JordanElement,
    JordanKind,
    from_matrix,
    jnorm,
    sharp,
    to_matrix,
)
from utils.errors import DomainError, InvariantError, PreconditionError, ResourceLimitError
from utils.helpers import gcd_all, nearest_quotient, positive_residue_shift, sign
from utils.validation import validate_hermitian, validate_int_domain, validate_kind_in, validate_same_kind

logger = logging.getLogger(__name__)

SMITH_KINDS = (JordanKind.H3B, JordanKind.H3H, JordanKind.H3O)


def _reciprocal(value, domain: ScalarDomain):
    if value == 0:
        raise DomainError("Zero has no inverse.")
    if domain.integral:
        if value not in (1, -1):
            raise DomainError(f"{value} is not a unit over the integers.")
        return value
    return Fraction(1) / value


def _rebuild(kind, grid, domain) -> JordanElement:
    return JordanElement.from_grid(kind, grid, domain)


# -- elementary moves ------------------------------------------------


@dataclass(frozen=True)
class Permute:
    """X'_rs = X_{sigma(r) sigma(s)}."""

    sigma: Tuple[int, int, int]

    def apply(self, X: JordanElement) -> JordanElement:
        s = self.sigma
        if X.off is None:
            return JordanElement(X.kind, tuple(X.diag[s[r]] for r in range(3)), None, X.domain)
        g = X.grid()
        return _rebuild(X.kind, [[g[s[r]][s[c]] for c in range(3)] for r in range(3)], X.domain)

    def multiplier(self, kind, domain):
        return 1

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "Permute":
        inv = [0, 0, 0]
        for r, target in enumerate(self.sigma):
            inv[target] = r
        return Permute(tuple(inv))

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "Permute":
        return self.inverse(domain)

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "Permute":
        return self

    @staticmethod
    def swap(i: int, j: int) -> "Permute":
        sigma = [0, 1, 2]
        sigma[i], sigma[j] = sigma[j], sigma[i]
        return Permute(tuple(sigma))


@dataclass(frozen=True)
class DiagUnits:
    """X'_rs = u_r X_rs conj(u_s); Diag3 takes scalars, Hermitian kinds binarion-subring units."""

    units: Tuple

    def _norms(self):
        return [comp_norm(u) if isinstance(u, CompositionElement) else u for u in self.units]

    def apply(self, X: JordanElement) -> JordanElement:
        if X.off is None:
            return JordanElement(X.kind, tuple(u * a for u, a in zip(self.units, X.diag)), None, X.domain)
        u = self.units
        g = X.grid()
        norms = self._norms()
        new = [[None] * 3 for _ in range(3)]
        for r in range(3):
            new[r][r] = norms[r] * g[r][r]
            for c in range(3):
                if r != c:
                    new[r][c] = comp_mul(comp_mul(u[r], g[r][c]), comp_conj(u[c]))
        return _rebuild(X.kind, new, X.domain)

    def multiplier(self, kind, domain):
        return prod(self._norms())

    def in_domain(self, domain: ScalarDomain) -> "DiagUnits":
        """The same units with their scalars coerced into ``domain``."""
        return DiagUnits(tuple(
            element(u.algebra, u.coords, domain) if isinstance(u, CompositionElement) else domain.coerce(u)
            for u in self.units
        ))

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "DiagUnits":
        units = self.in_domain(domain).units
        if units and isinstance(units[0], CompositionElement):
            return DiagUnits(tuple(comp_inverse(u) for u in units))
        return DiagUnits(tuple(_reciprocal(u, domain) for u in units))

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "DiagUnits":
        if self.units and isinstance(self.units[0], CompositionElement):
            return DiagUnits(tuple(comp_conj(u) for u in self.units))
        return self

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "DiagUnits":
        return self.adjoint(domain).inverse(domain)


@dataclass(frozen=True)
class Congruence:
    """X -> T X T* with T = I + c E_ij (Hermitian kinds, i != j)."""

    i: int
    j: int
    c: CompositionElement

    def apply(self, X: JordanElement) -> JordanElement:
        if X.off is None:
            raise DomainError("Congruence moves need a Hermitian kind.")
        i, j, c = self.i, self.j, self.c
        l = 3 - i - j
        g = X.grid()
        a_i = g[i][i] + comp_trace(comp_mul(c, g[j][i])) + comp_norm(c) * g[j][j]
        x_ij = g[i][j] + c.scale(g[j][j])
        x_il = g[i][l] + comp_mul(c, g[j][l])
        g[i][i] = a_i
        g[i][j], g[j][i] = x_ij, comp_conj(x_ij)
        g[i][l], g[l][i] = x_il, comp_conj(x_il)
        return _rebuild(X.kind, g, X.domain)

    def multiplier(self, kind, domain):
        return 1

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "Congruence":
        return Congruence(self.i, self.j, -self.c)

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "Congruence":
        return Congruence(self.j, self.i, comp_conj(self.c))

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "Congruence":
        return Congruence(self.j, self.i, -comp_conj(self.c))


@dataclass(frozen=True)
class ScaleMove:
    """X -> factor * X, multiplier factor^3."""

    factor: object

    def apply(self, X: JordanElement) -> JordanElement:
        return X.scale(self.factor)

    def multiplier(self, kind, domain):
        return self.factor ** 3

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "ScaleMove":
        return ScaleMove(_reciprocal(domain.coerce(self.factor), domain))

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "ScaleMove":
        return self

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "ScaleMove":
        return self.inverse(domain)


@dataclass(frozen=True)
class TransposeLike:
    """The transpose t of the H3B matrix model: every off-diagonal entry conjugated."""

    def apply(self, X: JordanElement) -> JordanElement:
        if X.kind is not JordanKind.H3B:
            raise DomainError("The transpose move exists only for H3B.")
        return JordanElement(X.kind, X.diag, tuple(comp_conj(o) for o in X.off), X.domain)

    def multiplier(self, kind, domain):
        return 1

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "TransposeLike":
        return self

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "TransposeLike":
        return self

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "TransposeLike":
        return self


def _to_sympy(M) -> Matrix:
    return Matrix([[Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in row] for row in M])


def _from_sympy(M: Matrix, integral: bool):
    rows = []
    for r in range(M.rows):
        row = []
        for c in range(M.cols):
            v = M[r, c]
            if integral:
                if not v.is_integer:
                    raise DomainError("Matrix is not unimodular over the integers.")
                row.append(int(v))
            else:
                row.append(Fraction(int(v.p), int(v.q)))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class EtaMove:
    """H3B only: M -> A M B^-1 in the matrix model, multiplier det A / det B."""

    A: Tuple[Tuple, ...]
    B: Tuple[Tuple, ...]

    def apply(self, X: JordanElement) -> JordanElement:
        if X.kind is not JordanKind.H3B:
            raise DomainError("Eta moves exist only for H3B.")
        B_inv = _to_sympy(self.B).inv()
        image = _to_sympy(self.A) * _to_sympy(to_matrix(X)) * B_inv
        return from_matrix(_from_sympy(image, X.domain.integral), X.domain)

    def multiplier(self, kind, domain):
        ratio = _to_sympy(self.A).det() / _to_sympy(self.B).det()
        if ratio.is_integer:
            return int(ratio)
        return Fraction(int(ratio.p), int(ratio.q))

    @staticmethod
    def _inv(M, domain: ScalarDomain):
        return _from_sympy(_to_sympy(M).inv(), domain.integral)

    def inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "EtaMove":
        return EtaMove(self._inv(self.A, domain), self._inv(self.B, domain))

    def adjoint(self, domain: ScalarDomain = ScalarDomain.INT) -> "EtaMove":
        return EtaMove(self._inv(self.B, domain), self._inv(self.A, domain))

    def adjoint_inverse(self, domain: ScalarDomain = ScalarDomain.INT) -> "EtaMove":
        return EtaMove(self.B, self.A)


MOVE_TYPES = (Permute, DiagUnits, Congruence, ScaleMove, TransposeLike, EtaMove)


# -- structure maps --------------------------------------------------


@dataclass(frozen=True)
class StructureMap:
    kind: JordanKind
    moves: Tuple = field(default_factory=tuple)
    domain: ScalarDomain = ScalarDomain.INT

    @classmethod
    def identity(cls, kind: JordanKind, domain: ScalarDomain = ScalarDomain.INT) -> "StructureMap":
        return cls(kind, (), domain)

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def multiplier(self):
        return prod(m.multiplier(self.kind, self.domain) for m in self.moves)

    def is_norm_preserving(self) -> bool:
        return self.multiplier == 1

    def apply(self, X: JordanElement) -> JordanElement:
        validate_same_kind(self.kind, X.kind)
        for move in self.moves:
            image = move.apply(X)
            if FreudenthalConfig.DEBUG_CHECKS:
                lam = move.multiplier(self.kind, self.domain)
                if jnorm(image) != lam * jnorm(X):
                    raise InvariantError(f"{move} broke its norm multiplier {lam}.")
            X = image
        return X

    def inverse(self) -> "StructureMap":
        return StructureMap(self.kind, tuple(m.inverse(self.domain) for m in reversed(self.moves)), self.domain)

    def adjoint(self) -> "StructureMap":
        return StructureMap(self.kind, tuple(m.adjoint(self.domain) for m in reversed(self.moves)), self.domain)

    def adjoint_inverse(self) -> "StructureMap":
        return StructureMap(self.kind, tuple(m.adjoint_inverse(self.domain) for m in self.moves), self.domain)

    def then(self, other: "StructureMap") -> "StructureMap":
        """This map followed by ``other``."""
        validate_same_kind(self.kind, other.kind)
        return StructureMap(self.kind, self.moves + other.moves, self.domain)


def apply_structure(s: StructureMap, X: JordanElement) -> JordanElement:
    return s.apply(X)


def apply_adjoint_inverse(s: StructureMap, X: JordanElement) -> JordanElement:
    return s.adjoint_inverse().apply(X)


# -- Smith normal form -----------------------------------------------


@dataclass(frozen=True)
class SmithDiagonal:
    d: Tuple


def invariant_factors(A: JordanElement) -> SmithDiagonal:
    """(g1, g2/g1, |N|/g2) from the gcds of A and A#; trailing zeros for lower rank."""
    validate_int_domain(A.domain, "invariant_factors")
    g1 = gcd_all(A.coordinates())
    if g1 == 0:
        return SmithDiagonal((0, 0, 0))
    g2 = gcd_all(sharp(A).coordinates())
    if g2 == 0:
        return SmithDiagonal((g1, 0, 0))
    n = abs(jnorm(A))
    if n == 0:
        return SmithDiagonal((g1, g2 // g1, 0))
    return SmithDiagonal((g1, g2 // g1, n // g2))


class _Eliminator:
    """Running state of the diagonalization: current element plus the moves so far."""

    def __init__(self, A: JordanElement):
        self.X = A
        self.kind = A.kind
        self.domain = A.domain
        self.integral = A.domain.integral
        self.algebra = A.kind.algebra
        self.moves: List = []
        self.steps = 0

    def push(self, move) -> None:
        self.steps += 1
        if self.steps > FreudenthalConfig.MAX_STEPS:
            raise ResourceLimitError("Diagonalization exceeded the step limit.")
        self.moves.append(move)
        self.X = move.apply(self.X)
        logger.debug("move %s -> diag %s", type(move).__name__, self.X.diag)

    def c_elem(self, coords) -> CompositionElement:
        return element(self.algebra, coords, self.domain)

    # block helpers

    def _offdiag_pairs(self, block):
        return [(r, s) for r in block for s in block if r < s]

    def _block_values(self, block):
        g = self.X.grid()
        values = [g[i][i] for i in block]
        for r, s in self._offdiag_pairs(block):
            values.extend(g[r][s].coords)
        return values

    def run(self, block: Sequence[int]) -> None:
        p = block[0]
        while True:
            values = [abs(v) for v in self._block_values(block) if v != 0]
            if not values:
                return
            mu = min(values)
            g = self.X.grid()
            pivots = [i for i in block if g[i][i] != 0 and (not self.integral or abs(g[i][i]) == mu)]
            if pivots:
                i = p if p in pivots else pivots[0]
                if i != p:
                    self.push(Permute.swap(i, p))
                if self._clear_row(block, p):
                    return
            else:
                self._raise_diagonal(block, mu)

    def _clear_row(self, block, p) -> bool:
        """Eliminate column p below the pivot; True when the phase is finished."""
        g = self.X.grid()
        a_p = g[p][p]
        for j in block[1:]:
            entry = g[j][p]
            if entry.is_zero():
                continue
            if self.integral:
                coords = [-nearest_quotient(v, a_p) for v in entry.coords]
            else:
                coords = [-Fraction(v) / a_p for v in entry.coords]
            if any(coords):
                self.push(Congruence(j, p, self.c_elem(coords)))
        g = self.X.grid()
        if any(not g[j][p].is_zero() for j in block[1:]):
            return False
        if not self.integral:
            return True
        a_p = g[p][p]
        e1, e2 = idempotents(self.algebra, self.domain)
        rest = block[1:]
        for j in rest:
            if g[j][j] % a_p:
                self.push(Congruence(p, j, e1))
                return False
        for j in rest:
            for l in rest:
                if j == l:
                    continue
                entry = g[j][l]
                if any(v % a_p for v in entry.coords):
                    for eps in (e1, e2):
                        if any(v % a_p for v in comp_mul(eps, entry).coords):
                            self.push(Congruence(p, j, eps))
                            return False
        return True

    def _raise_diagonal(self, block, mu) -> None:
        """Bring a diagonal entry next to an off-diagonal coordinate of size mu."""
        g = self.X.grid()
        for r, s in self._offdiag_pairs(block):
            if any(abs(v) == mu for v in g[r][s].coords) or (not self.integral and not g[r][s].is_zero()):
                break
        entry = g[s][r]
        for k, (index, coef) in enumerate(TRACE_PAIRING[self.algebra]):
            value = coef * entry.coords[index]
            if value != 0 and (not self.integral or abs(value) == mu):
                break
        basis_k = [0] * self.algebra.dim
        basis_k[k] = 1
        a_r = g[r][r]
        if self.integral:
            # a_r is not in [1, mu] here, otherwise it would have been a pivot
            m = -sign(value) * positive_residue_shift(a_r, mu)
        else:
            m = (1 - a_r) / value
        self.push(Congruence(r, s, self.c_elem([m * b for b in basis_k])))

    def flip(self, i: int, j: int) -> None:
        """Negate a_i and a_j with a norm-preserving unit move."""
        minus = binarion(self.algebra, 1, -1, self.domain)
        unit = comp_one(self.algebra, self.domain)
        units = [unit, unit, unit]
        units[i] = minus
        units[j] = minus
        self.push(DiagUnits(tuple(units)))


def _eliminate(A: JordanElement) -> _Eliminator:
    validate_kind_in(A.kind, SMITH_KINDS, "diagonalization")
    engine = _Eliminator(A)
    engine.run([0, 1, 2])
    engine.run([1, 2])
    d = engine.X.diag
    if d[0] < 0:
        engine.flip(0, 2)
    d = engine.X.diag
    if d[1] < 0:
        engine.flip(1, 2)
    if not engine.X.is_diagonal():
        raise InvariantError("Diagonalization left off-diagonal entries behind.")
    return engine


def diagonalize(A: JordanElement) -> Tuple[Tuple, StructureMap]:
    """Norm-preserving diagonalization: d1, d2 >= 0, d3 carries the sign of N, zeros trailing."""
    engine = _eliminate(A)
    return engine.X.diag, StructureMap(A.kind, tuple(engine.moves), A.domain)


def smith_normal_form(A: JordanElement) -> Tuple[SmithDiagonal, StructureMap]:
    """Smith form d1 | d2 | d3, all d_i >= 0.

    The witness is norm-preserving up to sign: when N(A) < 0 a final unit move
    of norm -1 clears the sign of d3, so its multiplier is -1. Otherwise it is 1.
    """
    validate_int_domain(A.domain, "smith_normal_form")
    validate_kind_in(A.kind, SMITH_KINDS, "smith_normal_form")
    engine = _eliminate(A)
    if engine.X.diag[2] < 0:
        minus = binarion(engine.algebra, 1, -1, engine.domain)
        unit = comp_one(engine.algebra, engine.domain)
        engine.push(DiagUnits((unit, unit, minus)))
    diag = SmithDiagonal(tuple(engine.X.diag))
    expected = invariant_factors(A)
    if diag != expected:
        raise InvariantError(f"Smith form {diag.d} disagrees with the invariant factors {expected.d}.")
    return diag, StructureMap(A.kind, tuple(engine.moves), A.domain)


def unit_move(kind: JordanKind, norms: Sequence, domain: ScalarDomain) -> DiagUnits:
    """DiagUnits whose i-th unit has norm norms[i] (binarion (n, 1), or the scalar for Diag3)."""
    if kind is JordanKind.DIAG3:
        return DiagUnits(tuple(domain.coerce(n) for n in norms))
    validate_hermitian(kind, "unit_move")
    if kind is JordanKind.H3F:
        raise DomainError("H3F units only realize square norms.")
    return DiagUnits(tuple(binarion(kind.algebra, n, 1, domain) for n in norms))


def validate_units(move: DiagUnits, kind: JordanKind, domain: ScalarDomain) -> None:
    """Units must sit in the binarion subring and be invertible in the domain."""
    if kind is JordanKind.DIAG3:
        for u in move.units:
            _reciprocal(u, domain)
        return
    for u in move.units:
        if not isinstance(u, CompositionElement) or u.algebra is not kind.algebra:
            raise DomainError(f"Units for {kind.value} must be {kind.algebra.name} elements.")
        if kind.algebra is not Algebra.F and not in_binarion_subring(u):
            raise DomainError("Units must lie in the binarion subring.")
        comp_inverse(u)
