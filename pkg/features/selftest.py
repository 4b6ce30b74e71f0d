"""
Identity suites runnable without pytest.

A suite is a list of (name, check) pairs; a check takes a seeded
``random.Random`` and returns True or raises. Results are collected into
a report and the command exits 1 when anything fails.
"""

import logging
import random
from typing import Callable, Dict, List, Tuple

from models.composition import (
    Algebra,
    NON_ASSOCIATIVE_WITNESS,
    comp_conj,
    comp_mul,
    comp_norm,
    element,
    embed,
    random_element as random_comp,
)
from models.cubes import display_forms, rotation_forms, slicing_forms, correspondence_check
from models.freudenthal import (
    FreudenthalElement,
    Phi,
    Psi,
    Struct,
    Tau,
    quartic_q,
    quartic_qprime,
    random_element,
    random_generator,
    random_norm_preserving_map,
    random_word,
    symplectic,
)
from models.isomorphisms import (
    act_on_cube,
    cube_generator_image,
    from_cube,
    from_wedge,
    tau_word,
    to_cube,
    to_wedge,
    wedge_act,
    wedge_generator_image,
    wedge_word_image,
)
from models.jordan import JordanKind, cross, jnorm, random_jordan, sharp, trace_form
from models.reduction import (
    invariants,
    is_projective,
    lcomp_move,
    projective_canonicalize,
    reduce_diagonal,
)
from models.structure import ScaleMove, StructureMap, invariant_factors, smith_normal_form
from utils.display import Display
from utils.errors import FreudenthalError, PreconditionError

logger = logging.getLogger(__name__)

Check = Callable[[random.Random], bool]

HERMITIAN = (JordanKind.H3B, JordanKind.H3H, JordanKind.H3O)
ALL_KINDS = (JordanKind.DIAG3,) + HERMITIAN
ROUNDS = 20


def _repeat(check: Callable[[random.Random], bool]) -> Check:
    def run(rng: random.Random) -> bool:
        return all(check(rng) for _ in range(ROUNDS))
    return run


# -- composition -----------------------------------------------------


def _norm_multiplicative(rng):
    x, y = random_comp(Algebra.O, rng, 5), random_comp(Algebra.O, rng, 5)
    return comp_norm(comp_mul(x, y)) == comp_norm(x) * comp_norm(y)


def _alternative(rng):
    x, y = random_comp(Algebra.O, rng, 5), random_comp(Algebra.O, rng, 5)
    return comp_mul(x, comp_mul(x, y)) == comp_mul(comp_mul(x, x), y)


def _embedding_homomorphism(rng):
    x, y = random_comp(Algebra.H, rng, 5), random_comp(Algebra.H, rng, 5)
    return embed(comp_mul(x, y), Algebra.O) == comp_mul(embed(x, Algebra.O), embed(y, Algebra.O))


def _conjugation_antihomomorphism(rng):
    x, y = random_comp(Algebra.O, rng, 5), random_comp(Algebra.O, rng, 5)
    return comp_conj(comp_mul(x, y)) == comp_mul(comp_conj(y), comp_conj(x))


def _octonions_not_associative(rng):
    x, y, z = (element(Algebra.O, c) for c in NON_ASSOCIATIVE_WITNESS)
    return comp_mul(comp_mul(x, y), z) != comp_mul(x, comp_mul(y, z))


# -- jordan ----------------------------------------------------------


def _adjoint_identity(rng):
    for kind in ALL_KINDS:
        A = random_jordan(kind, rng, 4)
        if sharp(sharp(A)) != A.scale(jnorm(A)):
            return False
    return True


def _cross_is_doubled_sharp(rng):
    for kind in ALL_KINDS:
        A = random_jordan(kind, rng, 4)
        if cross(A, A) != sharp(A).scale(2):
            return False
    return True


def _norm_of_sharp(rng):
    for kind in ALL_KINDS:
        A = random_jordan(kind, rng, 4)
        if jnorm(sharp(A)) != jnorm(A) ** 2:
            return False
    return True


def _trace_of_sharp_pairing(rng):
    for kind in ALL_KINDS:
        A = random_jordan(kind, rng, 4)
        if trace_form(A, sharp(A)) != 3 * jnorm(A):
            return False
    return True


# -- structure -------------------------------------------------------


def _multiplier_respected(rng):
    for kind in ALL_KINDS:
        s = random_norm_preserving_map(kind, rng, 2)
        A = random_jordan(kind, rng, 4)
        if jnorm(s.apply(A)) != s.multiplier * jnorm(A):
            return False
    return True


def _smith_witness_replays(rng):
    for kind in HERMITIAN:
        A = random_jordan(kind, rng, 6)
        d, s = smith_normal_form(A)
        image = s.apply(A)
        if not image.is_diagonal() or tuple(image.diag) != d.d or d != invariant_factors(A):
            return False
    return True


# -- freudenthal -----------------------------------------------------


def _tau_squared(rng):
    for kind in ALL_KINDS:
        x = random_element(kind, rng, 5)
        if Tau().apply(Tau().apply(x)) != -x:
            return False
    return True


def _tau_word_relation(rng):
    for kind in ALL_KINDS:
        x = random_element(kind, rng, 5)
        if tau_word(kind).apply(x) != Tau().apply(x):
            return False
    return True


def _generators_preserve_forms(rng):
    for kind in ALL_KINDS:
        x, y = random_element(kind, rng, 4), random_element(kind, rng, 4)
        g = random_generator(kind, rng, 2)
        if quartic_qprime(g.apply(x)) != quartic_qprime(x):
            return False
        if symplectic(g.apply(x), g.apply(y)) != symplectic(x, y):
            return False
    return True


def _norm_congruence(rng):
    for kind in ALL_KINDS:
        x = random_element(kind, rng, 8)
        if quartic_qprime(x) % 4 not in (0, 1) or quartic_q(x) != -2 * quartic_qprime(x):
            return False
    return True


# -- reduction -------------------------------------------------------


def _reduction_replays(rng):
    for kind in ALL_KINDS:
        x = random_element(kind, rng, 6)
        if x.is_zero():
            continue
        red = reduce_diagonal(x)
        if red.witness.apply(x) != red.element:
            return False
    return True


def _lcomp_example(rng):
    x = FreudenthalElement.reduced(JordanKind.H3B, 1, 2, (1, 1, 2))
    return lcomp_move(x, 3, 1) == FreudenthalElement.reduced(JordanKind.H3B, 1, 0, (1, 1, 3))


def _known_projective_pair(rng):
    x1 = FreudenthalElement.reduced(JordanKind.H3B, 1, 2, (1, 1, 2))
    x2 = FreudenthalElement.reduced(JordanKind.H3B, 1, 2, (1, 2, 2))
    return is_projective(x1) and not is_projective(x2)


def _canonical_form_example(rng):
    x = FreudenthalElement.reduced(JordanKind.H3O, 1, 2, (1, 1, 2))
    eps, k, word = projective_canonicalize(x)
    return (eps, k) == (0, 3) and word.apply(x) == FreudenthalElement.reduced(JordanKind.H3O, 1, 0, (1, 1, 3))


def _invariants_along_words(rng):
    for kind in ALL_KINDS:
        x = random_element(kind, rng, 3)
        w = random_word(kind, rng, 4, 1)
        if invariants(w.apply(x)) != invariants(x):
            return False
    return True


# -- isomorphisms ----------------------------------------------------


def _cube_round_trip(rng):
    x = random_element(JordanKind.DIAG3, rng, 9)
    return from_cube(to_cube(x)) == x


def _cube_equivariance(rng):
    x = random_element(JordanKind.DIAG3, rng, 5)
    choice = rng.randrange(3)
    if choice == 0:
        g = Phi(random_jordan(JordanKind.DIAG3, rng, 2))
    elif choice == 1:
        g = Psi(random_jordan(JordanKind.DIAG3, rng, 2))
    else:
        g = Struct(StructureMap(JordanKind.DIAG3, (ScaleMove(-1),)))
    g1, g2, g3 = cube_generator_image(g)
    return to_cube(g.apply(x)) == act_on_cube(g1, g2, g3, to_cube(x))


def _wedge_round_trip(rng):
    x = random_element(JordanKind.H3B, rng, 9)
    return from_wedge(to_wedge(x)) == x


def _wedge_equivariance(rng):
    x = random_element(JordanKind.H3B, rng, 4)
    g = random_generator(JordanKind.H3B, rng, 2)
    if isinstance(g, Tau):
        return wedge_act(wedge_word_image(tau_word(JordanKind.H3B)), to_wedge(x)) == to_wedge(g.apply(x))
    return wedge_act(wedge_generator_image(g), to_wedge(x)) == to_wedge(g.apply(x))


# -- cubes -----------------------------------------------------------


def _discriminants_match(rng):
    x = random_element(JordanKind.DIAG3, rng, 8)
    q = quartic_qprime(x)
    return all(f.discriminant == q for f in rotation_forms(x) + slicing_forms(to_cube(x)))


def _realizations_agree(rng):
    x = random_element(JordanKind.DIAG3, rng, 8)
    R, Q = rotation_forms(x), slicing_forms(to_cube(x))
    return correspondence_check(x) and (Q[0], Q[1], Q[2]) == (R[2], R[0], R[1])


def _projectivity_from_forms(rng):
    x = random_element(JordanKind.DIAG3, rng, 3)
    return is_projective(x) == all(f.is_primitive() for f in display_forms(x))


SUITES: Dict[str, List[Tuple[str, Check]]] = {
    "composition": [
        ("n(xy) = n(x)n(y) on O", _repeat(_norm_multiplicative)),
        ("x(xy) = (xx)y on O", _repeat(_alternative)),
        ("embed H -> O is multiplicative", _repeat(_embedding_homomorphism)),
        ("conj(xy) = conj(y)conj(x)", _repeat(_conjugation_antihomomorphism)),
        ("octonions are not associative", _octonions_not_associative),
    ],
    "jordan": [
        ("(A#)# = N(A)A", _repeat(_adjoint_identity)),
        ("A x A = 2A#", _repeat(_cross_is_doubled_sharp)),
        ("N(A#) = N(A)^2", _repeat(_norm_of_sharp)),
        ("(A, A#) = 3N(A)", _repeat(_trace_of_sharp_pairing)),
    ],
    "structure": [
        ("N(s(A)) = lambda N(A)", _repeat(_multiplier_respected)),
        ("Smith witness replays to the invariant factors", _repeat(_smith_witness_replays)),
    ],
    "freudenthal": [
        ("tau^2 = -Id", _repeat(_tau_squared)),
        ("phi(-1) psi(1) phi(-1) = tau", _repeat(_tau_word_relation)),
        ("generators preserve q' and {,}", _repeat(_generators_preserve_forms)),
        ("q' = 0, 1 mod 4 and q = -2q'", _repeat(_norm_congruence)),
    ],
    "reduction": [
        ("diagonal reduction witness replays", _repeat(_reduction_replays)),
        ("lcomp slot 3 on (1,2,diag(1,1,2),0)", _lcomp_example),
        ("(1,2,diag(1,1,2),0) projective, (1,2,diag(1,2,2),0) not", _known_projective_pair),
        ("q' = 12 canonicalizes to (0, 3)", _canonical_form_example),
        ("d1..d4 constant along words", _repeat(_invariants_along_words)),
    ],
    "isomorphisms": [
        ("cube round trip", _repeat(_cube_round_trip)),
        ("cube equivariance", _repeat(_cube_equivariance)),
        ("wedge round trip", _repeat(_wedge_round_trip)),
        ("wedge equivariance", _repeat(_wedge_equivariance)),
    ],
    "cubes": [
        ("disc(R_i) = disc(Q_i) = q'", _repeat(_discriminants_match)),
        ("Q1 = R3, Q2 = R1, Q3 = R2", _repeat(_realizations_agree)),
        ("projective iff the three forms are primitive", _repeat(_projectivity_from_forms)),
    ],
}


def cmd_selftest(suites: List[str], seed: int) -> dict:
    """Run the chosen suites; the report's "passed" drives exit code 0 or 1."""
    names = suites or list(SUITES)
    report = {"seed": seed, "suites": {}, "passed": True}
    for name in names:
        if name not in SUITES:
            raise PreconditionError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}.")
        results = []
        for index, (label, check) in enumerate(SUITES[name]):
            rng = random.Random(f"{seed}:{name}:{index}")
            try:
                passed, detail = bool(check(rng)), ""
            except FreudenthalError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc.message}"
            if not passed:
                logger.warning("self-test %s / %s failed %s", name, label, detail)
                report["passed"] = False
            results.append({"check": label, "passed": passed, "detail": detail})
        report["suites"][name] = results
    return report


def show_selftest(report: dict) -> None:
    Display.print_header("Self-test")
    for name, results in report["suites"].items():
        Display.print_subheader(name)
        for row in results:
            Display.print_verdict(row["check"], row["passed"], row["detail"])
    if report["passed"]:
        Display.print_success("All identities hold")
    else:
        Display.print_error("Some identities failed")
