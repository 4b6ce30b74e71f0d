"""
Reduction, canonical forms, Smith normal form and format conversion.

Witness words are only attached with --witness; --verify replays them on
the input and reports whether the claimed output comes back.
"""

import logging
from typing import Optional

from models.composition import ScalarDomain
from models.freudenthal import FreudenthalElement, quartic_qprime
from models.isomorphisms import from_cube, from_wedge, to_cube, to_wedge
from models.jordan import JordanElement, JordanKind, embed_jordan
from models.reduction import field_canonicalize, projective_canonicalize, reduce_diagonal
from models.structure import smith_normal_form
from utils.display import Display, print_info, print_stats, print_success, print_warning
from utils.errors import InvariantError, ParseError
from utils.helpers import format_scalar
from utils.serialization import (
    decode_cube,
    decode_element,
    decode_jordan,
    decode_wedge,
    encode_cube,
    encode_element,
    encode_jordan,
    encode_smith,
    encode_structure,
    encode_wedge,
    encode_word,
)

logger = logging.getLogger(__name__)


def _attach(result: dict, word, replayed_ok: Optional[bool], witness: bool) -> dict:
    if witness:
        result["witness"] = encode_word(word)
        result["witness_length"] = len(word)
    if replayed_ok is not None:
        result["verified"] = replayed_ok
        if not replayed_ok:
            raise InvariantError("Witness replay did not reproduce the reported result.")
    return result


def cmd_reduce(x: FreudenthalElement, witness: bool = False, verify: bool = False) -> dict:
    red = reduce_diagonal(x)
    logger.info("diagonal reduced form reached with %d generators", len(red.witness))
    result = {
        "input": encode_element(x),
        "reduced": encode_element(red.element),
        "alpha": format_scalar(red.alpha),
        "beta": format_scalar(red.beta),
        "a": [format_scalar(v) for v in red.a],
    }
    replayed = red.witness.apply(x) == red.element if verify else None
    return _attach(result, red.witness, replayed, witness)


def cmd_canonical(x: FreudenthalElement, witness: bool = False, verify: bool = False) -> dict:
    """Projective canonical form over int, field canonical form over rat."""
    result = {"input": encode_element(x)}
    if x.domain is ScalarDomain.RAT:
        rep, word = field_canonicalize(x)
        result["canonical"] = encode_element(rep)
        replayed = word.apply(x) == rep if verify else None
        return _attach(result, word, replayed, witness)
    eps, k, word = projective_canonicalize(x)
    source = x
    if x.kind is JordanKind.DIAG3:
        # the word lives in H3B, where the reduction was carried out
        source = FreudenthalElement(x.alpha, x.beta, embed_jordan(x.A, JordanKind.H3B), embed_jordan(x.B, JordanKind.H3B))
        result["witness_kind"] = JordanKind.H3B.value
    rep = FreudenthalElement.reduced(source.kind, 1, eps, (1, 1, k), source.domain)
    result.update({
        "epsilon": eps,
        "k": k,
        "q_prime": format_scalar(quartic_qprime(x)),
        "canonical": encode_element(rep),
    })
    replayed = word.apply(source) == rep if verify else None
    return _attach(result, word, replayed, witness)


def _jordan_input(data, kind: Optional[JordanKind], domain: ScalarDomain) -> JordanElement:
    """SNF input: a bare Jordan element, or a module element whose A is used."""
    if isinstance(data, dict) and "alpha" in data:
        return decode_element(data, kind, domain).A
    if not isinstance(data, dict):
        raise ParseError("SNF input must be a JSON object.")
    raw_kind = data.get("kind")
    kind = JordanKind.parse(raw_kind) if raw_kind else kind
    if kind is None:
        raise ParseError("No Jordan kind given; add \"kind\" or pass --kind.")
    return decode_jordan(data, kind, domain)


def cmd_snf(data, kind: Optional[JordanKind] = None, domain: ScalarDomain = ScalarDomain.INT,
            witness: bool = False, verify: bool = False) -> dict:
    A = _jordan_input(data, kind, domain)
    diag, s = smith_normal_form(A)
    result = {"input": encode_jordan(A), "kind": A.kind.value, "smith": encode_smith(diag),
              "multiplier": format_scalar(s.multiplier)}
    if witness:
        result["witness"] = encode_structure(s)
    if verify:
        image = s.apply(A)
        ok = image.is_diagonal() and tuple(image.diag) == tuple(diag.d)
        result["verified"] = ok
        if not ok:
            raise InvariantError("Smith witness replay did not reproduce the diagonal.")
    return result


def cmd_convert(data, target: str, kind: Optional[JordanKind] = None,
                domain: ScalarDomain = ScalarDomain.INT) -> dict:
    """element -> cube/wedge, or cube/wedge -> element."""
    if isinstance(data, dict) and "cube" in data:
        return {"element": encode_element(from_cube(decode_cube(data), domain))}
    if isinstance(data, dict) and "wedge" in data:
        return {"element": encode_element(from_wedge(decode_wedge(data), domain))}
    x = decode_element(data, kind, domain)
    if target == "cube":
        return encode_cube(to_cube(x))
    if target == "wedge":
        return encode_wedge(to_wedge(x))
    return {"element": encode_element(x)}


def show_transform(result: dict) -> None:
    Display.print_header("Transformation result")
    for key in ("reduced", "canonical", "element"):
        if key in result:
            Display.print_element(result[key], title=key.capitalize())
    stats = {k: result[k] for k in ("epsilon", "k", "q_prime", "multiplier") if k in result}
    if "smith" in result:
        stats["Smith diagonal"] = ", ".join(str(v) for v in result["smith"]["d"])
    if "cube" in result:
        stats["cube"] = result["cube"]
    if "wedge" in result:
        stats["wedge"] = result["wedge"]
    if stats:
        print_stats("Summary", stats)
    if "witness" in result:
        Display.print_subheader(f"Witness ({len(result['witness'])} steps)")
        if result["witness"] and "gen" in result["witness"][0]:
            Display.print_word(result["witness"])
        else:
            for move in result["witness"]:
                print_info(str(move))
    if "verified" in result:
        if result["verified"]:
            print_success("Witness replay verified")
        else:
            print_warning("Witness replay FAILED")
