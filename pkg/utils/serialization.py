"""
JSON and CSV codecs for the CLI.

Elements are versioned with ``"format": "fmz-1"``. Integer scalars are
written as JSON integers, rationals as ``"p/q"`` strings. Indices in move
encodings are 1-based, as users type them.
"""

import csv
import json
import logging
import os
import sys
from typing import Iterable, List, Optional, Sequence

from models.composition import CompositionElement, ScalarDomain, element as comp_element
from models.cubes import BinaryQuadraticForm
from models.freudenthal import FreudenthalElement, GroupWord, Phi, Psi, Struct, Tau
from models.isomorphisms import Cube, WedgeElement
from models.jordan import JordanElement, JordanKind
from models.reduction import InvariantVector, OrbitLabel
from models.structure import (
    Congruence,
    DiagUnits,
    EtaMove,
    Permute,
    ScaleMove,
    SmithDiagonal,
    StructureMap,
    TransposeLike,
)
from utils.errors import DomainError, ParseError
from utils.helpers import format_scalar, parse_scalar

logger = logging.getLogger(__name__)

FORMAT_TAG = "fmz-1"


# -- raw JSON --------------------------------------------------------


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}.")


def read_input(source: str):
    """'-' reads stdin, an existing path reads the file, anything else is inline JSON."""
    if source == "-":
        return load_json(sys.stdin.read())
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as handle:
            return load_json(handle.read())
    return load_json(source)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def write_csv(headers: Sequence[str], rows: Iterable[Sequence], stream=None) -> None:
    writer = csv.writer(stream or sys.stdout, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)


def _require(data: dict, key: str, where: str):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{where} is missing the {key!r} field.")
    return data[key]


def _scalars(raw: Sequence, domain: ScalarDomain) -> List:
    if not isinstance(raw, list):
        raise ParseError(f"Expected a list of scalars, got {raw!r}.")
    return [domain.coerce(parse_scalar(v, domain.integral)) for v in raw]


def _encode_scalars(values) -> List:
    return [format_scalar(v) for v in values]


def parse_domain(raw: Optional[str]) -> ScalarDomain:
    try:
        return ScalarDomain(str(raw or "int").lower())
    except ValueError:
        raise DomainError(f"Unknown scalar domain {raw!r}; expected int or rat.")


# -- algebra elements ------------------------------------------------


def encode_composition(c: CompositionElement) -> dict:
    return {"algebra": c.algebra.name, "coords": _encode_scalars(c.coords)}


def encode_jordan(A: JordanElement) -> dict:
    data = {"diag": _encode_scalars(A.diag)}
    if A.off is not None:
        data["off"] = [_encode_scalars(o.coords) for o in A.off]
    return data


def decode_jordan(data, kind: JordanKind, domain: ScalarDomain) -> JordanElement:
    diag = _scalars(_require(data, "diag", "A Jordan element"), domain)
    if kind is JordanKind.DIAG3:
        if data.get("off"):
            raise DomainError("Diag3 elements have no off-diagonal entries.")
        return JordanElement.diagonal(kind, diag, domain)
    off_raw = data.get("off") or [[0] * kind.algebra.dim for _ in range(3)]
    if len(off_raw) != 3:
        raise ParseError("'off' needs three composition elements (x, y, z).")
    off = [comp_element(kind.algebra, _scalars(o, domain), domain) for o in off_raw]
    return JordanElement.hermitian_element(kind, diag, off, domain)


def encode_element(x: FreudenthalElement) -> dict:
    return {
        "format": FORMAT_TAG,
        "kind": x.kind.value,
        "scalars": x.domain.value,
        "alpha": format_scalar(x.alpha),
        "beta": format_scalar(x.beta),
        "A": encode_jordan(x.A),
        "B": encode_jordan(x.B),
    }


def decode_element(data, kind: Optional[JordanKind] = None,
                   domain: Optional[ScalarDomain] = None) -> FreudenthalElement:
    """Read an element; flags fill in kind and scalars the document leaves out."""
    if not isinstance(data, dict):
        raise ParseError("An element must be a JSON object.")
    tag = data.get("format", FORMAT_TAG)
    if tag != FORMAT_TAG:
        raise ParseError(f"Unsupported element format {tag!r}; expected {FORMAT_TAG!r}.")
    doc_kind = JordanKind.parse(data["kind"]) if "kind" in data else None
    if kind is not None and doc_kind is not None and kind is not doc_kind:
        raise DomainError(f"Kind mismatch: document says {doc_kind.value}, flag says {kind.value}.")
    kind = doc_kind or kind
    if kind is None:
        raise ParseError("No Jordan kind given; add \"kind\" or pass --kind.")
    doc_domain = parse_domain(data["scalars"]) if "scalars" in data else None
    if domain is not None and doc_domain is not None and domain is not doc_domain:
        raise DomainError(f"Scalar mismatch: document says {doc_domain.value}, flag says {domain.value}.")
    domain = doc_domain or domain or ScalarDomain.INT
    if "coords" in data:
        return FreudenthalElement.from_coordinates(kind, _scalars(data["coords"], domain), domain)
    alpha = domain.coerce(parse_scalar(_require(data, "alpha", "An element"), domain.integral))
    beta = domain.coerce(parse_scalar(_require(data, "beta", "An element"), domain.integral))
    zero = {"diag": [0, 0, 0]}
    A = decode_jordan(data.get("A", zero), kind, domain)
    B = decode_jordan(data.get("B", zero), kind, domain)
    return FreudenthalElement.build(alpha, beta, A, B)


# -- moves, maps and words -------------------------------------------


def _encode_unit(u):
    return encode_composition(u) if isinstance(u, CompositionElement) else format_scalar(u)


def encode_move(move) -> dict:
    if isinstance(move, Congruence):
        return {"move": "congruence", "i": move.i + 1, "j": move.j + 1, "c": encode_composition(move.c)}
    if isinstance(move, Permute):
        return {"move": "permute", "sigma": [s + 1 for s in move.sigma]}
    if isinstance(move, DiagUnits):
        return {"move": "diag_units", "units": [_encode_unit(u) for u in move.units]}
    if isinstance(move, ScaleMove):
        return {"move": "scale", "factor": format_scalar(move.factor)}
    if isinstance(move, TransposeLike):
        return {"move": "transpose"}
    if isinstance(move, EtaMove):
        return {
            "move": "eta",
            "A": [_encode_scalars(row) for row in move.A],
            "B": [_encode_scalars(row) for row in move.B],
        }
    raise DomainError(f"Cannot encode move {move!r}.")


def decode_move(data, kind: JordanKind, domain: ScalarDomain):
    name = _require(data, "move", "A structure move")
    if name == "congruence":
        c = _require(data, "c", "A congruence move")
        return Congruence(int(data["i"]) - 1, int(data["j"]) - 1,
                          comp_element(kind.algebra, _scalars(_require(c, "coords", "A unit"), domain), domain))
    if name == "permute":
        return Permute(tuple(int(s) - 1 for s in _require(data, "sigma", "A permute move")))
    if name == "diag_units":
        units = []
        for u in _require(data, "units", "A unit move"):
            if isinstance(u, dict):
                units.append(comp_element(kind.algebra, _scalars(u["coords"], domain), domain))
            else:
                units.append(domain.coerce(parse_scalar(u, domain.integral)))
        return DiagUnits(tuple(units))
    if name == "scale":
        return ScaleMove(domain.coerce(parse_scalar(_require(data, "factor", "A scale move"), domain.integral)))
    if name == "transpose":
        return TransposeLike()
    if name == "eta":
        A = tuple(tuple(_scalars(row, domain)) for row in _require(data, "A", "An eta move"))
        B = tuple(tuple(_scalars(row, domain)) for row in _require(data, "B", "An eta move"))
        return EtaMove(A, B)
    raise ParseError(f"Unknown structure move {name!r}.")


def encode_structure(s: StructureMap) -> List[dict]:
    return [encode_move(m) for m in s.moves]


def encode_generator(g) -> dict:
    if isinstance(g, Phi):
        return {"gen": "phi", "C": encode_jordan(g.C)}
    if isinstance(g, Psi):
        return {"gen": "psi", "D": encode_jordan(g.D)}
    if isinstance(g, Struct):
        return {"gen": "struct", "moves": encode_structure(g.s)}
    if isinstance(g, Tau):
        return {"gen": "tau"}
    raise DomainError(f"Cannot encode generator {g!r}.")


def decode_generator(data, kind: JordanKind, domain: ScalarDomain):
    name = _require(data, "gen", "A generator")
    if name == "phi":
        return Phi(decode_jordan(_require(data, "C", "A phi generator"), kind, domain))
    if name == "psi":
        return Psi(decode_jordan(_require(data, "D", "A psi generator"), kind, domain))
    if name == "struct":
        moves = tuple(decode_move(m, kind, domain) for m in _require(data, "moves", "A struct generator"))
        return Struct(StructureMap(kind, moves, domain))
    if name == "tau":
        return Tau()
    raise ParseError(f"Unknown generator {name!r}.")


def encode_word(word: GroupWord) -> List[dict]:
    return [encode_generator(g) for g in word]


def decode_word(data, kind: JordanKind, domain: ScalarDomain) -> GroupWord:
    if not isinstance(data, list):
        raise ParseError("A witness word must be a JSON list of generators.")
    return GroupWord(tuple(decode_generator(g, kind, domain) for g in data))


# -- results ---------------------------------------------------------


def encode_invariants(inv: InvariantVector) -> dict:
    return {"d1": inv.d1, "d2": inv.d2, "d3": inv.d3, "d4": inv.d4}


def encode_label(label: OrbitLabel, with_representative: bool = True) -> dict:
    data = {"variant": label.variant}
    for name in ("d1", "m", "epsilon", "k"):
        value = getattr(label, name)
        if value is not None:
            data[name] = format_scalar(value)
    if label.invariants is not None:
        data["invariants"] = encode_invariants(label.invariants)
    if with_representative and label.representative is not None:
        data["representative"] = encode_element(label.representative)
    return data


def label_key(label: OrbitLabel) -> str:
    """Compact text form used as a census bucket name."""
    if label.variant == "Rank1":
        return f"Rank1(d1={label.d1})"
    if label.variant == "Rank2":
        return f"Rank2(d1={label.d1},m={label.m})"
    if label.variant == "Projective":
        return f"Projective(eps={label.epsilon},k={label.k})"
    if label.variant == "Unclassified":
        return "Unclassified(d=%s)" % ",".join(str(v) for v in label.invariants.as_tuple())
    return label.variant


def encode_form(f: BinaryQuadraticForm) -> dict:
    return {"a": format_scalar(f.a), "b": format_scalar(f.b), "c": format_scalar(f.c)}


def encode_cube(c: Cube) -> dict:
    return {"cube": [[[format_scalar(v) for v in row] for row in plane] for plane in c.entries]}


def decode_cube(data) -> Cube:
    raw = _require(data, "cube", "A cube")
    try:
        entries = tuple(tuple(tuple(parse_scalar(raw[i][j][k]) for k in range(2)) for j in range(2)) for i in range(2))
    except (IndexError, TypeError):
        raise ParseError("A cube is a 2x2x2 nested list.")
    return Cube(entries)


def encode_wedge(w: WedgeElement) -> dict:
    return {"wedge": [format_scalar(v) for v in w.coords]}


def decode_wedge(data) -> WedgeElement:
    raw = _require(data, "wedge", "A wedge element")
    if not isinstance(raw, list) or len(raw) != 20:
        raise ParseError("A wedge element has exactly 20 coordinates.")
    return WedgeElement(tuple(parse_scalar(v) for v in raw))


def encode_smith(d: SmithDiagonal) -> dict:
    return {"d": [format_scalar(v) for v in d.d]}


def encode_matrix(M) -> List[List]:
    return [[format_scalar(v) for v in row] for row in M]
