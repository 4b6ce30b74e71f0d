"""
Orbit census: classify many elements and bucket them by (q', label).

Diag3 is enumerated exhaustively over [-h, h]^8; larger kinds are sampled,
sample i drawing from its own Random(seed * 1000003 + i). Work is split
into contiguous index chunks and fanned out over a multiprocessing pool;
``Pool.map`` keeps chunk order, so the merged table does not depend on
the number of workers.
"""

import logging
import random
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from config.settings import FreudenthalConfig
from models.composition import ScalarDomain
from models.freudenthal import FreudenthalElement, quartic_qprime, random_element
from models.jordan import JordanKind, embed_jordan
from models.reduction import classify_orbit, is_fundamental_discriminant, projective_canonicalize
from utils.display import Display, print_stats, print_table, print_warning
from utils.errors import FreudenthalError
from utils.serialization import encode_element, encode_label, label_key
from utils.validation import validate_height

logger = logging.getLogger(__name__)

SAMPLE_SALT = 1000003


@dataclass
class CensusRecord:
    norm: int
    label: dict
    count: int
    sample: FreudenthalElement


@dataclass
class CensusResult:
    kind: JordanKind
    mode: str
    total: int
    records: List[CensusRecord] = field(default_factory=list)
    counterexamples: List[dict] = field(default_factory=list)
    truncated: bool = False


def _diag3_element(index: int, height: int) -> FreudenthalElement:
    """Mixed-radix decoding of an index into eight coordinates in [-h, h]."""
    base = 2 * height + 1
    coords = []
    for _ in range(8):
        index, digit = divmod(index, base)
        coords.append(digit - height)
    return FreudenthalElement.from_coordinates(JordanKind.DIAG3, coords)


def _element_at(kind: JordanKind, index: int, height: int, seed: int) -> FreudenthalElement:
    if kind is JordanKind.DIAG3:
        return _diag3_element(index, height)
    rng = random.Random(seed * SAMPLE_SALT + index)
    return random_element(kind, rng, height, ScalarDomain.INT)


def _verify_projective(x: FreudenthalElement) -> bool:
    eps, k, word = projective_canonicalize(x)
    source = x
    if x.kind is JordanKind.DIAG3:
        source = FreudenthalElement(x.alpha, x.beta, embed_jordan(x.A, JordanKind.H3B), embed_jordan(x.B, JordanKind.H3B))
    target = FreudenthalElement.reduced(source.kind, 1, eps, (1, 1, k), source.domain)
    return word.apply(source) == target


def _census_chunk(task: Tuple) -> Tuple[Dict, List[dict]]:
    """Classify indices [start, stop); returns ordered buckets and any counterexamples."""
    kind, start, stop, height, seed, verify = task
    buckets: Dict[Tuple[int, str], list] = {}
    problems: List[dict] = []
    for index in range(start, stop):
        x = _element_at(kind, index, height, seed)
        norm = quartic_qprime(x)
        try:
            label = classify_orbit(x)
        except FreudenthalError as exc:
            problems.append({"index": index, "element": encode_element(x), "error": exc.to_dict()})
            continue
        if label.variant != "Projective" and is_fundamental_discriminant(norm):
            problems.append({"index": index, "element": encode_element(x),
                             "error": {"error": "NonProjectiveFundamental", "message": f"q'={norm}"}})
        if verify and label.variant == "Projective" and not _verify_projective(x):
            problems.append({"index": index, "element": encode_element(x),
                             "error": {"error": "ReplayMismatch", "message": "witness replay failed"}})
        key = (norm, label_key(label))
        if key in buckets:
            buckets[key][1] += 1
        else:
            buckets[key] = [encode_label(label, with_representative=False), 1, x]
    return buckets, problems


def _chunks(total: int, pieces: int) -> List[Tuple[int, int]]:
    pieces = max(1, min(pieces, total))
    step, extra = divmod(total, pieces)
    bounds, start = [], 0
    for i in range(pieces):
        stop = start + step + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def run_census(kind: JordanKind, height: int, samples: int, seed: int, jobs: int = 1,
               verify: bool = False) -> CensusResult:
    validate_height(height)
    if kind is JordanKind.DIAG3:
        mode, total = "exhaustive", (2 * height + 1) ** 8
    else:
        mode, total = "sampled", samples
    truncated = total > FreudenthalConfig.CENSUS_LIMIT
    if truncated:
        logger.warning("census of %d elements cut to the limit of %d", total, FreudenthalConfig.CENSUS_LIMIT)
        total = FreudenthalConfig.CENSUS_LIMIT
    tasks = [(kind, a, b, height, seed, verify) for a, b in _chunks(total, 4 * max(1, jobs))]
    logger.info("census: %s %s over %d elements in %d chunks, %d jobs", kind.value, mode, total, len(tasks), jobs)
    if jobs > 1:
        with Pool(jobs) as pool:
            parts = pool.map(_census_chunk, tasks)
    else:
        parts = [_census_chunk(t) for t in tasks]

    merged: Dict[Tuple[int, str], list] = {}
    problems: List[dict] = []
    for buckets, chunk_problems in parts:
        problems.extend(chunk_problems)
        for key, (label, count, sample) in buckets.items():
            if key in merged:
                merged[key][1] += count
            else:
                merged[key] = [label, count, sample]

    result = CensusResult(kind, mode, total, truncated=truncated)
    projective_by_norm: Dict[int, set] = {}
    for (norm, key) in sorted(merged):
        label, count, sample = merged[(norm, key)]
        result.records.append(CensusRecord(norm, label, count, sample))
        if label["variant"] == "Projective":
            projective_by_norm.setdefault(norm, set()).add(key)
    for norm, keys in sorted(projective_by_norm.items()):
        if len(keys) > 1:
            result.counterexamples.append({"norm": norm, "labels": sorted(keys)})
    result.counterexamples.extend(problems)
    if result.counterexamples:
        logger.warning("census found %d counterexamples", len(result.counterexamples))
    return result


def cmd_census(kind: Optional[JordanKind] = None, height: Optional[int] = None,
               samples: Optional[int] = None, seed: Optional[int] = None,
               jobs: Optional[int] = None, verify: bool = False) -> CensusResult:
    """Census with FreudenthalConfig filling in every unset option."""
    return run_census(
        kind or JordanKind.DIAG3,
        FreudenthalConfig.HEIGHT if height is None else height,
        FreudenthalConfig.SAMPLES if samples is None else samples,
        FreudenthalConfig.SEED if seed is None else seed,
        jobs or FreudenthalConfig.JOBS,
        verify,
    )


def census_to_json(result: CensusResult) -> list:
    """Records first, then a summary object, then the truncation marker if any."""
    rows = [
        {"norm": r.norm, "label": r.label, "count": r.count, "sample": encode_element(r.sample)}
        for r in result.records
    ]
    rows.append({
        "kind": result.kind.value,
        "mode": result.mode,
        "total": result.total,
        "counterexamples": result.counterexamples,
    })
    if result.truncated:
        rows.append({"truncated": True})
    return rows


CSV_HEADERS = ["norm", "label", "count", "sample"]


def census_to_rows(result: CensusResult) -> List[list]:
    rows = [
        [r.norm, label_key_from_dict(r.label), r.count, " ".join(str(v) for v in r.sample.coordinates())]
        for r in result.records
    ]
    if result.truncated:
        rows.append(["truncated", "", "", ""])
    return rows


def label_key_from_dict(label: dict) -> str:
    fields = ",".join(f"{k}={v}" for k, v in label.items() if k not in ("variant", "invariants"))
    if "invariants" in label:
        fields = ",".join(str(v) for v in label["invariants"].values())
    return f"{label['variant']}({fields})" if fields else label["variant"]


def show_census(result: CensusResult) -> None:
    Display.print_header(f"Census of {result.kind.value} ({result.mode})")
    rows = [[r.norm, label_key_from_dict(r.label), r.count] for r in result.records]
    print_table(["q'", "label", "count"], rows)
    print_stats("Summary", {
        "elements": result.total,
        "buckets": len(result.records),
        "counterexamples": len(result.counterexamples),
        "truncated": result.truncated,
    })
    for problem in result.counterexamples[:10]:
        print_warning(str(problem))
