"""
Evaluation and classification reports for a single module element.

Each ``cmd_*`` function returns a plain dict that main.py prints as JSON,
and each ``show_*`` function renders the same dict for ``--format text``.
"""

import logging

from models.freudenthal import (
    FreudenthalElement,
    content,
    module_basis,
    quartic_q,
    quartic_qprime,
    rank,
    symplectic,
    t_xxx,
)
from models.reduction import (
    REDUCIBLE_KINDS,
    classify_orbit,
    invariants,
    projectivity_report,
)
from utils.display import Display, print_info, print_stats
from utils.helpers import format_scalar
from utils.serialization import encode_element, encode_invariants, encode_label

logger = logging.getLogger(__name__)


def _gram_row(x: FreudenthalElement):
    """{x, e_j} against the coordinate basis."""
    return [format_scalar(symplectic(x, e)) for e in module_basis(x.kind, x.domain)]


def cmd_eval(x: FreudenthalElement) -> dict:
    logger.info("evaluating a %s element over %s", x.kind.value, x.domain.value)
    report = {
        "element": encode_element(x),
        "q": format_scalar(quartic_q(x)),
        "q_prime": format_scalar(quartic_qprime(x)),
        "gram_row": _gram_row(x),
        "t_xxx": encode_element(t_xxx(x)),
        "rank": rank(x),
    }
    if x.domain.integral:
        report["content"] = content(x)
        report["invariants"] = encode_invariants(invariants(x))
        if x.kind in REDUCIBLE_KINDS:
            projectivity = projectivity_report(x)
            report["projective"] = projectivity.projective
            report["gcd_t"] = projectivity.gcd_t
            if projectivity.via_representative:
                report["caveat"] = "gcd T(x,x,x) = 2: decided on one diagonal reduced representative"
    return report


def cmd_classify(x: FreudenthalElement) -> dict:
    label = classify_orbit(x)
    logger.info("classified as %s", label.variant)
    return {"element": encode_element(x), "label": encode_label(label), "q_prime": format_scalar(quartic_qprime(x))}


def show_eval(report: dict) -> None:
    Display.print_header("Element report")
    Display.print_element(report["element"])
    stats = {
        "q": report["q"],
        "q'": report["q_prime"],
        "rank": report["rank"],
    }
    if "invariants" in report:
        inv = report["invariants"]
        stats["content"] = report["content"]
        stats["d1..d4"] = f"{inv['d1']}, {inv['d2']}, {inv['d3']}, {inv['d4']}"
    if "projective" in report:
        stats["projective"] = report["projective"]
        stats["gcd T(x,x,x)"] = report["gcd_t"]
    print_stats("Invariants", stats)
    print_info("Gram row {x, e_j}: " + " ".join(str(v) for v in report["gram_row"]))
    if "caveat" in report:
        Display.print_warning(report["caveat"])


def show_classify(report: dict) -> None:
    Display.print_header("Orbit label")
    Display.print_element(report["element"])
    Display.print_label(report["label"])
