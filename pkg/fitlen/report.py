"""Plain-text tables and the stable key/value serialization of reports."""

import io
import logging
from typing import Any, Sequence

from pydantic import BaseModel
from ruamel.yaml import YAML
from ruamel.yaml.comments import CommentedMap, CommentedSeq

from .models import BoundEntry, BoundReport, ClaimComparison, ReportDocument

logger = logging.getLogger(__name__)

ENTRY_HEADERS = ["bound", "inputs", "target", "actual", "value", "floor", "slack", "status", "note"]
CLAIM_HEADERS = ["quantity", "formula", "claimed (printed)", "measured", "status"]


def text_table(headers: Sequence[str], rows: Sequence[Sequence[Any]], indent: str = "  ") -> list[str]:
    """Left-aligned columns separated by two spaces; trailing blanks stripped."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(cells):
        lines.append((indent + "  ".join(c.ljust(w) for c, w in zip(row, widths))).rstrip())
        if n == 0:
            lines.append(indent + "  ".join("-" * w for w in widths))
    return lines


def _inputs_text(inputs: dict[str, str]) -> str:
    return " ".join(f"{k}={v}" for k, v in inputs.items()) or "-"


def entry_row(entry: BoundEntry) -> list[str]:
    applicable = entry.status != "N/A"
    return [
        entry.name,
        _inputs_text(entry.inputs),
        entry.target,
        str(entry.actual),
        entry.value_text(),
        str(entry.floor) if applicable else "-",
        str(entry.slack) if applicable else "-",
        entry.status,
        entry.note,
    ]


def claim_row(claim: ClaimComparison) -> list[str]:
    measured = "-" if claim.measured is None else str(claim.measured)
    return [claim.quantity, claim.formula, str(claim.claimed), measured, claim.status]


def format_bound_report(report: BoundReport, timings: bool = False) -> list[str]:
    """Table section of a bound report."""
    lines = [f"h(G) = {report.h_actual}    w(G) = {report.weight}", "", "profile:"]
    lines.extend(text_table(["sigma", "h"], [[k, v] for k, v in report.profile.items()]))
    frak = "  ".join(f"{ell}:{v}" for ell, v in report.frak.items())
    lines.extend(["", f"max Hall length by subset size: {frak}", "", "bounds:"])
    lines.extend(text_table(ENTRY_HEADERS, [entry_row(e) for e in report.entries]))
    lines.extend(["", "lemmas:"])
    for lemma in report.lemmas:
        status = "PASS" if lemma.passed else "VIOLATION"
        lines.append(f"  {lemma.name}: {lemma.checked} cases, {status}")
        lines.extend(f"    {failure}" for failure in lemma.failures)
    if report.observations:
        lines.extend(["", "observations:"])
        lines.extend(f"  - {obs}" for obs in report.observations)
    if timings and report.timings:
        lines.extend(["", "timings:"])
        lines.extend(f"  {phase}: {seconds:.3f}s" for phase, seconds in report.timings.items())
    return lines


def format_document(doc: ReportDocument, timings: bool = False) -> str:
    """Render a report document as the plain-text table format."""
    lines = [f"fitlen {doc.tool_version} {doc.command}", f"expression: {doc.expression}"]
    if doc.ell is not None:
        lines.append(f"ell: {doc.ell}")
    lines.append("config: " + " ".join(f"{k}={v}" for k, v in doc.config.items()))
    lines.extend(f"notice: {n}" for n in doc.notices)
    if doc.summary is not None:
        s = doc.summary
        lines.extend(
            [
                "",
                f"degree {s.degree}, order {s.order_factored} = {s.order}",
                f"primes {{{','.join(map(str, s.primes))}}}, w = {s.weight}",
            ]
        )
        if s.sylow is not None:
            lines.append(
                f"Sylow system: {'verified' if s.sylow.passed else 'FAILED'} "
                f"({len(s.sylow.checks)} checks)"
            )
    if doc.report is not None:
        lines.append("")
        lines.extend(format_bound_report(doc.report, timings))
    if doc.claims:
        lines.extend(["", "claims:"])
        lines.extend(text_table(CLAIM_HEADERS, [claim_row(c) for c in doc.claims]))
    if doc.arithmetic:
        lines.extend(["", "arithmetic:"])
        lines.extend(text_table(ENTRY_HEADERS, [entry_row(e) for e in doc.arithmetic]))
    lines.extend(["", f"result: {result_word(doc)}"])
    return "\n".join(lines) + "\n"


def result_word(doc: ReportDocument) -> str:
    if doc.exit_code == 0:
        return "PASS"
    if any(c.status == "MISMATCH" for c in doc.claims):
        return "MISMATCH"
    return "VIOLATION"


def flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    """Dotted-key pairs for nested mappings and lists, in their given order."""
    if isinstance(value, BaseModel):
        value = value.model_dump()
    if isinstance(value, dict):
        if not value and prefix:
            return []
        pairs = []
        for k, v in value.items():
            pairs.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return pairs
    if isinstance(value, (list, tuple)):
        pairs = []
        for i, v in enumerate(value):
            pairs.extend(flatten(v, f"{prefix}.{i}"))
        return pairs
    return [(prefix, value)]


def _flow(items: Sequence[Any]) -> CommentedSeq:
    seq = CommentedSeq(items)
    seq.fa.set_flow_style()
    return seq


def dump_kv(pairs: Sequence[tuple[str, Any]], table: Sequence[Sequence[Any]] = ()) -> str:
    """Serialize flat pairs plus an optional table section as YAML text."""
    data = CommentedMap()
    for key, value in pairs:
        data[key] = value
    if table:
        data["table"] = [_flow([str(c) for c in row]) for row in table]
    yaml = YAML()
    yaml.default_flow_style = False
    yaml.width = 4096
    buffer = io.StringIO()
    yaml.dump(data, buffer)
    return buffer.getvalue()


def document_kv(doc: ReportDocument, timings: bool = False) -> str:
    """Stable key/value form of a report document.

    Without ``timings`` the output depends only on the inputs, the
    configuration echo and the tool version.
    """
    exclude: dict[str, Any] = {} if timings else {"report": {"timings"}}
    payload = doc.model_dump(exclude=exclude)
    pairs = flatten(payload)
    pairs.append(("result", result_word(doc)))
    pairs.append(("exit_code", doc.exit_code))
    table: list[list[Any]] = []
    if doc.report is not None or doc.arithmetic:
        table.append(["section"] + ENTRY_HEADERS)
    if doc.report is not None:
        table.extend(["bounds"] + entry_row(e) for e in doc.report.entries)
    if doc.arithmetic:
        table.extend(["arithmetic"] + entry_row(e) for e in doc.arithmetic)
    if doc.claims:
        table.append(["section"] + CLAIM_HEADERS)
        table.extend(["claims"] + claim_row(c) for c in doc.claims)
    return dump_kv(pairs, table)
