"""Corpus serialization: a line-delimited JSON record format plus ingest.

One document per line, UTF-8:

    {"id": "370L0220", "sector": 3, "date_of_effect": "1970-03-20",
     "date_of_expiry": "1989-07-17",
     "references": [{"target": "383L0351", "type": "amended_by"}]}

``date_of_expiry`` is omitted for documents without a sunset clause and
maps to the 9999-12-31 sentinel.  Amendment references are reciprocal:
ingesting either orientation materializes both directed edges, and
duplicates are deduplicated, so a corpus may carry one or both sides.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from datetime import date
from typing import IO, Iterable, Iterator

from .errors import CorpusError
from .graph import (
    RECIPROCAL_TYPES,
    SENTINEL_EXPIRY,
    LegalDocument,
    LegislationGraph,
    Reference,
    RefType,
    Sector,
)

_TYPE_TOKENS = {kind.value: kind for kind in RefType}


@dataclass(frozen=True)
class RecordReference:
    target: str
    kind: RefType


@dataclass(frozen=True)
class DocumentRecord:
    """One corpus line: a document plus its outgoing references."""

    id: str
    sector: int
    date_of_effect: date
    date_of_expiry: date | None = None  # None -> sentinel
    references: tuple[RecordReference, ...] = ()


@dataclass
class IngestReport:
    """Counts accumulated while building a graph from a record stream."""

    nodes: int = 0
    edges: int = 0
    stubs: int = 0
    deduplicated: int = 0
    per_type_counts: dict[str, int] = field(default_factory=dict)
    stub_ids: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "stubs": self.stubs,
            "deduplicated": self.deduplicated,
            "per_type_counts": dict(self.per_type_counts),
        }


def _parse_date(raw: object, line_no: int, fieldname: str) -> date:
    if not isinstance(raw, str):
        raise CorpusError(f"line {line_no}: {fieldname} must be an ISO date string")
    try:
        return date.fromisoformat(raw)
    except ValueError as exc:
        raise CorpusError(f"line {line_no}: bad {fieldname} {raw!r}: {exc}") from None


def parse_record(line: str, line_no: int = 0) -> DocumentRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {line_no}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise CorpusError(f"line {line_no}: record must be a JSON object")
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusError(f"line {line_no}: missing or empty id")
    sector = obj.get("sector")
    if not isinstance(sector, int) or isinstance(sector, bool) or not 1 <= sector <= 6:
        raise CorpusError(f"line {line_no}: sector must be an integer in 1..6")
    effect = _parse_date(obj.get("date_of_effect"), line_no, "date_of_effect")
    expiry_raw = obj.get("date_of_expiry")
    expiry = None
    if expiry_raw is not None:
        expiry = _parse_date(expiry_raw, line_no, "date_of_expiry")
    refs = []
    for item in obj.get("references", []):
        if not isinstance(item, dict):
            raise CorpusError(f"line {line_no}: reference entries must be objects")
        target = item.get("target")
        if not isinstance(target, str) or not target:
            raise CorpusError(f"line {line_no}: reference missing target id")
        token = item.get("type")
        kind = _TYPE_TOKENS.get(token) if isinstance(token, str) else None
        if kind is None:
            raise CorpusError(
                f"line {line_no}: unknown reference type {token!r}; "
                f"expected one of {sorted(_TYPE_TOKENS)}"
            )
        refs.append(RecordReference(target, kind))
    return DocumentRecord(doc_id, sector, effect, expiry, tuple(refs))


def read_records(stream: IO[str] | Iterable[str]) -> Iterator[DocumentRecord]:
    """Parse a JSONL stream, skipping blank lines."""
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        yield parse_record(line, line_no)


def record_to_json(record: DocumentRecord) -> str:
    obj: dict = {
        "id": record.id,
        "sector": record.sector,
        "date_of_effect": record.date_of_effect.isoformat(),
    }
    if record.date_of_expiry is not None and record.date_of_expiry != SENTINEL_EXPIRY:
        obj["date_of_expiry"] = record.date_of_expiry.isoformat()
    obj["references"] = [
        {"target": ref.target, "type": ref.kind.value} for ref in record.references
    ]
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def write_records(records: Iterable[DocumentRecord], stream: IO[str]) -> None:
    for record in records:
        stream.write(record_to_json(record))
        stream.write("\n")


def ingest(records: Iterable[DocumentRecord | str],
           mode: str = "strict") -> tuple[LegislationGraph, IngestReport]:
    """Build a sealed graph from records.

    ``mode`` is ``strict`` (references to unknown ids abort) or
    ``lenient`` (unknown targets become stub documents: sector 3,
    effect date copied from the referencing document, sentinel expiry).
    Reciprocal amendment edges are materialized in both modes.
    """
    if mode not in ("strict", "lenient"):
        raise CorpusError(f"unknown ingest mode {mode!r}")
    materialized: list[DocumentRecord] = []
    for item in records:
        if isinstance(item, str):
            materialized.append(parse_record(item))
        else:
            materialized.append(item)

    graph = LegislationGraph()
    for rec in materialized:
        expiry = rec.date_of_expiry if rec.date_of_expiry is not None else SENTINEL_EXPIRY
        graph.add_document(
            LegalDocument(rec.id, Sector(rec.sector), rec.date_of_effect, expiry)
        )

    report = IngestReport()
    stub_ids: list[str] = []
    per_type = {kind.value: 0 for kind in RefType}
    for rec in materialized:
        for ref in rec.references:
            if ref.target not in graph:
                if mode == "strict":
                    raise CorpusError(
                        f"document {rec.id!r} references unknown id {ref.target!r}"
                    )
                graph.add_document(
                    LegalDocument(ref.target, Sector.LEGISLATION,
                                  rec.date_of_effect, SENTINEL_EXPIRY)
                )
                stub_ids.append(ref.target)
            for edge in _with_reciprocal(rec.id, ref):
                if graph.add_reference(edge):
                    per_type[edge.kind.value] += 1
                else:
                    report.deduplicated += 1

    graph.seal()
    report.nodes = graph.node_count
    report.edges = graph.edge_count
    report.stubs = len(stub_ids)
    report.stub_ids = tuple(stub_ids)
    report.per_type_counts = per_type
    return graph, report


def _with_reciprocal(source: str, ref: RecordReference) -> list[Reference]:
    edges = [Reference(source, ref.target, ref.kind)]
    reciprocal = RECIPROCAL_TYPES.get(ref.kind)
    if reciprocal is not None:
        edges.append(Reference(ref.target, source, reciprocal))
    return edges


def export(graph: LegislationGraph) -> Iterator[DocumentRecord]:
    """Emit one record per document, in insertion order.

    References are sorted by (target, type) so repeated
    ingest/export cycles are byte-stable; ``ingest(export(g))``
    reproduces the node and typed-edge sets of ``g`` exactly.
    """
    if not graph.sealed:
        raise CorpusError("export requires a sealed graph")
    for doc in graph.documents():
        refs = sorted(
            (RecordReference(target, kind) for target, kind in graph.out_references(doc.id)),
            key=lambda r: (r.target, r.kind.value),
        )
        yield DocumentRecord(
            id=doc.id,
            sector=doc.sector.value,
            date_of_effect=doc.date_of_effect,
            date_of_expiry=doc.date_of_expiry,
            references=tuple(refs),
        )


def export_text(graph: LegislationGraph) -> str:
    buffer = io.StringIO()
    write_records(export(graph), buffer)
    return buffer.getvalue()
