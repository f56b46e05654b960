from __future__ import annotations

import io
import json
from datetime import date

import numpy as np
import pytest

from legisnet import (
    CorpusError,
    GeneratorConfig,
    RefType,
    export,
    export_text,
    generate,
    ingest,
    read_records,
    write_records,
)
from legisnet.corpus import parse_record


def edge_set(graph):
    return {(r.source, r.target, r.kind) for r in graph.references()}


def doc_set(graph):
    return {(d.id, d.sector, d.date_of_effect, d.date_of_expiry)
            for d in graph.documents()}


class TestParsing:
    def test_minimal_record(self):
        rec = parse_record('{"id": "X", "sector": 3,'
                           ' "date_of_effect": "1970-03-20"}')
        assert rec.id == "X"
        assert rec.date_of_expiry is None
        assert rec.references == ()

    def test_bad_json_names_line(self):
        with pytest.raises(CorpusError, match="line 3"):
            list(read_records(["{}"] * 0 + [
                '{"id": "A", "sector": 1, "date_of_effect": "1970-01-01"}',
                "",
                "{nope",
            ]))

    def test_bad_sector(self):
        with pytest.raises(CorpusError, match="sector"):
            parse_record('{"id": "X", "sector": 9,'
                         ' "date_of_effect": "1970-03-20"}', 4)

    def test_bad_date(self):
        with pytest.raises(CorpusError, match="date_of_effect"):
            parse_record('{"id": "X", "sector": 3,'
                         ' "date_of_effect": "1970-13-01"}', 1)

    def test_unknown_reference_token(self):
        with pytest.raises(CorpusError, match="cited_by"):
            parse_record('{"id": "X", "sector": 3, "date_of_effect":'
                         ' "1970-03-20", "references":'
                         ' [{"target": "Y", "type": "cited_by"}]}', 2)


class TestIngest:
    def test_amendment_chain_reciprocal_materialization(self, amendment_chain_jsonl):
        graph, report = ingest(read_records(io.StringIO(amendment_chain_jsonl)))
        assert graph.node_count == 3
        assert graph.edge_count == 4
        assert report.nodes == 3 and report.edges == 4
        amendments = {k for _, _, k in edge_set(graph)}
        assert amendments == {RefType.AMENDMENT_TO, RefType.AMENDED_BY}
        assert report.per_type_counts["amendment_to"] == 2
        assert report.per_type_counts["amended_by"] == 2

    def test_empty_stream(self):
        graph, report = ingest([])
        assert graph.node_count == 0 and graph.edge_count == 0
        assert report.to_json_dict()["nodes"] == 0
        assert report.to_json_dict()["edges"] == 0

    def test_strict_dangling_reference_names_both_ids(self):
        lines = ['{"id": "A", "sector": 3, "date_of_effect": "1980-01-01",'
                 ' "references": [{"target": "999X9999", "type": "other"}]}']
        with pytest.raises(CorpusError) as err:
            ingest(read_records(lines), mode="strict")
        assert "A" in str(err.value) and "999X9999" in str(err.value)

    def test_lenient_creates_flagged_stub(self):
        lines = ['{"id": "A", "sector": 1, "date_of_effect": "1980-05-05",'
                 ' "references": [{"target": "999X9999", "type": "other"}]}']
        graph, report = ingest(read_records(lines), mode="lenient")
        assert report.stubs == 1
        assert report.stub_ids == ("999X9999",)
        stub = graph.document("999X9999")
        assert stub.sector.value == 3
        assert stub.date_of_effect == date(1980, 5, 5)  # copied from referrer
        assert stub.date_of_expiry == date(9999, 12, 31)

    def test_both_amendment_sides_deduplicate(self):
        lines = [
            '{"id": "A", "sector": 3, "date_of_effect": "1970-01-01",'
            ' "references": [{"target": "B", "type": "amended_by"}]}',
            '{"id": "B", "sector": 3, "date_of_effect": "1975-01-01",'
            ' "references": [{"target": "A", "type": "amendment_to"}]}',
        ]
        graph, report = ingest(read_records(lines))
        assert graph.edge_count == 2
        assert report.deduplicated == 2

    def test_unknown_mode(self):
        with pytest.raises(CorpusError):
            ingest([], mode="other")


class TestRoundTrip:
    def test_amendment_chain_round_trip(self, amendment_chain_jsonl):
        g1, _ = ingest(read_records(io.StringIO(amendment_chain_jsonl)))
        g2, _ = ingest(export(g1))
        assert doc_set(g1) == doc_set(g2)
        assert edge_set(g1) == edge_set(g2)

    def test_empty_round_trip(self):
        g, _ = ingest([])
        assert export_text(g) == ""

    def test_synthetic_500_sorted_triples(self):
        g = generate(GeneratorConfig(years=(1980, 1989), docs_per_year=50,
                                     densification_exponent=1.2,
                                     sunset_probability=0.3, seed=3))
        g2, _ = ingest(read_records(io.StringIO(export_text(g))))
        assert sorted((r.source, r.target, r.kind.value)
                      for r in g.references()) == \
               sorted((r.source, r.target, r.kind.value)
                      for r in g2.references())
        assert doc_set(g) == doc_set(g2)

    def test_export_is_ingest_stable_bytes(self):
        g = generate(GeneratorConfig(years=(1990, 1992), docs_per_year=20,
                                     seed=9))
        text1 = export_text(g)
        g2, _ = ingest(read_records(io.StringIO(text1)))
        assert export_text(g2) == text1

    def test_sentinel_expiry_omitted_in_json(self):
        g = generate(GeneratorConfig(years=(1990, 1990), docs_per_year=5,
                                     seed=1))
        for line in export_text(g).splitlines():
            assert "9999-12-31" not in line
            json.loads(line)  # stays valid JSON

    def test_random_corpora_isomorphic(self):
        rng = np.random.default_rng(11)
        for trial in range(10):
            g = generate(GeneratorConfig(
                years=(2000, 2000 + int(rng.integers(1, 6))),
                docs_per_year=int(rng.integers(5, 30)),
                densification_exponent=float(rng.uniform(1.0, 1.3)),
                sunset_probability=float(rng.uniform(0, 0.5)),
                seed=trial,
            ))
            g2, _ = ingest(export(g))
            assert doc_set(g) == doc_set(g2)
            assert edge_set(g) == edge_set(g2)


class TestWriteRecords:
    def test_write_then_read(self, amendment_chain_jsonl):
        g, _ = ingest(read_records(io.StringIO(amendment_chain_jsonl)))
        buf = io.StringIO()
        write_records(export(g), buf)
        again = list(read_records(io.StringIO(buf.getvalue())))
        assert {r.id for r in again} == {"370L0220", "383L0351", "389L0491"}
