"""In-memory model of a legislation corpus as a typed, temporal multigraph.

Nodes are legal documents carrying a sector classification and an
effect/expiry validity interval.  Edges are typed directed references
between documents.  Multiple edges of different types may connect the
same ordered pair of documents; the triple (source, target, type) is
unique.

The graph has a two-phase life cycle: a single-writer construction
phase (``add_document`` / ``add_reference``) followed by ``seal()``,
after which the graph is immutable and every analysis operation is a
read-only, concurrency-safe query.  Sealing builds integer index
arrays so the analysis modules can hand the topology to numpy and
scipy directly; derived views (filters, snapshots) are assembled from
those arrays without re-running per-edge validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable, Iterator

import numpy as np
from scipy import sparse

from .errors import ValidationError

# Documents adopted without an explicit sunset clause are modelled as
# expiring at the end of year 9999; the sentinel is an ordinary
# comparable date, never special-cased.
SENTINEL_EXPIRY = date(9999, 12, 31)


class Sector(Enum):
    """Top-level classification of a legal document (stable codes 1-6)."""

    TREATIES = 1
    INTERNATIONAL_AGREEMENTS = 2
    LEGISLATION = 3
    COMPLEMENTARY_LEGISLATION = 4
    PREPARATORY_ACTS = 5
    JURISPRUDENCE = 6


class RefType(Enum):
    """Semantic label of a cross-reference between two documents."""

    AMENDED_BY = "amended_by"
    AMENDMENT_TO = "amendment_to"
    LEGAL_BASIS = "legal_basis"
    INSTRUMENTS_CITED = "instruments_cited"
    AFFECTED_BY_CASE = "affected_by_case"
    OTHER = "other"


# Amendment relations are stored as two directed edges, one per
# orientation; this maps each onto its reciprocal type.
RECIPROCAL_TYPES = {
    RefType.AMENDMENT_TO: RefType.AMENDED_BY,
    RefType.AMENDED_BY: RefType.AMENDMENT_TO,
}

_REFTYPE_ORDER = tuple(RefType)
_REFTYPE_CODE = {kind: i for i, kind in enumerate(_REFTYPE_ORDER)}


def reftype_code(kind: RefType) -> int:
    """Stable small-integer code for a reference type."""
    return _REFTYPE_CODE[kind]


def reftype_from_code(code: int) -> RefType:
    return _REFTYPE_ORDER[code]


@dataclass(frozen=True)
class LegalDocument:
    """A node: one legal document with its validity interval."""

    id: str
    sector: Sector
    date_of_effect: date
    date_of_expiry: date = SENTINEL_EXPIRY

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("document id must be a non-empty string")
        if self.date_of_effect > self.date_of_expiry:
            raise ValidationError(
                f"document {self.id!r}: date_of_effect {self.date_of_effect} "
                f"is after date_of_expiry {self.date_of_expiry}"
            )

    def active_at(self, when: date) -> bool:
        """True when ``when`` falls inside the closed validity interval."""
        return self.date_of_effect <= when <= self.date_of_expiry


@dataclass(frozen=True)
class Reference:
    """A typed directed edge from one document to another."""

    source: str
    target: str
    kind: RefType

    def __post_init__(self) -> None:
        if not self.source or not self.target:
            raise ValidationError("reference endpoints must be non-empty ids")
        if self.source == self.target:
            raise ValidationError(
                f"self-reference on {self.source!r} is excluded from the model"
            )


class LegislationGraph:
    """Typed temporal directed multigraph over legal documents.

    Mutations are accepted only before :meth:`seal`.  After sealing,
    the topology lives in integer edge arrays; per-node adjacency
    lists are materialized lazily for id-level queries.
    """

    def __init__(self) -> None:
        self._docs: dict[str, LegalDocument] = {}
        self._out: dict[str, list[tuple[str, RefType]]] | None = {}
        self._in: dict[str, list[tuple[str, RefType]]] | None = {}
        self._edge_keys: set[tuple[str, str, RefType]] | None = set()
        self._edge_count = 0
        self._sealed = False
        # built at seal time
        self._ids: tuple[str, ...] = ()
        self._index: dict[str, int] = {}
        self._src = np.empty(0, dtype=np.int64)
        self._dst = np.empty(0, dtype=np.int64)
        self._kind = np.empty(0, dtype=np.int8)
        self._csr_out: sparse.csr_matrix | None = None
        self._csr_in: sparse.csr_matrix | None = None
        self._projection: SimpleProjection | None = None
        self._sectors: np.ndarray | None = None
        self._effect_ord: np.ndarray | None = None
        self._expiry_ord: np.ndarray | None = None

    # -- construction phase -------------------------------------------------

    def add_document(self, doc: LegalDocument) -> None:
        self._require_unsealed()
        if doc.id in self._docs:
            raise ValidationError(f"duplicate document id {doc.id!r}")
        self._docs[doc.id] = doc
        self._out[doc.id] = []
        self._in[doc.id] = []

    def add_reference(self, ref: Reference) -> bool:
        """Store a typed edge; duplicate triples are dropped silently.

        Returns True when the edge was new, False when deduplicated.
        """
        self._require_unsealed()
        for endpoint in (ref.source, ref.target):
            if endpoint not in self._docs:
                raise ValidationError(
                    f"reference {ref.source!r} -> {ref.target!r}: "
                    f"unknown document {endpoint!r}"
                )
        key = (ref.source, ref.target, ref.kind)
        if key in self._edge_keys:
            return False
        self._edge_keys.add(key)
        self._out[ref.source].append((ref.target, ref.kind))
        self._in[ref.target].append((ref.source, ref.kind))
        self._edge_count += 1
        return True

    def seal(self) -> "LegislationGraph":
        """Freeze the graph and build the integer-indexed topology."""
        if self._sealed:
            return self
        self._sealed = True
        self._edge_keys = None  # dedup index no longer needed
        self._ids = tuple(self._docs)
        self._index = {doc_id: i for i, doc_id in enumerate(self._ids)}
        m = self._edge_count
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        kind = np.empty(m, dtype=np.int8)
        pos = 0
        for doc_id in self._ids:
            i = self._index[doc_id]
            for target, k in self._out[doc_id]:
                src[pos] = i
                dst[pos] = self._index[target]
                kind[pos] = _REFTYPE_CODE[k]
                pos += 1
        assert pos == m
        self._src, self._dst, self._kind = src, dst, kind
        return self

    @classmethod
    def _from_arrays(cls, docs: list[LegalDocument], src: np.ndarray,
                     dst: np.ndarray, kind: np.ndarray) -> "LegislationGraph":
        """Sealed graph from pre-validated parts (internal fast path)."""
        g = cls.__new__(cls)
        g._docs = {doc.id: doc for doc in docs}
        g._out = None
        g._in = None
        g._edge_keys = None
        g._edge_count = len(src)
        g._sealed = True
        g._ids = tuple(g._docs)
        g._index = {doc_id: i for i, doc_id in enumerate(g._ids)}
        g._src = np.asarray(src, dtype=np.int64)
        g._dst = np.asarray(dst, dtype=np.int64)
        g._kind = np.asarray(kind, dtype=np.int8)
        g._csr_out = None
        g._csr_in = None
        g._projection = None
        g._sectors = None
        g._effect_ord = None
        g._expiry_ord = None
        return g

    def _require_unsealed(self) -> None:
        if self._sealed:
            raise ValidationError("graph is sealed; mutation is not allowed")

    def _require_sealed(self) -> None:
        if not self._sealed:
            raise ValidationError("graph must be sealed before analysis")

    def _ensure_adjacency(self) -> None:
        if self._out is not None:
            return
        out: dict[str, list[tuple[str, RefType]]] = {i: [] for i in self._ids}
        inc: dict[str, list[tuple[str, RefType]]] = {i: [] for i in self._ids}
        ids = self._ids
        for s, d, k in zip(self._src.tolist(), self._dst.tolist(),
                           self._kind.tolist()):
            kind = _REFTYPE_ORDER[k]
            out[ids[s]].append((ids[d], kind))
            inc[ids[d]].append((ids[s], kind))
        self._out, self._in = out, inc

    # -- queries -------------------------------------------------------------

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def node_count(self) -> int:
        return len(self._docs)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def document(self, doc_id: str) -> LegalDocument:
        try:
            return self._docs[doc_id]
        except KeyError:
            raise ValidationError(f"unknown document id {doc_id!r}") from None

    def documents(self) -> Iterator[LegalDocument]:
        """Documents in insertion order."""
        return iter(self._docs.values())

    def references(self) -> Iterator[Reference]:
        if self._sealed:
            ids = self._ids
            for s, d, k in zip(self._src.tolist(), self._dst.tolist(),
                               self._kind.tolist()):
                yield Reference(ids[s], ids[d], _REFTYPE_ORDER[k])
        else:
            for doc_id, targets in self._out.items():
                for target, kind in targets:
                    yield Reference(doc_id, target, kind)

    def out_references(self, doc_id: str) -> list[tuple[str, RefType]]:
        self.document(doc_id)
        self._ensure_adjacency()
        return list(self._out[doc_id])

    def degree(self, doc_id: str, direction: str = "total",
               scope: str = "typed") -> int:
        """Degree of a node on the typed multigraph or its projection.

        ``direction`` is one of ``in``/``out``/``total``; ``scope`` is
        ``typed`` (all parallel typed edges count) or ``projection``
        (neighbour count on the simple undirected projection, where
        direction is ignored).
        """
        self.document(doc_id)
        if scope == "projection":
            self._require_sealed()
            return self.simple_projection().degree(self._index[doc_id])
        if scope != "typed":
            raise ValidationError(f"unknown degree scope {scope!r}")
        self._ensure_adjacency()
        if direction == "in":
            return len(self._in[doc_id])
        if direction == "out":
            return len(self._out[doc_id])
        if direction == "total":
            return len(self._in[doc_id]) + len(self._out[doc_id])
        raise ValidationError(f"unknown degree direction {direction!r}")

    # -- sealed topology -----------------------------------------------------

    @property
    def ids(self) -> tuple[str, ...]:
        self._require_sealed()
        return self._ids

    def index_of(self, doc_id: str) -> int:
        self._require_sealed()
        self.document(doc_id)
        return self._index[doc_id]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(source index, target index, type code) arrays, one row per edge."""
        self._require_sealed()
        return self._src, self._dst, self._kind

    def degree_array(self, direction: str) -> np.ndarray:
        """Typed-multigraph degree of every node, in id-index order."""
        self._require_sealed()
        n = self.node_count
        if direction == "in":
            return np.bincount(self._dst, minlength=n)
        if direction == "out":
            return np.bincount(self._src, minlength=n)
        if direction == "total":
            return (np.bincount(self._dst, minlength=n)
                    + np.bincount(self._src, minlength=n))
        raise ValidationError(f"unknown degree direction {direction!r}")

    def sector_codes(self) -> np.ndarray:
        """Sector code of every node, in id-index order."""
        self._require_sealed()
        if self._sectors is None:
            self._sectors = np.fromiter(
                (doc.sector.value for doc in self._docs.values()),
                dtype=np.int8, count=self.node_count)
        return self._sectors

    def date_ordinals(self) -> tuple[np.ndarray, np.ndarray]:
        """(effect, expiry) as proleptic-Gregorian ordinals per node."""
        self._require_sealed()
        if self._effect_ord is None:
            n = self.node_count
            self._effect_ord = np.fromiter(
                (doc.date_of_effect.toordinal() for doc in self._docs.values()),
                dtype=np.int64, count=n)
            self._expiry_ord = np.fromiter(
                (doc.date_of_expiry.toordinal() for doc in self._docs.values()),
                dtype=np.int64, count=n)
        return self._effect_ord, self._expiry_ord

    def adjacency(self, transpose: bool = False) -> sparse.csr_matrix:
        """Boolean CSR adjacency of the directed structure (types merged)."""
        self._require_sealed()
        if self._csr_out is None:
            n = self.node_count
            data = np.ones(len(self._src), dtype=np.int8)
            mat = sparse.csr_matrix(
                (data, (self._src, self._dst)), shape=(n, n), dtype=np.int8
            )
            mat.data[:] = 1  # collapse parallel typed edges
            self._csr_out = mat
            self._csr_in = mat.T.tocsr()
        return self._csr_in if transpose else self._csr_out

    def simple_projection(self) -> "SimpleProjection":
        """Undirected simple projection (any edge, either direction)."""
        self._require_sealed()
        if self._projection is None:
            self._projection = SimpleProjection._build(self)
        return self._projection

    def induced_subgraph(self, node_mask: np.ndarray,
                         edge_mask: np.ndarray | None = None) -> "LegislationGraph":
        """Sealed subgraph on the masked nodes (and optionally edges).

        Edges are kept iff both endpoints survive and, when given,
        ``edge_mask`` is true for them.
        """
        self._require_sealed()
        node_mask = np.asarray(node_mask, dtype=bool)
        if node_mask.shape != (self.node_count,):
            raise ValidationError("node mask length must equal node count")
        keep = node_mask[self._src] & node_mask[self._dst]
        if edge_mask is not None:
            keep &= np.asarray(edge_mask, dtype=bool)
        new_index = np.cumsum(node_mask) - 1
        docs = [doc for i, doc in enumerate(self._docs.values()) if node_mask[i]]
        return LegislationGraph._from_arrays(
            docs,
            new_index[self._src[keep]],
            new_index[self._dst[keep]],
            self._kind[keep],
        )


class SimpleProjection:
    """Undirected simple graph derived from a sealed LegislationGraph.

    Same node set; one undirected edge between u and v iff at least one
    typed reference exists between them in either direction.
    """

    def __init__(self, ids: tuple[str, ...], n: int,
                 pair_u: np.ndarray, pair_v: np.ndarray) -> None:
        self.ids = ids
        self.n = n
        self.pair_u = pair_u  # unique undirected pairs, u < v
        self.pair_v = pair_v
        self._csr: sparse.csr_matrix | None = None

    @classmethod
    def _build(cls, graph: LegislationGraph) -> "SimpleProjection":
        src, dst, _ = graph.edge_arrays()
        n = graph.node_count
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        codes = np.unique(lo * n + hi)
        return cls(graph.ids, n, codes // n, codes % n)

    @property
    def edge_count(self) -> int:
        return len(self.pair_u)

    def csr(self) -> sparse.csr_matrix:
        """Symmetric boolean CSR adjacency."""
        if self._csr is None:
            rows = np.concatenate([self.pair_u, self.pair_v])
            cols = np.concatenate([self.pair_v, self.pair_u])
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = sparse.csr_matrix(
                (data, (rows, cols)), shape=(self.n, self.n), dtype=np.int8
            )
        return self._csr

    def degree(self, node_index: int) -> int:
        csr = self.csr()
        return int(csr.indptr[node_index + 1] - csr.indptr[node_index])

    def degree_array(self) -> np.ndarray:
        return np.diff(self.csr().indptr)


def build_graph(documents: Iterable[LegalDocument],
                references: Iterable[Reference]) -> LegislationGraph:
    """Assemble and seal a graph in one step (duplicate edges deduped)."""
    g = LegislationGraph()
    for doc in documents:
        g.add_document(doc)
    for ref in references:
        g.add_reference(ref)
    return g.seal()
