"""Guideline validation for annotated documents.

Checks the machine-decidable subset of the annotation rules and emits a
deterministic violation report.  Semantic judgements that belong to human
annotators (distinctive vs. filler adjectives, apposition detection) are
approximated by stoplist/POS heuristics and reported as warnings only.

Rule registry:
    V1  product extent starts/ends with a function word or comma
    V2  possessive clitic follows a company mention inside a product extent
    V3  relation arguments lie in different sentences
    V4  malformed identity chain
    V5  product token sequence left unannotated elsewhere in the document
    V6  identity-linked company mentions carry duplicate relations
    V7  product extent contains no noun token
    V8  product extent starts with a stoplisted adjective
    V9  relation without products, or with an unresolvable argument
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .model import (
    Document,
    EntityMention,
    EntityType,
    MentionKind,
    NOUN_TAGS,
    Span,
)

BAD_BOUNDARY_TAGS = frozenset({"DT", "IN", "WDT", "WP", "CC"})
TRADEMARK_TEXTS = {"®", "™"}

DEFAULT_STOPLIST = frozenset({"advanced", "new", "innovative", "leading"})


class Severity(str, Enum):
    ERROR = "Error"
    WARNING = "Warning"


class UnknownFormat(ValueError):
    def __init__(self, fmt: str) -> None:
        super().__init__(f"unknown report format {fmt!r}")
        self.format = fmt


@dataclass(frozen=True)
class Violation:
    rule_id: str
    severity: Severity
    doc_id: str
    target_id: str
    span: Span
    message: str


def _products(doc: Document) -> list[EntityMention]:
    return [e for e in doc.entities if e.entity_type is EntityType.PRODUCT]


def _companies(doc: Document) -> list[EntityMention]:
    return [e for e in doc.entities if e.entity_type is EntityType.COMPANY]


def _v1_boundaries(doc: Document) -> Iterable[Violation]:
    for m in _products(doc):
        first = doc.tokens[m.span.start]
        if first.pos in BAD_BOUNDARY_TAGS or first.text == ",":
            yield Violation(
                "V1", Severity.ERROR, doc.doc_id, m.mention_id, m.span,
                f"product extent starts with {first.text!r}/{first.pos}",
            )
        last = doc.tokens[m.span.end - 1]
        if last.text in TRADEMARK_TEXTS:
            continue
        if last.pos in BAD_BOUNDARY_TAGS or last.text == ",":
            yield Violation(
                "V1", Severity.ERROR, doc.doc_id, m.mention_id, m.span,
                f"product extent ends with {last.text!r}/{last.pos}",
            )


def _v2_possessive(doc: Document) -> Iterable[Violation]:
    for product in _products(doc):
        for company in _companies(doc):
            if not product.span.contains(company.span) or product.span == company.span:
                continue
            pos = company.span.end
            if pos < product.span.end and doc.tokens[pos].pos == "POS":
                yield Violation(
                    "V2", Severity.ERROR, doc.doc_id, product.mention_id, product.span,
                    "company mention inside a product extent carries a possessive marker",
                )


def _v3_cross_sentence(doc: Document, by_id: dict[str, EntityMention]) -> Iterable[Violation]:
    for rel in doc.relations:
        mentions = [by_id.get(rel.company)] + [by_id.get(p) for p in rel.products]
        sentence_ids = {
            doc.sentence_index(m.span.start) for m in mentions if m is not None
        }
        if len(sentence_ids) > 1:
            anchor = by_id.get(rel.company)
            span = anchor.span if anchor else Span(0, 1)
            yield Violation(
                "V3", Severity.ERROR, doc.doc_id, rel.relation_id, span,
                "relation arguments lie in different sentences",
            )


def _v4_chains(doc: Document, by_id: dict[str, EntityMention]) -> Iterable[Violation]:
    membership: dict[str, str] = {}
    for chain in doc.chains:
        source = by_id.get(chain.source)
        span = source.span if source else Span(0, 1)
        if source is None:
            yield Violation(
                "V4", Severity.ERROR, doc.doc_id, chain.chain_id, Span(0, 1),
                f"chain source {chain.source!r} is not a known mention",
            )
        elif source.mention_kind is not MentionKind.NAME:
            yield Violation(
                "V4", Severity.ERROR, doc.doc_id, chain.chain_id, span,
                "chain source is not a name mention",
            )
        if not chain.targets:
            yield Violation(
                "V4", Severity.ERROR, doc.doc_id, chain.chain_id, span,
                "chain has no targets",
            )
        for mid in (chain.source, *chain.targets):
            if mid in membership:
                yield Violation(
                    "V4", Severity.ERROR, doc.doc_id, chain.chain_id, span,
                    f"mention {mid!r} belongs to more than one chain",
                )
            membership[mid] = chain.chain_id


def _v5_consistency(doc: Document) -> Iterable[Violation]:
    lowered = [t.text.lower() for t in doc.tokens]
    product_spans = [m.span for m in _products(doc)]
    sequences = {
        tuple(lowered[m.span.start:m.span.end]): m.mention_id for m in _products(doc)
    }
    for seq, mention_id in sorted(sequences.items(), key=lambda kv: kv[1]):
        width = len(seq)
        for start in range(0, len(lowered) - width + 1):
            span = Span(start, start + width)
            if tuple(lowered[start:start + width]) != seq:
                continue
            if any(p.contains(span) for p in product_spans):
                continue
            yield Violation(
                "V5", Severity.WARNING, doc.doc_id, mention_id, span,
                f"token sequence {' '.join(seq)!r} is annotated as a product elsewhere but not here",
            )


def _v6_duplicate_linked_relations(doc: Document, by_id: dict[str, EntityMention]) -> Iterable[Violation]:
    linked: dict[str, set[str]] = {}
    for chain in doc.chains:
        members = {chain.source, *chain.targets}
        for mid in members:
            linked.setdefault(mid, set()).update(members - {mid})
    seen: list[tuple[str, tuple[str, ...], Span | None, str]] = []
    for rel in doc.relations:
        for company, products, trigger, rel_id in seen:
            if (
                rel.company != company
                and company in linked.get(rel.company, set())
                and rel.products == products
                and rel.trigger == trigger
            ):
                anchor = by_id.get(rel.company)
                span = anchor.span if anchor else Span(0, 1)
                yield Violation(
                    "V6", Severity.ERROR, doc.doc_id, rel.relation_id, span,
                    f"identity-linked company mentions both carry this relation (see {rel_id})",
                )
        seen.append((rel.company, rel.products, rel.trigger, rel.relation_id))


def _v7_nouns(doc: Document) -> Iterable[Violation]:
    for m in _products(doc):
        if not any(t.pos in NOUN_TAGS for t in doc.tokens[m.span.start:m.span.end]):
            yield Violation(
                "V7", Severity.ERROR, doc.doc_id, m.mention_id, m.span,
                "product extent contains no noun token",
            )


def _v8_stoplist(doc: Document, stoplist: frozenset[str]) -> Iterable[Violation]:
    for m in _products(doc):
        first = doc.tokens[m.span.start].text.lower()
        if first in stoplist:
            yield Violation(
                "V8", Severity.WARNING, doc.doc_id, m.mention_id, m.span,
                f"product extent starts with non-distinctive adjective {first!r}",
            )


def _v9_relations(doc: Document, by_id: dict[str, EntityMention]) -> Iterable[Violation]:
    for rel in doc.relations:
        anchor = by_id.get(rel.company)
        span = anchor.span if anchor else Span(0, 1)
        if not rel.products:
            yield Violation(
                "V9", Severity.ERROR, doc.doc_id, rel.relation_id, span,
                "relation has no product arguments",
            )
        dangling = [
            mid for mid in (rel.company, *rel.products) if mid not in by_id
        ]
        if dangling:
            yield Violation(
                "V9", Severity.ERROR, doc.doc_id, rel.relation_id, span,
                f"relation references unknown mentions {dangling}",
            )


def validate(doc: Document, stoplist: Iterable[str] = DEFAULT_STOPLIST) -> list[Violation]:
    """Run every registry rule over one document.

    Pure and idempotent; output is sorted by (document position, rule id).
    """
    stop = frozenset(w.lower() for w in stoplist)
    by_id = {e.mention_id: e for e in doc.entities}
    violations: list[Violation] = []
    violations.extend(_v1_boundaries(doc))
    violations.extend(_v2_possessive(doc))
    violations.extend(_v3_cross_sentence(doc, by_id))
    violations.extend(_v4_chains(doc, by_id))
    violations.extend(_v5_consistency(doc))
    violations.extend(_v6_duplicate_linked_relations(doc, by_id))
    violations.extend(_v7_nouns(doc))
    violations.extend(_v8_stoplist(doc, stop))
    violations.extend(_v9_relations(doc, by_id))
    # errors sort before warnings at the same document position
    violations.sort(
        key=lambda v: (v.span.start, v.span.end, v.severity is not Severity.ERROR, v.rule_id, v.target_id)
    )
    return violations


def validate_corpus(
    documents: Iterable[Document], stoplist: Iterable[str] = DEFAULT_STOPLIST
) -> list[Violation]:
    out: list[Violation] = []
    for doc in sorted(documents, key=lambda d: d.doc_id):
        out.extend(validate(doc, stoplist))
    return out


def report(violations: Sequence[Violation], fmt: str = "text") -> str:
    """Render violations as human-readable text or TAB-separated lines."""
    if fmt not in ("text", "tsv"):
        raise UnknownFormat(fmt)
    lines: list[str] = []
    for v in violations:
        span = f"[{v.span.start},{v.span.end})"
        if fmt == "tsv":
            lines.append("\t".join([v.doc_id, v.rule_id, v.severity.value, span, v.message]))
        else:
            lines.append(f"{v.doc_id} {span} {v.rule_id} {v.severity.value}: {v.message}")
    return "\n".join(lines)
