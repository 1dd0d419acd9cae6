"""End-to-end pre-annotation: ingest, chunk, match, fan out, resolve.

Everything here is a pure function of its inputs; documents can be
processed in parallel and the results merged in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chunker import ChunkCandidate, chunk, split_coordination
from .ingest import OrgGazetteer, recognize_orgs
from .model import (
    Document,
    EntityMention,
    EntityType,
    RelationMention,
    attach_annotations,
)
from .patterns import (
    SurfacePattern,
    fan_out_triggers,
    match_sentence,
    resolve_acronyms,
)


@dataclass(frozen=True)
class PreannotateResult:
    document: Document
    # every match before fan-out deduplication, for yield reporting
    raw_relations: tuple[RelationMention, ...]


def document_candidates(doc: Document) -> list[ChunkCandidate]:
    """Chunk candidates for every sentence, in document token coordinates."""
    out: list[ChunkCandidate] = []
    for sentence in doc.sentences:
        tokens = doc.sentence_tokens(sentence)
        base = sentence.span.start
        out.extend(split_coordination(chunk(tokens, base), tokens, base))
    return out


def preannotate_document(
    doc: Document,
    gazetteer: OrgGazetteer,
    surface_patterns: Sequence[SurfacePattern],
) -> PreannotateResult:
    """Run the full pre-annotation pipeline over one tagged document.

    Human annotations already on the document are kept; recognized company
    mentions, matched product mentions and relation mentions are added with
    PreAnnotation provenance.
    """
    orgs = recognize_orgs(doc, gazetteer)
    companies = [
        e for e in doc.entities if e.entity_type is EntityType.COMPANY
    ] + orgs
    candidates = document_candidates(doc)

    existing_products = {
        e.span: e.mention_id for e in doc.entities
        if e.entity_type is EntityType.PRODUCT
    }
    fixed_spans = [e.span for e in doc.entities] + [m.span for m in orgs]

    raw: list[RelationMention] = []
    minted: dict[str, EntityMention] = {}
    relations: list[RelationMention] = []
    for sentence in doc.sentences:
        found = match_sentence(doc, sentence, companies, candidates, surface_patterns)
        mentions = {m.mention_id: m for m in found.product_mentions}
        sentence_raw: list[RelationMention] = []
        for rel in found.relations:
            spans = [mentions[p].span for p in rel.products]
            # a matched span that crosses an existing mention cannot be attached
            if any(s.crosses(other) for s in spans for other in fixed_spans):
                continue
            remapped = []
            for pid in rel.products:
                mention = mentions[pid]
                existing = existing_products.get(mention.span)
                if existing is None:
                    minted[pid] = mention
                    remapped.append(pid)
                else:
                    remapped.append(existing)
            sentence_raw.append(
                RelationMention(
                    relation_id=rel.relation_id,
                    company=rel.company,
                    products=tuple(remapped),
                    trigger=rel.trigger,
                    provenance=rel.provenance,
                    pattern_id=rel.pattern_id,
                )
            )
        raw.extend(sentence_raw)
        relations.extend(fan_out_triggers(sentence_raw))

    entities = tuple(doc.entities) + tuple(orgs) + tuple(
        sorted(minted.values(), key=lambda m: m.span)
    )
    enriched = attach_annotations(
        doc, entities=entities, relations=doc.relations, chains=doc.chains
    )
    resolved = resolve_acronyms(relations, enriched)

    final = attach_annotations(
        doc,
        entities=entities,
        relations=tuple(doc.relations) + tuple(resolved),
        chains=doc.chains,
    )
    return PreannotateResult(document=final, raw_relations=tuple(raw))
