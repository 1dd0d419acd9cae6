"""Bootstrap pattern compilation and matching.

Base patterns are declared in a small line-oriented language (see
`parse_config`), expanded into fully literal surface patterns, and matched
token-by-token against tagged sentences that already carry company
mentions and product chunk candidates.  Matches come back as
CompanyProvidesProduct relation mentions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .chunker import ChunkCandidate, span_matches_grammar
from .inflect import inflections
from .model import (
    Document,
    EntityMention,
    EntityType,
    MentionKind,
    Provenance,
    RelationMention,
    Sentence,
    Span,
)

_CONJ = {"and", "or"}
_EXACT_LITERALS = {"'s", "’s", "®", "™"}
NESTED_PATTERN_ID = "nested"

# Longest coordination the matcher will consume.  Keyword-spam pages carry
# comma lists with thousands of conjuncts; the cap bounds recursion depth
# while staying far above any legitimate product enumeration.
MAX_CONJUNCTS = 25


class PatternConfigError(ValueError):
    pass


class PatternSyntaxError(PatternConfigError):
    def __init__(self, line_no: int, detail: str) -> None:
        super().__init__(f"line {line_no}: {detail}")
        self.line_no = line_no


class UnknownSetReference(PatternConfigError):
    def __init__(self, name: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: unknown set @{name}")
        self.name = name


class DuplicatePatternId(PatternConfigError):
    def __init__(self, pattern_id: str) -> None:
        super().__init__(f"duplicate pattern id {pattern_id!r}")
        self.pattern_id = pattern_id


class MultipleTriggers(PatternConfigError):
    def __init__(self, pattern_id: str) -> None:
        super().__init__(f"pattern {pattern_id!r} declares more than one trigger element")
        self.pattern_id = pattern_id


# ---------------------------------------------------------------------------
# Base pattern model

@dataclass(frozen=True)
class Alt:
    """One alternative of an alternation: a word sequence, optionally inflected."""

    words: tuple[str, ...]
    inflect: bool = False


@dataclass(frozen=True)
class OrgSlot:
    pass


@dataclass(frozen=True)
class ProductSlot:
    pass


@dataclass(frozen=True)
class PossessiveTrigger:
    pass


@dataclass(frozen=True)
class TriggerSlot:
    alternatives: tuple[Alt, ...]


@dataclass(frozen=True)
class LiteralSlot:
    alternatives: tuple[Alt, ...]


@dataclass(frozen=True)
class OptionalGroup:
    elements: tuple["Element", ...]


Element = OrgSlot | ProductSlot | PossessiveTrigger | TriggerSlot | LiteralSlot | OptionalGroup


@dataclass(frozen=True)
class BasePattern:
    pattern_id: str
    elements: tuple[Element, ...]


@dataclass(frozen=True)
class PatternConfig:
    sets: dict[str, tuple[Alt, ...]] = field(default_factory=dict)
    patterns: tuple[BasePattern, ...] = ()


# ---------------------------------------------------------------------------
# Surface pattern model

@dataclass(frozen=True)
class Words:
    words: tuple[str, ...]


@dataclass(frozen=True)
class TriggerLiteral:
    words: tuple[str, ...]
    # full trigger alternation of the base pattern, used to recognise
    # coordinated trigger lists ("a developer, manufacturer and vendor of")
    coordination_set: tuple[tuple[str, ...], ...]


SurfaceElement = OrgSlot | ProductSlot | PossessiveTrigger | TriggerLiteral | Words


@dataclass(frozen=True)
class SurfacePattern:
    surface_id: str
    base_id: str
    elements: tuple[SurfaceElement, ...]

    def render(self) -> str:
        parts = []
        for el in self.elements:
            if isinstance(el, OrgSlot):
                parts.append("<ORG>")
            elif isinstance(el, ProductSlot):
                parts.append("<PRO>")
            elif isinstance(el, PossessiveTrigger):
                parts.append("<POSS>")
            elif isinstance(el, TriggerLiteral):
                parts.append("<TRIG:%s>" % " ".join(el.words))
            else:
                parts.append(" ".join(el.words))
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Config parsing

_SET_LINE = re.compile(r"^set\s+(\w+)\s*=\s*(.+)$")
_PATTERN_LINE = re.compile(r"^(\S+?):\s+(.+)$")


def _parse_alternation(body: str, sets: dict[str, tuple[Alt, ...]], line_no: int) -> tuple[Alt, ...]:
    alts: list[Alt] = []
    for raw in body.split("|"):
        raw = raw.strip()
        if not raw:
            raise PatternSyntaxError(line_no, "empty alternative in alternation")
        if raw.startswith("@"):
            name = raw[1:]
            if name not in sets:
                raise UnknownSetReference(name, line_no)
            alts.extend(sets[name])
            continue
        inflect = raw.startswith("~")
        if inflect:
            raw = raw[1:]
            if raw.startswith("@"):
                raise PatternSyntaxError(
                    line_no, "apply ~ to the words inside the set, not to the set reference"
                )
        words = tuple(raw.split())
        if not words:
            raise PatternSyntaxError(line_no, "empty alternative in alternation")
        if inflect and len(words) != 1:
            raise PatternSyntaxError(line_no, "verb inflection applies to single words only")
        alts.append(Alt(words=words, inflect=inflect))
    return tuple(alts)


def _tokenize_elements(body: str, line_no: int) -> list[str]:
    """Split a pattern body into raw element strings, honouring brackets."""
    out: list[str] = []
    i, n = 0, len(body)
    while i < n:
        c = body[i]
        if c.isspace():
            i += 1
        elif c == "<":
            j = body.find(">", i)
            if j < 0:
                raise PatternSyntaxError(line_no, "unterminated <...> element")
            out.append(body[i:j + 1])
            i = j + 1
        elif c == "{":
            j = body.find("}", i)
            if j < 0:
                raise PatternSyntaxError(line_no, "unterminated {...} alternation")
            out.append(body[i:j + 1])
            i = j + 1
        elif c == "[":
            depth = 0
            j = i
            while j < n:
                if body[j] == "[":
                    depth += 1
                elif body[j] == "]":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= n:
                raise PatternSyntaxError(line_no, "unterminated [...] group")
            out.append(body[i:j + 1])
            i = j + 1
        elif c == "]":
            raise PatternSyntaxError(line_no, "unbalanced ']'")
        else:
            j = i
            while j < n and not body[j].isspace():
                j += 1
            out.append(body[i:j])
            i = j
    return out


def _parse_element(raw: str, sets: dict[str, tuple[Alt, ...]], line_no: int, *, in_optional: bool) -> Element:
    if raw == "<ORG>":
        if in_optional:
            raise PatternSyntaxError(line_no, "<ORG> may not appear inside an optional group")
        return OrgSlot()
    if raw == "<PRO>":
        if in_optional:
            raise PatternSyntaxError(line_no, "<PRO> may not appear inside an optional group")
        return ProductSlot()
    if raw == "<POSS>":
        if in_optional:
            raise PatternSyntaxError(line_no, "<POSS> may not appear inside an optional group")
        return PossessiveTrigger()
    if raw.startswith("<TRIG:") and raw.endswith(">"):
        if in_optional:
            raise PatternSyntaxError(line_no, "trigger may not appear inside an optional group")
        return TriggerSlot(_parse_alternation(raw[6:-1], sets, line_no))
    if raw.startswith("<"):
        raise PatternSyntaxError(line_no, f"unknown slot {raw!r}")
    if raw.startswith("{") and raw.endswith("}"):
        return LiteralSlot(_parse_alternation(raw[1:-1], sets, line_no))
    if raw.startswith("[") and raw.endswith("]"):
        inner = _tokenize_elements(raw[1:-1], line_no)
        if not inner:
            raise PatternSyntaxError(line_no, "empty optional group")
        elements = tuple(
            _parse_element(item, sets, line_no, in_optional=True) for item in inner
        )
        return OptionalGroup(elements)
    if raw.startswith("@"):
        name = raw[1:]
        if name not in sets:
            raise UnknownSetReference(name, line_no)
        return LiteralSlot(sets[name])
    return LiteralSlot((Alt(words=(raw,)),))


def parse_config(text: str) -> PatternConfig:
    """Parse a pattern declaration file into a validated PatternConfig."""
    sets: dict[str, tuple[Alt, ...]] = {}
    patterns: list[BasePattern] = []
    seen: set[str] = set()

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SET_LINE.match(line)
        if m:
            name, body = m.group(1), m.group(2)
            if name in sets:
                raise PatternSyntaxError(line_no, f"set {name!r} redefined")
            sets[name] = _parse_alternation(body, sets, line_no)
            continue
        m = _PATTERN_LINE.match(line)
        if not m:
            raise PatternSyntaxError(line_no, "expected 'set name = ...' or 'ID: ELEMENT+'")
        pattern_id, body = m.group(1), m.group(2)
        if pattern_id in seen:
            raise DuplicatePatternId(pattern_id)
        seen.add(pattern_id)
        elements = tuple(
            _parse_element(item, sets, line_no, in_optional=False)
            for item in _tokenize_elements(body, line_no)
        )
        triggers = sum(isinstance(e, (TriggerSlot, PossessiveTrigger)) for e in elements)
        if triggers > 1:
            raise MultipleTriggers(pattern_id)
        if triggers == 0:
            raise PatternSyntaxError(line_no, f"pattern {pattern_id!r} declares no trigger element")
        if sum(isinstance(e, OrgSlot) for e in elements) != 1:
            raise PatternSyntaxError(line_no, f"pattern {pattern_id!r} must declare exactly one <ORG>")
        if sum(isinstance(e, ProductSlot) for e in elements) != 1:
            raise PatternSyntaxError(line_no, f"pattern {pattern_id!r} must declare exactly one <PRO>")
        patterns.append(BasePattern(pattern_id, elements))

    return PatternConfig(sets=sets, patterns=tuple(patterns))


# ---------------------------------------------------------------------------
# Expansion

def _alt_variants(alt: Alt) -> list[tuple[str, ...]]:
    if alt.inflect:
        return [(form,) for form in inflections(alt.words[0])]
    return [alt.words]


def _element_variants(el: Element) -> list[tuple[SurfaceElement, ...]]:
    if isinstance(el, OrgSlot):
        return [(OrgSlot(),)]
    if isinstance(el, ProductSlot):
        return [(ProductSlot(),)]
    if isinstance(el, PossessiveTrigger):
        return [(PossessiveTrigger(),)]
    if isinstance(el, TriggerSlot):
        full = tuple(
            variant for alt in el.alternatives for variant in _alt_variants(alt)
        )
        return [(TriggerLiteral(words=v, coordination_set=full),) for v in full]
    if isinstance(el, LiteralSlot):
        return [
            (Words(words=v),)
            for alt in el.alternatives
            for v in _alt_variants(alt)
        ]
    if isinstance(el, OptionalGroup):
        inner = [_element_variants(e) for e in el.elements]
        present = [
            tuple(itertools.chain.from_iterable(combo))
            for combo in itertools.product(*inner)
        ]
        return [()] + present
    raise TypeError(el)


def _variant_count(el: Element) -> int:
    if isinstance(el, (OrgSlot, ProductSlot, PossessiveTrigger)):
        return 1
    if isinstance(el, (TriggerSlot, LiteralSlot)):
        return sum(4 if alt.inflect else 1 for alt in el.alternatives)
    if isinstance(el, OptionalGroup):
        inner = 1
        for e in el.elements:
            inner *= _variant_count(e)
        return 1 + inner
    raise TypeError(el)


def expansion_count(config: PatternConfig) -> int:
    """Closed-form number of surface patterns, computable before expansion."""
    total = 0
    for pattern in config.patterns:
        n = 1
        for el in pattern.elements:
            n *= _variant_count(el)
        total += n
    return total


def _sort_key(elements: tuple[SurfaceElement, ...]) -> tuple:
    key = []
    for el in elements:
        if isinstance(el, OrgSlot):
            key.append((0,))
        elif isinstance(el, ProductSlot):
            key.append((1,))
        elif isinstance(el, PossessiveTrigger):
            key.append((2,))
        elif isinstance(el, TriggerLiteral):
            key.append((3, el.words))
        else:
            key.append((4, el.words))
    return tuple(key)


def expand(config: PatternConfig) -> list[SurfacePattern]:
    """Expand every base pattern into its surface patterns.

    Output order is deterministic: config order, then lexicographic over
    the resolved element sequences.  Duplicates within a base pattern are
    removed.
    """
    surfaces: list[SurfacePattern] = []
    for pattern in config.patterns:
        combos = itertools.product(*(_element_variants(el) for el in pattern.elements))
        variants = {tuple(itertools.chain.from_iterable(c)) for c in combos}
        for i, elements in enumerate(sorted(variants, key=_sort_key)):
            surfaces.append(
                SurfacePattern(
                    surface_id=f"{pattern.pattern_id}#{i:03d}",
                    base_id=pattern.pattern_id,
                    elements=elements,
                )
            )
    return surfaces


# ---------------------------------------------------------------------------
# Matching

def _texts_equal(token_text: str, word: str) -> bool:
    if word in _EXACT_LITERALS:
        return token_text == word
    return token_text.lower() == word.lower()


@dataclass
class _SentenceContext:
    doc: Document
    sentence: Sentence
    orgs: list[EntityMention]
    candidates: list[ChunkCandidate]

    def __post_init__(self) -> None:
        self.tokens = self.doc.tokens
        self.end = self.sentence.span.end
        self.tags = [t.pos for t in self.tokens]
        # candidates never overlap, so one span covers any given position
        self.covering: dict[int, Span] = {}
        for cand in self.candidates:
            for i in range(cand.span.start, cand.span.end):
                self.covering[i] = cand.span
        self.orgs_at: dict[int, list[EntityMention]] = {}
        for mention in self.orgs:
            self.orgs_at.setdefault(mention.span.start, []).append(mention)
        self._firsts: dict[int, list[Span]] = {}

    def literal_at(self, pos: int, words: tuple[str, ...]) -> int | None:
        if pos + len(words) > self.end:
            return None
        for off, word in enumerate(words):
            if not _texts_equal(self.tokens[pos + off].text, word):
                return None
        return pos + len(words)

    def separator_at(self, pos: int) -> Iterator[int]:
        """End positions of coordination separators starting at `pos`, longest first."""
        if pos < self.end and self.tokens[pos].text == ",":
            if pos + 1 < self.end and self.tokens[pos + 1].text.lower() in _CONJ:
                yield pos + 2
            yield pos + 1
        elif pos < self.end and self.tokens[pos].text.lower() in _CONJ:
            yield pos + 1

    def org_coordinations(
        self, pos: int, depth: int = MAX_CONJUNCTS
    ) -> Iterator[tuple[list[EntityMention], int]]:
        """Company coordinations starting at `pos`, larger parses first."""
        if depth <= 0:
            return
        starts = sorted(
            self.orgs_at.get(pos, ()), key=lambda m: (-m.span.end, m.mention_id)
        )
        for mention in starts:
            for sep_end in self.separator_at(mention.span.end):
                for rest, rest_end in self.org_coordinations(sep_end, depth - 1):
                    yield [mention, *rest], rest_end
            yield [mention], mention.span.end

    def product_firsts(self, pos: int) -> list[Span]:
        """Possible first-conjunct spans at `pos`, longest first."""
        cached = self._firsts.get(pos)
        if cached is not None:
            return cached
        spans: list[Span] = []
        cand = self.covering.get(pos)
        if cand is not None:
            if cand.start == pos:
                spans.append(cand)
            for q in range(cand.end, pos, -1):
                sub = Span(pos, q)
                if sub not in spans and span_matches_grammar(self.tags[pos:q]):
                    spans.append(sub)
            spans.sort(key=lambda s: -s.end)
        self._firsts[pos] = spans
        return spans

    def product_coordinations(
        self, pos: int, depth: int = MAX_CONJUNCTS
    ) -> Iterator[tuple[list[Span], int]]:
        if depth <= 0:
            return
        for first in self.product_firsts(pos):
            for sep_end in self.separator_at(first.end):
                for rest, rest_end in self.product_coordinations(sep_end, depth - 1):
                    yield [first, *rest], rest_end
            yield [first], first.end

    def trigger_matches(self, pos: int, trig: TriggerLiteral) -> Iterator[tuple[Span, int]]:
        """(trigger span, end) options for a trigger element at `pos`.

        Besides the plain literal, a coordination of members of the base
        trigger alternation is consumed as a whole provided the designated
        literal is one of its conjuncts.
        """
        members = sorted(set(trig.coordination_set), key=lambda w: (-len(w), w))

        def conjunct_at(p: int) -> tuple[tuple[str, ...], int] | None:
            for words in members:
                end = self.literal_at(p, words)
                if end is not None:
                    return words, end
            return None

        options: list[tuple[Span, int]] = []
        # maximal coordination parse
        conjuncts: list[tuple[tuple[str, ...], Span]] = []
        p = pos
        while True:
            hit = conjunct_at(p)
            if hit is None:
                break
            words, end = hit
            conjuncts.append((words, Span(p, end)))
            advanced = None
            for sep_end in self.separator_at(end):
                if conjunct_at(sep_end) is not None:
                    advanced = sep_end
                    break
            if advanced is None:
                p = end
                break
            p = advanced
        if conjuncts and any(words == trig.words for words, _ in conjuncts):
            span = next(s for words, s in conjuncts if words == trig.words)
            options.append((span, p))
        # plain literal at pos
        plain_end = self.literal_at(pos, trig.words)
        if plain_end is not None:
            plain = (Span(pos, plain_end), plain_end)
            if plain not in options:
                options.append(plain)
        return iter(options)


def _match_elements(
    ctx: _SentenceContext,
    elements: tuple[SurfaceElement, ...],
    idx: int,
    pos: int,
    companies: list[EntityMention],
    products: list[Span],
    trigger: Span | None,
) -> Iterator[tuple[list[EntityMention], list[Span], Span | None]]:
    if idx == len(elements):
        yield companies, products, trigger
        return
    el = elements[idx]
    if isinstance(el, OrgSlot):
        for mentions, end in ctx.org_coordinations(pos):
            yield from _match_elements(ctx, elements, idx + 1, end, mentions, products, trigger)
    elif isinstance(el, ProductSlot):
        for spans, end in ctx.product_coordinations(pos):
            yield from _match_elements(ctx, elements, idx + 1, end, companies, spans, trigger)
    elif isinstance(el, PossessiveTrigger):
        if pos < ctx.end and ctx.tokens[pos].pos == "POS" and ctx.tokens[pos].text in ("'s", "’s"):
            yield from _match_elements(
                ctx, elements, idx + 1, pos + 1, companies, products, Span(pos, pos + 1)
            )
    elif isinstance(el, TriggerLiteral):
        for span, end in ctx.trigger_matches(pos, el):
            yield from _match_elements(ctx, elements, idx + 1, end, companies, products, span)
    else:
        end = ctx.literal_at(pos, el.words)
        if end is not None:
            yield from _match_elements(ctx, elements, idx + 1, end, companies, products, trigger)


def _product_mention_for(doc: Document, span: Span) -> EntityMention:
    kind = (
        MentionKind.NAME
        if any(t.pos in ("NNP", "NNPS") for t in doc.tokens[span.start:span.end])
        else MentionKind.NOMINAL
    )
    return EntityMention(
        mention_id=f"{doc.doc_id}-pre-p{span.start}-{span.end}",
        entity_type=EntityType.PRODUCT,
        span=span,
        mention_kind=kind,
        provenance=Provenance.PRE_ANNOTATION,
    )


@dataclass(frozen=True)
class SentenceMatches:
    relations: tuple[RelationMention, ...]
    product_mentions: tuple[EntityMention, ...]


def match_sentence(
    doc: Document,
    sentence: Sentence,
    org_mentions: Sequence[EntityMention],
    candidates: Sequence[ChunkCandidate],
    surface_patterns: Sequence[SurfacePattern],
) -> SentenceMatches:
    """Match every surface pattern against one sentence.

    One match is kept per (surface pattern, anchor position); matches from
    different patterns may overlap.  Product mentions referenced by the
    relations are minted deterministically from their spans.
    """
    span_lo, span_hi = sentence.span.start, sentence.span.end
    orgs = sorted(
        (m for m in org_mentions if span_lo <= m.span.start < span_hi),
        key=lambda m: m.span,
    )
    cands = sorted(
        (c for c in candidates if span_lo <= c.span.start < span_hi),
        key=lambda c: c.span,
    )
    ctx = _SentenceContext(doc, sentence, orgs, cands)

    # (anchor, surface_id, company order) -> raw match tuples
    raw: list[tuple[int, str, int, EntityMention, tuple[Span, ...], Span | None, str]] = []
    for pattern in surface_patterns:
        first = pattern.elements[0]
        if isinstance(first, OrgSlot):
            anchors = [m.span.start for m in orgs]
        elif isinstance(first, ProductSlot):
            anchors = [c.span.start for c in cands]
        else:
            anchors = list(range(span_lo, span_hi))
        for anchor in dict.fromkeys(anchors):
            found = next(
                _match_elements(ctx, pattern.elements, 0, anchor, [], [], None), None
            )
            if found is None:
                continue
            companies, product_spans, trigger = found
            for k, company in enumerate(companies):
                raw.append(
                    (anchor, pattern.surface_id, k, company, tuple(product_spans), trigger, pattern.base_id)
                )

    # nested company-in-candidate rule: a company mention strictly inside a
    # product candidate with no possessive token reads as a relation
    for cand in cands:
        if any(doc.tokens[i].pos == "POS" for i in range(cand.span.start, cand.span.end)):
            continue
        for org in orgs:
            if cand.span.contains(org.span) and cand.span != org.span:
                raw.append(
                    (cand.span.start, NESTED_PATTERN_ID, 0, org, (cand.span,), None, NESTED_PATTERN_ID)
                )

    raw.sort(key=lambda r: (r[0], r[1], r[2]))
    relations: list[RelationMention] = []
    mentions: dict[str, EntityMention] = {}
    for i, (_, _, _, company, product_spans, trigger, base_id) in enumerate(raw):
        product_ids = []
        for span in product_spans:
            mention = _product_mention_for(doc, span)
            mentions[mention.mention_id] = mention
            product_ids.append(mention.mention_id)
        relations.append(
            RelationMention(
                relation_id=f"{doc.doc_id}-pre-s{sentence.index}-r{i}",
                company=company.mention_id,
                products=tuple(product_ids),
                trigger=trigger,
                provenance=Provenance.PRE_ANNOTATION,
                pattern_id=base_id,
            )
        )
    ordered = sorted(mentions.values(), key=lambda m: m.span)
    return SentenceMatches(relations=tuple(relations), product_mentions=tuple(ordered))


def match(
    doc: Document,
    sentence: Sentence,
    org_mentions: Sequence[EntityMention],
    candidates: Sequence[ChunkCandidate],
    surface_patterns: Sequence[SurfacePattern],
) -> list[RelationMention]:
    return list(
        match_sentence(doc, sentence, org_mentions, candidates, surface_patterns).relations
    )


def fan_out_triggers(sentence_matches: Sequence[RelationMention]) -> list[RelationMention]:
    """One relation per distinct trigger of a (company, products) pair.

    Matching already emits one relation per trigger, so this reduces to
    removing exact duplicates (same company, products and trigger),
    keeping the first occurrence.
    """
    out: list[RelationMention] = []
    seen: set[tuple] = set()
    for rel in sentence_matches:
        key = (rel.company, rel.products, rel.trigger)
        if key in seen:
            continue
        seen.add(key)
        out.append(rel)
    return out


def resolve_acronyms(relations: Sequence[RelationMention], doc: Document) -> list[RelationMention]:
    """Re-point relations from acronym company mentions to their chain source.

    When a relation's company is an Identity target whose chain source is a
    longer same-sentence Company name mention, the relation attaches to the
    source; duplicates created by the move are dropped.
    """
    source_of: dict[str, str] = {}
    for chain in doc.chains:
        for target in chain.targets:
            source_of[target] = chain.source

    out: list[RelationMention] = []
    seen: set[tuple] = set()
    for rel in relations:
        company = doc.entity(rel.company)
        source_id = source_of.get(rel.company)
        if company is not None and source_id is not None:
            source = doc.entity(source_id)
            if (
                source is not None
                and source.entity_type is EntityType.COMPANY
                and len(source.span) > len(company.span)
                and doc.sentence_index(source.span.start) == doc.sentence_index(company.span.start)
            ):
                rel = RelationMention(
                    relation_id=rel.relation_id,
                    company=source_id,
                    products=rel.products,
                    trigger=rel.trigger,
                    provenance=rel.provenance,
                    pattern_id=rel.pattern_id,
                )
        key = (rel.company, rel.products, rel.trigger)
        if key in seen:
            continue
        seen.add(key)
        out.append(rel)
    return out
