"""Turning raw text or pre-tagged column files into Documents.

The built-in tokenizer and tagger exist so the toolkit is self-contained
and tests are hermetic; the recommended path for serious use is pre-tagged
column input (one `TOKEN<TAB>POS[<TAB>BIO]` line per token, blank line
between sentences, `#` comments).  Company mentions are recognised with a
gazetteer plus a legal-suffix heuristic over capitalized proper-noun runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .inflect import inflections
from .model import (
    Document,
    EntityMention,
    EntityType,
    MentionKind,
    NOUN_TAGS,
    Provenance,
    Span,
    Token,
    make_document,
)


class IngestError(ValueError):
    pass


class MalformedLine(IngestError):
    def __init__(self, line_no: int, detail: str = "") -> None:
        super().__init__(f"line {line_no}: malformed column line{': ' if detail else ''}{detail}")
        self.line_no = line_no


class IllegalBioTransition(IngestError):
    def __init__(self, line_no: int, tag: str) -> None:
        super().__init__(f"line {line_no}: illegal BIO transition to {tag!r}")
        self.line_no = line_no


# ---------------------------------------------------------------------------
# Tokenization

_PUNCT = set(".,;:!?()\"'")
_TRADEMARK = {"®", "™"}  # (R) and TM symbols
_APOSTROPHES = {"'", "’"}
_SENTENCE_FINAL = {".", "!", "?"}


def _split_core(core: str, offset: int) -> list[tuple[str, int, int]]:
    # trademark symbols always stand alone
    parts: list[tuple[str, int, int]] = []
    buf_start = offset
    buf = ""
    for i, ch in enumerate(core):
        if ch in _TRADEMARK:
            if buf:
                parts.append((buf, buf_start, offset + i))
                buf = ""
            parts.append((ch, offset + i, offset + i + 1))
            buf_start = offset + i + 1
        else:
            if not buf:
                buf_start = offset + i
            buf += ch
    if buf:
        parts.append((buf, buf_start, offset + len(core)))

    out: list[tuple[str, int, int]] = []
    for text, start, end in parts:
        # possessive clitic is always its own token
        if len(text) > 2 and text[-1] in "sS" and text[-2] in _APOSTROPHES:
            out.append((text[:-2], start, end - 2))
            out.append((text[-2:], end - 2, end))
        else:
            out.append((text, start, end))
    return out


def tokenize(text: str) -> list[tuple[str, int, int]]:
    """Split `text` into (token, char_start, char_end) triples.

    Whitespace-delimited chunks are split further: leading/trailing
    punctuation, the possessive clitic "'s" and trademark symbols each
    become their own token; internal hyphens are kept.
    """
    tokens: list[tuple[str, int, int]] = []
    for m in re.finditer(r"\S+", text):
        start, end = m.start(), m.end()
        # peel leading punctuation, but never the apostrophe of a bare clitic
        while start < end and text[start] in _PUNCT:
            rest = text[start:end]
            if (
                rest[0] in _APOSTROPHES
                and len(rest) >= 2
                and rest[1] in "sS"
                and all(c in _PUNCT for c in rest[2:])
            ):
                break
            tokens.append((text[start], start, start + 1))
            start += 1
        # collect trailing punctuation (kept in order after the core)
        trailing: list[tuple[str, int, int]] = []
        while end > start and text[end - 1] in _PUNCT:
            # do not peel the apostrophe of a final possessive clitic
            if end - start >= 2 and text[end - 1] in "sS'" and text[end - 2] in _APOSTROPHES:
                break
            trailing.append((text[end - 1], end - 1, end))
            end -= 1
        if end > start:
            tokens.extend(_split_core(text[start:end], start))
        tokens.extend(reversed(trailing))
    return tokens


def split_sentences(token_texts: Sequence[str]) -> list[tuple[int, int]]:
    """Token-index sentence intervals: a sentence ends after . ! or ?"""
    spans: list[tuple[int, int]] = []
    start = 0
    for i, text in enumerate(token_texts):
        if text in _SENTENCE_FINAL:
            spans.append((start, i + 1))
            start = i + 1
    if start < len(token_texts):
        spans.append((start, len(token_texts)))
    return spans


# ---------------------------------------------------------------------------
# Tagging

_NUMERIC = re.compile(r"^\d[\d.,\-/]*$")


@dataclass(frozen=True)
class TaggerLexicon:
    """Word map plus ordered suffix rules backing the fallback tagger."""

    words: dict[str, str]
    suffix_rules: tuple[tuple[str, str], ...]
    default_tag: str = "NN"

    def __post_init__(self) -> None:
        if self.default_tag not in NOUN_TAGS:
            raise ValueError(f"default tag must be a noun tag, got {self.default_tag!r}")
        if any(not suffix for suffix, _ in self.suffix_rules):
            raise ValueError("suffix rules must be non-empty strings")
        ordered = tuple(sorted(self.suffix_rules, key=lambda r: -len(r[0])))
        object.__setattr__(self, "suffix_rules", ordered)


def _default_word_map() -> dict[str, str]:
    words = {
        "the": "DT", "a": "DT", "an": "DT", "this": "DT", "that": "DT",
        "these": "DT", "those": "DT", "each": "DT", "every": "DT",
        "which": "WDT", "who": "WP", "whom": "WP",
        "of": "IN", "in": "IN", "on": "IN", "at": "IN", "by": "IN",
        "for": "IN", "with": "IN", "from": "IN", "into": "IN", "over": "IN",
        "under": "IN", "between": "IN", "during": "IN", "through": "IN",
        "as": "IN", "about": "IN",
        "to": "TO",
        "and": "CC", "or": "CC", "but": "CC", "nor": "CC",
        "is": "VBZ", "are": "VBP", "am": "VBP", "was": "VBD", "were": "VBD",
        "be": "VB", "been": "VBN", "being": "VBG",
        "has": "VBZ", "had": "VBD", "does": "VBZ", "did": "VBD",
        "will": "MD", "would": "MD", "can": "MD", "could": "MD",
        "may": "MD", "might": "MD", "should": "MD", "must": "MD",
        "it": "PRP", "he": "PRP", "she": "PRP", "they": "PRP", "we": "PRP",
        "you": "PRP", "i": "PRP",
        "its": "PRP$", "their": "PRP$", "his": "PRP$", "her": "PRP$",
        "our": "PRP$", "your": "PRP$", "my": "PRP$",
        "'s": "POS",
        "not": "RB", "also": "RB", "very": "RB", "only": "RB",
        "new": "JJ", "large": "JJ", "small": "JJ", "high": "JJ", "low": "JJ",
        "business": "NN", "speed": "NN", "process": "NN",
    }
    # verbs used by the shipped pattern configuration, in all four forms
    for verb in (
        "produce", "create", "develop", "make", "manufacture", "offer",
        "launch", "release", "sell", "distribute", "provide", "supply",
        "include", "collect", "analyze", "invest", "have", "do",
    ):
        base, third, past, gerund = inflections(verb)
        words.setdefault(base, "VB")
        words.setdefault(third, "VBZ")
        words.setdefault(past, "VBD")
        words.setdefault(gerund, "VBG")
    return words


DEFAULT_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("ing", "VBG"),
    ("eed", "NN"),
    ("ed", "VBN"),
    ("ly", "RB"),
    ("s", "NNS"),
)

DEFAULT_LEXICON = TaggerLexicon(words=_default_word_map(), suffix_rules=DEFAULT_SUFFIX_RULES)


def _is_punct(text: str) -> bool:
    return bool(text) and not any(c.isalnum() for c in text)


def tag(tokens: Sequence[str], lexicon: TaggerLexicon = DEFAULT_LEXICON) -> list[str]:
    """Tag one sentence worth of token strings. Total and deterministic.

    Order: word map, punctuation/symbols, numerals, capitalized
    non-sentence-initial words, suffix rules, default tag.  Capitalization
    is tested before the suffix rules so that proper nouns like plural
    company-name parts are not mis-read as common plurals.
    """
    tags: list[str] = []
    for i, text in enumerate(tokens):
        lower = text.lower()
        if lower in lexicon.words:
            tags.append(lexicon.words[lower])
            continue
        if text in _TRADEMARK:
            tags.append("SYM")
            continue
        if _is_punct(text):
            tags.append(text if len(text) == 1 else "SYM")
            continue
        if _NUMERIC.match(text):
            tags.append("CD")
            continue
        if i > 0 and text[:1].isupper():
            tags.append("NNP")
            continue
        for suffix, suffix_tag in lexicon.suffix_rules:
            if len(text) >= len(suffix) + 2 and lower.endswith(suffix):
                tags.append(suffix_tag)
                break
        else:
            tags.append(lexicon.default_tag)
    return tags


# ---------------------------------------------------------------------------
# Column format

_BIO_TAGS = {"B-Company", "I-Company", "B-Product", "I-Product", "O"}
_BIO_TYPE = {"Company": EntityType.COMPANY, "Product": EntityType.PRODUCT}


def _mention_kind(tokens: Sequence[Token], span: Span) -> MentionKind:
    window = tokens[span.start:span.end]
    if window and all(t.pos in ("PRP", "PRP$") for t in window):
        return MentionKind.PRONOMINAL
    if any(t.pos in ("NNP", "NNPS") for t in window):
        return MentionKind.NAME
    return MentionKind.NOMINAL


def read_tagged(column_text: str, doc_id: str = "doc") -> Document:
    """Parse the TOKEN/POS/BIO column format into a Document.

    BIO-marked Company/Product mentions are attached with Human provenance.
    """
    rows: list[tuple[str, str, str]] = []  # token, pos, bio
    sentence_breaks: list[int] = []
    for line_no, line in enumerate(column_text.splitlines(), start=1):
        if line.startswith("#"):
            continue
        if not line.strip():
            if rows and (not sentence_breaks or sentence_breaks[-1] != len(rows)):
                sentence_breaks.append(len(rows))
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3) or not fields[0] or not fields[1].strip():
            raise MalformedLine(line_no, line.strip()[:40])
        bio = fields[2].strip() if len(fields) == 3 else "O"
        if bio not in _BIO_TAGS:
            raise MalformedLine(line_no, f"unknown BIO tag {bio!r}")
        prev_bio = rows[-1][2] if rows and (not sentence_breaks or sentence_breaks[-1] != len(rows)) else "O"
        if bio.startswith("I-"):
            ok = prev_bio in (f"B-{bio[2:]}", f"I-{bio[2:]}")
            if not ok:
                raise IllegalBioTransition(line_no, bio)
        rows.append((fields[0], fields[1].strip(), bio))
    if rows and (not sentence_breaks or sentence_breaks[-1] != len(rows)):
        sentence_breaks.append(len(rows))

    # document text is the space-joined token sequence
    tokens: list[Token] = []
    cursor = 0
    pieces: list[str] = []
    for text, pos, _ in rows:
        if pieces:
            cursor += 1
        pieces.append(text)
        tokens.append(Token(text, pos, cursor, cursor + len(text)))
        cursor += len(text)

    spans: list[tuple[int, int]] = []
    start = 0
    for end in sentence_breaks:
        spans.append((start, end))
        start = end
    doc = make_document(doc_id, " ".join(pieces), tokens, spans)

    entities: list[EntityMention] = []
    open_start: int | None = None
    open_type: EntityType | None = None

    def close(end: int) -> None:
        nonlocal open_start, open_type
        if open_start is not None and open_type is not None:
            span = Span(open_start, end)
            entities.append(
                EntityMention(
                    mention_id=f"{doc_id}-e{len(entities)}",
                    entity_type=open_type,
                    span=span,
                    mention_kind=_mention_kind(doc.tokens, span),
                    provenance=Provenance.HUMAN,
                )
            )
        open_start, open_type = None, None

    boundaries = set(sentence_breaks)
    for i, (_, _, bio) in enumerate(rows):
        if i in boundaries:
            close(i)
        if bio == "O":
            close(i)
        elif bio.startswith("B-"):
            close(i)
            open_start, open_type = i, _BIO_TYPE[bio[2:]]
    close(len(rows))

    from .model import attach_annotations

    return attach_annotations(doc, entities=entities)


def document_from_text(text: str, doc_id: str = "doc", lexicon: TaggerLexicon = DEFAULT_LEXICON) -> Document:
    """Tokenize, sentence-split and tag raw text into a Document."""
    triples = tokenize(text)
    spans = split_sentences([t for t, _, _ in triples])
    tokens: list[Token] = []
    for start, end in spans:
        sentence_texts = [triples[i][0] for i in range(start, end)]
        for (text_, cs, ce), pos in zip(triples[start:end], tag(sentence_texts, lexicon)):
            tokens.append(Token(text_, pos, cs, ce))
    return make_document(doc_id, text, tokens, spans)


# ---------------------------------------------------------------------------
# Organization recognition

DEFAULT_LEGAL_SUFFIXES: tuple[str, ...] = (
    "LLC", "Inc.", "Inc", "Corp.", "Corp", "Ltd.", "Ltd", "GmbH", "Co.", "Co", "AG", "Plc",
)


@dataclass(frozen=True)
class OrgGazetteer:
    """Known company names (normalized token sequences) plus legal suffixes."""

    names: frozenset[tuple[str, ...]]
    suffixes: frozenset[str] = frozenset(DEFAULT_LEGAL_SUFFIXES)

    @classmethod
    def from_names(cls, names: Iterable[str], suffixes: Iterable[str] = DEFAULT_LEGAL_SUFFIXES) -> "OrgGazetteer":
        normalized = frozenset(
            tuple(w.lower() for w in name.split()) for name in names if name.strip()
        )
        return cls(names=normalized, suffixes=frozenset(suffixes))

    @classmethod
    def from_file(cls, path: str, suffixes: Iterable[str] = DEFAULT_LEGAL_SUFFIXES) -> "OrgGazetteer":
        with open(path, encoding="utf-8") as fh:
            names = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
        return cls.from_names(names, suffixes)


def recognize_orgs(doc: Document, gazetteer: OrgGazetteer) -> list[EntityMention]:
    """Mark Company mentions: gazetteer matches and NNP runs ending in a legal suffix.

    Overlapping candidates are resolved longest-first, then leftmost; the
    returned spans never overlap each other or existing Company mentions.
    """
    lowered = [t.text.lower() for t in doc.tokens]
    max_name = max((len(n) for n in gazetteer.names), default=0)
    candidates: list[Span] = []

    for sentence in doc.sentences:
        s, e = sentence.span.start, sentence.span.end
        for i in range(s, e):
            for width in range(min(max_name, e - i), 0, -1):
                if tuple(lowered[i:i + width]) in gazetteer.names:
                    candidates.append(Span(i, i + width))
        # capitalized proper-noun runs ending in a legal suffix
        i = s
        while i < e:
            if doc.tokens[i].pos in ("NNP", "NNPS") and doc.tokens[i].text[:1].isupper():
                j = i
                while j < e and doc.tokens[j].pos in ("NNP", "NNPS") and doc.tokens[j].text[:1].isupper():
                    j += 1
                for k in range(j - 1, i, -1):  # run of >= 2 tokens
                    if doc.tokens[k].text in gazetteer.suffixes:
                        candidates.append(Span(i, k + 1))
                        break
                i = j
            else:
                i += 1

    existing = [m.span for m in doc.entities if m.entity_type is EntityType.COMPANY]
    chosen: list[Span] = []
    for span in sorted(set(candidates), key=lambda sp: (-len(sp), sp.start)):
        if any(span.overlaps(other) for other in chosen):
            continue
        if any(span.overlaps(other) for other in existing):
            continue
        if any(span.crosses(m.span) for m in doc.entities):
            continue
        chosen.append(span)

    chosen.sort()
    return [
        EntityMention(
            mention_id=f"{doc.doc_id}-org{i}",
            entity_type=EntityType.COMPANY,
            span=span,
            mention_kind=MentionKind.NAME,
            provenance=Provenance.PRE_ANNOTATION,
        )
        for i, span in enumerate(chosen)
    ]
