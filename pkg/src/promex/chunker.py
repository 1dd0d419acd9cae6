"""Product-candidate chunking over POS tag sequences.

A candidate is a maximal token span whose tags match
``(VBG|NN*|JJ|CD)* (NN*)+ (NN*|JJ|CD)*`` where ``NN*`` ranges over the
noun tags; gerunds are admitted as premodifiers only, never as heads.
Matching is left-to-right maximal munch, so candidates never overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Protocol, Sequence

from .model import NOUN_TAGS, Span

CHUNK_TAGS = NOUN_TAGS | {"JJ", "CD", "VBG"}
TRADEMARK_TEXTS = {"®", "™"}
_CONJ = {"and", "or"}


class TokenLike(Protocol):
    text: str
    pos: str


@dataclass(frozen=True)
class ChunkCandidate:
    span: Span
    head_index: int  # last noun token in the span
    coordinated: bool = False


def span_matches_grammar(tags: Sequence[str]) -> bool:
    """True when a tag sequence parses as a product candidate."""
    if not tags or any(t not in CHUNK_TAGS for t in tags):
        return False
    noun_positions = [i for i, t in enumerate(tags) if t in NOUN_TAGS]
    if not noun_positions:
        return False
    # a gerund after the last noun could only sit in the suffix, which bans VBG
    return all(t != "VBG" for t in tags[noun_positions[-1] + 1:])


def chunk(tokens: Sequence[TokenLike], base: int = 0) -> list[ChunkCandidate]:
    """Maximal-munch candidates for one sentence.

    Spans are offset by `base` so callers can work in document token
    coordinates.  Trademark symbols immediately following a candidate are
    absorbed into its span.
    """
    tags = [t.pos for t in tokens]
    out: list[ChunkCandidate] = []
    i, n = 0, len(tokens)
    while i < n:
        j = i
        best = -1
        last_noun = -1
        while j < n and tags[j] in CHUNK_TAGS:
            if tags[j] in NOUN_TAGS:
                last_noun = j
            j += 1
            if last_noun >= i and all(t != "VBG" for t in tags[last_noun + 1:j]):
                best = j
        if best < 0:
            i += 1
            continue
        head = max(k for k in range(i, best) if tags[k] in NOUN_TAGS)
        end = best
        while end < n and tokens[end].text in TRADEMARK_TEXTS:
            end += 1
        out.append(ChunkCandidate(span=Span(base + i, base + end), head_index=base + head))
        i = end
    return out


def _adjective_runs(tokens: Sequence[TokenLike], taken: set[int]) -> list[Span]:
    runs: list[Span] = []
    i, n = 0, len(tokens)
    while i < n:
        if tokens[i].pos == "JJ" and i not in taken:
            j = i
            while j < n and tokens[j].pos == "JJ" and j not in taken:
                j += 1
            runs.append(Span(i, j))
            i = j
        else:
            i += 1
    return runs


def _separator(tokens: Sequence[TokenLike], start: int, end: int) -> tuple[bool, bool]:
    """Classify the gap tokens between two conjuncts: (is_separator, has_conjunction)."""
    texts = [tokens[k].text.lower() for k in range(start, end)]
    if texts == [","]:
        return True, False
    if len(texts) == 1 and texts[0] in _CONJ:
        return True, True
    if len(texts) == 2 and texts[0] == "," and texts[1] in _CONJ:
        return True, True
    return False, False


def split_coordination(
    candidates: Sequence[ChunkCandidate],
    tokens: Sequence[TokenLike],
    base: int = 0,
) -> list[ChunkCandidate]:
    """Apply the coordination rules to chunk output.

    A coordination `X (, X)* (and|or) X` over candidates and bare adjective
    runs is split into one candidate per conjunct when every non-final
    conjunct carries a noun, and merged into a single spanning candidate
    when all non-final conjuncts are pure adjectives.  All members of a
    coordination come back with the `coordinated` flag set.
    """
    local = [replace(c, span=Span(c.span.start - base, c.span.end - base),
                     head_index=c.head_index - base) for c in candidates]
    taken = {i for c in local for i in range(c.span.start, c.span.end)}

    units: list[tuple[Span, ChunkCandidate | None]] = [(c.span, c) for c in local]
    units += [(run, None) for run in _adjective_runs(tokens, taken)]
    units.sort(key=lambda u: u[0].start)

    out: list[ChunkCandidate] = []
    i = 0
    while i < len(units):
        chain = [units[i]]
        conj_last = False
        j = i
        while j + 1 < len(units):
            ok, conj = _separator(tokens, units[j][0].end, units[j + 1][0].start)
            if not ok:
                break
            chain.append(units[j + 1])
            conj_last = conj
            j += 1
        if len(chain) >= 2 and conj_last and chain[-1][1] is not None:
            non_final = chain[:-1]
            if all(c is None for _, c in non_final):
                final = chain[-1][1]
                assert final is not None
                out.append(
                    ChunkCandidate(
                        span=Span(chain[0][0].start, final.span.end),
                        head_index=final.head_index,
                        coordinated=True,
                    )
                )
            else:
                # every noun-bearing conjunct stands alone; bare adjective
                # runs in mixed chains are dropped
                out.extend(replace(c, coordinated=True) for _, c in chain if c is not None)
            i = j + 1
        else:
            if units[i][1] is not None:
                out.append(units[i][1])
            i += 1

    out.sort(key=lambda c: c.span)
    return [
        replace(c, span=Span(c.span.start + base, c.span.end + base),
                head_index=c.head_index + base)
        for c in out
    ]
