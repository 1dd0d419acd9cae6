from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from promex.ingest import (
    IllegalBioTransition,
    MalformedLine,
    OrgGazetteer,
    document_from_text,
    read_tagged,
    recognize_orgs,
    split_sentences,
    tag,
    tokenize,
)
from promex.model import EntityType, Provenance, Span

from conftest import simple_tokens
from promex.model import make_document


def texts(result):
    return [t for t, _, _ in result]


class TestTokenize:
    def test_possessive_clitic(self):
        assert texts(tokenize("BMW's Z3")) == ["BMW", "'s", "Z3"]

    def test_hyphenated_words_stay_whole(self):
        assert texts(tokenize("mixed-signal circuits")) == ["mixed-signal", "circuits"]

    def test_trademark_symbol_split(self):
        assert texts(tokenize("McRib®")) == ["McRib", "®"]

    def test_punctuation_separation(self):
        assert texts(tokenize('He said: "stop, now!"')) == [
            "He", "said", ":", '"', "stop", ",", "now", "!", '"',
        ]

    def test_offsets_recover_surface(self):
        text = "Sensata Technologies' products (incl. sensors)."
        for tok, start, end in tokenize(text):
            assert text[start:end] == tok

    @given(st.text(alphabet=st.characters(codec="utf-8"), max_size=60))
    def test_offset_faithful(self, text):
        result = tokenize(text)
        covered = []
        for tok, start, end in result:
            assert text[start:end] == tok
            covered.append((start, end))
        # tokens are ordered, non-overlapping, and cover all non-whitespace
        assert covered == sorted(covered)
        for (s1, e1), (s2, e2) in zip(covered, covered[1:]):
            assert e1 <= s2
        outside = set(range(len(text))) - {
            i for s, e in covered for i in range(s, e)
        }
        assert all(text[i].isspace() for i in outside)


class TestSplitSentences:
    def test_terminators(self):
        assert split_sentences(["a", ".", "b", "!", "c"]) == [(0, 2), (2, 4), (4, 5)]

    def test_no_terminator(self):
        assert split_sentences(["a", "b"]) == [(0, 2)]

    def test_empty(self):
        assert split_sentences([]) == []


class TestTag:
    def test_gerund_and_plural(self):
        assert tag(["communicating", "sensors"]) == ["VBG", "NNS"]

    def test_numeric(self):
        assert tag(["1500"]) == ["CD"]

    def test_shipped_lexicon_noun_compound(self):
        assert tag(["speed", "sensors"]) == ["NN", "NNS"]

    def test_capitalized_non_initial(self):
        assert tag(["the", "Acme", "Holdings"]) == ["DT", "NNP", "NNP"]

    def test_deterministic(self):
        sample = ["Acme", "launched", "high-speed", "sensors", "."]
        assert tag(sample) == tag(sample)

    def test_possessive_clitic(self):
        assert tag(["BMW", "'s", "Z3"]) == ["NN", "POS", "NNP"]


class TestReadTagged:
    def test_bio_mention(self):
        doc = read_tagged(
            "Sensata\tNNP\tB-Company\n"
            "Technologies\tNNP\tI-Company\n"
            "develops\tVBZ\tO\n"
            "sensors\tNNS\tO\n"
        )
        assert len(doc.sentences) == 1
        assert len(doc.tokens) == 4
        assert len(doc.entities) == 1
        m = doc.entities[0]
        assert m.entity_type is EntityType.COMPANY
        assert m.span == Span(0, 2)
        assert m.provenance is Provenance.HUMAN

    def test_empty_input(self):
        doc = read_tagged("")
        assert doc.tokens == ()
        assert doc.sentences == ()

    def test_missing_tag_field(self):
        with pytest.raises(MalformedLine) as exc:
            read_tagged("sensors\t")
        assert exc.value.line_no == 1

    def test_illegal_bio_transition(self):
        with pytest.raises(IllegalBioTransition) as exc:
            read_tagged("a\tNN\tO\nb\tNN\tI-Company\n")
        assert exc.value.line_no == 2

    def test_bio_does_not_continue_across_sentences(self):
        with pytest.raises(IllegalBioTransition):
            read_tagged("a\tNNP\tB-Company\n\nb\tNNP\tI-Company\n")

    def test_comments_and_blank_lines(self):
        doc = read_tagged("# header\na\tNN\n\n\nb\tNN\n")
        assert [s.span for s in doc.sentences] == [Span(0, 1), Span(1, 2)]

    def test_product_mention_kinds(self):
        doc = read_tagged("sensors\tNNS\tB-Product\nZ3\tNNP\tB-Product\n")
        kinds = [m.mention_kind.value for m in doc.entities]
        assert kinds == ["Nominal", "Name"]


class TestRecognizeOrgs:
    def test_legal_suffix_run(self):
        doc = make_document(
            "d",
            "IS International Services LLC",
            simple_tokens("IS/NNP International/NNP Services/NNP LLC/NNP"),
            [(0, 4)],
        )
        orgs = recognize_orgs(doc, OrgGazetteer.from_names([]))
        assert [m.span for m in orgs] == [Span(0, 4)]
        assert orgs[0].provenance is Provenance.PRE_ANNOTATION

    def test_gazetteer_match(self):
        doc = make_document(
            "d",
            "Sensata Technologies develops sensors",
            simple_tokens("Sensata/NNP Technologies/NNP develops/VBZ sensors/NNS"),
            [(0, 4)],
        )
        orgs = recognize_orgs(doc, OrgGazetteer.from_names(["Sensata Technologies"]))
        assert [m.span for m in orgs] == [Span(0, 2)]

    def test_no_candidates(self):
        doc = make_document(
            "d", "plain words here",
            simple_tokens("plain/JJ words/NNS here/RB"), [(0, 3)],
        )
        assert recognize_orgs(doc, OrgGazetteer.from_names([])) == []

    def test_longest_first_resolution(self):
        doc = make_document(
            "d",
            "Sensata Technologies Holding produces sensors",
            simple_tokens("Sensata/NNP Technologies/NNP Holding/NNP produces/VBZ sensors/NNS"),
            [(0, 5)],
        )
        gaz = OrgGazetteer.from_names(["Sensata Technologies", "Sensata Technologies Holding"])
        assert [m.span for m in recognize_orgs(doc, gaz)] == [Span(0, 3)]

    def test_output_spans_never_overlap(self):
        doc = make_document(
            "d",
            "Acme Corp. and Acme Corp. Europe",
            simple_tokens("Acme/NNP Corp./NNP and/CC Acme/NNP Corp./NNP Europe/NNP"),
            [(0, 6)],
        )
        gaz = OrgGazetteer.from_names(["Acme Corp. Europe", "Acme"])
        spans = [m.span for m in recognize_orgs(doc, gaz)]
        for i, a in enumerate(spans):
            for b in spans[i + 1:]:
                assert not a.overlaps(b)


class TestDocumentFromText:
    def test_round_trip_surfaces(self):
        text = "Sensata Technologies develops sensors. BMW's Z3 is a roadster."
        doc = document_from_text(text)
        assert doc.text == text
        assert len(doc.sentences) == 2
        for tok in doc.tokens:
            assert text[tok.char_start:tok.char_end] == tok.text

    def test_tagging_uses_sentence_position(self):
        doc = document_from_text("Communicating sensors. Acme Devices ships.")
        tags = [t.pos for t in doc.tokens]
        assert tags[0] == "VBG"          # sentence-initial gerund
        assert tags[4] == "NNP"          # capitalized, non-initial
