"""Deterministic English verb inflection for pattern expansion.

Covers the regular rules (s/es, ed with e-drop, ing with e-drop) plus a
small shipped exceptions table for irregular forms and final-consonant
doubling.  The rules only need to be right for the verbs that appear in
pattern configurations, not for the whole language.
"""

from __future__ import annotations

VOWELS = "aeiou"

# word -> (3rd person singular, past, gerund)
IRREGULAR = {
    "be": ("is", "was", "being"),
    "have": ("has", "had", "having"),
    "make": ("makes", "made", "making"),
    "sell": ("sells", "sold", "selling"),
    "do": ("does", "did", "doing"),
}

# verbs that double their final consonant before -ed / -ing
DOUBLE_FINAL = {"ship", "plan", "stop", "drop", "equip", "fit", "rebrand"}


def _third_person(verb: str) -> str:
    if verb.endswith("y") and len(verb) > 1 and verb[-2] not in VOWELS:
        return verb[:-1] + "ies"
    if verb.endswith(("s", "x", "z", "ch", "sh", "o")):
        return verb + "es"
    return verb + "s"


def _past(verb: str) -> str:
    if verb in DOUBLE_FINAL:
        return verb + verb[-1] + "ed"
    if verb.endswith("e"):
        return verb + "d"
    if verb.endswith("y") and len(verb) > 1 and verb[-2] not in VOWELS:
        return verb[:-1] + "ied"
    return verb + "ed"


def _gerund(verb: str) -> str:
    if verb in DOUBLE_FINAL:
        return verb + verb[-1] + "ing"
    if verb.endswith("e") and not verb.endswith("ee"):
        return verb[:-1] + "ing"
    return verb + "ing"


def inflections(verb: str) -> tuple[str, str, str, str]:
    """Return (base, 3sg, past, gerund) for `verb`, deterministically."""
    if verb in IRREGULAR:
        return (verb, *IRREGULAR[verb])
    return (verb, _third_person(verb), _past(verb), _gerund(verb))
