"""promex: rule-based pre-annotation and corpus tooling for company/product relations."""

from .model import (
    Corpus,
    Document,
    EntityMention,
    EntityType,
    IdentityChain,
    MentionKind,
    Provenance,
    RelationMention,
    Sentence,
    Span,
    Token,
    attach_annotations,
    make_document,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "Document",
    "EntityMention",
    "EntityType",
    "IdentityChain",
    "MentionKind",
    "Provenance",
    "RelationMention",
    "Sentence",
    "Span",
    "Token",
    "attach_annotations",
    "make_document",
    "__version__",
]
