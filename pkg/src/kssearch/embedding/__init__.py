"""Embeddability on the sphere: assignments, numeric search, exact checks, sentences."""

from .assignment import Assignment, BaseVar, Cross, Pinned, best_assignment, derive_assignment, expr_depth
from .numeric import EmbedParams, EmbedResult, numeric_embed, pinned_embed, verify_embedding_numeric
from .algebra import min10A_chain_residual, min10A_identity_residual
from .sentence import build_sentence, emit_sentence
from .verify import check_unembeddable_by_subgraph, verify_embedding_exact

__all__ = [
    "Assignment",
    "BaseVar",
    "Cross",
    "Pinned",
    "EmbedParams",
    "EmbedResult",
    "best_assignment",
    "build_sentence",
    "emit_sentence",
    "min10A_chain_residual",
    "min10A_identity_residual",
    "check_unembeddable_by_subgraph",
    "derive_assignment",
    "expr_depth",
    "numeric_embed",
    "pinned_embed",
    "verify_embedding_exact",
    "verify_embedding_numeric",
]
