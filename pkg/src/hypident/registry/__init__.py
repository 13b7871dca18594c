"""Registry of identities; importing the package registers every identity."""

from hypident.registry.core import (
    BOTH,
    FORMAL,
    NUMERIC,
    REGISTRY,
    Constraint,
    IdentityDescriptor,
    Side,
    build_side,
    catalogue,
    get_identity,
    with_perturbation,
)
from hypident.registry import andrews, ggr, lemmas, qggr  # noqa: F401  (registers)
from hypident.registry.ggr import ggr1_multisum, ggr2_multisum, ggr_lhs_coefficient

__all__ = [
    "BOTH",
    "FORMAL",
    "NUMERIC",
    "REGISTRY",
    "Constraint",
    "IdentityDescriptor",
    "Side",
    "build_side",
    "catalogue",
    "get_identity",
    "with_perturbation",
    "ggr_lhs_coefficient",
    "ggr1_multisum",
    "ggr2_multisum",
]
