"""domainforge: procedural cross-domain image benchmark generation and a
domain-aware prompt evaluation harness.

The package has two halves that share a manifest format:

* generation — a taxonomy of domain shifts drives a small software renderer
  that produces labeled scenes (image + target masks + exact occlusion
  ratio) for every valid domain combination;
* evaluation — prompt composition per labeled combination, pluggable
  embedding backends, cosine-similarity classification, and per-domain
  accuracy reports.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .taxonomy import (  # noqa: F401
    CombinationVerdict,
    Domain,
    DomainCombination,
    DomainShift,
    DomainTaxonomy,
    ExclusionConstraint,
    InvalidCombinationError,
    TaxonomyError,
    default_taxonomy,
    load_taxonomy,
)
