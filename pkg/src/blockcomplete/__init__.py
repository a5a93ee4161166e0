"""Exact invertible completions of block upper triangular matrices."""

from .complete3 import (
    Certificate, Completion3, ConstructionTrace, FeasibilityReport, Instance3, assemble, certify,
    check_conditions, construct_completion, factorize, lemma12_check,
)
from .dimcards import ALEPH0, ExtDim, achievable_codims, decide_quotient_iso
from .exact import Mat, block_assemble, image_basis, inverse, kernel_basis, mat, rank, rref
from .harte import ghost_identity, lemma11_check
from .nblock import (
    CompletionN, InstanceN, assemble_n, check_necessary_n, extracted_invertible, reduce,
    search_completion_n,
)
from .subspace import Subspace, complement, embed, iso, quotient_dim

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Completion3", "ConstructionTrace", "FeasibilityReport", "Instance3", "assemble", "certify",
    "check_conditions", "construct_completion", "factorize", "lemma12_check",
    "ALEPH0", "ExtDim", "achievable_codims", "decide_quotient_iso",
    "Mat", "block_assemble", "image_basis", "inverse", "kernel_basis", "mat", "rank", "rref",
    "ghost_identity", "lemma11_check",
    "CompletionN", "InstanceN", "assemble_n", "check_necessary_n", "extracted_invertible", "reduce",
    "search_completion_n",
    "Subspace", "complement", "embed", "iso", "quotient_dim",
]
