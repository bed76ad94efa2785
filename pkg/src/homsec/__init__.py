"""Analysis of k-homogeneous secret-sharing access structures."""

from .bounds import (
    IndependentSequenceCertificate,
    RateBound,
    SearchCaps,
    certificate_bound,
    search_bound,
    verify_certificate,
)
from .classifier import Classification, certify_ideal, certify_nonideal, classify
from .reduction import ReductionResult, equivalence_classes, is_equivalent, reduce
from .structure import (
    AccessStructure,
    build,
    check_hypotheses,
    complete,
    count_w,
    induced,
    is_qualified,
    is_threshold,
    members,
    omega,
    pset,
)

__version__ = "0.1.0"

__all__ = [
    "AccessStructure",
    "Classification",
    "IndependentSequenceCertificate",
    "RateBound",
    "ReductionResult",
    "SearchCaps",
    "build",
    "certificate_bound",
    "certify_ideal",
    "certify_nonideal",
    "check_hypotheses",
    "classify",
    "complete",
    "count_w",
    "equivalence_classes",
    "induced",
    "is_equivalent",
    "is_qualified",
    "is_threshold",
    "members",
    "omega",
    "pset",
    "reduce",
    "search_bound",
    "verify_certificate",
]
