"""Ideality decision for k-homogeneous structures.

Pipeline: hypotheses on omega(k+1) -> reduction -> threshold test on the
quotient -> a verified linear scheme (ideal) or a verified independent
sequence with bound at most (k-1)/k (not ideal).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import (
    IndependentSequenceCertificate,
    SearchCaps,
    search_bound,
    verify_certificate,
)
from .errors import NotReducedThreshold, SearchExhausted, TooSmall, UnverifiedCertificate
from .gf import PrimeField, next_prime_above
from .linear_scheme import (
    LinearScheme,
    build_threshold_vectors,
    is_vector_space_structure,
    verify_correctness,
    verify_privacy,
)
from .reduction import ReductionResult, reduce
from .replay import find_replay_certificate
from .structure import AccessStructure, HypothesisReport, check_hypotheses, is_threshold

IDEAL = "IDEAL"
NOT_IDEAL = "NOT_IDEAL"
HYPOTHESES_NOT_MET = "HYPOTHESES_NOT_MET"
UNRESOLVED = "UNRESOLVED"


@dataclass
class Classification:
    status: str
    hypothesis_report: HypothesisReport
    reduction: ReductionResult | None = None
    scheme: LinearScheme | None = None
    certificate: IndependentSequenceCertificate | None = None
    caps: SearchCaps | None = None
    certificate_source: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def evidence(self):
        if self.status == IDEAL:
            return self.scheme
        if self.status == NOT_IDEAL:
            return self.certificate
        if self.status == UNRESOLVED:
            return self.caps
        return None


def target_bound(k: int) -> Fraction:
    return Fraction(k - 1, k)


def certify_ideal(
    structure: AccessStructure, p: int | None = None, reduction: ReductionResult | None = None
) -> LinearScheme:
    """Linear scheme for a structure whose reduction is a threshold structure.

    Participants in the same class share the Vandermonde vector of their
    class. ``p`` defaults to the smallest prime above the number of classes.
    """
    reduction = reduction or reduce(structure)
    if not is_threshold(reduction.quotient):
        raise NotReducedThreshold("the reduced structure is not a threshold structure")
    m = len(reduction.classes)
    field_ = PrimeField(p if p is not None else next_prime_above(m))
    class_map = {i: reduction.class_of(i) for i in range(1, structure.n + 1)}
    asg = build_threshold_vectors(structure.k, m, field_, class_map)
    scheme = LinearScheme(field_, asg, structure)
    if not is_vector_space_structure(structure, asg, field_):
        # cannot happen for a genuine threshold quotient
        raise NotReducedThreshold("class-wise Vandermonde vectors do not realize the structure")
    return scheme


def certify_nonideal(
    structure: AccessStructure,
    caps: SearchCaps | None = None,
    reduction: ReductionResult | None = None,
) -> tuple[IndependentSequenceCertificate, str]:
    """Certificate proving the optimal rate is at most (k-1)/k.

    Lemma replays are tried first, then the exhaustive search. Returns the
    certificate and its source (``replay:<lemma>`` or ``search``).
    """
    reduction = reduction or reduce(structure)
    if is_threshold(reduction.quotient):
        raise NotReducedThreshold("reduced structure is threshold; the structure is ideal")
    k = structure.k
    target = target_bound(k)
    caps = (caps or SearchCaps()).resolved(k)
    caps.validate()
    found = find_replay_certificate(structure, target, caps.max_m, caps.max_a)
    if found is not None:
        cert, source = found.certificate, "replay:" + found.config.lemma
        if found.config.swapped:
            source += "-swapped"
    else:
        result = search_bound(structure, caps, stop_at=target)
        if result.best is None or result.best.value > target:
            raise SearchExhausted(f"no certificate with bound <= {target} within caps", caps)
        cert, source = result.best.certificate, "search"
    verdict = verify_certificate(structure, cert)
    if not verdict:
        raise UnverifiedCertificate(f"certificate failed re-verification: {verdict.clause}", verdict)
    return cert, source


def classify(
    structure: AccessStructure, caps: SearchCaps | None = None, p: int | None = None
) -> Classification:
    if structure.n < structure.k + 1:
        raise TooSmall(f"classification needs at least k+1={structure.k + 1} participants")
    report = check_hypotheses(structure)
    out = Classification(HYPOTHESES_NOT_MET, report)
    if structure.n == structure.k + 1:
        out.notes.append("n = k+1: the hypotheses hold only for the threshold structure itself")
    if not report.satisfied:
        return out
    out.reduction = reduce(structure)
    if out.reduction.second_pass_merges:
        out.notes.append("reduced structure still has equivalent participants")
    if is_threshold(out.reduction.quotient):
        out.status = IDEAL
        out.scheme = certify_ideal(structure, p, out.reduction)
        return out
    try:
        out.certificate, out.certificate_source = certify_nonideal(structure, caps, out.reduction)
        out.status = NOT_IDEAL
    except SearchExhausted as exc:
        out.status = UNRESOLVED
        out.caps = exc.caps
    return out


def verify_classification(structure: AccessStructure, result: Classification) -> list[str]:
    """Re-check the evidence attached to a classification; returns problems found."""
    problems = []
    k = structure.k
    if result.status == IDEAL:
        scheme = result.scheme
        if scheme is None:
            return ["IDEAL without a scheme"]
        if not is_threshold(result.reduction.quotient):
            problems.append("IDEAL but quotient is not threshold")
        for rep in (verify_correctness(scheme), verify_privacy(scheme)):
            if not rep.passed:
                problems.append(rep.line())
    elif result.status == NOT_IDEAL:
        cert = result.certificate
        verdict = verify_certificate(structure, cert)
        if not verdict:
            problems.append(f"certificate rejected: {verdict.clause}")
        if cert.bound > target_bound(k):
            problems.append(f"certificate bound {cert.bound} exceeds {target_bound(k)}")
        if is_threshold(result.reduction.quotient):
            problems.append("NOT_IDEAL but quotient is threshold")
    elif result.status == UNRESOLVED:
        problems.append("UNRESOLVED under satisfied hypotheses")
    return problems
