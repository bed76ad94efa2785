"""Independent sequences and the upper bounds they certify on the optimal rate.

A certificate is a strict chain ``B_1 < ... < B_m`` of unqualified sets,
witnesses ``X_1..X_m`` with ``B_i | X_i`` qualified and ``B_{i-1} | X_i``
unqualified (``B_0`` empty), and a set ``A`` containing every witness. It
bounds the optimal information rate by ``|A|/(m+1)`` when ``A`` is qualified
and by ``|A|/m`` otherwise. Everything here is exact: bounds are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import IndependenceViolated, UnverifiedCertificate
from .structure import AccessStructure, members, submasks

SEQUENCE = "sequence-certificate"
IDEAL = "ideal-scheme"


@dataclass(frozen=True)
class IndependentSequenceCertificate:
    chain: tuple[int, ...]
    witnesses: tuple[int, ...]
    a_set: int
    a_qualified: bool
    bound: Fraction

    @property
    def m(self) -> int:
        return len(self.chain)

    def sort_key(self):
        return (
            self.bound,
            self.a_set.bit_count(),
            self.m,
            tuple(members(b) for b in self.chain),
            tuple(members(x) for x in self.witnesses),
            members(self.a_set),
        )


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str | None = None
    index: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class RateBound:
    value: Fraction
    provenance: str
    certificate: object = None


@dataclass(frozen=True)
class SearchCaps:
    max_m: int | None = None
    max_a: int | None = None
    time_budget: float | None = None

    def resolved(self, k: int) -> "SearchCaps":
        return SearchCaps(
            self.max_m if self.max_m is not None else k + 1,
            self.max_a if self.max_a is not None else k,
            self.time_budget,
        )

    def validate(self) -> None:
        for name in ("max_m", "max_a"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass
class SearchResult:
    best: RateBound | None
    exhaustive: bool = True
    stopped_early: bool = False
    caps: SearchCaps = field(default_factory=SearchCaps)


def formula_bound(a_size: int, m: int, a_qualified: bool) -> Fraction:
    return Fraction(a_size, m + 1) if a_qualified else Fraction(a_size, m)


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def verify_certificate(
    structure: AccessStructure, cert: IndependentSequenceCertificate
) -> Verdict:
    """Check every defining clause; report the first one that fails."""
    limit = structure.participants
    sets = [*cert.chain, *cert.witnesses, cert.a_set]
    for s in sets:
        if s < 0 or s & ~limit:
            return Verdict(False, "range", None, f"{s:#b} leaves 1..{structure.n}")
    m = len(cert.chain)
    if m == 0 or len(cert.witnesses) != m:
        return Verdict(False, "shape", None, f"{m} chain sets, {len(cert.witnesses)} witnesses")
    if cert.chain[0] == 0:
        return Verdict(False, "first-nonempty", 1, "B_1 is empty")
    for i in range(1, m):
        lo, hi = cert.chain[i - 1], cert.chain[i]
        if lo & ~hi or lo == hi:
            return Verdict(False, "strict-chain", i + 1, f"B_{i} is not a proper subset of B_{i + 1}")
    qual = structure.is_qualified
    if qual(cert.chain[-1]):
        return Verdict(False, "last-unqualified", m, f"B_{m} = {_fmt(cert.chain[-1])} is qualified")
    prev = 0
    for i, (b, x) in enumerate(zip(cert.chain, cert.witnesses), start=1):
        if not qual(b | x):
            return Verdict(False, "completes", i, f"B_{i} | X_{i} = {_fmt(b | x)} is unqualified")
        if qual(prev | x):
            return Verdict(False, "separates", i, f"B_{i - 1} | X_{i} = {_fmt(prev | x)} is qualified")
        prev = b
    union = 0
    for x in cert.witnesses:
        union |= x
    if union & ~cert.a_set:
        return Verdict(False, "witness-containment", None, f"witnesses {_fmt(union)} not inside A")
    if qual(cert.a_set) != cert.a_qualified:
        return Verdict(False, "a-qualified-flag", None, "A qualification flag is wrong")
    expected = formula_bound(cert.a_set.bit_count(), m, cert.a_qualified)
    if cert.bound != expected:
        return Verdict(False, "bound-formula", None, f"bound {cert.bound} != {expected}")
    return Verdict(True)


def certificate_bound(structure: AccessStructure, cert: IndependentSequenceCertificate) -> Fraction:
    """The bound a certificate proves; raises if it does not verify."""
    verdict = verify_certificate(structure, cert)
    if not verdict:
        raise UnverifiedCertificate(f"certificate rejected: {verdict.clause}", verdict)
    return formula_bound(cert.a_set.bit_count(), cert.m, cert.a_qualified)


def _independence_verdict(structure, chain, witnesses) -> Verdict:
    probe = IndependentSequenceCertificate(tuple(chain), tuple(witnesses), structure.participants,
                                           True, Fraction(0))
    verdict = verify_certificate(structure, probe)
    if verdict.clause in ("witness-containment", "a-qualified-flag", "bound-formula"):
        return Verdict(True)
    return verdict


def minimize_A(structure: AccessStructure, chain: Sequence[int], witnesses: Sequence[int]):
    """Smallest A for fixed witnesses: their union. Returns (A, A qualified?)."""
    verdict = _independence_verdict(structure, chain, witnesses)
    if not verdict:
        raise IndependenceViolated(f"not an independent sequence: {verdict.detail}", verdict)
    union = 0
    for x in witnesses:
        union |= x
    return union, structure.is_qualified(union)


def make_certificate(
    structure: AccessStructure, chain: Sequence[int], witnesses: Sequence[int], a_set: int | None = None
) -> IndependentSequenceCertificate:
    """Assemble a certificate, taking A as the witness union unless given."""
    if a_set is None:
        a_set, qualified = minimize_A(structure, chain, witnesses)
    else:
        qualified = structure.is_qualified(a_set)
    bound = formula_bound(a_set.bit_count(), len(chain), qualified)
    return IndependentSequenceCertificate(tuple(chain), tuple(witnesses), a_set, qualified, bound)


def _set_order(masks):
    return sorted(masks, key=lambda s: (s.bit_count(), members(s)))


def search_bound(
    structure: AccessStructure,
    caps: SearchCaps | None = None,
    stop_at: Fraction | None = None,
) -> SearchResult:
    """Best independent-sequence bound within the caps.

    For every candidate A (``|A| <= max_a``) the longest admissible chain
    whose witnesses lie inside A is found by dynamic programming over the
    unqualified sets; step ``B' -> B`` is admissible when some witness
    ``X`` inside A (``|X| <= k``) has ``B | X`` qualified and ``B' | X``
    unqualified. This explores every chain/witness combination the caps
    allow. Ties are broken by smaller A, then shorter chain, then the
    lexicographic order of the sets.

    With ``stop_at`` the search returns as soon as a bound at or below it is
    found. When the time budget runs out the best bound so far is returned
    with ``exhaustive=False``; it is still a valid bound.
    """
    caps = (caps or SearchCaps()).resolved(structure.k)
    caps.validate()
    deadline = None if caps.time_budget is None else time.monotonic() + caps.time_budget
    n, k = structure.n, structure.k
    qual = structure.is_qualified
    unqualified = _set_order(s for s in range(1, 1 << n) if not qual(s))
    preds = {b: [c for c in unqualified if c != b and c & ~b == 0] for b in unqualified}
    candidates = _set_order(
        a for a in range(1, 1 << n) if a.bit_count() <= caps.max_a
    )
    best: IndependentSequenceCertificate | None = None
    result = SearchResult(None, caps=caps)
    for a_set in candidates:
        if deadline is not None and time.monotonic() > deadline:
            result.exhaustive = False
            break
        a_size = a_set.bit_count()
        a_qual = qual(a_set)
        optimistic = formula_bound(a_size, caps.max_m, a_qual)
        if best is not None and optimistic > best.bound:
            continue
        witnesses = _set_order(x for x in submasks(a_set) if x and x.bit_count() <= k)
        cert = _longest_chain(structure, a_set, witnesses, unqualified, preds, caps.max_m)
        if cert is None:
            continue
        if best is None or cert.sort_key() < best.sort_key():
            best = cert
        if stop_at is not None and best.bound <= stop_at:
            result.stopped_early = True
            break
    if best is not None:
        result.best = RateBound(best.bound, SEQUENCE, best)
    return result


def _longest_chain(structure, a_set, witnesses, unqualified, preds, max_m):
    qual = structure.is_qualified
    length: dict[int, int] = {}
    back: dict[int, tuple[int, int]] = {}
    for b in unqualified:
        best_len = 0
        step = None
        for x in witnesses:
            if qual(b | x) and not qual(x):
                best_len, step = 1, (0, x)
                break
        for c in preds[b]:
            lc = length.get(c, 0)
            if lc == 0 or lc >= max_m or lc + 1 <= best_len:
                continue
            for x in witnesses:
                if qual(b | x) and not qual(c | x):
                    best_len, step = lc + 1, (c, x)
                    break
        if best_len:
            length[b] = best_len
            back[b] = step
    if not length:
        return None
    top = max(length.values())
    end = next(b for b in unqualified if length.get(b) == top)
    chain, wits = [], []
    b = end
    while b:
        prev, x = back[b]
        chain.append(b)
        wits.append(x)
        b = prev
    chain.reverse()
    wits.reverse()
    union = 0
    for x in wits:
        union |= x
    m = len(chain)
    tight = formula_bound(union.bit_count(), m, qual(union))
    loose = formula_bound(a_set.bit_count(), m, qual(a_set))
    chosen = union if tight <= loose else a_set
    return make_certificate(structure, chain, wits, chosen)


def lift_certificate(reduction, cert: IndependentSequenceCertificate, structure: AccessStructure):
    """Carry a certificate on the reduced structure back to the original one.

    Each quotient participant is replaced by its class representative. The
    bound is unchanged; the lifted certificate is verified before returning.
    """
    lifted = IndependentSequenceCertificate(
        tuple(reduction.lift(b) for b in cert.chain),
        tuple(reduction.lift(x) for x in cert.witnesses),
        reduction.lift(cert.a_set),
        cert.a_qualified,
        cert.bound,
    )
    verdict = verify_certificate(structure, lifted)
    if not verdict:
        raise UnverifiedCertificate(f"lifted certificate rejected: {verdict.clause}", verdict)
    return lifted
