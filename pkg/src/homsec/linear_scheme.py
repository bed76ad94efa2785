"""Vector-space (linear) secret sharing over prime fields.

The dealer vector is fixed to ``(1, 0, ..., 0)`` by :func:`build_threshold_vectors`,
so dealing picks ``v = (s, r_1, ..., r_{k-1})`` and participant ``i`` receives
``v . f(i)``: with Vandermonde vectors this is Shamir's scheme.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    CapExceeded,
    DimensionMismatch,
    FieldTooSmall,
    InconsistentShares,
    NotQualified,
)
from .gf import PrimeField, Vector
from .structure import AccessStructure, members, subsets_of_size

DEFAULT_STATE_CAP = 10**6


@dataclass(frozen=True)
class VectorAssignment:
    """Dealer vector plus one vector per participant (index ``i - 1``)."""

    dimension: int
    dealer: Vector
    participants: tuple[Vector, ...]

    def __post_init__(self):
        for v in (self.dealer, *self.participants):
            if len(v) != self.dimension:
                raise DimensionMismatch(f"vector {v} does not have length {self.dimension}")

    def vector(self, participant: int) -> Vector:
        return self.participants[participant - 1]

    def nonzero(self, p: int) -> bool:
        return all(any(x % p for x in v) for v in (self.dealer, *self.participants))


@dataclass(frozen=True)
class LinearScheme:
    field: PrimeField
    assignment: VectorAssignment
    structure: AccessStructure
    # |K(i)| per participant; None means every share lies in GF(p)
    share_sizes: tuple[int, ...] | None = None

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def secret_size(self) -> int:
        return self.field.p

    def share_size(self, participant: int) -> int:
        if self.share_sizes is None:
            return self.field.p
        return self.share_sizes[participant - 1]


@dataclass(frozen=True)
class ShareTable:
    p: int
    k: int
    seed: int | None
    secret: int | None
    shares: tuple[int, ...]

    def share(self, participant: int) -> int:
        return self.shares[participant - 1]

    def restrict(self, q: int) -> dict[int, int]:
        return {i: self.shares[i - 1] for i in members(q)}


@dataclass
class VerificationReport:
    kind: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    distinguishing: list = field(default_factory=list)

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        text = f"{self.kind}: {verdict} ({self.checked} checks)"
        if self.counterexample:
            text += f"; first counterexample: {self.counterexample}"
        return text


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def _check_dims(structure: AccessStructure, asg: VectorAssignment) -> None:
    if len(asg.participants) != structure.n:
        raise DimensionMismatch(
            f"assignment covers {len(asg.participants)} participants, structure has {structure.n}"
        )
    if asg.dimension != structure.k:
        raise DimensionMismatch(f"vector dimension {asg.dimension} differs from k={structure.k}")


def _spans_dealer(field_: PrimeField, asg: VectorAssignment, q: int) -> bool:
    return field_.in_span([asg.vector(i) for i in members(q)], asg.dealer)


def is_vector_space_structure(
    structure: AccessStructure,
    asg: VectorAssignment,
    field_: PrimeField,
    method: str = "shortcut",
) -> bool:
    """Does ``asg`` realize ``structure``: qualified iff f(D) is in the span?

    ``method="full"`` checks all 2**n subsets. ``"shortcut"`` checks sets of
    size k-1 and k only, which suffices when the vectors live in GF(p)^k: a
    spanning set contains a spanning subset of at most k vectors, which can
    be padded to exactly k inside any larger set.
    """
    _check_dims(structure, asg)
    if not asg.nonzero(field_.p):
        return False
    n, k = structure.n, structure.k
    if method == "full":
        candidates = range(1 << n)
    elif method == "shortcut":
        everyone = structure.participants
        candidates = itertools.chain(subsets_of_size(everyone, k - 1), subsets_of_size(everyone, k))
    else:
        raise ValueError(f"unknown method {method!r}")
    for q in candidates:
        if structure.is_qualified(q) != _spans_dealer(field_, asg, q):
            return False
    return True


def build_threshold_vectors(
    k: int, m: int, field_: PrimeField, class_map: Mapping[int, int] | None = None
) -> VectorAssignment:
    """Vandermonde assignment for a (k, m)-threshold structure.

    Class ``j`` is evaluated at ``x = j`` and gets ``(1, j, ..., j**(k-1))``;
    ``class_map`` sends participants ``1..n`` to classes ``1..m`` (identity
    when omitted). Requires ``p > m`` so the points are distinct and nonzero.
    """
    p = field_.p
    if p <= m:
        raise FieldTooSmall(f"need a prime above {m}, got {p}")
    if class_map is None:
        class_map = {j: j for j in range(1, m + 1)}
    rows = {j: tuple(pow(j, e, p) for e in range(k)) for j in range(1, m + 1)}
    n = len(class_map)
    participants = tuple(rows[class_map[i]] for i in range(1, n + 1))
    dealer = (1,) + (0,) * (k - 1)
    return VectorAssignment(k, dealer, participants)


def threshold_scheme(n: int, k: int, p: int) -> LinearScheme:
    """Shamir scheme for the (k, n)-threshold structure over GF(p)."""
    from .structure import complete

    field_ = PrimeField(p)
    return LinearScheme(field_, build_threshold_vectors(k, n, field_), complete(n, k))


def deal_with_vector(scheme: LinearScheme, v: Sequence[int], seed=None) -> ShareTable:
    """Shares ``v . f(i)`` for an explicit dealer vector ``v``."""
    f = scheme.field
    asg = scheme.assignment
    if len(v) != asg.dimension:
        raise DimensionMismatch(f"dealer vector has length {len(v)}, expected {asg.dimension}")
    shares = tuple(f.dot(v, u) for u in asg.participants)
    return ShareTable(f.p, asg.dimension, seed, f.dot(v, asg.dealer), shares)


def sample_dealer_vector(scheme: LinearScheme, secret: int, rng: random.Random) -> list[int]:
    """Uniform ``v`` with ``v . f(D) == secret``."""
    f = scheme.field
    p = f.p
    dealer = scheme.assignment.dealer
    pivot = next(i for i, x in enumerate(dealer) if x % p)
    v = [rng.randrange(p) for _ in dealer]
    v[pivot] = 0
    rest = f.dot(v, dealer)
    v[pivot] = (secret - rest) * f.inv(dealer[pivot]) % p
    return v


def deal(scheme: LinearScheme, secret: int, seed: int) -> ShareTable:
    """Deal ``secret`` with randomness drawn from ``random.Random(seed)``."""
    secret %= scheme.p
    rng = random.Random(seed)
    v = sample_dealer_vector(scheme, secret, rng)
    return deal_with_vector(scheme, v, seed)


def reconstruction_coefficients(scheme: LinearScheme, q: int) -> dict[int, int] | None:
    people = members(q)
    lam = scheme.field.solve_combination(
        [scheme.assignment.vector(i) for i in people], scheme.assignment.dealer
    )
    if lam is None:
        return None
    return dict(zip(people, lam))


def reconstruct(scheme: LinearScheme, q: int, shares: Mapping[int, int]) -> int:
    """Recover the secret from the shares of the qualified set ``q``."""
    if not scheme.structure.is_qualified(q):
        raise NotQualified(f"{_fmt(q)} is not qualified")
    f = scheme.field
    p = f.p
    people = members(q)
    missing = [i for i in people if i not in shares]
    if missing:
        raise NotQualified(f"no shares given for participants {missing}")
    coeffs = reconstruction_coefficients(scheme, q)
    if coeffs is None:
        raise InconsistentShares(f"dealer vector is not in the span of {_fmt(q)}")
    rows = [scheme.assignment.vector(i) for i in people]
    augmented = [list(r) + [shares[i]] for r, i in zip(rows, people)]
    if f.rank(augmented) != f.rank(rows):
        raise InconsistentShares(f"shares of {_fmt(q)} fit no dealer vector")
    return sum(c * shares[i] for i, c in coeffs.items()) % p


def _dealer_states(scheme: LinearScheme, cap: int):
    p, k = scheme.p, scheme.assignment.dimension
    if p**k > cap:
        raise CapExceeded(f"{p}^{k} dealer states exceed the cap {cap}")
    return itertools.product(range(p), repeat=k)


def verify_correctness(scheme: LinearScheme, cap: int = DEFAULT_STATE_CAP) -> VerificationReport:
    """Every minimal qualified set recovers the secret for every dealer state."""
    report = VerificationReport("correctness", True)
    states = _dealer_states(scheme, cap)
    coeffs = {}
    for q in scheme.structure.basis:
        lam = reconstruction_coefficients(scheme, q)
        if lam is None:
            report.passed = False
            report.counterexample = f"{_fmt(q)} does not span the dealer vector"
            return report
        coeffs[q] = lam
    f = scheme.field
    p = f.p
    asg = scheme.assignment
    for v in states:
        secret = f.dot(v, asg.dealer)
        shares = [f.dot(v, u) for u in asg.participants]
        for q, lam in coeffs.items():
            report.checked += 1
            got = sum(c * shares[i - 1] for i, c in lam.items()) % p
            if got != secret:
                report.passed = False
                report.counterexample = f"v={v} set {_fmt(q)} recovered {got}, secret {secret}"
                return report
    return report


def maximal_unqualified(structure: AccessStructure) -> list[int]:
    """Unqualified sets with no unqualified proper superset, sorted."""
    n = structure.n
    out = []
    for q in range(1 << n):
        if structure.is_qualified(q):
            continue
        if all(structure.is_qualified(q | (1 << i)) for i in range(n) if not q >> i & 1):
            out.append(q)
    out.sort(key=members)
    return out


def verify_privacy(
    scheme: LinearScheme, cap: int = DEFAULT_STATE_CAP, all_subsets: bool = False
) -> VerificationReport:
    """Unqualified sets see the same share distribution for every secret.

    By default only maximal unqualified sets are checked (marginals of equal
    distributions are equal); ``all_subsets=True`` checks every one.
    """
    structure = scheme.structure
    if all_subsets:
        targets = [q for q in range(1 << structure.n) if not structure.is_qualified(q)]
        targets.sort(key=members)
    else:
        targets = maximal_unqualified(structure)
    f = scheme.field
    asg = scheme.assignment
    tallies = {u: {} for u in targets}
    people = {u: [i - 1 for i in members(u)] for u in targets}
    for v in _dealer_states(scheme, cap):
        secret = f.dot(v, asg.dealer)
        shares = [f.dot(v, u) for u in asg.participants]
        for u in targets:
            view = tuple(shares[i] for i in people[u])
            tallies[u].setdefault(secret, Counter())[view] += 1
    report = VerificationReport("privacy", True)
    for u in targets:
        report.checked += 1
        dists = list(tallies[u].values())
        if any(d != dists[0] for d in dists[1:]):
            report.passed = False
            report.distinguishing.append(u)
    if report.distinguishing:
        report.counterexample = f"set {_fmt(report.distinguishing[0])} distinguishes secrets"
    return report


def _exact_log_ratio(a: int, b: int) -> Fraction:
    """log(a)/log(b) as a fraction when a and b are powers of a common base."""
    if a == b:
        return Fraction(1)
    base = min(a, b)
    for root in range(2, base + 1):
        ea = _power_of(a, root)
        eb = _power_of(b, root)
        if ea and eb:
            return Fraction(ea, eb)
    raise ValueError(f"log {a} / log {b} is not a simple rational")


def _power_of(x: int, base: int) -> int:
    e = 0
    while x > 1 and x % base == 0:
        x //= base
        e += 1
    return e if x == 1 else 0


def rate_from_sizes(secret_size: int, share_sizes: Sequence[int]) -> Fraction:
    if not share_sizes:
        raise ValueError("information rate undefined without participants")
    if min(share_sizes) < 2 or secret_size < 2:
        raise ValueError("secret and share spaces need at least two elements")
    return _exact_log_ratio(secret_size, max(share_sizes))


def information_rate(scheme: LinearScheme) -> Fraction:
    """log|S| / max log|K(i)|, exact."""
    sizes = [scheme.share_size(i) for i in range(1, scheme.structure.n + 1)]
    return rate_from_sizes(scheme.secret_size, sizes)
