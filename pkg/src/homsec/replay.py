"""Explicit independent sequences taken from the ideality lemmas.

Each construction maps an ordered tuple of ``k + 2`` distinct participants
(their roles) to a chain and witnesses; the result counts only if it
verifies on the given structure. Role orders, with ``k >= 3``:

``4.2-CaseI`` / ``4.2-CaseII``
    ``(u_i, u_j, u_m1, ..., u_m(k-1), v)``
``4.3-Claim1``
    ``(a_1, a_2, a_q1, ..., a_q(k-1), b)``
``4.3-Claim2``
    ``(a_u1, a_u2, a_3, ..., a_(k+1), b)``
``4.4-Claim1``
    ``(a_l1, ..., a_l(k-2), a_k, a_(k+1), b, x)``; ``swapped=True``
    exchanges the roles of ``a_k`` and ``a_(k+1)``.

The witness patterns are written for general k. At small k some of them
collapse (the witness union grows to k elements), so a replay can verify
yet prove only a weaker bound than ``(k-1)/k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .bounds import (
    IndependentSequenceCertificate,
    Verdict,
    formula_bound,
    verify_certificate,
)
from .errors import ConfigInvalid
from .structure import AccessStructure, pset

LEMMAS = ("4.2-CaseI", "4.2-CaseII", "4.3-Claim1", "4.3-Claim2", "4.4-Claim1")


@dataclass(frozen=True)
class LemmaConfig:
    lemma: str
    roles: tuple[int, ...]
    swapped: bool = False


@dataclass(frozen=True)
class ReplayResult:
    config: LemmaConfig
    certificate: IndependentSequenceCertificate | None
    verdict: Verdict


def _case_one(r, k):
    ui, uj, mm, v = r[0], r[1], r[2 : k + 1], r[-1]
    chain = [[ui, *mm[: t - 1]] for t in range(1, k)] + [[ui, *mm[: k - 2], v]]
    wits = [[uj, *mm[t - 1 : k - 3], mm[k - 2]] for t in range(1, k - 1)]
    wits += [[uj], [mm[k - 2]]]
    return chain, wits


def _case_two(r, k):
    ui, uj, mm, v = r[0], r[1], r[2 : k + 1], r[-1]
    chain = [mm[:t] for t in range(1, k)] + [[*mm, uj]]
    wits = [[ui, *mm[t : k - 2], v] for t in range(1, k - 1)]
    wits += [[v], [ui]]
    return chain, wits


def _claim_one(r, k):
    a1, a2, qq, b = r[0], r[1], r[2 : k + 1], r[-1]
    chain = [[qq[k - 3]]] + [[*qq[k - 1 - t : k - 2], b] for t in range(2, k)]
    chain.append([*chain[-1], a2])
    wits = [[a1, a2, *qq[1 : k - 2 - t], qq[k - 2]] for t in range(1, k - 2)]
    wits += [[a1, a2], [qq[k - 2]], [a1]]
    return chain, wits


def _claim_two(r, k):
    u1, u2, rest, b = r[0], r[1], r[2 : k + 1], r[-1]
    # rest[j - 3] is a_j, so a_k = rest[-2] and a_(k+1) = rest[-1]
    chain = [[u1]] + [[u1, *rest[: t - 2], b] for t in range(2, k)]
    chain.append([*chain[-1], rest[-1]])
    wits = [[u2, *rest[t:]] for t in range(1, k - 2)]
    wits += [[rest[-2], rest[-1]], [u2], [rest[-2]]]
    return chain, wits


def _claim_53(r, k, swapped):
    ll = r[: k - 2]
    ak, ak1, b, x = r[k - 2 :]
    if swapped:
        ak, ak1 = ak1, ak
    chain = [[ll[0]]] + [[*ll[: t - 1], b] for t in range(2, k)]
    chain.append([*chain[-1], x])
    wits = [[*ll[1:], ak, ak1]] + [[*ll[t - 1 :], ak] for t in range(2, k)] + [[ak1]]
    return chain, wits


def construct(config: LemmaConfig, k: int) -> tuple[list[int], list[int]]:
    """Chain and witnesses (as bitmasks) for ``config``, without verifying."""
    r = list(config.roles)
    if config.lemma == "4.2-CaseI":
        chain, wits = _case_one(r, k)
    elif config.lemma == "4.2-CaseII":
        chain, wits = _case_two(r, k)
    elif config.lemma == "4.3-Claim1":
        chain, wits = _claim_one(r, k)
    elif config.lemma == "4.3-Claim2":
        chain, wits = _claim_two(r, k)
    elif config.lemma == "4.4-Claim1":
        chain, wits = _claim_53(r, k, config.swapped)
    else:
        raise ConfigInvalid(f"unknown lemma id {config.lemma!r}; expected one of {LEMMAS}")
    return [pset(*c) for c in chain], [pset(*w) for w in wits]


def _validate(structure: AccessStructure, config: LemmaConfig) -> None:
    k = structure.k
    if config.lemma not in LEMMAS:
        raise ConfigInvalid(f"unknown lemma id {config.lemma!r}; expected one of {LEMMAS}")
    if k < 3:
        raise ConfigInvalid("lemma constructions need k >= 3")
    if config.swapped and config.lemma != "4.4-Claim1":
        raise ConfigInvalid("only 4.4-Claim1 has a swapped orientation")
    if len(config.roles) != k + 2:
        raise ConfigInvalid(f"expected {k + 2} roles, got {len(config.roles)}")
    if len(set(config.roles)) != len(config.roles):
        raise ConfigInvalid(f"roles {config.roles} repeat a participant")
    for p in config.roles:
        if not 1 <= p <= structure.n:
            raise ConfigInvalid(f"participant {p} outside 1..{structure.n}")


def replay_lemma_sequence(structure: AccessStructure, config: LemmaConfig) -> ReplayResult:
    """Build the lemma's sequence for the given roles and verify it.

    The certificate is returned only when it verifies, which happens exactly
    when the membership side conditions used by the construction hold.
    """
    _validate(structure, config)
    chain, wits = construct(config, structure.k)
    union = 0
    for w in wits:
        union |= w
    qualified = structure.is_qualified(union)
    cert = IndependentSequenceCertificate(
        tuple(chain), tuple(wits), union, qualified,
        formula_bound(union.bit_count(), len(chain), qualified),
    )
    verdict = verify_certificate(structure, cert)
    return ReplayResult(config, cert if verdict else None, verdict)


def candidate_configs(structure: AccessStructure, lemmas=LEMMAS) -> Iterator[LemmaConfig]:
    """Every role assignment for each lemma (and both 4.4 orientations)."""
    k = structure.k
    people = range(1, structure.n + 1)
    for lemma in lemmas:
        orientations = (False, True) if lemma == "4.4-Claim1" else (False,)
        for roles in itertools.permutations(people, k + 2):
            for swapped in orientations:
                yield LemmaConfig(lemma, roles, swapped)


def find_replay_certificate(
    structure: AccessStructure, target, max_m: int | None = None, max_a: int | None = None
) -> ReplayResult | None:
    """First replayed certificate (in candidate order) with bound <= target."""
    if structure.k < 3 or structure.n < structure.k + 2:
        return None
    for config in candidate_configs(structure):
        res = replay_lemma_sequence(structure, config)
        cert = res.certificate
        if cert is None or cert.bound > target:
            continue
        if max_m is not None and cert.m > max_m:
            continue
        if max_a is not None and cert.a_set.bit_count() > max_a:
            continue
        return res
    return None
