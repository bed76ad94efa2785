"""Participant equivalence and the reduced (quotient) access structure."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntransitivityDetected, OutOfRange
from .structure import AccessStructure, build, induced, members, pset, submasks


def _check_participant(structure: AccessStructure, a: int) -> None:
    if not 1 <= a <= structure.n:
        raise OutOfRange(f"participant {a} outside 1..{structure.n}")


def _link(structure: AccessStructure, a: int) -> frozenset:
    bit = 1 << (a - 1)
    return frozenset(b ^ bit for b in structure.basis if b & bit)


def is_equivalent(structure: AccessStructure, a: int, b: int) -> bool:
    """True iff ``a`` and ``b`` are interchangeable participants.

    Distinct participants are equivalent when no minimal qualified set
    holds both, and swapping one for the other maps minimal qualified sets
    to minimal qualified sets. With a k-uniform basis the swap condition
    only involves sets of size k-1, so it reduces to comparing the links
    ``{B - {a} : a in B}`` and ``{B - {b} : b in B}``.
    """
    _check_participant(structure, a)
    _check_participant(structure, b)
    if a == b:
        return True
    both = pset(a, b)
    if any(blk & both == both for blk in structure.basis):
        return False
    return _link(structure, a) == _link(structure, b)


def is_equivalent_naive(structure: AccessStructure, a: int, b: int) -> bool:
    """Reference check of the definition over every A inside P - {a, b}."""
    _check_participant(structure, a)
    _check_participant(structure, b)
    if a == b:
        return True
    both = pset(a, b)
    minimal = set(structure.basis)
    if any(both & blk == both for blk in minimal):
        return False
    rest = structure.participants & ~both
    abit, bbit = 1 << (a - 1), 1 << (b - 1)
    for sub in submasks(rest):
        if ((sub | abit) in minimal) != ((sub | bbit) in minimal):
            return False
    return True


def equivalence_classes(structure: AccessStructure) -> list[tuple[int, ...]]:
    """Partition of the participants into equivalence classes.

    Classes are sorted by their smallest member. Transitivity of the
    pairwise relation is verified rather than assumed.
    """
    n = structure.n
    related = [[False] * (n + 1) for _ in range(n + 1)]
    for a in range(1, n + 1):
        related[a][a] = True
        for b in range(a + 1, n + 1):
            related[a][b] = related[b][a] = is_equivalent(structure, a, b)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if not related[a][b]:
                continue
            for c in range(1, n + 1):
                if related[b][c] and not related[a][c]:
                    raise IntransitivityDetected(
                        f"{a}~{b} and {b}~{c} but not {a}~{c}", (a, b, c)
                    )
    classes = []
    assigned = set()
    for a in range(1, n + 1):
        if a in assigned:
            continue
        block = tuple(b for b in range(a, n + 1) if related[a][b])
        assigned.update(block)
        classes.append(block)
    return classes


@dataclass(frozen=True)
class ReductionResult:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    quotient: AccessStructure
    relabel: dict
    # True when the quotient itself still has equivalent participants
    second_pass_merges: bool = False

    def class_of(self, participant: int) -> int:
        """Quotient label of the class containing ``participant``."""
        for block, rep in zip(self.classes, self.representatives):
            if participant in block:
                return self.relabel[rep]
        raise OutOfRange(f"participant {participant} not in any class")

    def lift(self, quotient_mask: int) -> int:
        """Map a set of quotient participants back to their representatives."""
        inverse = {v: k for k, v in self.relabel.items()}
        return pset(*(inverse[q] for q in members(quotient_mask)))


def reduce(structure: AccessStructure) -> ReductionResult:
    """Identify equivalent participants.

    The quotient is the structure induced on the class representatives
    (smallest member of each class), relabelled ``1..m``.
    """
    classes = equivalence_classes(structure)
    reps = tuple(block[0] for block in classes)
    if len(reps) == structure.n:
        quotient = structure
        relabel = {p: p for p in reps}
    else:
        quotient, relabel = induced(structure, pset(*reps))
    again = any(
        is_equivalent(quotient, a, b)
        for a in range(1, quotient.n + 1)
        for b in range(a + 1, quotient.n + 1)
    )
    return ReductionResult(tuple(classes), reps, quotient, relabel, again)


def quotient_from_classes(structure: AccessStructure, classes) -> AccessStructure:
    """Quotient built by mapping every participant to its class index.

    Independent of :func:`induced`; used to check the isomorphism between
    the quotient and the structure induced on the representatives.
    """
    index = {}
    for i, block in enumerate(classes, start=1):
        for p in block:
            index[p] = i
    sets = {pset(*(index[p] for p in members(b))) for b in structure.basis}
    return build(len(classes), structure.k, sorted(sets))
