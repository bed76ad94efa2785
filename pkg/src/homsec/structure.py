"""k-homogeneous access structures and their counting statistics.

Participants are the integers ``1..n``. A set of participants is an ``int``
bitmask in which bit ``i - 1`` stands for participant ``i``; use
:func:`pset` / :func:`members` to convert. All values are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable

from .errors import (
    Duplicate,
    EmptyBasis,
    InvalidSize,
    OutOfRange,
    TooSmall,
    UncoveredParticipant,
    WrongCardinality,
)

MAX_PARTICIPANTS = 64

# full 2**n qualification tables are only built up to this size
_TABLE_LIMIT = 16


def pset(*items: int) -> int:
    """Bitmask of the given 1-based participants: ``pset(1, 3) == 0b101``."""
    mask = 0
    for i in items:
        if i < 1:
            raise OutOfRange(f"participant {i} is not positive")
        mask |= 1 << (i - 1)
    return mask


def to_mask(items: Iterable[int] | int) -> int:
    if isinstance(items, int):
        return items
    return pset(*items)


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def set_key(mask: int) -> tuple[int, ...]:
    """Sort key ordering sets lexicographically by their sorted members."""
    return members(mask)


def subsets_of_size(universe: int, size: int):
    """Yield every ``size``-subset of the bitmask ``universe`` in lexicographic order."""
    for combo in itertools.combinations(members(universe), size):
        yield pset(*combo)


def submasks(mask: int):
    """Yield all submasks of ``mask`` (including 0 and ``mask``), descending."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class AccessStructure:
    """A validated k-homogeneous access structure.

    ``basis`` holds the minimal qualified sets as bitmasks, sorted
    lexicographically. Build instances with :func:`build`.
    """

    n: int
    k: int
    basis: tuple[int, ...]
    _basis_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_basis_set", frozenset(self.basis))

    @property
    def participants(self) -> int:
        return full_mask(self.n)

    def is_qualified(self, q: int) -> bool:
        if self.n <= _TABLE_LIMIT:
            return self._qualified_table[q]
        return any(b & ~q == 0 for b in self.basis)

    def is_minimal(self, q: int) -> bool:
        return q in self._basis_set

    def count_w(self, q: int) -> int:
        return sum(1 for b in self.basis if b & ~q == 0)

    @cached_property
    def _qualified_table(self) -> list[bool]:
        size = 1 << self.n
        table = [False] * size
        for b in self.basis:
            table[b] = True
        # monotone closure: a set is qualified iff it or a one-smaller subset is
        for q in range(size):
            if table[q]:
                continue
            rest = q
            while rest:
                low = rest & -rest
                if table[q ^ low]:
                    table[q] = True
                    break
                rest ^= low
        return table

    def minsets(self) -> list[tuple[int, ...]]:
        return [members(b) for b in self.basis]

    def __str__(self):
        sets = ", ".join("{" + ",".join(map(str, m)) + "}" for m in self.minsets())
        return f"AccessStructure(n={self.n}, k={self.k}, basis=[{sets}])"


@dataclass(frozen=True)
class HypothesisReport:
    omega: frozenset
    excludes_one: bool
    excludes_k: bool
    contains_k_plus_one: bool

    @property
    def satisfied(self) -> bool:
        return self.excludes_one and self.excludes_k and self.contains_k_plus_one

    def failures(self) -> list[str]:
        """Human-readable list of the violated conditions (empty when satisfied)."""
        out = []
        if not self.excludes_one:
            out.append("1 in omega")
        if not self.excludes_k:
            out.append("k in omega")
        if not self.contains_k_plus_one:
            out.append("k+1 not in omega")
        return out


def build(n: int, k: int, sets: Iterable[Iterable[int] | int]) -> AccessStructure:
    """Validate and build a structure from its minimal qualified sets.

    Each element of ``sets`` is an iterable of 1-based participants or a
    bitmask. Raises the matching :class:`~homsec.errors.StructureError`
    subclass on the first violation found.
    """
    if not 1 <= n <= MAX_PARTICIPANTS:
        raise OutOfRange(f"participant count {n} outside 1..{MAX_PARTICIPANTS}")
    if not 2 <= k <= n:
        raise WrongCardinality(f"uniformity k={k} must satisfy 2 <= k <= n={n}")
    seen = set()
    basis = []
    for raw in sets:
        if isinstance(raw, int):
            mask = raw
            if mask < 0 or mask >> n:
                raise OutOfRange(f"set {raw:#b} has members outside 1..{n}")
        else:
            items = list(raw)
            for i in items:
                if not 1 <= i <= n:
                    raise OutOfRange(f"participant {i} outside 1..{n}")
            if len(set(items)) != len(items):
                raise WrongCardinality(f"set {sorted(items)} repeats a participant")
            mask = pset(*items)
        if mask.bit_count() != k:
            raise WrongCardinality(
                f"set {{{','.join(map(str, members(mask)))}}} has "
                f"{mask.bit_count()} members, expected {k}"
            )
        if mask in seen:
            raise Duplicate(f"set {{{','.join(map(str, members(mask)))}}} listed twice")
        seen.add(mask)
        basis.append(mask)
    if not basis:
        raise EmptyBasis("basis is empty")
    covered = 0
    for b in basis:
        covered |= b
    if covered != full_mask(n):
        missing = members(full_mask(n) & ~covered)
        raise UncoveredParticipant(
            f"participants {list(missing)} lie in no minimal qualified set", missing
        )
    basis.sort(key=set_key)
    return AccessStructure(n, k, tuple(basis))


def complete(n: int, k: int) -> AccessStructure:
    """The (k, n)-threshold structure: every k-subset is minimal qualified."""
    return build(n, k, list(subsets_of_size(full_mask(n), k)))


def is_qualified(structure: AccessStructure, q: int) -> bool:
    return structure.is_qualified(to_mask(q))


def count_w(structure: AccessStructure, q: int) -> int:
    """Number of minimal qualified sets contained in ``q``."""
    return structure.count_w(to_mask(q))


def omega(structure: AccessStructure, m: int) -> frozenset:
    """All values of :func:`count_w` over the m-subsets of participants.

    Computed exhaustively over all C(n, m) subsets.
    """
    if not structure.k <= m <= structure.n:
        raise InvalidSize(f"size {m} outside {structure.k}..{structure.n}")
    return frozenset(
        structure.count_w(q) for q in subsets_of_size(structure.participants, m)
    )


def induced(structure: AccessStructure, subset: int) -> tuple[AccessStructure, dict[int, int]]:
    """Restrict to ``subset`` and relabel its members to ``1..|subset|``.

    Returns the induced structure and the map old participant -> new label.
    """
    subset = to_mask(subset)
    if subset >> structure.n:
        raise OutOfRange("subset has members outside the participant range")
    if subset.bit_count() < structure.k:
        raise TooSmall(f"subset of size {subset.bit_count()} is smaller than k={structure.k}")
    kept = [b for b in structure.basis if b & ~subset == 0]
    covered = 0
    for b in kept:
        covered |= b
    if covered != subset:
        missing = members(subset & ~covered)
        raise UncoveredParticipant(
            f"participants {list(missing)} lie in no minimal qualified set inside the subset",
            missing,
        )
    old = members(subset)
    relabel = {p: i + 1 for i, p in enumerate(old)}
    new_basis = [pset(*(relabel[p] for p in members(b))) for b in kept]
    return build(len(old), structure.k, new_basis), relabel


def is_threshold(structure: AccessStructure) -> bool:
    return len(structure.basis) == comb(structure.n, structure.k)


def check_hypotheses(structure: AccessStructure) -> HypothesisReport:
    """Evaluate the ideality hypotheses on omega(k+1): 1 and k absent, k+1 present."""
    k = structure.k
    if structure.n < k + 1:
        raise TooSmall(f"need at least k+1={k + 1} participants, have {structure.n}")
    values = omega(structure, k + 1)
    return HypothesisReport(
        omega=values,
        excludes_one=1 not in values,
        excludes_k=k not in values,
        contains_k_plus_one=(k + 1) in values,
    )
