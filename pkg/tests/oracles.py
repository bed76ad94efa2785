"""Deliberately naive reference implementations built on frozensets.

Nothing here shares code with the package beyond reading ``structure.n``,
``structure.k`` and ``structure.minsets()``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def fs_basis(structure):
    return [frozenset(b) for b in structure.minsets()]


def qualified(basis, q) -> bool:
    q = frozenset(q)
    return any(b <= q for b in basis)


def all_subsets(n):
    people = range(1, n + 1)
    for r in range(n + 1):
        for c in itertools.combinations(people, r):
            yield frozenset(c)


def naive_certificate_ok(structure, chain, witnesses, a_set, a_qualified, bound) -> bool:
    """Every clause of the independent-sequence definition, checked literally."""
    basis = fs_basis(structure)
    universe = frozenset(range(1, structure.n + 1))
    chain = [frozenset(b) for b in chain]
    witnesses = [frozenset(x) for x in witnesses]
    a_set = frozenset(a_set)
    if not all(s <= universe for s in chain + witnesses + [a_set]):
        return False
    m = len(chain)
    if m == 0 or len(witnesses) != m or not chain[0]:
        return False
    if any(not (chain[i] < chain[i + 1]) for i in range(m - 1)):
        return False
    if qualified(basis, chain[-1]):
        return False
    previous = frozenset()
    for b, x in zip(chain, witnesses):
        if not qualified(basis, b | x) or qualified(basis, previous | x):
            return False
        previous = b
    if not frozenset().union(*witnesses) <= a_set:
        return False
    if qualified(basis, a_set) != a_qualified:
        return False
    expected = Fraction(len(a_set), m + 1) if a_qualified else Fraction(len(a_set), m)
    return bound == expected


def naive_best_bound(structure, max_m, max_a):
    """Smallest bound over every chain, unrestricted witnesses and every A.

    Chains run over strictly increasing unqualified sets; for each step the
    admissible witnesses are listed exhaustively and the reachable witness
    unions are tracked, so A ranges over all supersets of some union.
    """
    basis = fs_basis(structure)
    subsets = list(all_subsets(structure.n))
    unqualified = [s for s in subsets if s and not qualified(basis, s)]
    best = None

    def admissible(prev, cur):
        return [x for x in subsets if qualified(basis, cur | x) and not qualified(basis, prev | x)]

    def extend(chain, unions):
        nonlocal best
        m = len(chain)
        for a in subsets:
            if len(a) > max_a:
                continue
            if any(u <= a for u in unions):
                q = qualified(basis, a)
                value = Fraction(len(a), m + 1) if q else Fraction(len(a), m)
                if best is None or value < best:
                    best = value
        if m == max_m:
            return
        for nxt in unqualified:
            if chain[-1] < nxt:
                xs = admissible(chain[-1], nxt)
                grown = {u | x for u in unions for x in xs if len(u | x) <= max_a}
                if grown:
                    extend(chain + [nxt], grown)

    for first in unqualified:
        xs = [x for x in admissible(frozenset(), first) if len(x) <= max_a]
        if xs:
            extend([first], set(xs))
    return best


def naive_equivalent(structure, a, b) -> bool:
    if a == b:
        return True
    basis = set(fs_basis(structure))
    if any({a, b} <= blk for blk in basis):
        return False
    rest = [p for p in range(1, structure.n + 1) if p not in (a, b)]
    for r in range(len(rest) + 1):
        for c in itertools.combinations(rest, r):
            if (frozenset(c) | {a} in basis) != (frozenset(c) | {b} in basis):
                return False
    return True


def naive_omega(structure, m):
    basis = fs_basis(structure)
    return {
        sum(1 for b in basis if b <= frozenset(q))
        for q in itertools.combinations(range(1, structure.n + 1), m)
    }
