"""Arithmetic and Gaussian elimination over prime fields GF(p)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import NotPrime

Vector = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def next_prime_above(m: int) -> int:
    """Smallest prime strictly greater than ``m``."""
    p = max(m + 1, 2)
    while not is_prime(p):
        p += 1
    return p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(u, v)) % self.p

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        return len(self.row_reduce(rows)[1])

    def row_reduce(self, rows):
        """Reduced row echelon form. Returns (rows, pivot columns)."""
        p = self.p
        m = [[x % p for x in r] for r in rows]
        if not m:
            return m, []
        ncols = len(m[0])
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self.inv(m[r][c])
            m[r] = [x * inv % p for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == len(m):
                break
        return m, pivots

    def solve_combination(self, vectors: Sequence[Vector], target: Vector):
        """Coefficients ``lam`` with ``sum(lam[i] * vectors[i]) == target``, or None.

        Free variables are set to zero, so the answer is deterministic.
        """
        p = self.p
        if not vectors:
            return [] if all(t % p == 0 for t in target) else None
        dim = len(target)
        # columns are the given vectors; augment with the target
        aug = [[vectors[j][i] for j in range(len(vectors))] + [target[i]] for i in range(dim)]
        red, pivots = self.row_reduce(aug)
        nvars = len(vectors)
        if nvars in pivots:
            return None
        lam = [0] * nvars
        for row, c in zip(red, pivots):
            lam[c] = row[nvars]
        return lam

    def in_span(self, vectors: Sequence[Vector], target: Vector) -> bool:
        return self.solve_combination(vectors, target) is not None


def det_bruteforce(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Leibniz-formula determinant mod p; only for tiny matrices."""
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += term
    return total % p


def rank_by_minors(matrix: Sequence[Sequence[int]], p: int) -> int:
    """Largest r with a nonzero r x r minor mod p; only for tiny matrices."""
    if not matrix:
        return 0
    rows, cols = len(matrix), len(matrix[0])
    for r in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), r):
            for ci in itertools.combinations(range(cols), r):
                sub = [[matrix[i][j] for j in ci] for i in ri]
                if det_bruteforce(sub, p):
                    return r
    return 0
