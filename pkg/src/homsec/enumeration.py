"""Exhaustive generation of small k-homogeneous structures and theorem sweeps."""

from __future__ import annotations

import itertools
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterator

from .bounds import SearchCaps
from .classifier import UNRESOLVED, classify, verify_classification
from .errors import CapExceeded
from .structure import AccessStructure, build, members, pset

MAX_EDGES = 24
MAX_DEDUP_N = 8
MAX_THEOREM_N = 6


@dataclass(frozen=True)
class EnumerationFilter:
    n: int
    k: int
    require_coverage: bool = True
    require_hypotheses: bool = False
    dedup_iso: bool = False


@dataclass
class TheoremCheckReport:
    n: int
    k: int
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    sources: Counter = field(default_factory=Counter)

    @property
    def consistent(self) -> bool:
        return not self.violations


class _Edges:
    """Index of the k-subsets of {1..n} in lexicographic order."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.sets = [pset(*c) for c in itertools.combinations(range(1, n + 1), k)]
        self.index = {s: i for i, s in enumerate(self.sets)}
        self.vertex_masks = [
            sum(1 << i for i, s in enumerate(self.sets) if s >> v & 1) for v in range(n)
        ]
        self.window_masks = []
        if k < n:
            for c in itertools.combinations(range(1, n + 1), k + 1):
                w = pset(*c)
                self.window_masks.append(
                    sum(1 << i for i, s in enumerate(self.sets) if s & ~w == 0)
                )

    def basis(self, mask: int) -> list[int]:
        return [self.sets[i] for i in _bits(mask)]

    def covers(self, mask: int) -> bool:
        return all(mask & vm for vm in self.vertex_masks)

    def hypotheses(self, mask: int) -> bool:
        k = self.k
        seen_top = False
        for w in self.window_masks:
            c = (mask & w).bit_count()
            if c == 1 or c == k:
                return False
            if c == k + 1:
                seen_top = True
        return seen_top

    def permutation_tables(self):
        tables = []
        for perm in itertools.permutations(range(self.n)):
            row = []
            for s in self.sets:
                img = 0
                for v in _bits(s):
                    img |= 1 << perm[v]
                row.append(self.index[img])
            tables.append(row)
        return tables


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _apply(table, mask: int) -> int:
    out = 0
    for i in _bits(mask):
        out |= 1 << table[i]
    return out


def _check_filter(flt: EnumerationFilter) -> None:
    if not flt.require_coverage:
        raise ValueError("bases leaving a participant uncovered are not access structures")
    if not 2 <= flt.k <= flt.n:
        raise CapExceeded(f"need 2 <= k <= n, got n={flt.n}, k={flt.k}")
    if comb(flt.n, flt.k) > MAX_EDGES:
        raise CapExceeded(f"C({flt.n},{flt.k}) candidate sets exceed the cap of {MAX_EDGES}")
    if flt.dedup_iso and flt.n > MAX_DEDUP_N:
        raise CapExceeded(f"isomorphism dedup supports n <= {MAX_DEDUP_N}")
    if flt.require_hypotheses and flt.n < flt.k + 1:
        raise CapExceeded("hypothesis filter needs n >= k+1")


def _index_key(mask: int):
    return tuple(_bits(mask))


def enumerate_structures(flt: EnumerationFilter) -> Iterator[AccessStructure]:
    """Yield every structure passing the filter, in a fixed order.

    Candidate bases are bitmasks over the lexicographically ordered k-subsets
    and are visited in increasing numeric order. With ``dedup_iso`` the
    canonical representative of each isomorphism class is yielded when the
    class is first met.
    """
    _check_filter(flt)
    edges = _Edges(flt.n, flt.k)
    tables = edges.permutation_tables() if flt.dedup_iso else None
    seen: set[int] = set()
    for mask in range(1, 1 << len(edges.sets)):
        if not edges.covers(mask):
            continue
        if flt.require_hypotheses and not edges.hypotheses(mask):
            continue
        if tables is not None:
            if mask in seen:
                continue
            orbit = {_apply(t, mask) for t in tables}
            seen |= orbit
            mask = min(orbit, key=_index_key)
        yield build(flt.n, flt.k, edges.basis(mask))


def canonical_form(structure: AccessStructure) -> tuple:
    """Lexicographically least sorted basis over all relabelings.

    Two structures are isomorphic iff their keys are equal.
    """
    n = structure.n
    if n > MAX_DEDUP_N:
        raise CapExceeded(f"canonical form supports n <= {MAX_DEDUP_N}")
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        image = sorted(
            tuple(sorted(perm[p - 1] for p in members(b))) for b in structure.basis
        )
        key = tuple(image)
        if best is None or key < best:
            best = key
    return (n, structure.k, best)


def _evaluate(args):
    structure, caps = args
    result = classify(structure, caps)
    problems = verify_classification(structure, result)
    return result.status, result.certificate_source, problems


def _threads() -> int:
    raw = os.environ.get("HOMSEC_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        value = 1
    return max(1, value)


def check_theorem(
    n: int,
    k: int,
    caps: SearchCaps | None = None,
    dedup: bool = False,
    max_n: int = MAX_THEOREM_N,
    threads: int | None = None,
) -> TheoremCheckReport:
    """Classify every hypothesis-satisfying structure and collect violations.

    A violation is an UNRESOLVED outcome or any attached evidence failing
    re-verification (scheme correctness/privacy, certificate clauses, or a
    certificate bound above (k-1)/k).
    """
    if n > max_n:
        raise CapExceeded(f"theorem checks are capped at n <= {max_n}")
    caps = caps or SearchCaps()
    try:
        caps.validate()
    except ValueError as exc:
        raise CapExceeded(str(exc)) from None
    start = time.perf_counter()
    report = TheoremCheckReport(n, k)
    flt = EnumerationFilter(n, k, require_hypotheses=True, dedup_iso=dedup)
    structures = list(enumerate_structures(flt))
    jobs = [(s, caps) for s in structures]
    workers = threads if threads is not None else _threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_evaluate, jobs, chunksize=8))
    else:
        outcomes = [_evaluate(job) for job in jobs]
    for structure, (status, source, problems) in zip(structures, outcomes):
        report.total += 1
        report.counts[status] += 1
        if source:
            report.sources[source.split("-swapped")[0]] += 1
        if status == UNRESOLVED and not problems:
            problems = ["UNRESOLVED"]
        for problem in problems:
            report.violations.append(f"{structure}: {problem}")
    report.wall_time = time.perf_counter() - start
    return report
