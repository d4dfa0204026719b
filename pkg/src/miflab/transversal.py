"""Exact minimum blocking sets and their complete enumeration.

The optimizer is a branch-and-bound: at every node some block is disjoint
from the partial hitting set (otherwise the partial set already blocks),
and branching on that block's points covers every extension.  A second
bounded DFS at exactly the optimal depth then collects all minimum
blocking sets; a subset-scan oracle double-checks both at small scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyBlockError, OracleTooLargeError, VerificationError
from .family import Family, bits_of, mask_of

INFINITE_TAU = math.inf
ORACLE_POINT_LIMIT = 20


@dataclass(frozen=True)
class TransversalReport:
    """Minimum blocking-set size, all minimum blocking sets, node count."""
    tau: int | float
    transversals: Family
    nodes: int


def _greedy_upper_bound(masks: tuple[int, ...]) -> int:
    """Deterministic greedy cover size; a valid upper bound for tau."""
    uncovered = list(masks)
    size = 0
    while uncovered:
        points: dict[int, int] = {}
        for m in uncovered:
            for p in bits_of(m):
                points[p] = points.get(p, 0) + 1
        best_p = min(points, key=lambda p: (-points[p], p))
        bit = 1 << best_p
        uncovered = [m for m in uncovered if not m & bit]
        size += 1
    return size


def _disjoint_lower_bound(uncovered: list[int]) -> int:
    """Count of pairwise-disjoint uncovered blocks; each needs its own point."""
    union = 0
    count = 0
    for m in uncovered:
        if not m & union:
            count += 1
            union |= m
    return count


def _pick_branch_block(uncovered: list[int]) -> int:
    """Smallest uncovered block, ties by position in the family order."""
    best = uncovered[0]
    best_size = best.bit_count()
    for m in uncovered[1:]:
        s = m.bit_count()
        if s < best_size:
            best, best_size = m, s
    return best


def _min_hitting_size(masks: tuple[int, ...], counter: list[int]) -> int:
    best = _greedy_upper_bound(masks)
    seen: set[int] = set()

    def dfs(chosen: int, depth: int) -> None:
        nonlocal best
        counter[0] += 1
        uncovered = [m for m in masks if not m & chosen]
        if not uncovered:
            if depth < best:
                best = depth
            return
        if depth + _disjoint_lower_bound(uncovered) >= best:
            return
        if chosen in seen:
            return
        seen.add(chosen)
        for p in bits_of(_pick_branch_block(uncovered)):
            dfs(chosen | (1 << p), depth + 1)

    dfs(0, 0)
    return best


def _enumerate_hitting(masks: tuple[int, ...], size: int, counter: list[int]) -> list[int]:
    found: set[int] = set()
    seen: set[int] = set()

    def dfs(chosen: int, depth: int) -> None:
        counter[0] += 1
        uncovered = [m for m in masks if not m & chosen]
        if depth == size:
            if not uncovered:
                found.add(chosen)
            return
        if not uncovered:
            # cannot happen when size is the true minimum
            raise VerificationError("blocking set below the computed minimum size")
        if _disjoint_lower_bound(uncovered) > size - depth:
            return
        if chosen in seen:
            return
        seen.add(chosen)
        for p in bits_of(_pick_branch_block(uncovered)):
            dfs(chosen | (1 << p), depth + 1)

    dfs(0, 0)
    return sorted(found)


def tau(family: Family) -> int | float:
    """Minimum blocking-set size; 0 for the empty family, inf if a block is empty."""
    return tau_with_nodes(family)[0]


def tau_with_nodes(family: Family) -> tuple[int | float, int]:
    """Like tau, but also reports the optimizer's node count."""
    if not family.blocks:
        return 0, 0
    if family.has_empty_block():
        return INFINITE_TAU, 0
    counter = [0]
    return _min_hitting_size(family.masks, counter), counter[0]


def _empty_family_report(family: Family) -> TransversalReport:
    only_empty = Family([()], family.universe_size, family.labels)
    return TransversalReport(0, only_empty, 0)


def transversal_family(family: Family) -> TransversalReport:
    """All minimum blocking sets, with the k^tau count bound enforced."""
    if family.has_empty_block():
        raise EmptyBlockError("family contains the empty block; no blocking set exists")
    if not family.blocks:
        return _empty_family_report(family)
    counter = [0]
    t = _min_hitting_size(family.masks, counter)
    solutions = _enumerate_hitting(family.masks, t, counter)
    k = family.uniform_block_size()
    if k is not None and len(solutions) > k ** t:
        raise VerificationError(
            f"{len(solutions)} transversals exceed the bound {k}^{t}")
    transversals = Family([bits_of(m) for m in solutions], family.universe_size,
                          family.labels)
    return TransversalReport(t, transversals, counter[0])


def brute_force_transversals(family: Family) -> TransversalReport:
    """Oracle: scan all subsets of the point set in size order."""
    if family.has_empty_block():
        raise EmptyBlockError("family contains the empty block; no blocking set exists")
    if not family.blocks:
        return _empty_family_report(family)
    points = sorted(family.point_set())
    if len(points) > ORACLE_POINT_LIMIT:
        raise OracleTooLargeError(
            f"{len(points)} points exceed the oracle guard of {ORACLE_POINT_LIMIT}")
    nodes = 0
    for size in range(len(points) + 1):
        hits = []
        for cand in combinations(points, size):
            nodes += 1
            m = mask_of(cand)
            if all(m & bm for bm in family.masks):
                hits.append(cand)
        if hits:
            transversals = Family(hits, family.universe_size, family.labels)
            return TransversalReport(size, transversals, nodes)
    raise VerificationError("no blocking set found within the point set")
