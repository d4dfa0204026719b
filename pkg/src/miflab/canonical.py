"""Canonical labeling of families.

The canonical form of a family is the lexicographically least sorted
block list obtainable by relabeling its used points with 0..v-1.  Two
families have equal canonical forms iff a point bijection maps one's
blocks onto the other's, which is what "up to isomorphism" means here.

The minimization builds the output list entry by entry.  A partial
relabeling assigns new labels 0..j-1; the smallest next entry any
completion can produce is the minimum, over unemitted blocks, of the
block's assigned labels padded with the next free labels.  Branching over
the blocks (and the orderings of their fresh points) that achieve that
minimum, with pruning against the best complete list found so far,
explores exactly the tie tree of the optimum - cheap for asymmetric
families and proportional to the automorphism group for symmetric ones.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence


@dataclass(frozen=True)
class CanonicalForm:
    canonical_block_list: tuple[tuple[int, ...], ...]
    digest: int


class _Beaten(Exception):
    """Raised in test mode when a strictly smaller relabeling is found."""


def _digest(blocks: tuple[tuple[int, ...], ...]) -> int:
    payload = ";".join(",".join(map(str, b)) for b in blocks).encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def _minimize(blocks: Sequence[Sequence[int]], test_only: bool) -> tuple[tuple[int, ...], ...] | bool:
    ident = tuple(sorted({tuple(sorted(b)) for b in blocks}))
    n = len(ident)
    if n == 0:
        return True if test_only else ()

    label: dict[int, int] = {}
    out: list[tuple[int, ...]] = []
    remaining = set(range(n))
    best = list(ident)

    def prefix_cmp(m: tuple[int, ...]) -> int:
        # compare out + [m] against the same-length prefix of best
        for got, want in zip(out, best):
            if got != want:
                return -1 if got < want else 1
        want = best[len(out)]
        if m != want:
            return -1 if m < want else 1
        return 0

    def dfs() -> None:
        nonlocal best
        if not remaining:
            if not test_only and out < best:
                best = list(out)
            return
        nf = len(label)
        m = None
        cands: list[int] = []
        for bi in remaining:
            b = ident[bi]
            known = sorted(label[p] for p in b if p in label)
            key = tuple(known) + tuple(range(nf, nf + len(b) - len(known)))
            if m is None or key < m:
                m = key
                cands = [bi]
            elif key == m:
                cands.append(bi)
        cmp = prefix_cmp(m)
        if cmp > 0:
            return
        if cmp < 0 and test_only:
            raise _Beaten
        out.append(m)
        for bi in sorted(cands):
            b = ident[bi]
            fresh = [p for p in b if p not in label]
            remaining.discard(bi)
            if fresh:
                for order in permutations(fresh):
                    for i, p in enumerate(order):
                        label[p] = nf + i
                    dfs()
                    for p in order:
                        del label[p]
            else:
                dfs()
            remaining.add(bi)
        out.pop()

    if test_only:
        try:
            dfs()
        except _Beaten:
            return False
        return True
    dfs()
    return tuple(best)


def least_block_list(blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabeled sorted block list."""
    result = _minimize(blocks, test_only=False)
    assert not isinstance(result, bool)
    return result


def is_least_labeling(blocks: Sequence[Sequence[int]]) -> bool:
    """True iff the blocks, as labeled, already form the least list."""
    return bool(_minimize(blocks, test_only=True))


def canonicalize(family) -> CanonicalForm:
    canon = least_block_list(family.blocks)
    return CanonicalForm(canon, _digest(canon))
