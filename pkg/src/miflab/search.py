"""Isomorph-free exhaustive search.

Maximal families are enumerated by orderly generation: grow k-uniform
intersecting families one block at a time in ascending block order,
introducing fresh points as the next unused ids, and keep a child only if
its labeling is the least over all point bijections.  Every isomorphism
class of intersecting families then occurs at exactly one tree node, since
deleting the largest block of a least-labeled family leaves a
least-labeled family.

Two observations keep the tree small.  A maximal family can never extend
to another maximal family, so maximal nodes are leaves.  And if some small
point set T hits every block of the current family, is not itself a block,
can no longer be added (it precedes the last block), and every addable
future block meets T, then T hits everything in every descendant, so no
descendant is maximal and the node is pruned.

Set-pair systems are searched directly over pair sequences: the pair count
is capped by C(k+t, k), fresh points are introduced in first-use order,
and the first pair is fixed, which quotients out enough symmetry at desk
scale.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .bounds import el_lower, improved_upper, tuza_nk_upper
from .canonical import CanonicalForm, _digest, is_least_labeling
from .errors import (BudgetExceededError, FormatError, ParameterOutOfRangeError,
                     UnsupportedKError, UnsupportedParamsError)
from .family import Family, mask_of
from .isp import SetPairSystem

CHECKPOINT_MAGIC = "mifsearch-v1"
_FRONTIER_TARGET = 64  # fixed so results and node counts ignore worker count

Blocks = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _subsets(v: int, size: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All size-subsets of range(v) with their masks."""
    return tuple((c, mask_of(c)) for c in combinations(range(v), size))


def _node_step(blocks: Blocks, masks: tuple[int, ...], v: int, k: int,
               p_max: int) -> tuple[bool, list[Blocks]]:
    """Classify one canonical node: (is maximal, canonical children)."""
    last = blocks[-1]
    block_masks = set(masks)

    # hitting subsets of the used points, by size
    threats: list[int] = []          # hitting sets every descendant must dodge
    small_hitter = False
    missing_k_hitter = False
    for size in range(1, k + 1):
        for cand, cm in _subsets(v, size):
            if all(cm & bm for bm in masks):
                if size < k:
                    small_hitter = True
                    threats.append(cm)
                elif cm not in block_masks:
                    missing_k_hitter = True
                    if cand <= last:
                        threats.append(cm)
    if not small_hitter and not missing_k_hitter:
        return True, []  # maximal; and no extension of it can be

    if threats:
        escapes = [dm for cand, dm in _subsets(p_max, k)
                   if cand > last and all(dm & bm for bm in masks)]
        for tm in threats:
            if not any(dm & tm == 0 for dm in escapes):
                return False, []

    children: list[Blocks] = []
    for fresh in range(k + 1):
        if v + fresh > p_max:
            break
        tail = tuple(range(v, v + fresh))
        for old, om in _subsets(v, k - fresh):
            cand = old + tail
            if cand <= last:
                continue
            cm = om | mask_of(tail)
            if all(cm & bm for bm in masks):
                child = blocks + (cand,)
                if is_least_labeling(child):
                    children.append(child)
    children.sort()
    return False, children


def _run_subtree(args) -> tuple[list[Blocks], int]:
    """Exhaust one subtree; returns (maximal families found, nodes)."""
    root, k, p_max, budget = args
    stack: list[Blocks] = [root]
    found: list[Blocks] = []
    nodes = 0
    while stack:
        blocks = stack.pop()
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceededError(
                f"subtree exceeded the node budget {budget}", nodes=nodes)
        masks = tuple(mask_of(b) for b in blocks)
        v = max(b[-1] for b in blocks) + 1
        full, children = _node_step(blocks, masks, v, k, p_max)
        if full:
            found.append(blocks)
        else:
            stack.extend(reversed(children))
    return found, nodes


@dataclass(frozen=True)
class SearchResult:
    k: int
    universe_bound: int
    families: tuple[Family, ...]
    max_points: int
    counts_by_point_count: dict[int, int]
    nodes: int

    @property
    def canonical_mifs(self) -> tuple[CanonicalForm, ...]:
        # emitted families are already least-labeled
        return tuple(CanonicalForm(f.blocks, _digest(f.blocks)) for f in self.families)

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "universe_bound": self.universe_bound,
            "max_points": self.max_points,
            "counts_by_point_count": {str(v): c for v, c
                                      in sorted(self.counts_by_point_count.items())},
            "mifs": [[list(b) for b in f.blocks] for f in self.families],
            "nodes": self.nodes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def _blocks_to_record(blocks: Blocks) -> str:
    return "|".join(",".join(map(str, b)) for b in blocks)


def _record_to_blocks(record: str) -> Blocks:
    try:
        return tuple(tuple(int(x) for x in part.split(",")) for part in record.split("|"))
    except ValueError as exc:
        raise FormatError(f"bad checkpoint record {record!r}") from exc


def write_checkpoint(path, k: int, p_max: int, nodes: int,
                     pending: list[Blocks], found: list[Blocks]) -> None:
    header = {"k": k, "p_max": p_max, "nodes": nodes}
    with open(path, "w") as fh:
        fh.write(f"{CHECKPOINT_MAGIC} {json.dumps(header, separators=(',', ':'))}\n")
        for blocks in pending:
            fh.write("F " + _blocks_to_record(blocks) + "\n")
        for blocks in found:
            fh.write("M " + _blocks_to_record(blocks) + "\n")


def read_checkpoint(path, k: int, p_max: int):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(CHECKPOINT_MAGIC + " "):
        raise FormatError(f"not a {CHECKPOINT_MAGIC} checkpoint: {path}")
    try:
        header = json.loads(lines[0][len(CHECKPOINT_MAGIC) + 1:])
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad checkpoint header: {exc.msg}") from exc
    if header.get("k") != k or header.get("p_max") != p_max:
        raise FormatError(
            f"checkpoint is for k={header.get('k')}, p_max={header.get('p_max')}; "
            f"requested k={k}, p_max={p_max}")
    pending: list[Blocks] = []
    found: list[Blocks] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        tag, _, rest = line.partition(" ")
        if tag == "F":
            pending.append(_record_to_blocks(rest))
        elif tag == "M":
            found.append(_record_to_blocks(rest))
        else:
            raise FormatError(f"line {lineno}: unknown checkpoint tag {tag!r}")
    return int(header["nodes"]), pending, found


def enumerate_mifs(k: int, p_max: int, *, budget: int | None = None,
                   checkpoint_path=None, checkpoint_every: int = 50000,
                   resume_path=None, workers: int = 1) -> SearchResult:
    """All maximal intersecting k-uniform families on at most p_max points,
    one representative per isomorphism class.

    Budget counts visited tree nodes.  With a checkpoint path the pending
    stack and results are written every checkpoint_every nodes and on
    budget exhaustion; a resume path continues such a run.  With
    workers > 1 fixed top subtrees are solved in a process pool and merged
    into sorted order, so the result and node count do not depend on the
    worker count; checkpointing is serial-only and the budget then caps
    each subtree rather than the whole run."""
    if k not in (2, 3):
        raise UnsupportedKError(f"exhaustive search supports k in {{2, 3}}, got {k}")
    if p_max < 2 * k - 1:
        raise ParameterOutOfRangeError(
            f"p_max = {p_max} cannot host a maximal family of {k}-sets (needs {2 * k - 1})")
    if workers > 1 and (checkpoint_path or resume_path):
        raise ParameterOutOfRangeError(
            "checkpoint and resume are supported with workers=1 only")

    root: Blocks = (tuple(range(k)),)
    if resume_path:
        nodes, stack, found = read_checkpoint(resume_path, k, p_max)
    else:
        nodes, stack, found = 0, [root], []

    if workers <= 1:
        since_checkpoint = 0
        while stack:
            blocks = stack.pop()
            nodes += 1
            since_checkpoint += 1
            if budget is not None and nodes > budget:
                if checkpoint_path:
                    write_checkpoint(checkpoint_path, k, p_max, nodes - 1,
                                     stack + [blocks], found)
                raise BudgetExceededError(
                    f"node budget {budget} exhausted", nodes=nodes - 1,
                    checkpoint_path=checkpoint_path)
            masks = tuple(mask_of(b) for b in blocks)
            v = max(b[-1] for b in blocks) + 1
            full, children = _node_step(blocks, masks, v, k, p_max)
            if full:
                found.append(blocks)
            else:
                stack.extend(reversed(children))
            if checkpoint_path and since_checkpoint >= checkpoint_every:
                write_checkpoint(checkpoint_path, k, p_max, nodes, stack, found)
                since_checkpoint = 0
    else:
        # expand a fixed frontier, then farm out subtrees
        frontier = list(stack)
        while frontier and len(frontier) < _FRONTIER_TARGET:
            blocks = frontier.pop(0)
            nodes += 1
            masks = tuple(mask_of(b) for b in blocks)
            v = max(b[-1] for b in blocks) + 1
            full, children = _node_step(blocks, masks, v, k, p_max)
            if full:
                found.append(blocks)
            else:
                frontier.extend(children)
        if frontier:
            tasks = [(blocks, k, p_max, budget) for blocks in frontier]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for sub_found, sub_nodes in pool.map(_run_subtree, tasks):
                    found.extend(sub_found)
                    nodes += sub_nodes

    families = sorted((Family(b, p_max) for b in set(found)),
                      key=lambda f: (f.point_count(), f.blocks))
    counts: dict[int, int] = {}
    for f in families:
        counts[f.point_count()] = counts.get(f.point_count(), 0) + 1
    max_points = max((f.point_count() for f in families), default=0)
    return SearchResult(k, p_max, tuple(families), max_points, counts, nodes)


def compute_N(k: int, *, workers: int = 1, budget: int | None = None) -> int:
    """Maximum point count of a maximal intersecting family of k-sets,
    recomputed by exhaustive search under a proven point cap."""
    if k not in (2, 3):
        raise UnsupportedKError(f"exhaustive recomputation supports k in {{2, 3}}, got {k}")
    cap = improved_upper(k)
    if cap < el_lower(k):
        # the sharpened expansion is invalid at k=2; fall back to the coarser bound
        cap = tuza_nk_upper(k)
    result = enumerate_mifs(k, cap, workers=workers, budget=budget)
    return result.max_points


# -- set-pair system search ----------------------------------------------

ISP_WHITELIST = {(2, 1), (3, 1), (2, 2)}
_ISP_DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class IspSearchResult:
    k: int
    t: int
    max_points: int
    witness: SetPairSystem
    nodes: int

    def to_json_obj(self) -> dict:
        return {"k": self.k, "t": self.t, "max_points": self.max_points,
                "witness": self.witness.to_json_obj(), "nodes": self.nodes}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def search_isp(k: int, t: int, *, budget: int | None = _ISP_DEFAULT_BUDGET) -> IspSearchResult:
    """Exhaustive maximum-point search over set-pair systems with sides
    (k, t), at most C(k+t,k) pairs, points numbered by first use."""
    if k < 1 or t < 1:
        raise ParameterOutOfRangeError(f"set-pair search needs k, t >= 1, got ({k}, {t})")
    n_max = comb(k + t, k)
    first = (tuple(range(k)), tuple(range(k, k + t)))
    first_masks = (mask_of(first[0]), mask_of(first[1]))
    state = [first_masks]
    pair_tuples = [first]
    best = [k + t, list(pair_tuples)]
    nodes = [0]
    per_pair_gain = k + t - 2  # later pairs must reuse a point on each side

    def dfs(u: int) -> None:
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExceededError(f"set-pair search exceeded {budget} nodes",
                                      nodes=nodes[0])
        if u > best[0]:
            best[0] = u
            best[1] = list(pair_tuples)
        depth = len(state)
        if depth == n_max:
            return
        if u + (n_max - depth) * per_pair_gain <= best[0]:
            return
        bmasks = [bm for _, bm in state]
        amasks = [am for am, _ in state]
        for fresh_a in range(k, -1, -1):  # fresh-rich candidates first
            a_tail = tuple(range(u, u + fresh_a))
            a_tail_mask = mask_of(a_tail)
            for a_old, a_old_mask in _subsets(u, k - fresh_a):
                am = a_old_mask | a_tail_mask
                if not all(am & bm for bm in bmasks):
                    continue
                ua = u + fresh_a
                a_tuple = a_old + a_tail
                for fresh_b in range(t, -1, -1):
                    b_tail = tuple(range(ua, ua + fresh_b))
                    b_tail_mask = mask_of(b_tail)
                    pool = tuple(p for p in range(ua) if not am & (1 << p))
                    for b_old in combinations(pool, t - fresh_b):
                        bm = mask_of(b_old) | b_tail_mask
                        if not all(om & bm for om in amasks):
                            continue
                        state.append((am, bm))
                        pair_tuples.append((a_tuple, b_old + b_tail))
                        dfs(ua + fresh_b)
                        state.pop()
                        pair_tuples.pop()

    dfs(k + t)
    witness = SetPairSystem(best[1], k=k, t=t)
    return IspSearchResult(k, t, best[0], witness, nodes[0])


def compute_n(k: int, t: int, *, force: bool = False,
              budget: int | None = _ISP_DEFAULT_BUDGET) -> int:
    """Maximum point count of a set-pair system with sides (k, t), by
    exhaustive search.  Parameters outside the desk-scale whitelist are
    refused unless force=True (the node budget still guards the run)."""
    if (k, t) not in ISP_WHITELIST and not force:
        raise UnsupportedParamsError(
            f"({k}, {t}) is outside the whitelist {sorted(ISP_WHITELIST)}; "
            f"pass force=True to search anyway under the node budget")
    return search_isp(k, t, budget=budget).max_points
