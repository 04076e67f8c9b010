"""Pruned backtracking search over binary hypercubes.

Two searches, both over words of Z_2^n with the adjacent-change constraint
linking consecutive flips:

* ``search_base``: longest admissible seed for the k=1 doubling engine
  (staircase prefix planted, excluded words pre-marked, last change pinned
  to the leftmost position).
* ``search_complete_1sktgc``: existence of complete codes at small n.

Both split the tree into frontier subtrees at a fixed depth and process the
subtrees independently (optionally in a process pool), merging results by
(size, lexicographic word sequence).  Per-subtree node budgets are derived
deterministically from the total budget alone, so the outcome does not
depend on the worker count.

Inside this module words are packed big-endian (leftmost symbol in the top
bit) so that integer order equals lexicographic order of the written words.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import Code, signed_indexing
from .binary import BaseCase, base_condition_failures, growth_constant
from .errors import ConditionViolated

_SPLIT_DEPTH = 6
_FIRST_SLICE = 4096
_SLICE_GROWTH = 64


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a search: best code found (if any), its size, the growth
    constant it would give the doubling engine, nodes expanded, and whether
    the whole space was covered."""

    best: Optional[Code]
    a0: int
    constant: Optional[Fraction]
    nodes: int
    exhausted: bool


def _rows_from_big_endian(words, n: int) -> list[list[int]]:
    return [[(w >> (n - 1 - i)) & 1 for i in range(n)] for w in words]


def _run_rounds(count: int, make_task: Callable[[int, int], tuple], worker,
                budget: int, jobs: int,
                stop: Optional[Callable[[tuple], bool]] = None):
    """Process `count` subtree tasks under a shared node budget.

    Every pending task gets the same budget slice per round; unfinished
    tasks are retried with strictly larger slices while budget remains.
    The schedule depends only on (count, budget), keeping results and node
    totals identical for any worker count.  With `stop` given, rounds end
    as soon as any collected result satisfies it.
    """
    pending = list(range(count))
    slices = [0] * count
    results: dict[int, tuple] = {}
    spent = 0
    while pending:
        fair = (budget - spent) // len(pending)
        top = max(slices)
        share = min(fair, max(_FIRST_SLICE, _SLICE_GROWTH * top))
        runnable = [i for i in pending if share > slices[i]]
        if share <= 0 or not runnable:
            break
        for i in runnable:
            slices[i] = share
        batch = [make_task(i, share) for i in runnable]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outs = list(pool.map(worker, batch))
        else:
            outs = [worker(t) for t in batch]
        finished_early = False
        for i, out in zip(runnable, outs):
            results[i] = out
            spent += out[1]
            if stop is not None and stop(out):
                finished_early = True
        if finished_early:
            break
        pending = [i for i in pending if not results[i][2]]
    return results, spent


# --- longest admissible seed --------------------------------------------------

def _base_prefix(left: int, right: int):
    """Staircase path, the visited set seeded with the excluded words, and
    the position of the staircase's last flip."""
    # bit of position p is right - p; leftmost position -L sits in the top bit
    words = [0]
    acc = 0
    for p in range(right, -1, -1):
        acc |= 1 << (right - p)
        words.append(acc)
    visited = set(words)
    ones = sum(1 << (right - p) for p in range(1, right + 1))
    acc = ones
    for j in range(1, left + 1):
        acc |= 1 << (right + j)
        visited.add(acc)
    return words, visited, 0


def _base_subtree(task):
    """DFS one subtree; returns (best path or None, nodes, exhausted)."""
    (n0, left, right, path, extra_visited, prev, target, floor_len,
     shuffle_seed, budget) = task
    rng = None if shuffle_seed is None else random.Random(shuffle_seed)
    path = list(path)
    visited = set(path) | set(extra_visited)
    total_words = 1 << n0
    goal_bit = n0 - 1  # bit of position -left
    nodes = 0
    best_len = floor_len
    best_path = None
    budget_hit = False

    def dfs(word: int, prev_pos: int, last_bit: int):
        nonlocal nodes, budget_hit, best_len, best_path
        if last_bit == goal_bit and len(path) > best_len:
            best_len = len(path)
            best_path = tuple(path)
        if target is not None and best_len >= target:
            return
        if len(path) + (total_words - len(visited)) <= best_len:
            return
        succ = []
        for q in (prev_pos - 1, prev_pos, prev_pos + 1):
            if -left <= q <= right:
                nxt = word ^ (1 << (right - q))
                if nxt not in visited:
                    succ.append((nxt, q))
        if rng is None:
            succ.sort()
        else:
            rng.shuffle(succ)
        for nxt, q in succ:
            if nodes >= budget:
                budget_hit = True
                return
            nodes += 1
            visited.add(nxt)
            path.append(nxt)
            dfs(nxt, q, right - q)
            path.pop()
            visited.remove(nxt)
            if budget_hit or (target is not None and best_len >= target):
                return

    last_bit = (path[-2] ^ path[-1]).bit_length() - 1 if len(path) >= 2 else -1
    dfs(path[-1], prev, last_bit)
    return best_path, nodes, not budget_hit


def _expand_frontier(items, succ_of, depth: int, on_node=None):
    """Grow (path, prev) items by up to `depth` levels, keeping dead ends.

    ``on_node`` sees every newly created (path, position) once; interior
    nodes of the expansion are candidates too, not only the leaves.
    Returns the leaf items and the number of expansion nodes.
    """
    nodes = 0
    for _ in range(depth):
        nxt = []
        grew = False
        for path, prev in items:
            succ = succ_of(path, prev)
            if not succ:
                nxt.append((path, prev))
                continue
            grew = True
            for w, q in succ:
                nodes += 1
                new_path = path + (w,)
                if on_node is not None:
                    on_node(new_path, q)
                nxt.append((new_path, q))
        items = nxt
        if not grew:
            break
    return items, nodes


def _merge_paths(best, cand):
    """Larger path wins; ties go to the lexicographically smaller one."""
    if cand is None:
        return best
    if best is None or len(cand) > len(best) or (len(cand) == len(best) and cand < best):
        return cand
    return best


def search_base(n0: int, left: int, right: int, node_budget: int = 10 ** 7,
                *, target: Optional[int] = None, jobs: int = 1,
                shuffle_seed: Optional[int] = None) -> SearchResult:
    """Longest seed code for the doubling engine with the given shape.

    The staircase prefix is planted, the excluded words are pre-marked
    visited, and a candidate is recorded whenever the last flip sits at the
    leftmost position.  ``exhausted`` is True only if every subtree was
    fully explored; with ``target`` set, the search stops as soon as a code
    of at least that many words is found and reports exhausted=False.

    ``shuffle_seed`` randomizes the branching order (for checking that the
    optimum is order-independent); the default lexicographic order makes
    the reported optimum the lexicographically smallest one.
    """
    if left < 1 or right < 1 or n0 != left + right + 1:
        raise ValueError("need left >= 1, right >= 1, n0 = left + right + 1")
    start_words, base_visited, prev = _base_prefix(left, right)

    def succ_of(path, prev_pos):
        succ = []
        visited = base_visited | set(path)
        for q in (prev_pos - 1, prev_pos, prev_pos + 1):
            if -left <= q <= right:
                w = path[-1] ^ (1 << (right - q))
                if w not in visited:
                    succ.append((w, q))
        succ.sort()
        return succ

    shallow: list[tuple] = []

    def collect(path, q):
        if q == -left:
            shallow.append(path)

    frontier, expansion_nodes = _expand_frontier([(tuple(start_words), prev)],
                                                 succ_of, _SPLIT_DEPTH, collect)
    extra = tuple(base_visited)
    floor_len = len(start_words) - 1

    def make_task(i: int, slice_budget: int) -> tuple:
        path, prev_pos = frontier[i]
        seed = None if shuffle_seed is None else shuffle_seed + i
        return (n0, left, right, path, extra, prev_pos, target, floor_len,
                seed, slice_budget)

    best = None
    for path in shallow:
        best = _merge_paths(best, path)
    if target is not None and best is not None and len(best) >= target:
        code = Code.from_rows(_rows_from_big_endian(best, n0), 2,
                              indexing=signed_indexing(left))
        return SearchResult(code, len(best),
                            growth_constant(len(best), n0, left, right),
                            expansion_nodes, False)

    stop = None
    if target is not None:
        def stop(out):
            return out[0] is not None and len(out[0]) >= target

    results, spent = _run_rounds(len(frontier), make_task, _base_subtree,
                                 node_budget, jobs, stop)
    spent += expansion_nodes

    exhausted = True
    for i in range(len(frontier)):
        out = results.get(i)
        if out is None:
            exhausted = False
            continue
        best = _merge_paths(best, out[0])
        if not out[2]:
            exhausted = False
    if target is not None and best is not None and len(best) >= target:
        exhausted = False

    if best is None:
        return SearchResult(None, 0, None, spent, exhausted)
    code = Code.from_rows(_rows_from_big_endian(best, n0), 2,
                          indexing=signed_indexing(left))
    return SearchResult(code, len(best), growth_constant(len(best), n0, left, right),
                        spent, exhausted)


# --- complete codes at small n --------------------------------------------------

def _complete_subtree(task):
    n, cyclic, path, prev, budget = task
    path = list(path)
    visited = set(path)
    total = 1 << n
    first_bit = (path[0] ^ path[1]).bit_length() - 1 if len(path) >= 2 else -1
    nodes = 0
    found = None
    budget_hit = False

    def wrap_ok(word: int, prev_pos: int) -> bool:
        if not cyclic:
            return True
        if word.bit_count() != 1:  # one flip back to the all-zero start
            return False
        b = word.bit_length() - 1
        return abs(b - prev_pos) <= 1 and abs(b - first_bit) <= 1

    def dfs(word: int, prev_pos: int):
        nonlocal nodes, budget_hit, found
        if len(path) == total:
            if wrap_ok(word, prev_pos):
                found = tuple(path)
            return
        for q in (prev_pos - 1, prev_pos, prev_pos + 1):
            if not 0 <= q < n:
                continue
            nxt = word ^ (1 << q)
            if nxt in visited:
                continue
            if nodes >= budget:
                budget_hit = True
                return
            nodes += 1
            visited.add(nxt)
            path.append(nxt)
            dfs(nxt, q)
            path.pop()
            visited.remove(nxt)
            if found is not None or budget_hit:
                return

    if len(path) == total:
        return (tuple(path) if wrap_ok(path[-1], prev) else None), 0, True
    dfs(path[-1], prev)
    return found, nodes, not budget_hit


def search_complete_1sktgc(n: int, cyclic: bool, node_budget: int = 10 ** 7,
                           *, jobs: int = 1) -> SearchResult:
    """Look for a complete code of length n under the k=1 constraint.

    The first word is pinned to the all-zero word (any complete code can be
    rotated or translated there).  ``exhausted=True`` with ``best=None``
    certifies nonexistence; a found code reports exhausted=False unless the
    space happened to be fully covered.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        code = Code.from_rows([[0], [1]], 2, cyclic=cyclic)
        return SearchResult(code, 2, Fraction(1), 0, True)

    def succ_of(path, prev_pos):
        succ = []
        for q in (prev_pos - 1, prev_pos, prev_pos + 1):
            if 0 <= q < n:
                w = path[-1] ^ (1 << q)
                if w not in path:
                    succ.append((w, q))
        succ.sort()
        return succ

    frontier, expansion_nodes = _expand_frontier([((0, 1 << b), b) for b in range(n)],
                                                 succ_of, _SPLIT_DEPTH - 1)

    def make_task(i: int, slice_budget: int) -> tuple:
        path, prev_pos = frontier[i]
        return (n, cyclic, path, prev_pos, slice_budget)

    def stop(out):
        return out[0] is not None

    results, spent = _run_rounds(len(frontier), make_task, _complete_subtree,
                                 node_budget, jobs, stop)
    spent += expansion_nodes

    found = None
    exhausted = True
    for i in range(len(frontier)):
        out = results.get(i)
        if out is None:
            exhausted = False
            continue
        if out[0] is not None and (found is None or out[0] < found):
            found = out[0]
        if not out[2]:
            exhausted = False
    if found is None:
        return SearchResult(None, 0, None, spent, exhausted)
    code = Code.from_rows(_rows_from_big_endian(found, n), 2, cyclic=cyclic)
    return SearchResult(code, len(found), Fraction(len(found), 1 << n), spent,
                        exhausted)


def validate_base(code: Code, left: int, right: int) -> BaseCase:
    """Check the four seed conditions; raises ConditionViolated naming each
    failed condition with a witness."""
    failures = base_condition_failures(code, left, right)
    if failures:
        raise ConditionViolated(failures)
    return BaseCase(left, right, code.with_indexing(signed_indexing(left)))
