"""One Nash blow-up step and the iterated resolution tree.

A blow-up of a cone C is the multiset of localizations of C + Hull(S) at
its vertices, where S collects the sums of d linearly independent Hilbert
basis elements. The tree expands non-smooth cones recursively, with
optional pruning of small-index simplicial cones and memoization keyed by
canonical form.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import intlinalg as la
from .cones import (
    Cone,
    canonical_key,
    dual_index,
    index,
    is_smooth,
    localize,
    minkowski_sum_hull,
)
from .errors import BudgetExceeded
from .hilbert import HilbertBasis, hilbert_basis

SMOOTH = "smooth"
EXPANDED = "expanded"
PRUNED_KNOWN = "pruned-known"
PRUNED_DEPTH = "pruned-depth"
MEMOIZED = "memoized"


@dataclass(frozen=True)
class BlowupStep:
    """All intermediate data of a single blow-up."""

    cone: Cone
    hilbert: HilbertBasis
    sums: frozenset
    polyhedron: object
    children: tuple


def sum_set(h):
    """Sums of d linearly independent basis elements, as a set.

    Enumerates independent subsets depth-first, short-circuiting on rank
    deficiency via an incremental fraction-free echelon.
    """
    elements = h.elements if isinstance(h, HilbertBasis) else tuple(tuple(v) for v in h)
    d = len(elements[0])
    if len(elements) < d:
        raise AssertionError("Hilbert basis smaller than the dimension")
    n = len(elements)
    sums = set()

    def reduce_row(echelon, v):
        w = list(v)
        for pivot_col, row in echelon:
            if w[pivot_col]:
                a, b = w[pivot_col], row[pivot_col]
                w = [x * b - y * a for x, y in zip(w, row)]
        for j, x in enumerate(w):
            if x:
                return j, tuple(w)
        return None

    def extend(start, echelon, total):
        depth = len(echelon)
        if depth == d:
            sums.add(total)
            return
        for i in range(start, n - (d - depth) + 1):
            v = elements[i]
            reduced = reduce_row(echelon, v)
            if reduced is None:
                continue
            extend(i + 1, echelon + [reduced], la.vadd(total, v))

    extend(0, [], (0,) * d)
    return sums


def blowup_step(c) -> BlowupStep:
    """Run one blow-up, keeping the Hilbert basis, sum set and polyhedron."""
    h = hilbert_basis(c)
    s = sum_set(h)
    p = minkowski_sum_hull(c, s)
    children = tuple(localize(p, v) for v in p.vertices)
    return BlowupStep(c, h, frozenset(s), p, children)


def nash_blowup(c):
    """The multiset of localizations of C + Hull S at its vertices."""
    return blowup_step(c).children


# ------------------------------------------------------------------ trees


@dataclass
class TreeNode:
    cone: Cone
    index: int
    dual_index: int
    status: str
    key: bytes
    children: list = field(default_factory=list)
    depth_below: int = 0
    size: int = 1
    max_facets: int = 0
    resolved: bool = True
    has_pruned: bool = False


@dataclass(frozen=True)
class MemoEntry:
    """Cached statistics of a fully processed subtree."""

    dim: int
    index: int
    dual_index: int
    depth_below: int
    size: int
    max_facets: int
    resolved: bool
    has_pruned: bool
    child_keys: tuple


@dataclass
class ResolutionTree:
    root: TreeNode
    prune_below_index: object
    memoize: bool
    max_depth: int
    max_nodes: int
    nodes_created: int
    memo: dict
    new_memo_keys: list
    budget_hit: bool = False


@dataclass(frozen=True)
class TreeStats:
    depth: int
    size: int
    max_facets: int
    resolved: bool


def tree_stats(tree) -> TreeStats:
    """Raw subtree statistics; memoized nodes count as fully expanded."""
    root = tree.root if isinstance(tree, ResolutionTree) else tree
    return TreeStats(root.depth_below, root.size, root.max_facets, root.resolved)


def unique_cone_count(tree) -> int:
    """Number of distinct cone classes reachable in the tree (memo-deduplicated)."""
    seen = set()
    memo = tree.memo

    def walk_key(key):
        if key in seen:
            return
        seen.add(key)
        entry = memo.get(key)
        if entry is not None:
            for ck in entry.child_keys:
                walk_key(ck)

    def walk(node):
        seen.add(node.key)
        if node.status == MEMOIZED:
            for ck in memo[node.key].child_keys:
                walk_key(ck)
        for ch in node.children:
            walk(ch)

    walk(tree.root)
    return len(seen)


def _child_sort_key(cone):
    return (canonical_key(cone), cone.facets)


def resolution_tree(
    c,
    prune_below_index=None,
    memoize=True,
    max_depth=32,
    max_nodes=100_000,
    jobs=1,
    memo=None,
) -> ResolutionTree:
    """Expand the full resolution tree of c.

    Smooth cones become leaves; with pruning, simplicial cones of index
    strictly below the threshold become pruned-known leaves; nodes at
    max_depth become pruned-depth leaves. With memoization, a cone whose
    canonical key was already fully processed becomes a memoized leaf
    carrying the cached subtree statistics. Children are ordered by
    canonical key. Raises BudgetExceeded (with the partial tree attached)
    when more than max_nodes nodes are created.

    Any number of worker threads (jobs > 1) may precompute blow-ups; the
    assembled tree is identical to the single-threaded one.
    """
    memo_map = {} if memo is None else memo
    new_keys: list = []
    created = [1]
    budget_hit = [False]
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    pending: dict = {}

    def fetch_children(cone):
        if pool is not None:
            fut = pending.pop(cone, None)
            if fut is not None:
                return fut.result()
        return nash_blowup(cone)

    def will_expand(cone, depth):
        if is_smooth(cone):
            return False
        if prune_below_index is not None and cone.is_simplicial and index(cone) < prune_below_index:
            return False
        if depth >= max_depth:
            return False
        if memoize and canonical_key(cone) in memo_map:
            return False
        return True

    def expand(cone, depth):
        node = TreeNode(
            cone,
            index(cone),
            dual_index(cone),
            EXPANDED,
            canonical_key(cone),
            max_facets=len(cone.facets),
        )
        if is_smooth(cone):
            node.status = SMOOTH
            return node
        if prune_below_index is not None and cone.is_simplicial and node.index < prune_below_index:
            node.status = PRUNED_KNOWN
            node.has_pruned = True
            return node
        if depth >= max_depth or budget_hit[0]:
            node.status = PRUNED_DEPTH
            node.resolved = False
            return node
        if memoize and node.key in memo_map:
            entry = memo_map[node.key]
            node.status = MEMOIZED
            node.depth_below = entry.depth_below
            node.size = entry.size
            node.max_facets = entry.max_facets
            node.resolved = entry.resolved
            node.has_pruned = entry.has_pruned
            return node

        children = sorted(fetch_children(cone), key=_child_sort_key)
        created[0] += len(children)
        if created[0] > max_nodes:
            budget_hit[0] = True
            node.status = PRUNED_DEPTH
            node.resolved = False
            return node
        if pool is not None:
            for ch in children[1:]:
                if ch not in pending and will_expand(ch, depth + 1):
                    pending[ch] = pool.submit(nash_blowup, ch)
        node.children = [expand(ch, depth + 1) for ch in children]
        node.depth_below = 1 + max(ch.depth_below for ch in node.children)
        node.size = 1 + sum(ch.size for ch in node.children)
        node.max_facets = max([node.max_facets] + [ch.max_facets for ch in node.children])
        node.resolved = all(ch.resolved for ch in node.children)
        node.has_pruned = any(ch.has_pruned for ch in node.children)
        if memoize and not budget_hit[0] and node.key not in memo_map:
            memo_map[node.key] = MemoEntry(
                cone.dim,
                node.index,
                node.dual_index,
                node.depth_below,
                node.size,
                node.max_facets,
                node.resolved,
                node.has_pruned,
                tuple(ch.key for ch in node.children),
            )
            new_keys.append(node.key)
        return node

    try:
        root = expand(c, 0)
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)

    tree = ResolutionTree(
        root,
        prune_below_index,
        memoize,
        max_depth,
        max_nodes,
        created[0],
        memo_map,
        new_keys,
        budget_hit[0],
    )
    if budget_hit[0]:
        raise BudgetExceeded(f"node budget {max_nodes} exceeded", tree=tree)
    return tree
