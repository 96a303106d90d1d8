"""Deliberately naive reference implementations.

Everything here is exhaustive enumeration over one component and is the
ground truth the fast code is checked against.  Budgets guard against
accidental exponential blowups; exceeding one raises instead of grinding.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .forest import OnlineForest
from .minimax import INF


class BudgetExceededError(Exception):
    pass


@dataclass
class OracleBudget:
    max_component_size: int = 12   # vertices, for matching enumeration
    max_subset_size: int = 12      # black vertices, for Hall enumeration


DEFAULT_BUDGET = OracleBudget()


def _component_edges(forest: OnlineForest, v: int, t: int):
    comp = set(forest.component_at(v, t))
    edges = [(w, b) for (w, b) in forest.edges_at(t) if w in comp]
    return comp, edges


def enumerate_matchings(edges):
    """All matchings over the given edge list, as frozensets of edges."""
    results = []

    def rec(i, used, chosen):
        if i == len(edges):
            results.append(frozenset(chosen))
            return
        rec(i + 1, used, chosen)
        w, b = edges[i]
        if w not in used and b not in used:
            used.add(w)
            used.add(b)
            chosen.append((w, b))
            rec(i + 1, used, chosen)
            chosen.pop()
            used.discard(w)
            used.discard(b)

    rec(0, set(), [])
    return results


def enumerate_max_matchings(forest: OnlineForest, t: int, free_vertex: int | None = None,
                            budget: OracleBudget = DEFAULT_BUDGET):
    """All maximum-cardinality matchings of the relevant component.

    With ``free_vertex`` set, enumeration runs on the component with that
    vertex removed, i.e. the maximum matchings that leave it unmatched.
    """
    if free_vertex is not None:
        comp, edges = _component_edges(forest, free_vertex, t)
        edges = [e for e in edges if free_vertex not in e]
    else:
        # whole forest: product over components would explode; restrict to
        # a single component when one vertex is given, else all edges
        comp = set(forest.vertices_at(t))
        edges = list(forest.edges_at(t))
    if len(comp) > budget.max_component_size:
        raise BudgetExceededError(f"component size {len(comp)} over budget")
    all_matchings = enumerate_matchings(edges)
    best = max((len(m) for m in all_matchings), default=0)
    return [m for m in all_matchings if len(m) == best]


def count_max_matchings_dp(forest: OnlineForest, t: int):
    """(size, count) of maximum matchings via a tree DP, as a self-check
    of the enumeration.  Covers the whole forest at turn ``t``."""
    total_size, total_count = 0, 1
    seen: set[int] = set()
    for v in forest.vertices_at(t):
        if v in seen:
            continue
        view = forest.rooted_view(v, t)
        seen.update(view.order)
        # per vertex: (best size, count) with vertex free / matched downward
        free: dict[int, tuple[int, int]] = {}
        used: dict[int, tuple[int, int]] = {}
        def merged(c):
            bs = max(free[c][0], used[c][0])
            bc = (free[c][1] if free[c][0] == bs else 0) + \
                 (used[c][1] if used[c][0] == bs else 0)
            return bs, bc

        for u in reversed(view.order):
            kids = view.children[u]
            # u left unmatched by its subtree: children independent
            size_f, cnt_f = 0, 1
            for c in kids:
                bs, bc = merged(c)
                size_f += bs
                cnt_f *= bc
            free[u] = (size_f, cnt_f)
            # u matched downward to one child c, which must be free below
            best_size, best_cnt = -1, 0
            for c in kids:
                bs_c, bc_c = merged(c)
                size = size_f - bs_c + free[c][0] + 1
                cnt = (cnt_f // bc_c) * free[c][1] if bc_c else 0
                if size > best_size:
                    best_size, best_cnt = size, cnt
                elif size == best_size:
                    best_cnt += cnt
            used[u] = (best_size, best_cnt)
        bs, bc = merged(view.root)
        total_size += bs
        total_count *= bc
    return total_size, total_count


def brute_shortest_aug(forest: OnlineForest, matching, b: int, t: int,
                       budget: OracleBudget = DEFAULT_BUDGET):
    """Shortest alternating path length from free black ``b`` to a free
    white vertex, by checking the unique tree path to every white."""
    comp, _ = _component_edges(forest, b, t)
    if len(comp) > budget.max_component_size:
        raise BudgetExceededError(f"component size {len(comp)} over budget")
    partner = {}
    for w, bb in matching:
        partner[w] = bb
        partner[bb] = w
    view = forest.rooted_view(b, t)
    best = None
    for w in comp:
        if not forest.is_white(w) or w in partner:
            continue
        # unique path b .. w in the tree
        path = [w]
        while path[-1] != b:
            path.append(view.parent[path[-1]])
        path.reverse()
        ok = True
        for i in range(len(path) - 1):
            e_matched = partner.get(path[i]) == path[i + 1]
            want_matched = i % 2 == 1   # black->white free, white->black matched
            if e_matched != want_matched:
                ok = False
                break
        if ok:
            length = len(path) - 1
            if best is None or length < best:
                best = length
    return best


def adversary_game_value(forest: OnlineForest, b: int, t: int,
                         budget: OracleBudget = DEFAULT_BUDGET):
    """Worst case over maximum matchings leaving ``b`` free of the
    shortest augmenting path length from ``b`` (INF when some matching
    admits none)."""
    worst = 0
    for m in enumerate_max_matchings(forest, t, free_vertex=b, budget=budget):
        length = brute_shortest_aug(forest, m, b, t, budget)
        if length is None:
            return INF
        worst = max(worst, length)
    return worst


def brute_hall(forest: OnlineForest, b: int, t: int,
               budget: OracleBudget = DEFAULT_BUDGET):
    """A minimal-under-inclusion black set containing ``b`` whose
    neighborhood is smaller than itself, or None."""
    comp, _ = _component_edges(forest, b, t)
    blacks = sorted(v for v in comp if forest.is_black(v))
    if len(blacks) > budget.max_subset_size:
        raise BudgetExceededError(f"{len(blacks)} blacks over budget")

    def violates(xs):
        nbh = set()
        for x in xs:
            nbh.update(forest.neighbors_at(x, t))
        return len(nbh) < len(xs)

    for size in range(1, len(blacks) + 1):
        for xs in combinations(blacks, size):
            if b not in xs or not violates(xs):
                continue
            # minimality: by construction no smaller subset containing b
            # violates, but minimality must hold over all proper subsets
            minimal = True
            for k in range(1, size):
                for sub in combinations(xs, k):
                    if violates(sub):
                        minimal = False
                        break
                if not minimal:
                    break
            if minimal:
                return set(xs)
    return None
