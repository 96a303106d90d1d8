"""Matchings and the online shortest-augmenting-path run.

A matching is a symmetric partner map.  The augmenting-path search is a
layered alternating BFS from a free black vertex: a free edge leaves a
black vertex, the matched edge leaves a white one.  On a forest this is
exact and linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forest import OnlineForest
from .minimax import INF


class MatchingError(Exception):
    pass


@dataclass
class Matching:
    partner: dict[int, int] = field(default_factory=dict)

    def is_free(self, v: int) -> bool:
        return v not in self.partner

    def match(self, w: int, b: int) -> None:
        self.partner[w] = b
        self.partner[b] = w

    def unmatch(self, w: int, b: int) -> None:
        del self.partner[w]
        del self.partner[b]

    def pairs(self):
        return {(min(a, b), max(a, b)) for a, b in self.partner.items()}

    def __len__(self) -> int:
        return len(self.partner) // 2

    def copy(self) -> "Matching":
        return Matching(dict(self.partner))

    def validate(self, forest: OnlineForest, t: int) -> None:
        edges = set()
        for w, b in forest.edges_at(t):
            edges.add((w, b))
        for a, b in self.partner.items():
            if self.partner.get(b) != a:
                raise MatchingError(f"partner map not symmetric at {a}")
            w, bb = (a, b) if forest.is_white(a) else (b, a)
            if (w, bb) not in edges:
                raise MatchingError(f"matched pair {{{a}, {b}}} is not an edge")


def shortest_augmenting_path(forest: OnlineForest, matching: Matching,
                             b: int, t: int, validate: bool = True) -> list[int] | None:
    """Shortest alternating path from free black ``b`` to a free white.

    Frontier expansion scans neighbors in the global vertex order, so the
    returned path is the order-least among the shortest ones.
    """
    if not forest.is_black(b):
        raise MatchingError(f"{b} is not a black vertex")
    if not matching.is_free(b):
        raise MatchingError(f"{b} is not free")
    if validate:
        matching.validate(forest, t)
    parent = {b: None}
    frontier = [b]
    black_turn = True
    while frontier:
        nxt = []
        for v in frontier:
            if black_turn:
                for w in forest.neighbors_at(v, t):
                    if w in parent or matching.partner.get(v) == w:
                        continue
                    parent[w] = v
                    if matching.is_free(w):
                        path = [w]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    nxt.append(w)
            else:
                bb = matching.partner.get(v)
                if bb is not None and bb not in parent:
                    parent[bb] = v
                    nxt.append(bb)
        frontier = sorted(nxt)
        black_turn = not black_turn
    return None


def augment(matching: Matching, path: list[int]) -> Matching:
    """Swap matched and free edges along an augmenting path; size grows
    by one.  Returns a new matching."""
    if len(path) < 2 or len(path) % 2 != 0:
        raise MatchingError("augmenting paths have odd edge count")
    if not (matching.is_free(path[0]) and matching.is_free(path[-1])):
        raise MatchingError("augmenting path endpoints must be free")
    out = matching.copy()
    for i in range(len(path) - 1):
        a, c = path[i], path[i + 1]
        if i % 2 == 0:
            if out.partner.get(a) == c:
                raise MatchingError("expected a free edge on the path")
        else:
            if out.partner.get(a) != c:
                raise MatchingError("expected a matched edge on the path")
            out.unmatch(min(a, c), max(a, c))
    for i in range(0, len(path) - 1, 2):
        a, c = path[i], path[i + 1]
        out.match(min(a, c), max(a, c))
    return out


def tree_max_matching(forest: OnlineForest, t: int) -> Matching:
    """Maximum matching of the turn-``t`` forest by leaf peeling."""
    deg = {}
    adj = {}
    for v in forest.vertices_at(t):
        ns = forest.neighbors_at(v, t)
        adj[v] = set(ns)
        deg[v] = len(ns)
    m = Matching()
    leaves = [v for v, d in deg.items() if d == 1]
    removed = set()
    while leaves:
        v = leaves.pop()
        if v in removed or not adj[v]:
            removed.add(v)
            continue
        u = next(iter(adj[v]))
        w, b = (v, u) if forest.is_white(v) else (u, v)
        m.match(w, b)
        for x in (v, u):
            removed.add(x)
            for y in adj[x]:
                adj[y].discard(x)
                if len(adj[y]) == 1 and y not in removed:
                    leaves.append(y)
            adj[x] = set()
    return m


@dataclass
class SapTurn:
    t: int
    b: int
    pi_len: int | None       # applied augmenting path length, None if no path
    dist: float              # worst-case bound for comparison
    matching_size: int


def run_sap_online(forest: OnlineForest, dists=None) -> tuple[list[SapTurn], Matching]:
    """Replay the arrival sequence, augmenting along the shortest path in
    every turn that admits one.

    ``dists`` optionally supplies the per-turn worst-case distances so the
    record can carry them without recomputation.
    """
    from .minimax import table_at

    replay = OnlineForest(forest.white_count)
    m = Matching()
    records = []
    for i, nbrs in enumerate(forest.arrivals):
        t = replay.add_black(nbrs)
        b = replay.black_id(t)
        if dists is not None:
            d = dists[i]
        else:
            d = table_at(replay, b, t).dist[b]
        path = shortest_augmenting_path(replay, m, b, t, validate=False)
        if path is None:
            records.append(SapTurn(t, b, None, d, len(m)))
        else:
            m = augment(m, path)
            records.append(SapTurn(t, b, len(path) - 1, d, len(m)))
    return records, m
