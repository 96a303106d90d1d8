"""Online bipartite forest with white vertices fixed up front.

White vertices are the integers ``1..white_count``.  Black vertices arrive
one per turn together with all their edges; the black vertex of turn ``t``
gets the id ``white_count + t``.  This id scheme gives the global
tie-breaking order for free: whites ascending, then blacks in arrival
order (all comparisons on plain ints).

Edges are never deleted and every edge joins a white and a black vertex.
An arrival whose neighbors already share a connected component is
rejected, so the graph is a forest at every turn.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ForestError(Exception):
    """Base class for invalid forest operations."""


class CycleError(ForestError):
    """An arrival would close a cycle.  Carries the two offending whites."""

    def __init__(self, a: int, b: int):
        super().__init__(f"whites {a} and {b} already share a component")
        self.offenders = (a, b)


class UnknownVertexError(ForestError):
    pass


class NotYetArrivedError(ForestError):
    pass


class EmptyNeighborsError(ForestError):
    pass


class UnionFind:
    """Merge-only disjoint sets over int vertices (edges are never removed)."""

    def __init__(self):
        self._parent: dict[int, int] = {}
        self._size: dict[int, int] = {}

    def add(self, x: int) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x: int) -> int:
        root = x
        parent = self._parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return ra

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def size(self, x: int) -> int:
        return self._size[self.find(x)]


class OnlineForest:
    """The growing forest: whites up front, blacks revealed turn by turn.

    ``turn`` is the number of blacks revealed so far.  The full arrival log
    is kept, so any earlier snapshot can be queried by passing ``t``.
    """

    def __init__(self, white_count: int):
        if white_count < 1:
            raise ValueError("white_count must be >= 1")
        self.white_count = white_count
        self.arrivals: list[tuple[int, ...]] = []
        self.adj: dict[int, list[int]] = {w: [] for w in range(1, white_count + 1)}
        self._components = UnionFind()
        for w in range(1, white_count + 1):
            self._components.add(w)

    # -- id helpers ------------------------------------------------------

    @property
    def turn(self) -> int:
        return len(self.arrivals)

    def is_white(self, v: int) -> bool:
        return 1 <= v <= self.white_count

    def is_black(self, v: int) -> bool:
        return v > self.white_count

    def black_id(self, t: int) -> int:
        """Vertex id of the black vertex revealed in turn ``t`` (1-based)."""
        return self.white_count + t

    def arrival_turn(self, v: int) -> int:
        """Turn in which ``v`` appeared; 0 for white vertices."""
        return v - self.white_count if v > self.white_count else 0

    def label(self, v: int) -> str:
        return f"w{v}" if self.is_white(v) else f"b{v - self.white_count}"

    def exists_at(self, v: int, t: int) -> bool:
        if self.is_white(v):
            return True
        return self.white_count < v <= self.white_count + min(t, self.turn)

    def vertices_at(self, t: int):
        yield from range(1, self.white_count + 1)
        yield from range(self.white_count + 1, self.white_count + t + 1)

    # -- construction ----------------------------------------------------

    def add_black(self, neighbors) -> int:
        """Reveal the next black vertex with the given white neighbors.

        Returns the new turn index.  Rejects empty neighbor lists, unknown
        white ids and arrivals that would close a cycle.
        """
        nbrs = sorted(set(neighbors))
        if not nbrs:
            raise EmptyNeighborsError("black arrivals need at least one neighbor")
        for w in nbrs:
            if not self.is_white(w):
                raise UnknownVertexError(f"{w} is not a white vertex id")
        seen_roots: dict[int, int] = {}
        for w in nbrs:
            r = self._components.find(w)
            if r in seen_roots:
                raise CycleError(seen_roots[r], w)
            seen_roots[r] = w
        b_id = self.white_count + self.turn + 1
        self.arrivals.append(tuple(nbrs))
        self.adj[b_id] = list(nbrs)
        self._components.add(b_id)
        for w in nbrs:
            self.adj[w].append(b_id)
            self._components.union(b_id, w)
        return self.turn

    # -- queries ---------------------------------------------------------

    def _check_exists(self, v: int, t: int) -> None:
        if v < 1 or v > self.white_count + self.turn:
            raise UnknownVertexError(f"no vertex {v}")
        if not self.exists_at(v, t):
            raise NotYetArrivedError(
                f"{self.label(v)} has not arrived by turn {t}"
            )

    def neighbors_at(self, v: int, t: int) -> list[int]:
        """Neighborhood of ``v`` in the turn-``t`` snapshot, sorted."""
        self._check_exists(v, t)
        if self.is_black(v):
            return list(self.adj[v])
        cutoff = self.white_count + t
        return [b for b in self.adj[v] if b <= cutoff]

    def edges_at(self, t: int):
        for i in range(min(t, self.turn)):
            b = self.white_count + i + 1
            for w in self.arrivals[i]:
                yield (w, b)

    def rooted_view(self, root: int, t: int) -> "RootedView":
        """BFS tree of ``root``'s component at turn ``t``, children sorted."""
        self._check_exists(root, t)
        parent: dict[int, int | None] = {root: None}
        children: dict[int, list[int]] = {}
        order = [root]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            kids = [u for u in self.neighbors_at(v, t) if u != parent[v]]
            children[v] = kids
            for u in kids:
                parent[u] = v
                order.append(u)
        return RootedView(root=root, parent=parent, children=children, order=order)

    def component_at(self, v: int, t: int) -> list[int]:
        return self.rooted_view(v, t).order

    def induced_subforest(self, X, t: int):
        """Vertex set and edge list of the subgraph induced by ``X`` at ``t``."""
        xs = set(X)
        for v in xs:
            self._check_exists(v, t)
        edges = [(w, b) for (w, b) in self.edges_at(t) if w in xs and b in xs]
        return xs, edges


@dataclass
class RootedView:
    """One connected component at a fixed turn, rooted for game evaluation."""

    root: int
    parent: dict[int, int | None]
    children: dict[int, list[int]]
    order: list[int] = field(default_factory=list)  # BFS order from root

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def subtree(self, u: int) -> "RootedView":
        """The rooted subtree of ``u`` with all its descendants."""
        if u not in self.parent:
            raise UnknownVertexError(f"{u} is not in this component")
        parent: dict[int, int | None] = {u: None}
        children: dict[int, list[int]] = {}
        order = [u]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            kids = list(self.children[v])
            children[v] = kids
            for c in kids:
                parent[c] = v
                order.append(c)
        return RootedView(root=u, parent=parent, children=children, order=order)
