"""Dead and alive vertices, Hall witnesses, and the dying region.

A black vertex is dead once its second distance is infinite, a white one
once its first distance is.  Deaths are permanent.  A black vertex whose
first distance is infinite certifies a Hall violation, and
``hall_witness`` builds the minimal violating set constructively.

``dying_region`` predicts, from the turn-(t-1) alive set alone, exactly
which vertices die in turn t: nobody when the newcomer has two or more
previously-alive neighbors, and otherwise everything reachable from the
newcomer through previously-alive vertices without crossing a life
portal (a black vertex with three or more previously-alive neighbors).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forest import OnlineForest
from .minimax import INF, _identity, _evaluate_subtree, component_table, table_at


def is_dead(forest: OnlineForest, v: int, t: int, key=_identity) -> bool:
    """Definitional death check with a fresh component evaluation."""
    table = table_at(forest, v, t, key)
    if forest.is_white(v):
        return table.dist[v] == INF
    return table.sec_dist[v] == INF


def hall_witness(forest: OnlineForest, b: int, t: int, key=_identity) -> set[int] | None:
    """Minimal black set containing ``b`` with too small a neighborhood.

    Exists iff the first distance of ``b`` is infinite.  Built by rooting
    ``b``'s component at ``b``, keeping for every white vertex the edge to
    its parent and the edge to its chosen child (when one exists), and
    taking the black vertices of ``b``'s component in that subforest.
    """
    if not forest.is_black(b):
        raise ValueError(f"{b} is not a black vertex")
    view = forest.rooted_view(b, t)
    value, nxt = _evaluate_subtree(view, b, forest, key)
    if value[b] != INF:
        return None
    keep: dict[int, set[int]] = {v: set() for v in view.order}
    for w in view.order:
        if not forest.is_white(w):
            continue
        p = view.parent[w]
        if p is not None:
            keep[p].add(w)
            keep[w].add(p)
        c = nxt[w]
        if c is not None:
            keep[w].add(c)
            keep[c].add(w)
    comp = {b}
    stack = [b]
    while stack:
        v = stack.pop()
        for u in keep[v]:
            if u not in comp:
                comp.add(u)
                stack.append(u)
    return {v for v in comp if forest.is_black(v)}


def check_hall_violation(forest: OnlineForest, X, t: int) -> bool:
    """Does ``X`` have fewer neighbors than members at turn ``t``?"""
    nbh: set[int] = set()
    for x in X:
        nbh.update(forest.neighbors_at(x, t))
    return len(nbh) < len(X)


def life_portals(forest: OnlineForest, t: int, alive_prev: set[int]) -> set[int]:
    """Black vertices with at least three previously-alive neighbors."""
    out = set()
    for i in range(t):
        b = forest.black_id(i + 1)
        if sum(1 for w in forest.adj[b] if w in alive_prev) >= 3:
            out.add(b)
    return out


def dying_region(forest: OnlineForest, t: int, alive_prev: set[int],
                 key=_identity) -> set[int] | None:
    """Vertices predicted to die in turn ``t``, from structure alone.

    Returns None when the newcomer has no previously-alive neighbor (the
    Hall-breaking case, where the prediction does not apply and deaths
    must be read off the distances).
    """
    b = forest.black_id(t)
    alive_nbrs = [w for w in forest.adj[b] if w in alive_prev]
    if len(alive_nbrs) >= 2:
        return set()
    if not alive_nbrs:
        return None
    portals = life_portals(forest, t, alive_prev)
    region = {b}
    stack = [b]
    while stack:
        v = stack.pop()
        for u in forest.neighbors_at(v, t):
            if u in region or u in portals or u not in alive_prev:
                continue
            region.add(u)
            stack.append(u)
    return region


def dispatching_vertex(forest: OnlineForest, path: list[int],
                       alive_now: set[int]) -> int | None:
    """First black vertex on the path with two or more alive neighbors."""
    for v in path:
        if forest.is_black(v):
            if sum(1 for u in forest.adj[v] if u in alive_now) >= 2:
                return v
    return None


def split_path(path: list[int], dispatch: int | None) -> tuple[list[int], list[int]]:
    """Split a path into the dying prefix and the surviving suffix.

    The suffix starts at the dispatching vertex; with no dispatching
    vertex the whole path is prefix.
    """
    if dispatch is None:
        return list(path), []
    i = path.index(dispatch)
    return path[:i], path[i:]


@dataclass
class VitalityState:
    """Alive set, per-turn deaths and per-turn portals over a whole run."""

    alive: set[int] = field(default_factory=set)
    deaths_by_turn: list[list[int]] = field(default_factory=list)
    portals_by_turn: list[set[int]] = field(default_factory=list)


def track_vitality(forest: OnlineForest, key=_identity) -> VitalityState:
    """Replay ``forest``'s arrivals and log deaths and portals per turn."""
    replay = OnlineForest(forest.white_count)
    state = VitalityState(alive=set(range(1, forest.white_count + 1)))
    for nbrs in forest.arrivals:
        t = replay.add_black(nbrs)
        b = replay.black_id(t)
        state.portals_by_turn.append(life_portals(replay, t, state.alive))
        view = replay.rooted_view(b, t)
        table = component_table(replay, view, t, key)
        deaths = []
        for v in view.order:
            dead = (table.dist[v] == INF if replay.is_white(v)
                    else table.sec_dist[v] == INF)
            if v == b:
                if not dead:
                    state.alive.add(v)
                else:
                    deaths.append(v)
            elif dead and v in state.alive:
                state.alive.discard(v)
                deaths.append(v)
        deaths.sort()
        state.deaths_by_turn.append(deaths)
    return state
