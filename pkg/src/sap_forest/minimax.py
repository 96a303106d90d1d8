"""Mini-max distances on rooted forest components.

Two independent formulations of the same two-player game are implemented:

* the rooted-tree evaluation (``mini_max_revenue`` / ``mini_max_path``),
  where black vertices minimize the distance to a white leaf and white
  vertices maximize it, one step per edge;
* the edge-determined evaluation (``component_table``), which computes the
  value of entering a vertex from each neighbor via two rerooting passes.

The second is linear in the component size and feeds the per-turn
analysis; the first is the direct definition and serves as a cross-check.
Infinity is ``float("inf")``; all finite values are ints, and saturation
(``INF + 1 == INF``) comes for free.

Tie-breaking: among equally good moves the first vertex in the global
order wins.  ``key`` swaps in an alternative total order (used to confirm
that no verified property depends on the choice).
"""

from __future__ import annotations

from dataclasses import dataclass

from .forest import NotYetArrivedError, OnlineForest, RootedView

INF = float("inf")


def _identity(v: int) -> int:
    return v


class NotAnEdgeError(Exception):
    pass


class DirUndefinedError(Exception):
    pass


# ---------------------------------------------------------------------------
# Rooted formulation


def _subtree_order(view: RootedView, start: int) -> list[int]:
    order = [start]
    i = 0
    while i < len(order):
        order.extend(view.children[order[i]])
        i += 1
    return order


def _evaluate_subtree(view: RootedView, start: int, forest: OnlineForest, key):
    """Game value and chosen child for every vertex of ``start``'s subtree."""
    order = _subtree_order(view, start)
    value: dict[int, float] = {}
    nxt: dict[int, int | None] = {}
    for v in reversed(order):
        kids = view.children[v]
        if not kids:
            value[v] = 0 if forest.is_white(v) else INF
            nxt[v] = None
            continue
        if forest.is_white(v):
            bv = max(value[c] for c in kids)
        else:
            bv = min(value[c] for c in kids)
        best = min((c for c in kids if value[c] == bv), key=key)
        value[v] = bv + 1
        nxt[v] = best
    return value, nxt


def mini_max_revenue(view: RootedView, v: int, forest: OnlineForest, key=_identity):
    """Game value of ``v`` in the rooted tree, with the chosen child.

    White leaves score 0, black leaves infinity; inner vertices add one
    step to the best child (max for white, min for black).
    """
    value, nxt = _evaluate_subtree(view, v, forest, key)
    return value[v], nxt[v]


def mini_max_path(view: RootedView, v: int, forest: OnlineForest, key=_identity) -> list[int]:
    """The path obtained by following the chosen child until a leaf."""
    _, nxt = _evaluate_subtree(view, v, forest, key)
    path = [v]
    while nxt[path[-1]] is not None:
        path.append(nxt[path[-1]])
    return path


def dist_dir(forest: OnlineForest, v: int, t: int, key=_identity):
    """First mini-max distance and direction of ``v`` at turn ``t``.

    Rooted formulation: the game value of ``v``'s component rooted at ``v``.
    """
    view = forest.rooted_view(v, t)
    return mini_max_revenue(view, v, forest, key)


def sec_dist_dir(forest: OnlineForest, v: int, t: int, key=_identity):
    """Second mini-max distance: ``v``'s game value after the first
    direction and its whole subtree are removed."""
    view = forest.rooted_view(v, t)
    value, nxt = _evaluate_subtree(view, v, forest, key)
    first = nxt[v]
    rest = [c for c in view.children[v] if c != first]
    if not rest:
        return (0, None) if forest.is_white(v) else (INF, None)
    if forest.is_white(v):
        bv = max(value[c] for c in rest)
    else:
        bv = min(value[c] for c in rest)
    best = min((c for c in rest if value[c] == bv), key=key)
    return bv + 1, best


# ---------------------------------------------------------------------------
# Edge-determined formulation (linear per component)


@dataclass
class MiniMaxTable:
    """All mini-max quantities of one component at one turn.

    ``det[(u, v)]`` is the value of entering ``v`` from its neighbor ``u``
    (the game restricted to the side of ``v`` away from ``u``) together
    with the continuation vertex, for both orientations of every edge.
    """

    turn: int
    vertices: list[int]
    dist: dict[int, float]
    sec_dist: dict[int, float]
    dir: dict[int, int | None]
    sec_dir: dict[int, int | None]
    det: dict[tuple[int, int], tuple[float, int | None]]


def component_table(forest: OnlineForest, view: RootedView, t: int, key=_identity) -> MiniMaxTable:
    """Compute the full table for the component in two rerooting passes."""
    up: dict[int, float] = {}
    up_arg: dict[int, int | None] = {}
    det: dict[tuple[int, int], tuple[float, int | None]] = {}
    is_white = forest.is_white

    def pick(p: int, items):
        """Best and runner-up entry values of ``p`` over (neighbor, value).

        The runner-up excludes the best *vertex*, not the best value, which
        is what the second distance needs.
        """
        white = is_white(p)
        v1, a1 = None, None
        for x, h in items:
            if v1 is None or (h > v1 if white else h < v1) or (h == v1 and key(x) < key(a1)):
                v1, a1 = h, x
        v2, a2 = None, None
        for x, h in items:
            if x == a1:
                continue
            if v2 is None or (h > v2 if white else h < v2) or (h == v2 and key(x) < key(a2)):
                v2, a2 = h, x
        return v1, a1, v2, a2

    order = view.order
    for v in reversed(order):
        kids = view.children[v]
        items = [(c, up[c]) for c in kids]
        v1, a1, _, _ = pick(v, items)
        if v1 is None:
            up[v] = 0 if is_white(v) else INF
            up_arg[v] = None
        else:
            up[v] = v1 + 1
            up_arg[v] = a1

    dist: dict[int, float] = {}
    sec_dist: dict[int, float] = {}
    dir_: dict[int, int | None] = {}
    sec_dir: dict[int, int | None] = {}
    down: dict[int, float] = {}
    down_arg: dict[int, int | None] = {}

    for p in order:
        par = view.parent[p]
        items = [(c, up[c]) for c in view.children[p]]
        if par is not None:
            items.append((par, down[p]))
            det[(par, p)] = (up[p], up_arg[p])
            det[(p, par)] = (down[p], down_arg[p])
        v1, a1, v2, a2 = pick(p, items)
        base = 0 if is_white(p) else INF
        if v1 is None:
            dist[p], dir_[p] = base, None
        else:
            dist[p], dir_[p] = v1 + 1, a1
        if v2 is None:
            sec_dist[p], sec_dir[p] = base, None
        else:
            sec_dist[p], sec_dir[p] = v2 + 1, a2
        for c in view.children[p]:
            if len(items) == 1:
                down[c], down_arg[c] = base, None
            elif c == a1:
                down[c], down_arg[c] = v2 + 1, a2
            else:
                down[c], down_arg[c] = v1 + 1, a1

    return MiniMaxTable(
        turn=t, vertices=list(order), dist=dist, sec_dist=sec_dist,
        dir=dir_, sec_dir=sec_dir, det=det,
    )


def table_at(forest: OnlineForest, v: int, t: int, key=_identity) -> MiniMaxTable:
    """Table of ``v``'s component at turn ``t`` (fresh computation)."""
    return component_table(forest, forest.rooted_view(v, t), t, key)


def det_dist_dir(forest: OnlineForest, u: int, v: int, t: int, key=_identity):
    """Value of entering ``v`` from ``u`` along the edge ``{u, v}``."""
    table = table_at(forest, v, t, key)
    if (u, v) not in table.det:
        raise NotAnEdgeError(f"{{{u}, {v}}} is not an edge at turn {t}")
    return table.det[(u, v)]


def follow_det_path(table: MiniMaxTable, u: int, v: int) -> list[int]:
    """Walk continuation vertices of ``det`` from the directed edge (u, v)."""
    path = [u]
    while True:
        path.append(v)
        _, nx = table.det[(u, v)]
        if nx is None:
            return path
        u, v = v, nx


def det_path(forest: OnlineForest, u: int, v: int, t: int, key=_identity) -> list[int]:
    table = table_at(forest, v, t, key)
    if (u, v) not in table.det:
        raise NotAnEdgeError(f"{{{u}, {v}}} is not an edge at turn {t}")
    return follow_det_path(table, u, v)


def path_from_table(table: MiniMaxTable, v: int) -> list[int]:
    if table.dir[v] is None:
        return [v]
    return follow_det_path(table, v, table.dir[v])


def sec_path_from_table(table: MiniMaxTable, v: int) -> list[int]:
    if table.dir[v] is None:
        raise DirUndefinedError(f"vertex {v} has no first direction")
    if table.sec_dir[v] is None:
        return [v]
    return follow_det_path(table, v, table.sec_dir[v])


def path_at(forest: OnlineForest, v: int, t: int, key=_identity) -> list[int]:
    """Mini-max path of ``v`` at turn ``t``; length equals the first
    distance whenever that is finite."""
    if not forest.exists_at(v, t):
        raise NotYetArrivedError(f"vertex {v} absent at turn {t}")
    return path_from_table(table_at(forest, v, t, key), v)


def sec_path_at(forest: OnlineForest, v: int, t: int, key=_identity) -> list[int]:
    """Mini-max path of ``v`` with the edge to its first direction removed."""
    if not forest.exists_at(v, t):
        raise NotYetArrivedError(f"vertex {v} absent at turn {t}")
    return sec_path_from_table(table_at(forest, v, t, key), v)
