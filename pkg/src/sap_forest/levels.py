"""Vertex levels, turn classification, and the two charging audits.

The level of a white vertex is its second distance, of an arrived black
vertex its first distance, and of an unarrived black vertex zero.
Levels never decrease.  Each turn with a finite newcomer distance and a
defined dispatching vertex is classified by how much the dispatching
vertex's level grew: below the factor ``beta`` (slow) or at least it
(jump).  Slow turns are covered by a component-halving charge on the
final forest restricted to alive vertices; jump turns by the token
scheme in :mod:`.ledger`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .analysis import ScenarioAnalysis, TurnRecord
from .minimax import INF


class TurnClass(Enum):
    DIST_INFINITE = "dist_infinite"
    NO_DISPATCH = "no_dispatch"
    CASE_SLOW = "case_slow"
    CASE_JUMP = "case_jump"


def classify_turn(rec: TurnRecord, beta: float) -> TurnClass:
    if rec.dist == INF:
        return TurnClass.DIST_INFINITE
    if rec.dispatch is None:
        return TurnClass.NO_DISPATCH
    if rec.disp_level_after >= beta * rec.disp_level_before:
        return TurnClass.CASE_JUMP
    return TurnClass.CASE_SLOW


def level_cap(n: int) -> int:
    """Finite stand-in for infinite levels: above every finite level."""
    return 2 * n + 1


def capped(level: float, cap: int) -> int:
    return cap if level == INF else int(level)


def level_forest_components(analysis: ScenarioAnalysis, l: int,
                            time_code: int) -> list[set[int]]:
    """Components of the final forest induced on vertices of level >= l
    at the given time code."""
    levels = analysis.levels_at(time_code)
    adj = analysis.forest.adj
    keep = {v for v, lev in levels.items() if lev >= l}
    comps = []
    seen: set[int] = set()
    for v in keep:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x in keep and x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# Local level-drop property


def check_level_steps(analysis: ScenarioAnalysis) -> list[tuple[int, int, int]]:
    """Violations of the one-step level drop along both directions.

    For every alive vertex ``v`` and each of its two directions ``u``:
    ``u`` is alive, ``level(u) >= level(v) - 1``, and for white ``v``
    additionally ``level(u) <= level(v) + 1``.  Returns (t, v, u)
    triples that break this, checked at every turn.

    Two deliberate restrictions.  Dead vertices are exempt: with
    infinite values the gap can be arbitrary.  And for black ``v`` only
    the lower bound is checked: the level of a black vertex is its
    first distance while its second direction tracks the second
    distance, so the direction's level may legitimately sit far above.
    Only the lower bound feeds the component-size guarantee at jump
    turns, which always descends from the (black) dispatching vertex.
    """
    bad = []
    forest = analysis.forest
    n = forest.white_count
    # replay turn by turn: need per-turn tables; reuse analysis arrays is
    # final-only, so recompute per turn on the merged component
    from .minimax import component_table
    from .forest import OnlineForest
    replay = OnlineForest(n)
    level = {w: 0 for w in range(1, n + 1)}
    dir_: dict[int, int | None] = {w: None for w in range(1, n + 1)}
    sec: dict[int, int | None] = {w: None for w in range(1, n + 1)}
    for nbrs in forest.arrivals:
        t = replay.add_black(nbrs)
        b = replay.black_id(t)
        view = replay.rooted_view(b, t)
        table = component_table(replay, view, t, analysis.key)
        for v in view.order:
            level[v] = table.dist[v] if replay.is_black(v) else table.sec_dist[v]
            dir_[v] = table.dir[v]
            sec[v] = table.sec_dir[v]
        def dead(v):
            if replay.is_white(v):
                return table.dist[v] == INF
            return table.sec_dist[v] == INF

        for v in view.order:
            if dead(v):
                continue
            for u in (dir_[v], sec[v]):
                if u is None:
                    continue
                if dead(u) or level[u] < level[v] - 1:
                    bad.append((t, v, u))
                elif replay.is_white(v) and level[u] > level[v] + 1:
                    bad.append((t, v, u))
    return bad


# ---------------------------------------------------------------------------
# All-degrees-at-least-two special case


def check_min_degree_two_run(analysis: ScenarioAnalysis) -> dict:
    """For scenarios whose blacks all have degree >= 2: nobody ever dies
    and the total worst-case path length is at most n*log2(n)."""
    if any(len(nbrs) < 2 for nbrs in analysis.forest.arrivals):
        raise ValueError("scenario has a degree-one black vertex")
    n = analysis.forest.white_count
    deaths = sum(len(r.deaths) for r in analysis.records)
    total = sum(int(r.dist) for r in analysis.records if r.dist != INF)
    infinite = sum(1 for r in analysis.records if r.dist == INF)
    bound = n * math.log2(n) if n > 1 else 0
    return {
        "deaths": deaths,
        "total_path_length": total,
        "infinite_turns": infinite,
        "bound": bound,
        "ok": deaths == 0 and infinite == 0 and total <= bound,
    }


# ---------------------------------------------------------------------------
# Slow-turn audit (component halving on the alive-induced final forest)


@dataclass
class SlowAudit:
    beta: float
    turns_checked: int = 0
    total_suffix: int = 0
    bound: float = 0.0
    growth_violations: list[int] = field(default_factory=list)
    deaths_disconnected: list[int] = field(default_factory=list)
    suffix_split: list[int] = field(default_factory=list)
    max_halving_charges: int = 0
    charge_bound: float = 0.0

    @property
    def ok(self) -> bool:
        return (not self.growth_violations and not self.deaths_disconnected
                and not self.suffix_split
                and self.total_suffix <= self.bound
                and self.max_halving_charges <= self.charge_bound)


class _MemberDsu:
    """Union-find that can enumerate the members of a set."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.members: dict[int, list[int]] = {}

    def add(self, v: int) -> None:
        if v not in self.parent:
            self.parent[v] = v
            self.size[v] = 1
            self.members[v] = [v]

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.members[ra].extend(self.members.pop(rb))


def audit_slow_turns(analysis: ScenarioAnalysis, beta: float) -> SlowAudit:
    """Charge the suffix of every slow turn against component splits.

    Works backward through time with a merge-only union-find over the
    final forest restricted to alive vertices (reviving each turn's
    deaths restores the earlier forest).  Checks, per slow turn: the
    suffix is shorter than ``beta`` times the dispatching vertex's old
    level, the dying set is connected, and the suffix sits inside a
    single surviving component.  Vertices are charged one token when
    their component is not the largest surviving piece, and the audit
    confirms nobody collects more than ``log2(n)`` such tokens.
    """
    audit = SlowAudit(beta=beta)
    forest = analysis.forest
    n = forest.white_count
    records = analysis.records
    death_turn: dict[int, int] = {}
    for rec in records:
        for v in rec.deaths:
            death_turn[v] = rec.t

    dsu = _MemberDsu()
    all_vertices = list(forest.vertices_at(forest.turn))
    alive_final = [v for v in all_vertices if v not in death_turn]
    for v in alive_final:
        dsu.add(v)
    for v in alive_final:
        for u in forest.adj[v]:
            if u in dsu.parent:
                dsu.union(v, u)

    charges: dict[int, int] = {}
    classes = [classify_turn(r, beta) for r in records]
    slow_total = 0
    for t in range(len(records), 0, -1):
        rec = records[t - 1]
        # the union-find currently models the final forest on alive(t)
        if classes[t - 1] is TurnClass.CASE_SLOW:
            audit.turns_checked += 1
            slow_total += rec.suffix_len
            if not rec.suffix_len < beta * rec.disp_level_before:
                audit.growth_violations.append(t)
            if rec.deaths and not _connected_in(forest, rec.deaths):
                audit.deaths_disconnected.append(t)
            roots = {dsu.find(v) for v in rec.suffix}
            if len(roots) != 1:
                audit.suffix_split.append(t)
            else:
                suffix_root = roots.pop()
                # surviving pieces of the dispatcher's old component are
                # the alive components adjacent to the dying set
                piece_roots = {suffix_root}
                for d in rec.deaths:
                    for u in forest.adj[d]:
                        if u in dsu.parent:
                            piece_roots.add(dsu.find(u))
                largest = max(piece_roots, key=lambda r: (dsu.size[r], r))
                if suffix_root != largest:
                    for v in dsu.members[suffix_root]:
                        charges[v] = charges.get(v, 0) + 1
        # revive this turn's deaths: union-find now models alive(t-1)
        for v in rec.deaths:
            dsu.add(v)
        for v in rec.deaths:
            # unarrived blacks count as alive, so the only membership test
            # is whether the neighbor is currently revived
            for u in forest.adj[v]:
                if u in dsu.parent:
                    dsu.union(v, u)
    audit.total_suffix = slow_total
    audit.bound = 2 * beta * n + beta * n * math.log2(n) if n > 1 else 2 * beta * n
    audit.max_halving_charges = max(charges.values(), default=0)
    audit.charge_bound = math.log2(n) if n > 1 else 0
    return audit


def _connected_in(forest, vertices) -> bool:
    vs = set(vertices)
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in forest.adj[v]:
            if u in vs and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == vs


# ---------------------------------------------------------------------------
# Jump-turn component guarantee


@dataclass
class JumpComponentReport:
    beta: float
    turns_checked: int = 0
    levels_checked: int = 0
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_jump_components(analysis: ScenarioAnalysis, beta: float) -> JumpComponentReport:
    """At every jump turn, on each level from one above the dispatching
    vertex's old level up to the floor of the midpoint of old and new
    levels, its two directions must lie in two separate components of
    the half-turn level forest, each of size at least
    ``(beta - 1) / (beta + 1)`` times the level.
    """
    report = JumpComponentReport(beta=beta)
    forest = analysis.forest
    adj = forest.adj
    n = forest.white_count
    level = {v: 0 for v in forest.vertices_at(forest.turn)}
    hist = analysis.level_history
    hi = 0
    cap = level_cap(n)
    for rec in analysis.records:
        t = rec.t
        while hi < len(hist) and hist[hi][1] <= 2 * t:
            v, _, lev = hist[hi]
            level[v] = capped(lev, cap)
            hi += 1
        # level[] now holds the half-turn levels of turn t
        if classify_turn(rec, beta) is TurnClass.CASE_JUMP:
            report.turns_checked += 1
            # a dispatching vertex has two alive neighbors, so both its
            # distances (and hence its new level) are finite
            lo = int(rec.disp_level_before) + 1
            hi_l = int(rec.disp_level_before + rec.disp_level_after) // 2
            w1, w2 = rec.disp_dir, rec.disp_sec_dir
            for l in range(lo, hi_l + 1):
                report.levels_checked += 1
                if level.get(w1, 0) < l or level.get(w2, 0) < l:
                    report.violations.append((t, l, "direction below level"))
                    continue
                comp1 = _level_component(adj, level, w1, l)
                if w2 in comp1:
                    report.violations.append((t, l, "directions share a component"))
                    continue
                comp2 = _level_component(adj, level, w2, l)
                for comp, tag in ((comp1, "first"), (comp2, "second")):
                    if len(comp) * (beta + 1) < (beta - 1) * l:
                        report.violations.append((t, l, f"{tag} component too small"))
        while hi < len(hist) and hist[hi][1] <= 2 * t + 1:
            v, _, lev = hist[hi]
            level[v] = capped(lev, cap)
            hi += 1
    return report


def _level_component(adj, level, start, l) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in comp and level.get(u, 0) >= l:
                comp.add(u)
                stack.append(u)
    return comp
