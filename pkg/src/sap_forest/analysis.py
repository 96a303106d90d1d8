"""Turn-by-turn scenario analysis.

Replays an arrival sequence once and records, per turn: the worst-case
distances of the new vertex, its mini-max path, the vertices that die,
the dispatching vertex with the path split, and every vertex level
change.  Only the merged component is recomputed in a turn, so a full
run costs the sum of merged-component sizes.

The level history uses integer time codes: ``2 * t`` for changes in the
first phase of turn ``t`` (everything except the dispatching vertex) and
``2 * t + 1`` for the dispatching vertex itself.  This realizes the
half-turn refinement the charging audit needs.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field

import numpy as np

from .forest import OnlineForest
from .matching import Matching, augment, shortest_augmenting_path
from .minimax import INF, MiniMaxTable, _identity, component_table, path_from_table


class LevelHistory:
    """Chronological ``(vertex, time_code, new_level)`` triples stored
    column-wise in compact typed arrays.

    Chain-like runs generate Theta(n^2) level changes (tens of millions
    of entries at n = 8192), so a list of tuples does not fit in memory;
    this keeps each entry at 24 bytes and hands the ledger flat arrays.
    Entries read back as plain tuples with integer levels (infinite
    levels stay ``float('inf')``).
    """

    __slots__ = ("_vertex", "_code", "_level")

    def __init__(self):
        self._vertex = array("q")
        self._code = array("q")
        self._level = array("d")

    def append(self, vertex: int, code: int, level: float) -> None:
        self._vertex.append(vertex)
        self._code.append(code)
        self._level.append(level)

    def __len__(self) -> int:
        return len(self._vertex)

    def _entry(self, i: int) -> tuple[int, int, float]:
        lev = self._level[i]
        return (self._vertex[i], self._code[i],
                lev if lev == INF else int(lev))

    def __getitem__(self, i: int) -> tuple[int, int, float]:
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self._entry(i)

    def __iter__(self):
        for i in range(len(self)):
            yield self._entry(i)

    def columns(self):
        """The three columns as numpy arrays (vertex, code int64;
        level float64), sharing this history's memory."""
        if not len(self):
            return (np.empty(0, np.int64), np.empty(0, np.int64),
                    np.empty(0, np.float64))
        return (np.frombuffer(self._vertex, np.int64),
                np.frombuffer(self._code, np.int64),
                np.frombuffer(self._level, np.float64))


@dataclass
class TurnRecord:
    t: int
    b: int
    dist: float
    sec_dist: float
    path: list[int] | None
    deaths: list[int]
    alive_prev_neighbors: int        # |N_t(b) ∩ alive(t-1)|
    hall_breaking: bool
    dispatch: int | None
    prefix_len: int | None
    suffix_len: int | None
    suffix: list[int] | None
    disp_level_before: float | None
    disp_level_after: float | None
    disp_dir: int | None             # first/second directions of the
    disp_sec_dir: int | None         # dispatching vertex, for the audit
    pi_len: int | None = None        # applied augmenting path length
    matching_size: int = 0


class ScenarioAnalysis:
    """Replay and per-turn bookkeeping for one scenario."""

    def __init__(self, white_count: int, arrivals, key=_identity,
                 with_sap: bool = True, check_hooks=None):
        self.key = key
        self.forest = OnlineForest(white_count)
        n = white_count
        self.dist: dict[int, float] = {w: 0 for w in range(1, n + 1)}
        self.sec_dist: dict[int, float] = {w: 0 for w in range(1, n + 1)}
        self.dir: dict[int, int | None] = {w: None for w in range(1, n + 1)}
        self.sec_dir: dict[int, int | None] = {w: None for w in range(1, n + 1)}
        self.alive: dict[int, bool] = {w: True for w in range(1, n + 1)}
        self.level: dict[int, float] = {w: 0 for w in range(1, n + 1)}
        # (vertex, time_code, new_level) in chronological order
        self.level_history = LevelHistory()
        self.records: list[TurnRecord] = []
        self.matching = Matching() if with_sap else None
        self._check_hooks = check_hooks or []
        for nbrs in arrivals:
            self._step(nbrs)

    # -- per-turn machinery ---------------------------------------------

    def is_dead_now(self, v: int) -> bool:
        if self.forest.is_white(v):
            return self.dist[v] == INF
        return self.sec_dist[v] == INF

    def _step(self, nbrs) -> None:
        forest = self.forest
        t = forest.add_black(nbrs)
        b = forest.black_id(t)
        view = forest.rooted_view(b, t)
        comp = view.order
        prev = {v: (self.dist.get(v), self.sec_dist.get(v), self.level.get(v),
                    self.alive.get(v, True))
                for v in comp}
        alive_prev_nbrs = sum(1 for w in forest.adj[b] if self.alive[w])

        table = component_table(forest, view, t, self.key)
        for v in comp:
            self.dist[v] = table.dist[v]
            self.sec_dist[v] = table.sec_dist[v]
            self.dir[v] = table.dir[v]
            self.sec_dir[v] = table.sec_dir[v]

        deaths = []
        for v in comp:
            was_alive = prev[v][3]
            dead = self.is_dead_now(v)
            if was_alive and dead:
                deaths.append(v)
                self.alive[v] = False
            elif v == b:
                self.alive[v] = not dead
        deaths.sort()

        dist_b = table.dist[b]
        hall = dist_b == INF
        path = path_from_table(table, b) if not hall else None

        dispatch = None
        if path is not None:
            for v in path:
                if forest.is_black(v):
                    alive_nbrs = sum(1 for u in forest.adj[v] if self.alive[u])
                    if alive_nbrs >= 2:
                        dispatch = v
                        break

        prefix_len = suffix_len = None
        suffix = None
        disp_before = disp_after = None
        disp_dir = disp_sec = None
        if path is not None:
            if dispatch is None:
                suffix = []
                suffix_len = 0
                prefix_len = int(dist_b)
            else:
                idx = path.index(dispatch)
                suffix = path[idx:]
                suffix_len = len(suffix) - 1
                prefix_len = int(dist_b) - suffix_len
                disp_before = prev[dispatch][2] if dispatch in prev else 0
                if disp_before is None:
                    disp_before = 0
                disp_after = table.dist[dispatch]
                disp_dir = table.dir[dispatch]
                disp_sec = table.sec_dir[dispatch]

        # levels: dist for blacks, second distance for whites; the
        # dispatching vertex's change is logged last so history stays
        # sorted by time code
        tc_main, tc_disp = 2 * t, 2 * t + 1
        disp_entry = None
        for v in comp:
            new_level = table.dist[v] if forest.is_black(v) else table.sec_dist[v]
            old_level = prev[v][2]
            if old_level is None:
                old_level = 0  # unarrived blacks sit at level 0
            if new_level != old_level:
                if v == dispatch:
                    disp_entry = (v, tc_disp, new_level)
                else:
                    self.level_history.append(v, tc_main, new_level)
                self.level[v] = new_level
        if disp_entry is not None:
            self.level_history.append(*disp_entry)

        rec = TurnRecord(
            t=t, b=b, dist=dist_b, sec_dist=table.sec_dist[b], path=path,
            deaths=deaths, alive_prev_neighbors=alive_prev_nbrs,
            hall_breaking=hall, dispatch=dispatch, prefix_len=prefix_len,
            suffix_len=suffix_len, suffix=suffix,
            disp_level_before=disp_before, disp_level_after=disp_after,
            disp_dir=disp_dir, disp_sec_dir=disp_sec,
        )

        if self.matching is not None:
            sap = shortest_augmenting_path(forest, self.matching, b, t,
                                           validate=False)
            if sap is not None:
                self.matching = augment(self.matching, sap)
                rec.pi_len = len(sap) - 1
            rec.matching_size = len(self.matching)

        for hook in self._check_hooks:
            hook(self, rec, table, prev)
        self.records.append(rec)

    # -- convenience -----------------------------------------------------

    @property
    def white_count(self) -> int:
        return self.forest.white_count

    def levels_at(self, time_code: int) -> dict[int, float]:
        """Level of every final-forest vertex at the given time code
        (``2 * t`` is 'after the first phase of turn t')."""
        n = self.forest.white_count
        levels = {v: 0.0 for v in self.forest.vertices_at(self.forest.turn)}
        for w in range(1, n + 1):
            levels[w] = 0
        for v, code, lev in self.level_history:
            if code > time_code:
                break
            levels[v] = lev
        return levels
