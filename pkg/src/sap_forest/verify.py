"""Property checks over a whole scenario, organized as a registry.

Each check replays or inspects one scenario and returns pass, fail, or
skip (skip means an exhaustive oracle hit its size budget).  The
registry powers both the command-line ``verify`` subcommand and the test
suite.  Fast structural checks run on everything; oracle checks compare
against exhaustive enumeration and are limited to small components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .analysis import ScenarioAnalysis
from .forest import OnlineForest
from .ledger import run_token_ledger
from .levels import (audit_slow_turns, check_jump_components, check_level_steps,
                     check_min_degree_two_run, classify_turn, TurnClass)
from .matching import run_sap_online
from .minimax import (INF, _identity, component_table, dist_dir, path_at,
                      path_from_table, sec_dist_dir, table_at)
from .oracle import (BudgetExceededError, DEFAULT_BUDGET, OracleBudget,
                     adversary_game_value, brute_hall, count_max_matchings_dp,
                     enumerate_max_matchings)
from .vitality import (check_hall_violation, dying_region, hall_witness,
                       life_portals)


@dataclass
class CheckResult:
    name: str
    status: str          # "pass" | "fail" | "skip"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class VerifyContext:
    analysis: ScenarioAnalysis
    beta: float = 2.0
    budget: OracleBudget = field(default_factory=lambda: DEFAULT_BUDGET)

    @property
    def forest(self) -> OnlineForest:
        return self.analysis.forest


Check = Callable[[VerifyContext], CheckResult]
REGISTRY: dict[str, Check] = {}


def register(name: str):
    def deco(fn: Check) -> Check:
        REGISTRY[name] = fn
        return fn
    return deco


def _result(name, failures, detail_ok="", limit=5) -> CheckResult:
    if failures:
        shown = "; ".join(str(f) for f in failures[:limit])
        more = f" (+{len(failures) - limit} more)" if len(failures) > limit else ""
        return CheckResult(name, "fail", shown + more)
    return CheckResult(name, "pass", detail_ok)


# ---------------------------------------------------------------------------
# Distance structure


@register("distance-monotone")
def check_monotone(ctx: VerifyContext) -> CheckResult:
    """First and second distances never decrease over the turns."""
    forest = ctx.forest
    replay = OnlineForest(forest.white_count)
    last: dict[int, tuple[float, float]] = {}
    bad = []
    for nbrs in forest.arrivals:
        t = replay.add_black(nbrs)
        table = table_at(replay, replay.black_id(t), t, ctx.analysis.key)
        for v in table.vertices:
            if v in last:
                d0, s0 = last[v]
                if table.dist[v] < d0 or table.sec_dist[v] < s0:
                    bad.append((t, v))
            last[v] = (table.dist[v], table.sec_dist[v])
    return _result("distance-monotone", bad)


@register("rooted-vs-rerooted")
def check_formulations(ctx: VerifyContext) -> CheckResult:
    """The direct game evaluation and the rerooting table agree."""
    forest = ctx.forest
    t = forest.turn
    bad = []
    seen: set[int] = set()
    for v in forest.vertices_at(t):
        if v in seen:
            continue
        table = table_at(forest, v, t, ctx.analysis.key)
        seen.update(table.vertices)
        for u in table.vertices:
            d, dd = dist_dir(forest, u, t, ctx.analysis.key)
            s, sd = sec_dist_dir(forest, u, t, ctx.analysis.key)
            if (d, dd, s, sd) != (table.dist[u], table.dir[u],
                                  table.sec_dist[u], table.sec_dir[u]):
                bad.append((u, (d, dd, s, sd)))
    return _result("rooted-vs-rerooted", bad)


@register("edge-values")
def check_edge_values(ctx: VerifyContext) -> CheckResult:
    """Per-edge value identities at the final turn.

    Entering a vertex from its chosen direction yields its distance
    minus one; from elsewhere, its full distance; and every entry value
    is sandwiched between first and second distance (the order flips
    between black and white).  Finite mini-max paths have matching edge
    counts.
    """
    forest = ctx.forest
    t = forest.turn
    bad = []
    seen: set[int] = set()
    for v0 in forest.vertices_at(t):
        if v0 in seen:
            continue
        table = table_at(forest, v0, t, ctx.analysis.key)
        seen.update(table.vertices)
        for v in table.vertices:
            if table.dir[v] is not None:
                if table.dist[v] != table.det[(v, table.dir[v])][0] + 1:
                    bad.append(("dist-via-dir", v))
            if table.sec_dir[v] is not None:
                if table.sec_dist[v] != table.det[(v, table.sec_dir[v])][0] + 1:
                    bad.append(("sec-via-secdir", v))
            if table.dist[v] != INF:
                p = path_from_table(table, v)
                if len(p) - 1 != table.dist[v]:
                    bad.append(("path-length", v, p))
        for (u, v), (val, _) in table.det.items():
            expect = table.sec_dist[v] if u == table.dir[v] else table.dist[v]
            if val != expect:
                bad.append(("entry-value", u, v))
            lo, hi = ((table.dist[v], table.sec_dist[v]) if forest.is_black(v)
                      else (table.sec_dist[v], table.dist[v]))
            if not lo <= val <= hi:
                bad.append(("sandwich", u, v))
    return _result("edge-values", bad)


# ---------------------------------------------------------------------------
# Oracle comparisons


@register("oracle-distance")
def check_oracle_distance(ctx: VerifyContext) -> CheckResult:
    """Worst case over maximum matchings equals the game distance."""
    forest = ctx.forest
    replay = OnlineForest(forest.white_count)
    bad, skipped = [], 0
    for nbrs in forest.arrivals:
        t = replay.add_black(nbrs)
        b = replay.black_id(t)
        table = table_at(replay, b, t, ctx.analysis.key)
        try:
            worst = adversary_game_value(replay, b, t, ctx.budget)
        except BudgetExceededError:
            skipped += 1
            continue
        if worst != table.dist[b]:
            bad.append((t, worst, table.dist[b]))
    if bad:
        return _result("oracle-distance", bad)
    if skipped == len(forest.arrivals):
        return CheckResult("oracle-distance", "skip", "all components over budget")
    return CheckResult("oracle-distance", "pass", f"{skipped} turns skipped")


@register("oracle-matching-count")
def check_oracle_matchings(ctx: VerifyContext) -> CheckResult:
    """Tree-DP matching counts agree with exhaustive enumeration."""
    forest = ctx.forest
    t = forest.turn
    size, count = count_max_matchings_dp(forest, t)
    if sum(1 for _ in forest.vertices_at(t)) > ctx.budget.max_component_size:
        return CheckResult("oracle-matching-count", "skip", "forest over budget")
    matchings = enumerate_max_matchings(forest, t, budget=ctx.budget)
    best = len(matchings[0]) if matchings else 0
    if (best, len(matchings)) != (size, count):
        return CheckResult("oracle-matching-count", "fail",
                           f"dp {(size, count)} vs brute {(best, len(matchings))}")
    return CheckResult("oracle-matching-count", "pass")


@register("sap-bounded-by-distance")
def check_sap_bound(ctx: VerifyContext) -> CheckResult:
    """The applied augmenting path never exceeds the worst-case bound,
    and a path exists exactly when the bound is finite."""
    records, _ = run_sap_online(ctx.forest,
                                dists=[r.dist for r in ctx.analysis.records])
    bad = []
    for rec in records:
        if rec.dist == INF:
            if rec.pi_len is not None:
                bad.append((rec.t, "path despite infinite bound"))
        elif rec.pi_len is None:
            bad.append((rec.t, "no path despite finite bound"))
        elif rec.pi_len > rec.dist:
            bad.append((rec.t, rec.pi_len, rec.dist))
    return _result("sap-bounded-by-distance", bad)


# ---------------------------------------------------------------------------
# Death structure


@register("hall-witness")
def check_hall(ctx: VerifyContext) -> CheckResult:
    """An infinite newcomer distance comes with a constructed minimal
    violating set, and a finite one with none (cross-checked against
    subset enumeration when affordable)."""
    forest = ctx.forest
    replay = OnlineForest(forest.white_count)
    bad, skipped = [], 0
    for nbrs in forest.arrivals:
        t = replay.add_black(nbrs)
        b = replay.black_id(t)
        dist = ctx.analysis.records[t - 1].dist
        X = hall_witness(replay, b, t, ctx.analysis.key)
        if (X is not None) != (dist == INF):
            bad.append((t, "witness presence mismatch"))
            continue
        if X is None:
            continue
        if not check_hall_violation(replay, X, t):
            bad.append((t, "witness does not violate"))
            continue
        try:
            brute = brute_hall(replay, b, t, ctx.budget)
        except BudgetExceededError:
            skipped += 1
            continue
        if brute is None:
            bad.append((t, "witness but brute force finds none"))
    if bad:
        return _result("hall-witness", bad)
    return CheckResult("hall-witness", "pass", f"{skipped} brute checks skipped")


@register("death-locality")
def check_death_locality(ctx: VerifyContext) -> CheckResult:
    """Per-turn death bookkeeping against the local characterization:
    black vertices die exactly when at most one neighbor stays alive,
    white ones exactly when a neighbor is dead; a black leaf arrives
    dead."""
    forest = ctx.forest
    alive: set[int] = set(range(1, forest.white_count + 1))
    bad = []
    for rec in ctx.analysis.records:
        alive.add(rec.b)
        alive -= set(rec.deaths)
        t = rec.t
        if len(forest.adj[rec.b]) == 1 and rec.b in alive:
            bad.append((t, "black leaf alive at arrival"))
        for v in forest.vertices_at(t):
            ns = forest.neighbors_at(v, t)
            if forest.is_black(v):
                should_die = sum(1 for u in ns if u in alive) <= 1
            else:
                should_die = any(u not in alive for u in ns)
            if (v not in alive) != should_die:
                bad.append((t, v))
    return _result("death-locality", bad)


@register("dying-region")
def check_dying_region(ctx: VerifyContext) -> CheckResult:
    """Actual deaths equal the structural prediction: empty with two or
    more previously-alive neighbors, else the portal-bounded region."""
    forest = ctx.forest
    alive: set[int] = set(range(1, forest.white_count + 1))
    bad = []
    for rec in ctx.analysis.records:
        region = dying_region(forest, rec.t, alive, ctx.analysis.key)
        if region is None:
            if not rec.hall_breaking:
                bad.append((rec.t, "no alive neighbor but finite distance"))
        elif region != set(rec.deaths):
            bad.append((rec.t, sorted(region), rec.deaths))
        alive.add(rec.b)
        alive -= set(rec.deaths)
    return _result("dying-region", bad)


@register("dispatch-portal")
def check_dispatch_portal(ctx: VerifyContext) -> CheckResult:
    """When the newcomer has exactly one previously-alive neighbor, the
    dispatching vertex is the first life portal on its path (or there is
    neither and the whole path dies); path prefix dies, suffix survives,
    and the suffix length equals the dispatching vertex's distance."""
    forest = ctx.forest
    alive: set[int] = set(range(1, forest.white_count + 1))
    bad = []
    for rec in ctx.analysis.records:
        t = rec.t
        if rec.path is not None:
            dead_now = set(rec.deaths)
            if rec.dispatch is not None:
                idx = rec.path.index(rec.dispatch)
                prefix, suffix = rec.path[:idx], rec.path[idx:]
            else:
                prefix, suffix = rec.path, []
            if any(v not in dead_now for v in prefix):
                bad.append((t, "surviving vertex in prefix"))
            if any(v in dead_now for v in suffix):
                bad.append((t, "dead vertex in suffix"))
            if rec.dispatch is not None and rec.suffix_len != rec.disp_level_after:
                bad.append((t, "suffix length vs dispatch distance"))
            if rec.alive_prev_neighbors == 1:
                portals = life_portals(forest, t, alive)
                on_path = [v for v in rec.path if v in portals]
                first = on_path[0] if on_path else None
                if first != rec.dispatch:
                    bad.append((t, "dispatch is not first portal", first,
                                rec.dispatch))
        alive.add(rec.b)
        alive -= set(rec.deaths)
    return _result("dispatch-portal", bad)


@register("prefix-budget")
def check_prefix_budget(ctx: VerifyContext) -> CheckResult:
    """Dying prefixes cost at most two vertices' worth each: their total
    length is bounded by the final vertex count."""
    n = ctx.forest.white_count
    total = sum(r.prefix_len for r in ctx.analysis.records
                if r.prefix_len is not None)
    if total > 2 * n:
        return CheckResult("prefix-budget", "fail", f"{total} > {2 * n}")
    return CheckResult("prefix-budget", "pass", f"{total} <= {2 * n}")


@register("alive-paths")
def check_alive_paths(ctx: VerifyContext) -> CheckResult:
    """Mini-max paths of alive vertices only visit alive vertices."""
    forest = ctx.forest
    t = forest.turn
    bad = []
    for v in forest.vertices_at(t):
        if not ctx.analysis.alive.get(v, False):
            continue
        path = path_at(forest, v, t, ctx.analysis.key)
        if any(not ctx.analysis.alive.get(u, False) for u in path):
            bad.append((v, path))
    return _result("alive-paths", bad)


# ---------------------------------------------------------------------------
# Levels and charging


@register("level-steps")
def check_levels(ctx: VerifyContext) -> CheckResult:
    """One-step level drops along directions of alive vertices."""
    return _result("level-steps", check_level_steps(ctx.analysis))


@register("degree-two-special-case")
def check_degree_two(ctx: VerifyContext) -> CheckResult:
    """All-degree-two-or-more runs: no deaths, total within n*log2(n)."""
    if any(len(nbrs) < 2 for nbrs in ctx.forest.arrivals):
        return CheckResult("degree-two-special-case", "skip",
                           "scenario has degree-one arrivals")
    r = check_min_degree_two_run(ctx.analysis)
    if not r["ok"]:
        return CheckResult("degree-two-special-case", "fail", str(r))
    return CheckResult("degree-two-special-case", "pass",
                       f"total {r['total_path_length']} <= {r['bound']:.1f}")


@register("slow-turn-charging")
def check_slow(ctx: VerifyContext) -> CheckResult:
    """Slow turns: bounded growth, connected deaths, suffix in a single
    surviving component, halving charges within the logarithmic cap."""
    audit = audit_slow_turns(ctx.analysis, ctx.beta)
    detail = (f"{audit.turns_checked} slow turns, suffix total "
              f"{audit.total_suffix} <= {audit.bound:.1f}, "
              f"max charges {audit.max_halving_charges}")
    if not audit.ok:
        return CheckResult(
            "slow-turn-charging", "fail",
            f"growth {audit.growth_violations} disconnected "
            f"{audit.deaths_disconnected} split {audit.suffix_split} " + detail)
    return CheckResult("slow-turn-charging", "pass", detail)


@register("jump-turn-components")
def check_jump(ctx: VerifyContext) -> CheckResult:
    """Jump turns: both directions sit in separate, large-enough
    components of the half-turn level forest on the midpoint window."""
    rep = check_jump_components(ctx.analysis, ctx.beta)
    detail = f"{rep.turns_checked} jump turns, {rep.levels_checked} levels"
    if not rep.ok:
        return CheckResult("jump-turn-components", "fail",
                           f"{rep.violations[:5]} " + detail)
    return CheckResult("jump-turn-components", "pass", detail)


@register("token-conservation")
def check_tokens(ctx: VerifyContext) -> CheckResult:
    """Token scheme bookkeeping: minted equals held plus utilized, the
    funding invariant holds, nobody pays twice on a level, per-vertex
    payments respect the harmonic bound, and every jump turn utilizes at
    least one token per level of its midpoint window."""
    rep = run_token_ledger(ctx.analysis, ctx.beta)
    bad = []
    if not rep.conservation_ok:
        bad.append(f"minted {rep.minted} != held {rep.held} + utilized {rep.utilized}")
    if rep.invariant_violations:
        bad.append(f"{rep.invariant_violations} funding invariant violations")
    if rep.pay_twice_violations:
        bad.append(f"{rep.pay_twice_violations} double payments")
    if rep.max_vertex_paid > rep.vertex_paid_bound + 1e-9:
        bad.append(f"vertex paid {rep.max_vertex_paid:.3f} > "
                   f"{rep.vertex_paid_bound:.3f}")
    if rep.window_failures:
        bad.append(f"window failures at turns {rep.window_failures[:5]}")
    return _result("token-conservation", bad,
                   f"minted {rep.minted}, utilized {rep.utilized}")


@register("token-turn-coverage")
def check_token_coverage(ctx: VerifyContext) -> CheckResult:
    """Per-jump-turn utilization covers the suffix at the nominal rate.

    This is the strictest reading of the scheme; it fails whenever a
    jump turn's midpoint window is empty (always the case for a level-1
    jump), so failures here are expected on most scenarios.
    """
    rep = run_token_ledger(ctx.analysis, ctx.beta)
    return _result("token-turn-coverage",
                   [("turn", t) for t in rep.per_turn_utilization_failures],
                   f"{len(rep.jump_turns)} jump turns covered")


@register("order-insensitivity")
def check_order(ctx: VerifyContext) -> CheckResult:
    """Distances, deaths and path lengths do not depend on the
    tie-breaking order (directions may)."""
    alt = ScenarioAnalysis(ctx.forest.white_count, ctx.forest.arrivals,
                           key=lambda v: -v, with_sap=False)
    bad = []
    for r1, r2 in zip(ctx.analysis.records, alt.records):
        if (r1.dist, r1.sec_dist, sorted(r1.deaths)) != \
                (r2.dist, r2.sec_dist, sorted(r2.deaths)):
            bad.append((r1.t, "distances or deaths differ"))
        if (r1.path is None) != (r2.path is None) or (
                r1.path is not None and len(r1.path) != len(r2.path)):
            bad.append((r1.t, "path lengths differ"))
    return _result("order-insensitivity", bad)


# ---------------------------------------------------------------------------
# Entry point


def verify_scenario(white_count: int, arrivals, beta: float = 2.0,
                    budget: OracleBudget | None = None,
                    names=None, key=_identity) -> list[CheckResult]:
    analysis = ScenarioAnalysis(white_count, arrivals, key=key, with_sap=True)
    ctx = VerifyContext(analysis=analysis, beta=beta,
                        budget=budget or DEFAULT_BUDGET)
    results = []
    for name, fn in REGISTRY.items():
        if names is not None and name not in names:
            continue
        results.append(fn(ctx))
    return results


def summarize(results: list[CheckResult]) -> dict:
    return {
        "total": len(results),
        "passed": sum(r.status == "pass" for r in results),
        "failed": sum(r.status == "fail" for r in results),
        "skipped": sum(r.status == "skip" for r in results),
    }
