"""Token accounting for jump turns, simulated level by level.

For every level ``l`` the final forest restricted to vertices of level at
least ``l`` grows over (half-)turns.  Components of size at least
``rho * l`` each hold one token worth ``delta``; tokens are created by
per-vertex payments of ``delta / (rho * l)`` when an unfunded component
first qualifies, transferred along merges, and utilized when a jump
turn's dispatching vertex merges two funded components (one token is
spent, the other carries over).

The simulation reports, per jump turn, how many tokens were utilized
across all levels, and globally: total minted, held and utilized tokens
(conservation), per-vertex payment totals against the harmonic bound,
and any violation of the funding invariant or of the pay-once-per-level
rule.  Constants: ``rho = (beta - 1) / (beta + 1)`` and
``delta = 2 / (1 - 1 / beta)``.

Two engines compute identical results: a dictionary-based reference and
a flat-array kernel (compiled when numba is importable) for large runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .analysis import ScenarioAnalysis
from .levels import TurnClass, classify_turn, level_cap
from .minimax import INF

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is normally available
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@dataclass
class LedgerReport:
    beta: float
    n: int
    levels_simulated: int
    rho: float
    delta: float
    utilized_per_turn: dict[int, int]        # jump turn -> tokens spent
    jump_turns: list[int]
    suffix_per_jump_turn: dict[int, int]
    minted: int
    utilized: int
    held: int
    total_paid: float
    max_vertex_paid: float
    vertex_paid_bound: float
    pay_twice_violations: int
    invariant_violations: int
    window_failures: list[int] = field(default_factory=list)
    per_turn_utilization_failures: list[int] = field(default_factory=list)

    @property
    def conservation_ok(self) -> bool:
        return self.minted == self.utilized + self.held

    @property
    def suffix_total(self) -> int:
        return sum(self.suffix_per_jump_turn.values())

    @property
    def suffix_bound(self) -> float:
        n, b = self.n, self.beta
        if n < 2:
            return float(n)
        return b * (b + 1) / (b - 1) ** 2 * n * (2 * math.log(n) + 3.4) + n


def _prepare(analysis: ScenarioAnalysis, beta: float):
    """Step columns, jump flags and constants shared by both engines.

    The step columns come back as four flat int64 arrays (vertex, code,
    capped level, dispatcher-insertion flag): the history can hold tens
    of millions of entries, so no per-entry Python objects are built.
    """
    n = analysis.forest.white_count
    cap = level_cap(n)
    frac = Fraction(beta).limit_denominator(10 ** 9)
    bn, bd = frac.numerator, frac.denominator
    n_turns = len(analysis.records)
    jump_turn = np.zeros(n_turns + 1, np.bool_)
    windows = {}
    suffixes = {}
    for rec in analysis.records:
        cls = classify_turn(rec, beta)
        if cls is TurnClass.CASE_JUMP:
            jump_turn[rec.t] = True
            lo = int(rec.disp_level_before) + 1
            hi = int(rec.disp_level_before + rec.disp_level_after) // 2
            windows[rec.t] = max(0, hi - lo + 1)
            suffixes[rec.t] = rec.suffix_len
    step_v, step_code, raw_level = analysis.level_history.columns()
    step_v = step_v.copy()
    step_code = step_code.copy()
    step_new = np.minimum(raw_level, cap).astype(np.int64)
    step_flag = ((step_code % 2 == 1)
                 & jump_turn[step_code // 2]).astype(np.int64)
    max_lev = int(step_new.max()) if len(step_new) else 0
    levels = min(2 * n, max_lev)
    steps = (step_v, step_code, step_new, step_flag)
    return n, cap, bn, bd, levels, steps, windows, suffixes


# ---------------------------------------------------------------------------
# Reference engine


class _TokenDsu:
    def __init__(self):
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.balance: dict[int, int] = {}
        self.members: dict[int, list[int]] = {}

    def add(self, v: int) -> None:
        self.parent[v] = v
        self.size[v] = 1
        self.balance[v] = 0
        self.members[v] = [v]

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.balance[ra] += self.balance.pop(rb)
        self.members[ra].extend(self.members.pop(rb))
        return ra


def _run_reference(analysis: ScenarioAnalysis, beta: float):
    n, cap, bn, bd, levels, steps, windows, suffixes = _prepare(analysis, beta)
    steps = list(zip(*(column.tolist() for column in steps)))
    adj = analysis.forest.adj
    delta = 2.0 / (1.0 - 1.0 / beta)
    rho = (beta - 1.0) / (beta + 1.0)

    utilized_turn: dict[int, int] = {}
    vertex_paid: dict[int, float] = {}
    minted = utilized = held = 0
    pay_twice = invariant_bad = 0

    def qualifies(size: int, l: int) -> bool:
        return size * (bn + bd) >= (bn - bd) * l

    for l in range(1, levels + 1):
        entries: dict[int, tuple[int, int]] = {}
        for v, code, new, flag in steps:
            if new >= l and v not in entries:
                entries[v] = (code, flag)
        by_code: dict[int, list[tuple[int, int]]] = {}
        for v, (code, flag) in entries.items():
            by_code.setdefault(code, []).append((v, flag))
        dsu = _TokenDsu()
        paid: set[int] = set()

        def mint(root: int) -> None:
            nonlocal minted, pay_twice
            dsu.balance[root] = 1
            minted += 1
            for m in dsu.members[root]:
                if m in paid:
                    pay_twice += 1
                else:
                    paid.add(m)
                vertex_paid[m] = vertex_paid.get(m, 0.0) + delta / (rho * l)

        for code in sorted(by_code):
            group = by_code[code]
            if len(group) == 1 and group[0][1]:
                v = group[0][0]
                roots = {dsu.find(u) for u in adj[v] if u in dsu.parent}
                funded = sum(1 for r in roots if dsu.balance[r] >= 1)
                dsu.add(v)
                root = v
                for u in adj[v]:
                    if u in dsu.parent:
                        root = dsu.union(root, u)
                if funded >= 2:
                    dsu.balance[root] -= 1
                    utilized += 1
                    t = code // 2
                    utilized_turn[t] = utilized_turn.get(t, 0) + 1
                if qualifies(dsu.size[root], l) and dsu.balance[root] == 0:
                    mint(root)
            else:
                for v, _ in group:
                    dsu.add(v)
                for v, _ in group:
                    for u in adj[v]:
                        if u in dsu.parent:
                            dsu.union(v, u)
                for r in {dsu.find(v) for v, _ in group}:
                    if qualifies(dsu.size[r], l) and dsu.balance[r] == 0:
                        mint(r)

        for v in entries:
            if dsu.find(v) == v:
                held += dsu.balance[v]
                if qualifies(dsu.size[v], l) and dsu.balance[v] < 1:
                    invariant_bad += 1

    return (utilized_turn, vertex_paid, minted, utilized, held,
            pay_twice, invariant_bad, levels, windows, suffixes)


# ---------------------------------------------------------------------------
# Array engine


@njit(cache=True)
def _kernel(nv, n_turns, levels, bn, bd, delta, rho,
            step_ptr, step_code, step_new, step_flag,
            adj_ptr, adj_idx):
    parent = np.zeros(nv + 1, np.int64)
    size = np.zeros(nv + 1, np.int64)
    balance = np.zeros(nv + 1, np.int64)
    head = np.zeros(nv + 1, np.int64)
    tail = np.zeros(nv + 1, np.int64)
    nxt = np.zeros(nv + 1, np.int64)
    entered = np.zeros(nv + 1, np.int64)
    paid_at = np.zeros(nv + 1, np.int64)

    utilized_turn = np.zeros(n_turns + 1, np.int64)
    vertex_paid = np.zeros(nv + 1, np.float64)
    minted = 0
    utilized = 0
    held = 0
    pay_twice = 0
    invariant_bad = 0

    # active vertices and a cursor into each vertex's step list
    act = np.empty(nv, np.int64)
    cur = np.empty(nv + 1, np.int64)
    n_act = 0
    for v in range(1, nv + 1):
        if step_ptr[v] < step_ptr[v + 1]:
            cur[v] = step_ptr[v]
            act[n_act] = v
            n_act += 1

    lhs = bn + bd
    rhs = bn - bd

    for l in range(1, levels + 1):
        # drop vertices whose final level is below l, advance cursors
        m = 0
        for i in range(n_act):
            v = act[i]
            c = cur[v]
            while c < step_ptr[v + 1] and step_new[c] < l:
                c += 1
            cur[v] = c
            if c < step_ptr[v + 1]:
                act[m] = v
                m += 1
        n_act = m
        if n_act == 0:
            break

        codes = np.empty(n_act, np.int64)
        for i in range(n_act):
            codes[i] = step_code[cur[act[i]]]
        order = np.argsort(codes)

        i = 0
        while i < n_act:
            code = codes[order[i]]
            j = i
            while j < n_act and codes[order[j]] == code:
                j += 1
            first = act[order[i]]
            if j - i == 1 and step_flag[cur[first]] == 1:
                # jump-turn dispatcher insertion
                v = first
                funded = 0
                seen_roots = np.empty(adj_ptr[v + 1] - adj_ptr[v], np.int64)
                n_seen = 0
                for k in range(adj_ptr[v], adj_ptr[v + 1]):
                    u = adj_idx[k]
                    if entered[u] == l:
                        r = u
                        while parent[r] != r:
                            r = parent[r]
                        dup = False
                        for s in range(n_seen):
                            if seen_roots[s] == r:
                                dup = True
                                break
                        if not dup:
                            seen_roots[n_seen] = r
                            n_seen += 1
                            if balance[r] >= 1:
                                funded += 1
                parent[v] = v
                size[v] = 1
                balance[v] = 0
                head[v] = v
                tail[v] = v
                nxt[v] = 0
                entered[v] = l
                root = v
                for k in range(adj_ptr[v], adj_ptr[v + 1]):
                    u = adj_idx[k]
                    if entered[u] == l:
                        ru = u
                        while parent[ru] != ru:
                            ru = parent[ru]
                        if ru != root:
                            if size[root] < size[ru]:
                                tmp = root
                                root = ru
                                ru = tmp
                            parent[ru] = root
                            size[root] += size[ru]
                            balance[root] += balance[ru]
                            nxt[tail[root]] = head[ru]
                            tail[root] = tail[ru]
                if funded >= 2:
                    balance[root] -= 1
                    utilized += 1
                    utilized_turn[code // 2] += 1
                if size[root] * lhs >= rhs * l and balance[root] == 0:
                    balance[root] = 1
                    minted += 1
                    m2 = head[root]
                    amount = delta / (rho * l)
                    while True:
                        if paid_at[m2] == l:
                            pay_twice += 1
                        else:
                            paid_at[m2] = l
                        vertex_paid[m2] += amount
                        if m2 == tail[root]:
                            break
                        m2 = nxt[m2]
            else:
                # simultaneous arrivals: insert all, then merge
                for k2 in range(i, j):
                    v = act[order[k2]]
                    parent[v] = v
                    size[v] = 1
                    balance[v] = 0
                    head[v] = v
                    tail[v] = v
                    nxt[v] = 0
                    entered[v] = l
                for k2 in range(i, j):
                    v = act[order[k2]]
                    rv = v
                    while parent[rv] != rv:
                        rv = parent[rv]
                    for k in range(adj_ptr[v], adj_ptr[v + 1]):
                        u = adj_idx[k]
                        if entered[u] == l:
                            ru = u
                            while parent[ru] != ru:
                                ru = parent[ru]
                            if ru != rv:
                                if size[rv] < size[ru]:
                                    tmp = rv
                                    rv = ru
                                    ru = tmp
                                parent[ru] = rv
                                size[rv] += size[ru]
                                balance[rv] += balance[ru]
                                nxt[tail[rv]] = head[ru]
                                tail[rv] = tail[ru]
                for k2 in range(i, j):
                    v = act[order[k2]]
                    rv = v
                    while parent[rv] != rv:
                        rv = parent[rv]
                    if size[rv] * lhs >= rhs * l and balance[rv] == 0:
                        balance[rv] = 1
                        minted += 1
                        m2 = head[rv]
                        amount = delta / (rho * l)
                        while True:
                            if paid_at[m2] == l:
                                pay_twice += 1
                            else:
                                paid_at[m2] = l
                            vertex_paid[m2] += amount
                            if m2 == tail[rv]:
                                break
                            m2 = nxt[m2]
            i = j

        for i in range(n_act):
            v = act[i]
            if parent[v] == v:
                held += balance[v]
                if size[v] * lhs >= rhs * l and balance[v] < 1:
                    invariant_bad += 1

    return (utilized_turn, vertex_paid, minted, utilized, held,
            pay_twice, invariant_bad)


def _run_kernel(analysis: ScenarioAnalysis, beta: float):
    n, cap, bn, bd, levels, steps, windows, suffixes = _prepare(analysis, beta)
    nv = 2 * n
    delta = 2.0 / (1.0 - 1.0 / beta)
    rho = (beta - 1.0) / (beta + 1.0)

    # group the chronological step columns by vertex (stable sort keeps
    # each vertex's entries in time order)
    step_v, step_code, step_new, step_flag = steps
    order = np.argsort(step_v, kind="stable")
    step_code = step_code[order]
    step_new = step_new[order]
    step_flag = step_flag[order]
    counts = np.bincount(step_v, minlength=nv + 1)[:nv + 1]
    step_ptr = np.zeros(nv + 2, np.int64)
    np.cumsum(counts, out=step_ptr[1:])
    del step_v, order

    adj = analysis.forest.adj
    deg = np.zeros(nv + 2, np.int64)
    for v in range(1, nv + 1):
        deg[v + 1] = len(adj.get(v, ()))
    adj_ptr = np.cumsum(deg)
    adj_idx = np.zeros(int(adj_ptr[-1]), np.int64)
    for v in range(1, nv + 1):
        ns = adj.get(v, ())
        adj_idx[adj_ptr[v]:adj_ptr[v] + len(ns)] = ns

    out = _kernel(nv, len(analysis.records), levels, bn, bd, delta, rho,
                  step_ptr, step_code, step_new, step_flag, adj_ptr, adj_idx)
    utilized_arr, paid_arr, minted, utilized, held, pay_twice, invariant_bad = out
    utilized_turn = {t: int(utilized_arr[t]) for t in range(len(utilized_arr))
                     if utilized_arr[t]}
    vertex_paid = {v: float(paid_arr[v]) for v in range(1, nv + 1) if paid_arr[v]}
    return (utilized_turn, vertex_paid, int(minted), int(utilized), int(held),
            int(pay_twice), int(invariant_bad), levels, windows, suffixes)


# ---------------------------------------------------------------------------
# Entry point


def run_token_ledger(analysis: ScenarioAnalysis, beta: float,
                     engine: str = "auto") -> LedgerReport:
    """Simulate the token scheme and audit its guarantees.

    ``engine`` is "reference", "kernel", or "auto" (kernel for runs with
    more than 64 white vertices).
    """
    if beta <= 1:
        raise ValueError("beta must exceed 1")
    n = analysis.forest.white_count
    if engine == "auto":
        engine = "kernel" if n > 64 else "reference"
    run = _run_kernel if engine == "kernel" else _run_reference
    (utilized_turn, vertex_paid, minted, utilized, held, pay_twice,
     invariant_bad, levels, windows, suffixes) = run(analysis, beta)

    delta = 2.0 / (1.0 - 1.0 / beta)
    rho = (beta - 1.0) / (beta + 1.0)
    report = LedgerReport(
        beta=beta, n=n, levels_simulated=levels, rho=rho, delta=delta,
        utilized_per_turn=utilized_turn, jump_turns=sorted(windows),
        suffix_per_jump_turn=suffixes,
        minted=minted, utilized=utilized, held=held,
        total_paid=sum(vertex_paid.values()),
        max_vertex_paid=max(vertex_paid.values(), default=0.0),
        vertex_paid_bound=delta / rho * (math.log(2 * n) + 1),
        pay_twice_violations=pay_twice,
        invariant_violations=invariant_bad,
    )
    for t, window in windows.items():
        got = utilized_turn.get(t, 0)
        if got < window:
            report.window_failures.append(t)
        need = delta * (1 - 1 / beta) / 2 * suffixes[t]
        if delta * got < need - 1e-9:
            report.per_turn_utilization_failures.append(t)
    report.window_failures.sort()
    report.per_turn_utilization_failures.sort()
    return report
