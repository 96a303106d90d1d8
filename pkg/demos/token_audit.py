"""Audit the token accounting that pays for jump turns.

Replays a mid-size star-burst scenario, classifies every turn (slow
versus jump growth of the dispatching vertex's level), and runs the
level-by-level token ledger at beta = 2: components large enough for
their level hold a token, merges transfer them, and a jump turn's
dispatcher spends one when it merges two funded components.  The demo
prints the conservation identity, payment statistics, and the per-turn
utilization — including the strict per-turn reading that fails whenever
a jump's midpoint window is empty (always the case for a level-1 jump).

Run:  python3 demos/token_audit.py
"""

from collections import Counter

from sap_forest import ScenarioAnalysis, classify_turn, run_token_ledger
from sap_forest.scenarios import generate

BETA = 2.0


def main() -> None:
    inst = generate("star_burst", 96, seed=7)
    analysis = ScenarioAnalysis(inst.white_count, inst.arrivals,
                                with_sap=False)
    classes = Counter(classify_turn(r, BETA).value for r in analysis.records)
    print("turn classes:", dict(classes))

    rep = run_token_ledger(analysis, BETA)
    print(f"\nledger at beta={BETA} (rho={rep.rho:.3f}, delta={rep.delta}):")
    print(f"  levels simulated: {rep.levels_simulated}")
    print(f"  minted {rep.minted} = held {rep.held} + utilized "
          f"{rep.utilized}  (conservation: {rep.conservation_ok})")
    print(f"  funding invariant violations: {rep.invariant_violations}")
    print(f"  double payments: {rep.pay_twice_violations}")
    print(f"  max per-vertex payment {rep.max_vertex_paid:.3f} "
          f"<= bound {rep.vertex_paid_bound:.3f}")
    print(f"  jump suffix total {rep.suffix_total} "
          f"<= budget {rep.suffix_bound:.1f}")

    print(f"\n{len(rep.jump_turns)} jump turns; per-window utilization "
          f"failures: {rep.window_failures or 'none'}")
    print("strict per-turn coverage failures (empty midpoint windows):",
          rep.per_turn_utilization_failures or "none")
    for t in rep.jump_turns[:8]:
        rec = analysis.records[t - 1]
        print(f"  turn {t}: level {rec.disp_level_before} -> "
              f"{rec.disp_level_after}, suffix {rec.suffix_len}, "
              f"utilized {rep.utilized_per_turn.get(t, 0)}")


if __name__ == "__main__":
    main()
