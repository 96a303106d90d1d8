"""Show how a death cascade is stopped by a life portal.

A hub black vertex with three white neighbors can afford to lose one of
them: when a pendant attack kills its way up a chain, the cascade stops
at the hub, the hub becomes the dispatching vertex, and everything
between the newcomer and the hub dies.  The demo prints the predicted
dying region (computed from the previous alive set alone) next to the
actual deaths, and the dying-prefix / surviving-suffix split of the
worst-case path.

Run:  python3 demos/death_cascade.py
"""

from sap_forest import OnlineForest, ScenarioAnalysis, dying_region, life_portals

# a 3-white hub, a two-step chain hanging off it, then the pendant attack
ARRIVALS = [(1, 2, 3), (3, 4), (4, 5), (5,)]
WHITES = 5


def main() -> None:
    analysis = ScenarioAnalysis(WHITES, ARRIVALS, with_sap=False)
    forest = analysis.forest
    replay = OnlineForest(WHITES)
    alive = set(range(1, WHITES + 1))
    for nbrs, rec in zip(ARRIVALS, analysis.records):
        replay.add_black(nbrs)
        portals = life_portals(replay, rec.t, alive)
        region = dying_region(replay, rec.t, alive)
        print(f"turn {rec.t}: {forest.label(rec.b)} arrives "
              f"({rec.alive_prev_neighbors} previously-alive neighbors)")
        print("  portals:", sorted(forest.label(v) for v in portals) or "none")
        print("  predicted dying region:",
              sorted(forest.label(v) for v in region)
              if region is not None else "n/a")
        print("  actual deaths:       ",
              sorted(forest.label(v) for v in rec.deaths) or "none")
        if rec.path is not None and rec.dispatch is not None:
            i = rec.path.index(rec.dispatch)
            print("  path:",
                  " - ".join(forest.label(v) for v in rec.path[:i]),
                  "| dies; survives |",
                  " - ".join(forest.label(v) for v in rec.path[i:]))
            print(f"  dispatching vertex {forest.label(rec.dispatch)}: "
                  f"prefix {rec.prefix_len}, suffix {rec.suffix_len}")
        alive.add(rec.b)
        alive -= set(rec.deaths)
        print()


if __name__ == "__main__":
    main()
