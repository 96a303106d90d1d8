"""Online bipartite forest matching laboratory.

A simulation and verification toolkit for online matching on bipartite
forests: white vertices are fixed up front, black vertices arrive one
per turn with all their edges, and the matching is maintained by
augmenting along shortest paths.  The package computes the adversarial
(mini-max) distance bounds, tracks vertex death and levels, and audits
the amortized charging arguments that bound the total path length.
"""

from .analysis import ScenarioAnalysis, TurnRecord
from .forest import (CycleError, EmptyNeighborsError, ForestError,
                     NotYetArrivedError, OnlineForest, RootedView,
                     UnionFind, UnknownVertexError)
from .ledger import LedgerReport, run_token_ledger
from .levels import (TurnClass, audit_slow_turns, check_jump_components,
                     check_level_steps, check_min_degree_two_run,
                     classify_turn, level_forest_components)
from .matching import (Matching, MatchingError, SapTurn, augment,
                       run_sap_online, shortest_augmenting_path,
                       tree_max_matching)
from .minimax import (INF, MiniMaxTable, det_dist_dir, det_path, dist_dir,
                      mini_max_path, mini_max_revenue, path_at,
                      sec_dist_dir, sec_path_at, table_at)
from .oracle import (BudgetExceededError, OracleBudget, adversary_game_value,
                     brute_hall, brute_shortest_aug, count_max_matchings_dp,
                     enumerate_max_matchings)
from .scenarios import (FAMILIES, InstanceFile, format_instance, generate,
                        load_instance, parse_instance, run_csv_text,
                        save_instance, write_run_csv)
from .verify import CheckResult, REGISTRY, summarize, verify_scenario
from .vitality import (VitalityState, dispatching_vertex, dying_region,
                       hall_witness, is_dead, life_portals, split_path,
                       track_vitality)

__version__ = "1.0.0"
