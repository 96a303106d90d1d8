import pytest

from sap_forest import (OnlineForest, ScenarioAnalysis, dispatching_vertex,
                        dying_region, hall_witness, is_dead, life_portals,
                        split_path, track_vitality)
from sap_forest.vitality import check_hall_violation
from sap_forest.oracle import OracleBudget, brute_hall

from conftest import random_arrivals


def test_pendant_black_dies_on_arrival():
    f = OnlineForest(1)
    f.add_black((1,))
    assert is_dead(f, f.black_id(1), 1)
    assert is_dead(f, 1, 1)   # the white's only neighbor is the dead leaf


def test_chain_deaths(chain3):
    # the final pendant kills the whole chain: no portals anywhere
    analysis = ScenarioAnalysis(3, chain3.arrivals, with_sap=False)
    assert analysis.records[0].deaths == []
    assert analysis.records[1].deaths == []
    deaths = analysis.records[2].deaths
    assert len(deaths) == 6  # every vertex of the component


def test_hall_witness_presence_iff_infinite(rng):
    budget = OracleBudget(max_component_size=40, max_subset_size=14)
    for _ in range(40):
        n = rng.randint(1, 7)
        arrivals = random_arrivals(n, rng)
        f = OnlineForest(n)
        analysis = ScenarioAnalysis(n, arrivals, with_sap=False)
        for nbrs, rec in zip(arrivals, analysis.records):
            f.add_black(nbrs)
            X = hall_witness(f, rec.b, rec.t)
            assert (X is not None) == rec.hall_breaking
            if X is not None:
                assert rec.b in X
                assert check_hall_violation(f, X, rec.t)
                assert brute_hall(f, rec.b, rec.t, budget) is not None


def test_hall_witness_on_double_pendant():
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    X = hall_witness(f, f.black_id(2), 2)
    assert X == {f.black_id(1), f.black_id(2)}


def test_life_portals_need_three_alive_neighbors():
    f = OnlineForest(4)
    f.add_black((1, 2, 3))
    b1 = f.black_id(1)
    assert life_portals(f, 1, {1, 2, 3, 4}) == {b1}
    assert life_portals(f, 1, {1, 2}) == set()


def test_dying_region_empty_with_two_alive_neighbors():
    f = OnlineForest(3)
    f.add_black((1, 2))
    assert dying_region(f, 1, {1, 2, 3}) == set()


def test_dying_region_none_without_alive_neighbor():
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    assert dying_region(f, 2, set()) is None


def test_dying_region_stops_at_portal():
    # hub black with three whites, chained to a pendant target
    f = OnlineForest(4)
    f.add_black((1, 2, 3))     # portal once all whites are alive
    f.add_black((3, 4))
    f.add_black((4,))          # kills the chain up to the hub
    alive = {1, 2, 3, 4, f.black_id(1), f.black_id(2)}
    region = dying_region(f, 3, alive)
    assert region == {f.black_id(3), 4, f.black_id(2), 3}
    assert f.black_id(1) not in region


def test_dying_region_matches_actual_deaths(rng):
    for _ in range(60):
        n = rng.randint(1, 9)
        arrivals = random_arrivals(n, rng)
        analysis = ScenarioAnalysis(n, arrivals, with_sap=False)
        f = OnlineForest(n)
        alive = set(range(1, n + 1))
        for nbrs, rec in zip(arrivals, analysis.records):
            f.add_black(nbrs)
            region = dying_region(f, rec.t, alive)
            if region is None:
                assert rec.hall_breaking
            else:
                assert region == set(rec.deaths)
            alive.add(rec.b)
            alive -= set(rec.deaths)


def test_split_path():
    assert split_path([9, 1, 8, 2], 8) == ([9, 1], [8, 2])
    assert split_path([9, 1], None) == ([9, 1], [])


def test_dispatching_vertex_first_on_path(chain3):
    b1, b2 = chain3.black_id(1), chain3.black_id(2)
    path = [b2, 2, b1, 1]
    assert dispatching_vertex(chain3, path, {1, 2, 3, b1, b2}) == b2
    assert dispatching_vertex(chain3, path, {1, 3}) is None


def test_track_vitality_agrees_with_analysis(rng):
    for _ in range(20):
        n = rng.randint(1, 8)
        arrivals = random_arrivals(n, rng)
        analysis = ScenarioAnalysis(n, arrivals, with_sap=False)
        f = OnlineForest(n)
        for nbrs in arrivals:
            f.add_black(nbrs)
        state = track_vitality(f)
        assert state.deaths_by_turn == [r.deaths for r in analysis.records]
        assert state.alive == {v for v, a in analysis.alive.items() if a}
