import pytest

from sap_forest import (BudgetExceededError, INF, OnlineForest, OracleBudget,
                        adversary_game_value, brute_hall,
                        count_max_matchings_dp, enumerate_max_matchings)
from sap_forest.oracle import brute_shortest_aug, enumerate_matchings

from conftest import random_arrivals


def test_enumerate_matchings_small():
    edges = [(1, 4), (2, 4), (2, 5)]
    ms = enumerate_matchings(edges)
    assert frozenset() in ms
    assert frozenset([(1, 4), (2, 5)]) in ms
    assert len(ms) == 5  # empty, three singles, one compatible pair


def test_enumerate_max_matchings_free_vertex(chain3):
    t = chain3.turn
    b3 = chain3.black_id(3)
    ms = enumerate_max_matchings(chain3, t, free_vertex=b3)
    for m in ms:
        assert all(b3 not in e for e in m)
    assert all(len(m) == len(ms[0]) for m in ms)


def test_dp_count_agrees_with_enumeration(rng):
    for _ in range(30):
        n = rng.randint(2, 6)
        f = OnlineForest(n)
        for nbrs in random_arrivals(n, rng):
            f.add_black(nbrs)
        t = f.turn
        size, count = count_max_matchings_dp(f, t)
        ms = enumerate_matchings(list(f.edges_at(t)))
        best = max((len(m) for m in ms), default=0)
        assert size == best
        assert count == sum(1 for m in ms if len(m) == best)


def test_adversary_value_chain(chain3):
    assert adversary_game_value(chain3, chain3.black_id(3), 3) == 5


def test_adversary_value_infinite():
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    assert adversary_game_value(f, f.black_id(2), 2) == INF


def test_budget_enforced():
    f = OnlineForest(10)
    for i in range(1, 10):
        f.add_black((i, i + 1))
    small = OracleBudget(max_component_size=5, max_subset_size=5)
    with pytest.raises(BudgetExceededError):
        enumerate_max_matchings(f, f.turn, free_vertex=f.black_id(1),
                                budget=small)
    with pytest.raises(BudgetExceededError):
        brute_hall(f, f.black_id(1), f.turn, small)


def test_brute_hall_finds_minimal_witness():
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    X = brute_hall(f, f.black_id(2), 2)
    assert X == {f.black_id(1), f.black_id(2)}


def test_brute_hall_none_when_servable(chain3):
    assert brute_hall(chain3, chain3.black_id(2), 2) is None


def test_brute_shortest_aug_empty_matching(chain3):
    b1 = chain3.black_id(1)
    assert brute_shortest_aug(chain3, [], b1, 1) == 1
