import pytest

from sap_forest import (INF, Matching, MatchingError, OnlineForest, augment,
                        run_sap_online, shortest_augmenting_path,
                        tree_max_matching)
from sap_forest.oracle import OracleBudget, brute_shortest_aug

BIG_BUDGET = OracleBudget(max_component_size=64, max_subset_size=64)

from conftest import random_arrivals


def test_matching_basics():
    m = Matching()
    m.match(1, 4)
    assert not m.is_free(1) and not m.is_free(4)
    assert m.is_free(2)
    assert m.pairs() == {(1, 4)}
    m.unmatch(1, 4)
    assert m.is_free(1) and len(m) == 0


def test_validate_catches_inconsistent_matching(chain3):
    m = Matching()
    m.match(1, chain3.black_id(1))
    m.partner[1] = chain3.black_id(2)   # break symmetry behind the API
    with pytest.raises(MatchingError):
        m.validate(chain3, chain3.turn)


def test_augment_flips_alternate_edges(chain3):
    b1, b2 = chain3.black_id(1), chain3.black_id(2)
    m = Matching()
    m.match(2, b1)
    path = shortest_augmenting_path(chain3, m, b2, 2)
    assert path is not None and path[0] == b2
    m2 = augment(m, path)
    assert len(m2) == 2
    assert not m2.is_free(b2)
    m2.validate(chain3, 2)


def test_sap_none_when_component_saturated():
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    m = Matching()
    m.match(1, f.black_id(1))
    assert shortest_augmenting_path(f, m, f.black_id(2), 2) is None


def test_sap_is_shortest_against_brute(rng):
    for _ in range(40):
        n = rng.randint(2, 8)
        arrivals = random_arrivals(n, rng)
        f = OnlineForest(n)
        m = Matching()
        for nbrs in arrivals:
            t = f.add_black(nbrs)
            b = f.black_id(t)
            path = shortest_augmenting_path(f, m, b, t)
            expect = brute_shortest_aug(f, m.pairs(), b, t, BIG_BUDGET)
            if path is None:
                assert expect is None
            else:
                assert len(path) - 1 == expect
                m = augment(m, path)


def test_run_sap_online_keeps_matching_maximum(chain3):
    records, matching = run_sap_online(chain3)
    assert len(matching) == len(tree_max_matching(chain3, chain3.turn))
    assert [r.pi_len for r in records] == [1, 1, 1]


def test_tree_max_matching_is_maximum(rng):
    from sap_forest.oracle import count_max_matchings_dp
    for _ in range(20):
        n = rng.randint(2, 9)
        f = OnlineForest(n)
        for nbrs in random_arrivals(n, rng):
            f.add_black(nbrs)
        t = f.turn
        size, _ = count_max_matchings_dp(f, t)
        m = tree_max_matching(f, t)
        m.validate(f, t)
        assert len(m) == size


def test_online_matches_everything_matchable(rng):
    # online shortest augmenting always reaches the offline maximum on trees
    for _ in range(20):
        n = rng.randint(2, 9)
        arrivals = random_arrivals(n, rng)
        f = OnlineForest(n)
        for nbrs in arrivals:
            f.add_black(nbrs)
        _, matching = run_sap_online(f)
        assert len(matching) == len(tree_max_matching(f, f.turn))
