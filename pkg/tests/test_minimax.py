import random

from sap_forest import (INF, OnlineForest, dist_dir, mini_max_path,
                        mini_max_revenue, path_at, sec_dist_dir, sec_path_at,
                        table_at)
from sap_forest.minimax import path_from_table, sec_path_from_table

from conftest import random_arrivals


def test_chain_values(chain3):
    t = chain3.turn
    b1, b2, b3 = (chain3.black_id(i) for i in (1, 2, 3))
    table = table_at(chain3, b3, t)
    assert table.dist[b3] == 5
    assert table.sec_dist[b3] == INF          # pendant black dies on arrival
    assert table.dist[b1] == 1 and table.dist[b2] == 3
    # every white is dead once the pendant arrives
    assert table.dist[3] == INF
    assert table.dist[1] == INF


def test_single_pendant_black():
    f = OnlineForest(1)
    f.add_black((1,))
    table = table_at(f, f.black_id(1), 1)
    b = f.black_id(1)
    assert table.dist[b] == 1
    assert table.sec_dist[b] == INF
    assert table.dist[1] == INF      # its only neighbor is a black leaf
    assert table.sec_dist[1] == 0    # nothing left once that side is removed


def test_rooted_equals_rerooted_random(rng):
    for _ in range(30):
        n = rng.randint(2, 10)
        f = OnlineForest(n)
        for nbrs in random_arrivals(n, rng):
            f.add_black(nbrs)
        t = f.turn
        seen = set()
        for v in f.vertices_at(t):
            if v in seen:
                continue
            table = table_at(f, v, t)
            seen.update(table.vertices)
            for u in table.vertices:
                view = f.rooted_view(u, t)
                assert mini_max_revenue(view, u, f)[0] == table.dist[u]
                assert table.dist[u] == dist_dir(f, u, t)[0]
                assert table.sec_dist[u] == sec_dist_dir(f, u, t)[0]
                assert table.dir[u] == dist_dir(f, u, t)[1]
                assert table.sec_dir[u] == sec_dist_dir(f, u, t)[1]


def test_path_lengths_match_values(rng):
    for _ in range(30):
        n = rng.randint(2, 10)
        f = OnlineForest(n)
        for nbrs in random_arrivals(n, rng):
            f.add_black(nbrs)
        t = f.turn
        seen = set()
        for v in f.vertices_at(t):
            if v in seen:
                continue
            table = table_at(f, v, t)
            seen.update(table.vertices)
            for u in table.vertices:
                if table.dist[u] != INF:
                    p = path_from_table(table, u)
                    assert len(p) - 1 == table.dist[u]
                    assert p == path_at(f, u, t)
                if table.sec_dist[u] != INF and table.dir[u] is not None:
                    p = sec_path_from_table(table, u)
                    assert len(p) - 1 == table.sec_dist[u]
                    assert p == sec_path_at(f, u, t)


def test_second_path_avoids_first_direction(chain3):
    t = chain3.turn
    b1 = chain3.black_id(1)
    table = table_at(chain3, b1, t)
    first = path_from_table(table, b1)
    second = sec_path_from_table(table, b1)
    assert first[1] != second[1]


def test_tie_break_uses_key(chain3):
    t = 1   # b1 alone, both whites are free leaves: a genuine tie
    b1 = chain3.black_id(1)
    d_def, dir_def = dist_dir(chain3, b1, t)
    d_rev, dir_rev = dist_dir(chain3, b1, t, key=lambda v: -v)
    assert d_def == d_rev == 1
    assert dir_def == 1        # both whites cost 0; smaller id wins
    assert dir_rev == 2        # reversed order prefers the larger id


def test_mini_max_path_from_view(chain3):
    t = 2   # before the pendant arrives
    b2 = chain3.black_id(2)
    view = chain3.rooted_view(b2, t)
    assert mini_max_revenue(view, b2, chain3)[0] == 1
    p = mini_max_path(view, b2, chain3)
    assert p[0] == b2 and len(p) == 2


def test_isolated_white_is_zero():
    f = OnlineForest(2)
    f.add_black((1,))
    assert dist_dir(f, 2, 1)[0] == 0
    assert sec_dist_dir(f, 2, 1)[0] == 0


def test_infinite_distance_in_starved_component():
    # two pendant blacks on one white: the second cannot be served
    f = OnlineForest(1)
    f.add_black((1,))
    f.add_black((1,))
    b2 = f.black_id(2)
    assert dist_dir(f, b2, 2)[0] == INF
