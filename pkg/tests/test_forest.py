import random

import pytest

from sap_forest import (CycleError, EmptyNeighborsError, NotYetArrivedError,
                        OnlineForest, UnionFind, UnknownVertexError)

from conftest import random_arrivals


def test_ids_and_labels():
    f = OnlineForest(3)
    t = f.add_black((1, 2))
    assert t == 1
    assert f.black_id(1) == 4
    assert f.is_white(2) and f.is_black(4)
    assert f.label(1).startswith("w") and f.label(4).startswith("b")


def test_turn_counter_and_arrivals():
    f = OnlineForest(4)
    f.add_black((1,))
    f.add_black((2, 3))
    assert f.turn == 2
    assert f.arrivals == [(1,), (2, 3)]


def test_empty_neighbors_rejected():
    f = OnlineForest(2)
    with pytest.raises(EmptyNeighborsError):
        f.add_black(())


def test_unknown_white_rejected():
    f = OnlineForest(2)
    with pytest.raises(UnknownVertexError):
        f.add_black((3,))


def test_cycle_rejected_and_state_unchanged():
    f = OnlineForest(3)
    f.add_black((1, 2))
    with pytest.raises(CycleError) as ei:
        f.add_black((1, 2))
    assert set(ei.value.offenders) <= {1, 2}
    assert f.turn == 1
    assert 5 not in f.adj


def test_exists_and_neighbors_are_time_scoped():
    f = OnlineForest(3)
    f.add_black((1, 2))
    b1 = f.black_id(1)
    f.add_black((2, 3))
    assert f.exists_at(b1, 1)
    assert not f.exists_at(f.black_id(2), 1)
    assert f.neighbors_at(2, 1) == [b1]
    assert len(f.neighbors_at(2, 2)) == 2
    with pytest.raises(NotYetArrivedError):
        f.neighbors_at(f.black_id(2), 1)


def test_rooted_view_covers_component(chain3):
    b1 = chain3.black_id(1)
    view = chain3.rooted_view(b1, chain3.turn)
    assert view.root == b1
    assert set(view.order) == set(chain3.component_at(b1, chain3.turn))
    assert view.parent[b1] is None
    for v in view.order:
        for c in view.children[v]:
            assert view.parent[c] == v
    # order is a valid top-down traversal
    pos = {v: i for i, v in enumerate(view.order)}
    for v in view.order[1:]:
        assert pos[view.parent[v]] < pos[v]


def test_component_merging(chain3):
    t = chain3.turn
    comp = chain3.component_at(1, t)
    assert set(comp) == set(chain3.vertices_at(t))


def test_vertices_at_excludes_future_blacks():
    f = OnlineForest(2)
    f.add_black((1,))
    f.add_black((2,))
    assert set(f.vertices_at(1)) == {1, 2, f.black_id(1)}


def test_union_find_basics():
    uf = UnionFind()
    for x in range(5):
        uf.add(x)
    uf.union(0, 1)
    uf.union(1, 2)
    assert uf.connected(0, 2)
    assert not uf.connected(0, 3)
    assert uf.size(2) == 3


def test_random_sequences_stay_forests(rng):
    for _ in range(25):
        n = rng.randint(2, 12)
        arrivals = random_arrivals(n, rng)
        f = OnlineForest(n)
        for nbrs in arrivals:
            f.add_black(nbrs)
        t = f.turn
        edges = list(f.edges_at(t))
        vs = set(f.vertices_at(t))
        # acyclic: every component has edges = vertices - 1
        comps = 0
        seen = set()
        for v in vs:
            if v not in seen:
                comp = f.component_at(v, t)
                seen.update(comp)
                comps += 1
        assert len(edges) == len(vs) - comps
