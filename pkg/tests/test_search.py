import pytest

from wogtoric.errors import NotFound
from wogtoric.graph import enumerate_cycles, incidence_matrix
from wogtoric.markov import strongly_robust
from wogtoric.search import (FAMILIES, family_shapes, instance, same_up_to_relabeling,
                             search_counterexample)


def test_shapes_are_sorted_by_edge_count():
    for family in FAMILIES:
        counts = [e for e, _ in family_shapes(family, 3, 12)]
        assert counts == sorted(counts)
        assert all(3 <= e <= 12 for e in counts)


def test_shape_edge_count_is_honoured():
    for family in FAMILIES:
        for e, shape in family_shapes(family, 3, 11)[:15]:
            assert instance(family, shape, 0, 0).edge_count == e


def test_unknown_family():
    with pytest.raises(ValueError):
        family_shapes("moebius")


def test_instances_are_deterministic():
    _, shape = family_shapes("cycle-edge", 9, 13)[0]
    assert instance("cycle-edge", shape, 7, 3) == instance("cycle-edge", shape, 7, 3)
    assert instance("cycle-edge", shape, 7, 3) != instance("cycle-edge", shape, 8, 3)


def test_cycle_edge_search_finds_small_instance():
    res = search_counterexample("cycle-edge", seed=0)
    assert res.report.strongly_robust is False
    assert res.report.dispensable_witnesses
    assert not res.report.hypothesis_results.main_theorem_hypothesis
    again = strongly_robust(incidence_matrix(res.graph))
    assert again.dispensable_witnesses == res.report.dispensable_witnesses


def test_alias_family_matches():
    a = search_counterexample("cycle-edge", seed=3)
    b = search_counterexample("cycle-with-chord-path", seed=3)
    assert a.shape == b.shape and a.trial == b.trial


def test_shared_path_search_finds_instance():
    res = search_counterexample("shared-path", seed=0, max_edges=16, trials=10, budget=400)
    assert res.report.strongly_robust is False
    assert len(enumerate_cycles(res.graph)) == 4


@pytest.mark.parametrize("family", ["bouquet", "star", "cycle"])
def test_families_inside_the_criterion_give_nothing(family):
    with pytest.raises(NotFound):
        search_counterexample(family, seed=0, max_edges=10, trials=3, budget=200)


def test_budget_stops_search():
    with pytest.raises(NotFound):
        search_counterexample("bouquet", budget=2)


def test_relabeling():
    G = [(1, -1, 0), (0, 1, -1)]
    assert same_up_to_relabeling(G, [(0, -1, 1), (-1, 0, 1)])
    assert same_up_to_relabeling([], [])
    assert not same_up_to_relabeling(G, [(1, -1, 0), (0, 2, -2)])
    assert not same_up_to_relabeling(G, [(1, -1, 0)])
    with pytest.raises(ValueError):
        same_up_to_relabeling([(1,)] * 9, [(1,)] * 9)
