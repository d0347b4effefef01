import random
from itertools import combinations, product

import pytest

from minorsat.graph import (
    Graph,
    GraphError,
    complete,
    cycle,
    generalized_petersen,
    make_graph,
    path,
    star,
    wagner,
)
from minorsat.minors import (
    BUDGET_EXHAUSTED,
    MODEL,
    NO_MINOR,
    REASON_COUNTING,
    REASON_EXHAUSTED,
    UNASSIGNED,
    BudgetExhaustedError,
    MinorModel,
    SearchBudget,
    extend_to_spanning,
    find_minor,
    format_model,
    has_minor,
    model_violations,
    spanning_edge_bound,
    verify_model,
)


def _model(host, target, sets):
    branch_of = [UNASSIGNED] * host.n
    for b, members in enumerate(sets):
        for v in members:
            branch_of[v] = b
    return MinorModel(host, target, tuple(branch_of))


def test_verify_model_identity_triangle():
    k3 = complete(3)
    assert verify_model(_model(k3, k3, [[0], [1], [2]]))


def test_verify_model_contracted_cycle():
    assert verify_model(_model(cycle(4), complete(3), [[0, 1], [2], [3]]))


def test_verify_model_path_has_no_triangle():
    p4 = path(4)
    k3 = complete(3)
    for split in ([[0], [1], [2, 3]], [[0, 1], [2], [3]], [[0], [1, 2], [3]]):
        assert not verify_model(_model(p4, k3, split))


def test_model_violations_reasons():
    k3 = complete(3)
    bad = _model(make_graph(4, [(0, 1), (2, 3)]), k3, [[0, 1], [2], [3]])
    assert any("no host edge" in p for p in model_violations(bad))
    empty = _model(k3, k3, [[0], [1, 2], []])
    assert any("empty" in p for p in model_violations(empty))
    disconnected = _model(path(5), complete(2), [[0, 2], [1]])
    assert any("connected" in p for p in model_violations(disconnected))
    wrong_len = MinorModel(k3, k3, (0, 1))
    assert model_violations(wrong_len)


def test_spanning_edge_bound_values():
    assert spanning_edge_bound(generalized_petersen(8, 3), complete(6))   # 24 < 25
    assert spanning_edge_bound(generalized_petersen(13, 5), complete(7))  # 39 < 40
    assert spanning_edge_bound(generalized_petersen(19, 7), complete(8))  # 57 < 58
    assert not spanning_edge_bound(complete(6), complete(6))              # 15 < 15 fails
    assert spanning_edge_bound(path(3), complete(4))                      # target too big
    assert spanning_edge_bound(wagner(), complete(5))                     # 12 < 13


def test_spanning_edge_bound_disconnected_host():
    two_paths = make_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    assert spanning_edge_bound(two_paths, complete(3))
    # a K3 component defeats the per-component certificate
    with_triangle = make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert not spanning_edge_bound(with_triangle, complete(3))


def test_extend_to_spanning():
    spanning = _model(cycle(4), complete(3), [[0, 1], [2], [3]])
    assert extend_to_spanning(spanning) == spanning

    host = make_graph(5, list(combinations(range(4), 2)) + [(0, 4)])
    partial = _model(host, complete(4), [[0], [1], [2], [3]])
    extended = extend_to_spanning(partial)
    assert extended.branch_of[4] == 0  # pendant joins its only neighbor's branch
    assert verify_model(extended)


def test_find_minor_finds_verified_models():
    gp = generalized_petersen(8, 3)
    result = find_minor(gp.add_edge(0, 10), complete(6))  # x0y2 added
    assert result.status == MODEL
    assert verify_model(result.model)


def test_find_minor_counting_vs_exhausted_reason():
    gp = generalized_petersen(8, 3)
    result = find_minor(gp, complete(6))
    assert result.status == NO_MINOR and result.reason == REASON_COUNTING
    result = find_minor(path(5), star(3))
    assert result.status == NO_MINOR and result.reason == REASON_EXHAUSTED


def test_counting_bound_agrees_with_search():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(3, 7)
        host = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.45])
        h = rng.randint(2, min(5, n))
        target = Graph(h, [e for e in combinations(range(h), 2) if rng.random() < 0.6])
        if spanning_edge_bound(host, target):
            pure = find_minor(host, target, use_counting_bound=False)
            assert pure.status == NO_MINOR


def test_has_minor_basics():
    assert has_minor(cycle(4), complete(3))
    assert not has_minor(wagner(), complete(5))
    assert has_minor(complete(6), complete(6))


def test_seeded_search_completes_certificate_partition():
    gp = generalized_petersen(8, 3)
    host = gp.add_edge(1, 8)  # x1 y0 joins the missing pair
    groups = [[3, 4, 5], [9, 11, 14], [10, 12, 15], [6, 7, 0], [1, 2], [8, 13]]
    seed = {v: b for b, members in enumerate(groups) for v in members}
    result = find_minor(host, complete(6), seed=seed)
    assert result.status == MODEL and result.nodes == 1
    assert result.model.branch_of[3] == 0


def test_seeded_search_restricts_to_completions():
    # pinning the branches into different components leaves no completion,
    # even though the unseeded search finds the minor
    host = make_graph(4, [(0, 1), (2, 3)])
    assert has_minor(host, complete(2))
    result = find_minor(host, complete(2), seed={0: 0, 2: 1})
    assert result.status == NO_MINOR
    with pytest.raises(GraphError):
        find_minor(path(4), complete(2), seed={0: 0, 2: 0})  # disconnected seed


def test_budget_exhaustion():
    gp = generalized_petersen(8, 3)
    result = find_minor(gp.add_edge(0, 10), complete(6), SearchBudget(max_nodes=50))
    assert result.status == BUDGET_EXHAUSTED
    assert result.nodes >= 50
    with pytest.raises(BudgetExhaustedError):
        has_minor(gp.add_edge(0, 10), complete(6), SearchBudget(max_nodes=50))
    with pytest.raises(GraphError):
        SearchBudget(max_nodes=0)


def test_determinism():
    host = generalized_petersen(8, 3).add_edge(0, 2)
    a = find_minor(host, complete(6))
    b = find_minor(host, complete(6))
    assert a.status == b.status == MODEL
    assert a.model == b.model and a.nodes == b.nodes


def _oracle_has_minor(host, target):
    """Flat enumeration of every assignment, filtered by model validity."""
    for assign in product(range(target.n + 1), repeat=host.n):
        branch_of = tuple(b if b < target.n else UNASSIGNED for b in assign)
        if verify_model(MinorModel(host, target, branch_of)):
            return True
    return False


def test_agrees_with_enumeration_oracle():
    rng = random.Random(42)
    for _ in range(40):
        n = rng.randint(3, 6)
        h = rng.randint(2, min(4, n))
        host = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        target = Graph(h, [e for e in combinations(range(h), 2) if rng.random() < 0.6])
        assert has_minor(host, target) == _oracle_has_minor(host, target)


def test_minor_monotone_under_edge_addition():
    rng = random.Random(9)
    k3 = complete(3)
    for _ in range(25):
        n = rng.randint(3, 6)
        host = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        if has_minor(host, k3):
            for e in host.non_edges():
                assert has_minor(host.add_edge(*e), k3)


def test_subgraph_implies_minor():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(3, 7)
        host = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.6])
        keep = sorted(rng.sample(range(n), rng.randint(2, n)))
        relabel = {v: i for i, v in enumerate(keep)}
        sub_edges = [(relabel[u], relabel[v]) for u, v in host.edges
                     if u in relabel and v in relabel and rng.random() < 0.8]
        target = Graph(len(keep), sub_edges)
        assert has_minor(host, target)


def test_disconnected_host_and_target():
    two = make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    assert has_minor(two, complete(3))
    assert not has_minor(two, complete(4))
    two_edges = make_graph(4, [(0, 1), (2, 3)])
    assert has_minor(path(4), two_edges)
    assert not has_minor(path(3), two_edges)


def test_single_vertex_target():
    assert has_minor(make_graph(1, []), complete(1))
    assert not has_minor(make_graph(0, []), complete(1))


def test_format_model():
    model = _model(cycle(4), complete(3), [[0, 1], [2], [3]])
    text = format_model(model)
    assert text.splitlines() == ["branch 0: [0, 1]", "branch 1: [2]", "branch 2: [3]"]
