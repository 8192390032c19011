import math
import random
from itertools import combinations

import pytest

from tropfm.exact_linalg import RatMatrix, det_exact
from tropfm.graphs import (
    GraphError,
    cycle_basis,
    gram_matrix,
    jacobian_instance,
    parse_graph,
    run_jacobian_poincare,
    spanning_tree_weight,
)
from tropfm.line_bundles import h0, is_ample

LOOP5 = {"vertices": ["a"], "edges": [{"u": "a", "v": "a", "len": 5}]}
THETA = {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "len": 1}] * 3}
K4 = {"vertices": list("abcd"),
      "edges": [{"u": u, "v": v, "len": 1} for u, v in combinations("abcd", 2)]}


def brute_tree_weight(G):
    """Sum over spanning trees of the product of lengths of the edges left out."""
    n, m = len(G.vertices), len(G.edges)
    total = 0
    for tree in combinations(range(m), n - 1):
        parent = {v: v for v in G.vertices}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for i in tree:
            u, v, _ = G.edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            total += math.prod(G.edges[i][2] for i in range(m) if i not in tree)
    return total


def random_graph(rng):
    n = rng.randint(1, 5)
    vs = [f"v{i}" for i in range(n)]
    edges = [{"u": vs[i], "v": vs[rng.randrange(i)], "len": rng.randint(1, 4)} for i in range(1, n)]
    for _ in range(rng.randint(1, 4)):
        edges.append({"u": rng.choice(vs), "v": rng.choice(vs), "len": rng.randint(1, 4)})
    rng.shuffle(edges)
    return parse_graph({"vertices": vs, "edges": edges})


def test_genus():
    assert parse_graph(LOOP5).genus == 1
    assert parse_graph(THETA).genus == 2
    assert parse_graph(K4).genus == 3


def test_cycle_basis_examples():
    assert cycle_basis(parse_graph(LOOP5)) == [[1]]
    theta = cycle_basis(parse_graph(THETA))
    assert len(theta) == 2
    # both cycles run back through the single tree edge
    assert all(r[0] == -1 for r in theta)
    assert theta[0][1:] == [1, 0] and theta[1][1:] == [0, 1]


def test_cycles_are_closed():
    rng = random.Random(4)
    for _ in range(30):
        G = random_graph(rng)
        idx = {v: i for i, v in enumerate(G.vertices)}
        basis = cycle_basis(G)
        assert len(basis) == G.genus
        for row in basis:
            flow = [0] * len(G.vertices)
            for (u, v, _), c in zip(G.edges, row):
                flow[idx[u]] -= c
                flow[idx[v]] += c
            assert not any(flow)
        if basis:
            # full rank: some g x g minor of the basis is nonzero
            m = len(G.edges)
            assert any(det_exact(RatMatrix.from_rows([[r[c] for c in cols] for r in basis])) != 0
                       for cols in combinations(range(m), len(basis)))


def test_gram_examples():
    G = parse_graph(LOOP5)
    assert gram_matrix(G, cycle_basis(G)).int_rows() == [[5]]
    G = parse_graph(THETA)
    assert gram_matrix(G, cycle_basis(G)).int_rows() == [[2, 1], [1, 2]]
    G = parse_graph(K4)
    Q = gram_matrix(G, cycle_basis(G))
    assert Q.int_rows() == [[3, 1, -1], [1, 3, 1], [-1, 1, 3]]
    assert det_exact(Q) == 16


def test_matrix_tree_against_enumeration():
    for doc, w in ((LOOP5, 5), (THETA, 3), (K4, 16)):
        G = parse_graph(doc)
        assert spanning_tree_weight(G) == brute_tree_weight(G) == w
    rng = random.Random(9)
    for _ in range(40):
        G = random_graph(rng)
        Q = gram_matrix(G, cycle_basis(G))
        assert det_exact(Q) == spanning_tree_weight(G) == brute_tree_weight(G)


def test_jacobian_instances():
    J = jacobian_instance(parse_graph(LOOP5))
    assert J.genus == 1 and J.theta.E.int_rows() == [[1]]
    J = jacobian_instance(parse_graph(K4))
    assert J.genus == 3 and is_ample(J.theta) and h0(J.theta) == 1
    J = jacobian_instance(parse_graph(THETA))
    assert h0(J.theta) == 1


@pytest.mark.parametrize("doc", [LOOP5, THETA, K4], ids=["loop", "theta", "K4"])
def test_jacobian_poincare(doc):
    G = parse_graph(doc)
    reports = run_jacobian_poincare(G, seed=1)
    assert [r.instance["d"] for r in reports] == list(range(G.genus + 1))
    assert all(r.passed for r in reports)


def test_jacobian_poincare_independent_of_lengths():
    rng = random.Random(2)
    for _ in range(10):
        G = random_graph(rng)
        assert all(r.passed for r in run_jacobian_poincare(G))


def test_tree_has_genus_zero():
    G = parse_graph({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b"}]})
    assert G.genus == 0 and run_jacobian_poincare(G) == []


@pytest.mark.parametrize("doc", [
    {"vertices": ["a", "b"], "edges": []},
    {"vertices": ["a"], "edges": [{"u": "a", "v": "a", "len": "1/2"}]},
    {"vertices": ["a"], "edges": [{"u": "a", "v": "a", "len": 0}]},
    {"vertices": ["a"], "edges": [{"u": "a", "v": "a", "len": 1.5}]},
    {"vertices": ["a"], "edges": [{"u": "a", "v": "b"}]},
    {"vertices": ["a", "a"], "edges": []},
    {"edges": []},
    "not json",
])
def test_rejects_bad_input(doc):
    with pytest.raises(GraphError):
        parse_graph(doc)


def test_round_trip():
    G = parse_graph(K4)
    assert parse_graph(G.to_json()) == G


@pytest.mark.parametrize("doc", [LOOP5, THETA, K4], ids=["loop", "theta", "K4"])
def test_two_length_assignments_agree(doc):
    rng = random.Random(len(doc["edges"]))
    other = {"vertices": doc["vertices"],
             "edges": [dict(e, len=rng.randint(1, 7)) for e in doc["edges"]]}
    a = run_jacobian_poincare(parse_graph(doc))
    b = run_jacobian_poincare(parse_graph(other))
    assert [(r.instance["d"], r.passed) for r in a] == [(r.instance["d"], r.passed) for r in b]
    assert all(r.passed for r in a + b)
