"""Metric graphs and their tropical Jacobians.

The lattice ``Lambda = H_1(G, Z)`` gets the basis of fundamental cycles
of a spanning tree. The edge-length pairing
``Q[a][b] = sum_e len(e) gamma_a(e) gamma_b(e)`` is the polarization.
``N`` is taken to be the dual lattice of ``Lambda`` under ``Q``, so the
mixed matrix of the theta polarization is the identity and the metric
only enters through the embedding ``P = Q``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from tropfm.exact_linalg import IntMatrix, RatMatrix, det_exact, parse_rational
from tropfm.line_bundles import AppellHumbertData, h0, is_ample
from tropfm.theorems import (
    VerificationReport,
    intersection_power_class,
    pontryagin_power,
)
from tropfm.torus import TorusDescriptor

__all__ = [
    "GraphError",
    "MetricGraph",
    "JacobianInstance",
    "parse_graph",
    "cycle_basis",
    "gram_matrix",
    "jacobian_instance",
    "run_jacobian_poincare",
    "spanning_tree_weight",
]


class GraphError(ValueError):
    """Malformed, disconnected or non-integral graph input."""


@dataclass(frozen=True)
class MetricGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    @property
    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"u": u, "v": v, "len": n} for u, v, n in self.edges]}


def _length(x) -> int:
    if isinstance(x, float):
        if not x.is_integer():
            raise GraphError(f"edge length {x} is not an integer")
        x = int(x)
    try:
        q = parse_rational(x)
    except (TypeError, ValueError) as exc:
        raise GraphError(f"bad edge length {x!r}") from exc
    if q.denominator != 1:
        raise GraphError(f"edge length {x} is not an integer; rational lengths are not supported")
    if q < 1:
        raise GraphError(f"edge length {x} must be positive")
    return int(q)


def parse_graph(document) -> MetricGraph:
    """Validate ``{"vertices": [...], "edges": [{"u", "v", "len"}, ...]}`` (a dict or JSON text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or not isinstance(document.get("vertices"), list) \
            or not isinstance(document.get("edges"), list):
        raise GraphError("graph JSON needs 'vertices' and 'edges' lists")
    vertices = tuple(str(v) for v in document["vertices"])
    if not vertices or len(set(vertices)) != len(vertices):
        raise GraphError("vertices must be a nonempty list of distinct labels")
    known = set(vertices)
    edges = []
    for e in document["edges"]:
        if not isinstance(e, dict) or not {"u", "v"} <= e.keys():
            raise GraphError("each edge needs 'u' and 'v'")
        u, v = str(e["u"]), str(e["v"])
        if u not in known or v not in known:
            raise GraphError(f"edge {u}-{v} uses an unknown vertex")
        edges.append((u, v, _length(e.get("len", 1))))
    G = MetricGraph(vertices, tuple(edges))
    if not _connected(G):
        raise GraphError("graph is disconnected")
    return G


def _connected(G: MetricGraph) -> bool:
    adj = {v: set() for v in G.vertices}
    for u, v, _ in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {G.vertices[0]}, [G.vertices[0]]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(G.vertices)


def _spanning_tree(G: MetricGraph) -> list[int]:
    # Kruskal over edges in lexicographic order of (u, v, index)
    parent = {v: v for v in G.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for idx in sorted(range(len(G.edges)), key=lambda i: (G.edges[i][0], G.edges[i][1], i)):
        u, v, _ = G.edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(idx)
    return tree


def _tree_path(G: MetricGraph, tree: list[int], start: str, end: str) -> dict[int, int]:
    """Oriented edge multiplicities of the tree path from ``start`` to ``end``."""
    adj = {v: [] for v in G.vertices}
    for i in tree:
        u, v, _ = G.edges[i]
        adj[u].append((v, i, 1))
        adj[v].append((u, i, -1))
    back = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, i, s in adj[x]:
            if y not in back:
                back[y] = (x, i, s)
                stack.append(y)
    path = {}
    x = end
    while back[x] is not None:
        prev, i, s = back[x]
        path[i] = s
        x = prev
    return path


def cycle_basis(G: MetricGraph) -> list[list[int]]:
    """Fundamental cycles, one row per non-tree edge, one column per edge.

    A non-tree edge ``u -> v`` is closed up by the tree path from ``v``
    back to ``u``; entries are +1 or -1 by orientation, 0 off the cycle.
    """
    tree = set(_spanning_tree(G))
    m = len(G.edges)
    rows = []
    for idx in range(m):
        if idx in tree:
            continue
        u, v, _ = G.edges[idx]
        row = [0] * m
        row[idx] = 1
        if u != v:
            for i, s in _tree_path(G, sorted(tree), v, u).items():
                row[i] = s
        rows.append(row)
    return rows


def gram_matrix(G: MetricGraph, basis: Sequence[Sequence[int]]) -> IntMatrix:
    lengths = [n for _, _, n in G.edges]
    return IntMatrix.from_rows([[sum(n * a * b for n, a, b in zip(lengths, ra, rb)) for rb in basis]
                                for ra in basis])


def spanning_tree_weight(G: MetricGraph) -> int:
    """``sum over spanning trees T of prod_{e not in T} len(e)`` by the matrix-tree theorem.

    Uses the Laplacian with conductances ``1/len``; loops drop out.
    """
    idx = {v: i for i, v in enumerate(G.vertices)}
    n = len(G.vertices)
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, v, ln in G.edges:
        if u == v:
            continue
        a, b = idx[u], idx[v]
        w = Fraction(1, ln)
        lap[a][a] += w
        lap[b][b] += w
        lap[a][b] -= w
        lap[b][a] -= w
    reduced = RatMatrix.from_rows([r[1:] for r in lap[1:]]) if n > 1 else RatMatrix(0, 0, [])
    total = det_exact(reduced) * math.prod(ln for _, _, ln in G.edges)
    assert total.denominator == 1
    return int(total)


@dataclass(frozen=True)
class JacobianInstance:
    genus: int
    cycle_basis: tuple[tuple[int, ...], ...]
    gram: IntMatrix
    torus: TorusDescriptor
    theta: AppellHumbertData


def jacobian_instance(G: MetricGraph) -> JacobianInstance:
    """Principally polarized Jacobian: ``E`` is the identity and ``P`` the Gram matrix."""
    basis = cycle_basis(G)
    g = len(basis)
    if g != G.genus:
        raise ArithmeticError("cycle basis size differs from the first Betti number")
    Q = gram_matrix(G, basis)
    T = TorusDescriptor(g, tuple(f"gamma{i}" for i in range(1, g + 1)),
                        tuple(f"gamma{i}^" for i in range(1, g + 1)), "Jac")
    theta = AppellHumbertData(T, IntMatrix.identity(g), (0,) * g, Q if g else None)
    return JacobianInstance(g, tuple(tuple(r) for r in basis), Q, T, theta)


def run_jacobian_poincare(G: MetricGraph, seed=None) -> list[VerificationReport]:
    """``c^(star d) / d! = [Theta]^(g-d) / (g-d)!`` for ``d = 0..g``, ``c = [Theta]^(g-1) / (g-1)!``."""
    J = jacobian_instance(G)
    g = J.genus
    if g == 0:
        return []
    if not is_ample(J.theta) or h0(J.theta) != 1:
        raise ArithmeticError("theta polarization is not principal")
    c = intersection_power_class(J.theta, g - 1) / math.factorial(g - 1)
    out = []
    for d in range(g + 1):
        lhs = pontryagin_power(c, d) / math.factorial(d)
        rhs = intersection_power_class(J.theta, g - d) / math.factorial(g - d)
        out.append(VerificationReport("jacobian-poincare", {"g": g, "d": d, "gram": J.gram},
                                      lhs, rhs, lhs == rhs, seed))
    return out
