"""
Jacobians of metric graphs
==========================

The cycle space of a metric graph with its edge-length pairing is a
principally polarized tropical torus. Its Gram determinant counts weighted
spanning trees, and the Poincare formula holds on the theta divisor.
"""

import json
from pathlib import Path

from tropfm import (
    cycle_basis,
    det_exact,
    gram_matrix,
    h0,
    jacobian_instance,
    parse_graph,
    run_jacobian_poincare,
    spanning_tree_weight,
)

data = Path(__file__).with_name("data")
for name in ("loop.json", "theta.json", "k4.json"):
    G = parse_graph(json.loads((data / name).read_text()))
    Q = gram_matrix(G, cycle_basis(G))
    J = jacobian_instance(G)
    ok = all(r.passed for r in run_jacobian_poincare(G))
    print(f"{name:11s} genus {G.genus}  gram {Q.int_rows()}  det {det_exact(Q)}"
          f"  trees {spanning_tree_weight(G)}  h0(theta) {h0(J.theta)}  Poincare formula: {ok}")
