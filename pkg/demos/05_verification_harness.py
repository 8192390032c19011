"""
Seeded verification of the identities
=====================================

Each verifier computes both sides independently and compares them exactly.
``run_trials`` derives one sub-seed per trial from a master seed, so a run
is reproducible and the order of results never depends on scheduling.
"""

import json

from tropfm import (
    AppellHumbertData,
    run_trials,
    verify_binomial_pontryagin,
    verify_generalized_poincare,
    verify_prym_identity,
    verify_top_power,
)

L = AppellHumbertData.from_E([[2, 1], [1, 3]])
print("top power:", verify_top_power(L).passed)
print("generalized Poincare, every p:", all(verify_generalized_poincare(L, p).passed for p in range(3)))
print("binomial (1, 2):", verify_binomial_pontryagin(L, 1, 2).passed)
print("Prym scaling g0=3, d=2:", verify_prym_identity(3, 2).passed)

# Non-ample but nondegenerate: the constant becomes det E.
D = AppellHumbertData.from_E([[1, 0], [0, -1]])
print("det variant:", all(verify_generalized_poincare(D, p, "det").passed for p in range(3)))

for name in ("fm", "poincare", "rr", "square", "jacobi"):
    batches = run_trials(name, 20, seed=7, workers=4)
    reports = [r for b in batches for r in b]
    print(f"{name:10s} {sum(r.passed for r in reports)}/{len(reports)} pass")

# One report, as it appears in the CLI's JSON Lines output.
print(json.dumps(run_trials("top", 1, seed=7)[0][0].to_json(), sort_keys=True))
