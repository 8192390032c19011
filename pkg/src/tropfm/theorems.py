"""Two-sided verifiers for the torus identities, plus seeded instance generators.

Every verifier computes both sides independently and compares them as
exact rational classes. A :class:`VerificationReport` records the
instance, both sides and the outcome. ``pass`` is true exactly when the
two sides agree term by term.

Randomness: a trial ``i`` run under master seed ``s`` uses
``random.Random(trial_seed(s, i))``, where :func:`trial_seed` is the
splitmix64 output for state ``s + (i + 1) * 0x9E3779B97F4A7C15``
(mod ``2**64``). Both pieces are fully specified integer arithmetic, so
runs repeat bit for bit on every platform.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from tropfm.exact_linalg import (
    IntMatrix,
    RatMatrix,
    check_cauchy_binet,
    check_jacobi_identity,
    cokernel_order,
    det_exact,
    format_rational,
    minor,
)
from tropfm.exterior import subsets
from tropfm.fourier_mukai import (
    fm_closed,
    fm_oracle,
    kunneth_blocks,
    poincare_bundle,
    poincare_chern,
    pushforward_phi,
    restriction_check,
)
from tropfm.line_bundles import (
    AppellHumbertData,
    BundleDomainError,
    chern,
    deg_phi,
    factor_of_automorphy,
    h0,
    inverse_bundle,
    is_ample,
    is_isomorphic,
    is_nondegenerate,
    restrict,
    tensor,
    theorem_of_square_check,
    trivial_bundle,
)
from tropfm.torus import (
    CohClass,
    HomClass,
    TorusDescriptor,
    cap,
    class_power,
    degree,
    fundamental_class,
    pontryagin_hom,
    standard_torus,
)

__all__ = [
    "CrossCheckError",
    "VerificationReport",
    "splitmix64",
    "trial_seed",
    "random_symmetric_E",
    "random_ample_E",
    "random_general_E",
    "intersection_power_class",
    "pontryagin_power",
    "verify_fm_theorem",
    "verify_generalized_poincare",
    "verify_top_power",
    "verify_geometric_rr",
    "verify_binomial_pontryagin",
    "verify_prym_identity",
    "verify_square",
    "verify_cocycle",
    "verify_poincare_bundle",
    "verify_seesaw",
    "verify_jacobi",
    "verify_cauchy_binet",
    "GENERATORS",
    "run_trials",
]

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class CrossCheckError(RuntimeError):
    """Two internal routes to the same quantity disagree: a bug, not a failed identity."""


def splitmix64(x: int) -> int:
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(master: int, index: int) -> int:
    return splitmix64((master + index * GOLDEN_GAMMA) & MASK64)


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _serialize(x):
    if isinstance(x, (CohClass, HomClass)):
        return x.to_json()
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, RatMatrix):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_serialize(y) for y in x]
    if isinstance(x, dict):
        return {k: _serialize(v) for k, v in x.items()}
    return x


@dataclass
class VerificationReport:
    identity: str
    instance: dict
    lhs: Any
    rhs: Any
    passed: bool
    seed: Optional[int] = None
    ms: Optional[float] = None
    exploratory: bool = False

    def to_json(self, timing: bool = False) -> dict:
        doc = {"identity": self.identity, "instance": _serialize(self.instance),
               "pass": self.passed, "lhs": _serialize(self.lhs), "rhs": _serialize(self.rhs),
               "seed": self.seed, "ms": round(self.ms, 3) if timing and self.ms is not None else None}
        if self.exploratory:
            doc["exploratory"] = True
        return doc


def _report(identity, instance, lhs, rhs, passed=None, **kw) -> VerificationReport:
    return VerificationReport(identity, instance, lhs, rhs, lhs == rhs if passed is None else passed, **kw)


# --- random instances -------------------------------------------------------

def random_symmetric_E(g: int, bound: int = 5, seed=None) -> IntMatrix:
    """Symmetric integer matrix with entries in ``[-bound, bound]`` and nonzero determinant."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rng = _rng(seed)
    while True:
        rows = [[0] * g for _ in range(g)]
        for i in range(g):
            for j in range(i, g):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        M = IntMatrix.from_rows(rows)
        if det_exact(M) != 0:
            return M


def random_ample_E(g: int, bound: int = 2, seed=None) -> IntMatrix:
    """``A^T A + I`` for a random integer ``A`` with entries in ``[-bound, bound]``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rng = _rng(seed)
    A = IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(g)] for _ in range(g)])
    return A.transpose() @ A + IntMatrix.identity(g)


def random_general_E(g: int, bound: int = 5, seed=None) -> IntMatrix:
    """Integer matrix with nonzero determinant, not necessarily symmetric."""
    rng = _rng(seed)
    while True:
        M = IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(g)] for _ in range(g)])
        if det_exact(M) != 0:
            return M


def _random_rational(rng, bound=3, den=4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


# --- classes built from a bundle -------------------------------------------

def _instance(L: AppellHumbertData, **extra) -> dict:
    d = {"g": L.g, "E": [[int(x) for x in L.E.row(i)] for i in range(L.g)]}
    if L.P is not None:
        d["P"] = L.P
    d.update(extra)
    return d


def intersection_power_class(L: AppellHumbertData, p: int) -> HomClass:
    """``[D]^p = c1(L)^p`` capped with the fundamental class."""
    if not 0 <= p <= L.g:
        raise ValueError(f"p must lie in 0..{L.g}")
    return cap(class_power(chern(L), p), fundamental_class(L.torus))


def pontryagin_power(h: HomClass, k: int) -> HomClass:
    """``h`` star itself ``k`` times; the 0th power is ``[1]``."""
    out = HomClass.unit(h.torus)
    for _ in range(k):
        out = pontryagin_hom(out, h)
    return out


def _minors_expansion(L: AppellHumbertData, p: int) -> CohClass:
    g = L.g
    return CohClass(L.torus, {(I, J): minor(L.E, I, J)
                              for I in subsets(g, p) for J in subsets(g, p)})


# --- the identities ---------------------------------------------------------

def verify_fm_theorem(L: AppellHumbertData, p: int, seed=None, exploratory: bool = False) -> VerificationReport:
    """``F(c1^p / p!) = (-1)^(g-p) / det E * phi_*(c1^(g-p) / (g-p)!)``.

    The left side is computed twice, by the closed form and by the
    definition, and ``c1^p / p!`` is compared with its minors expansion;
    any disagreement there raises :class:`CrossCheckError`.
    """
    g = L.g
    if not 0 <= p <= g:
        raise ValueError(f"p must lie in 0..{g}")
    if not is_nondegenerate(L):
        raise BundleDomainError("the theorem needs det E != 0")
    if L.P is not None and not exploratory:
        raise BundleDomainError("bundles with an embedding P are only run in exploratory mode")
    t0 = time.perf_counter()
    c1 = chern(L)
    a = class_power(c1, p) / math.factorial(p)
    if a != _minors_expansion(L, p):
        raise CrossCheckError("c1^p/p! differs from its minors expansion")
    lhs = fm_closed(a)
    if lhs != fm_oracle(a):
        raise CrossCheckError("closed-form transform differs from the definition")
    b = class_power(c1, g - p) / math.factorial(g - p)
    rhs = pushforward_phi(L, b) * Fraction((-1) ** (g - p), det_exact(L.E))
    return _report("fm", _instance(L, p=p), lhs, rhs, seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3, exploratory=exploratory)


def verify_generalized_poincare(L: AppellHumbertData, p: int, variant: str = "h0",
                                seed=None) -> VerificationReport:
    """``[D]^p / p! = d * c^(star (g-p)) / (g-p)!`` with ``c = [D]^(g-1) / (d (g-1)!)``.

    ``variant="h0"`` takes ``d = h0(L)`` and needs an ample bundle;
    ``variant="det"`` takes ``d = det E`` and only needs ``det E != 0``.
    """
    g = L.g
    if g < 1 or not 0 <= p <= g:
        raise ValueError(f"need g >= 1 and p in 0..{g}")
    if variant == "h0":
        d = Fraction(h0(L))
    elif variant == "det":
        d = det_exact(L.E)
        if d == 0:
            raise BundleDomainError("det E = 0")
    else:
        raise ValueError("variant is 'h0' or 'det'")
    t0 = time.perf_counter()
    lhs = intersection_power_class(L, p) / math.factorial(p)
    c = intersection_power_class(L, g - 1) / (d * math.factorial(g - 1))
    rhs = pontryagin_power(c, g - p) * (d / math.factorial(g - p))
    return _report("poincare", _instance(L, p=p, variant=variant), lhs, rhs, seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_top_power(L: AppellHumbertData, seed=None) -> VerificationReport:
    """``deg [D]^g / g! = h0(L)``."""
    t0 = time.perf_counter()
    lhs = degree(intersection_power_class(L, L.g)) / math.factorial(L.g)
    rhs = Fraction(h0(L))
    return _report("top", _instance(L), lhs, rhs, seed=seed, ms=(time.perf_counter() - t0) * 1e3)


def verify_geometric_rr(L: AppellHumbertData, seed=None) -> VerificationReport:
    """``integral of c1^g / g!`` (as degree of the cap with ``[X]``) against ``h0``, ``|coker E|`` and ``deg phi``."""
    t0 = time.perf_counter()
    g = L.g
    integral = degree(cap(class_power(chern(L), g) / math.factorial(g), fundamental_class(L.torus)))
    sections = Fraction(h0(L))
    coker = cokernel_order(L.E)
    dphi = deg_phi(L)
    ok = integral == sections == coker == dphi == det_exact(L.E)
    return _report("rr", _instance(L, h0=sections, coker=Fraction(coker), deg_phi=Fraction(dphi)),
                   integral, sections, passed=ok, seed=seed, ms=(time.perf_counter() - t0) * 1e3)


def verify_binomial_pontryagin(L: AppellHumbertData, p: int, q: int, seed=None) -> VerificationReport:
    """``[D]^p/p! star [D]^q/q! = d C(2g-p-q, g-p) [D]^(p+q-g)/(p+q-g)!`` for ``p + q >= g``.

    Below that range the right side is taken to be zero.
    """
    g = L.g
    if not (0 <= p <= g and 0 <= q <= g):
        raise ValueError(f"p and q must lie in 0..{g}")
    t0 = time.perf_counter()
    d = h0(L)
    lhs = pontryagin_hom(intersection_power_class(L, p) / math.factorial(p),
                         intersection_power_class(L, q) / math.factorial(q))
    if p + q >= g:
        k = p + q - g
        rhs = intersection_power_class(L, k) * Fraction(d * math.comb(2 * g - p - q, g - p),
                                                        math.factorial(k))
    else:
        rhs = HomClass.zero(L.torus)
    return _report("binomial", _instance(L, p=p, q=q), lhs, rhs, seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_prym_identity(g0: int, d: int, seed=None) -> VerificationReport:
    """``(2 c)^(star d) / d! = 2^d [zeta]^(g0-d) / (g0-d)!`` for the principal polarization ``zeta``.

    ``c = [zeta]^(g0-1) / (g0-1)!`` plays the class of the image of the
    Abel-Prym map, whose doubling is taken as given.
    """
    if not 1 <= d <= g0:
        raise ValueError("need 1 <= d <= g0")
    t0 = time.perf_counter()
    T = standard_torus(g0)
    zeta = AppellHumbertData(T, IntMatrix.identity(g0), (0,) * g0)
    c = intersection_power_class(zeta, g0 - 1) / math.factorial(g0 - 1)
    lhs = pontryagin_power(c * 2, d) / math.factorial(d)
    rhs = intersection_power_class(zeta, g0 - d) * Fraction(2 ** d, math.factorial(g0 - d))
    return _report("prym", {"g0": g0, "d": d}, lhs, rhs, seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_square(L: AppellHumbertData, x, y, seed=None) -> VerificationReport:
    t0 = time.perf_counter()
    ok = theorem_of_square_check(L, x, y)
    return _report("square", _instance(L, l=list(L.l), x=list(x), y=list(y)), ok, True,
                   seed=seed, ms=(time.perf_counter() - t0) * 1e3)


def verify_cocycle(L: AppellHumbertData, lam, mu, x, seed=None) -> VerificationReport:
    """``a(lambda + mu, x) = a(lambda, mu + x) + a(mu, x)``; ``mu`` is moved into ``N_R`` through ``P``."""
    t0 = time.perf_counter()
    lam_mu = [a + b for a, b in zip(lam, mu)]
    mu_n = L.embedding().apply(mu)
    lhs = factor_of_automorphy(L, lam_mu, x)
    rhs = factor_of_automorphy(L, lam, [a + b for a, b in zip(mu_n, x)]) + factor_of_automorphy(L, mu, x)
    return _report("cocycle", _instance(L, l=list(L.l), lam=list(lam), mu=list(mu), x=list(x)),
                   lhs, rhs, seed=seed, ms=(time.perf_counter() - t0) * 1e3)


def verify_poincare_bundle(T: TorusDescriptor, points, seed=None) -> VerificationReport:
    """Restrictions at each sampled ``L``, Chern class closed form and Kunneth support."""
    t0 = time.perf_counter()
    PB = poincare_bundle(T)
    restrictions = all(restriction_check(PB, pt) for pt in points)
    c1 = chern(PB.ah_data)
    closed = c1 == poincare_chern(T)
    middle = kunneth_blocks(c1) <= {(1, 2), (2, 1)}
    checks = {"restrictions": restrictions, "chern_closed_form": closed, "kunneth_middle": middle}
    return _report("poincare-bundle", {"g": T.g, "points": [list(p) for p in points], "checks": checks},
                   c1, poincare_chern(T), passed=all(checks.values()), seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_seesaw(T: TorusDescriptor, rng, seed=None) -> VerificationReport:
    """Weak seesaw on ``X x X_dual`` and uniqueness of the Poincare bundle.

    Twisting the Poincare bundle by an integral ``l`` gives another bundle
    with the defining restrictions; the quotient of the two must satisfy
    the seesaw hypotheses and be trivial. A random bundle with ``E = 0``
    is trivial exactly when both restriction families are trivial.
    """
    t0 = time.perf_counter()
    g = T.g
    PB = poincare_bundle(T)
    twist = AppellHumbertData(PB.product, IntMatrix.zeros(2 * g, 2 * g),
                              [rng.randint(-3, 3) for _ in range(2 * g)])
    other = tensor(PB.ah_data, twist)
    quotient = tensor(PB.ah_data, inverse_bundle(other))
    samples = [[_random_rational(rng) for _ in range(g)] for _ in range(3)]
    X, Xd = PB.product.split

    def hypotheses(M):
        return all(is_isomorphic(restrict(M, True, y), trivial_bundle(X)) for y in samples) and all(
            is_isomorphic(restrict(M, False, x), trivial_bundle(Xd)) for x in samples)

    triv = trivial_bundle(PB.product)
    uniqueness = hypotheses(quotient) and is_isomorphic(quotient, triv)
    unique_restr = all(restriction_check(PB, y) for y in samples)
    # E = 0 with random linear part, integral about half the time
    lin = [Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2))) for _ in range(2 * g)]
    flat = AppellHumbertData(PB.product, IntMatrix.zeros(2 * g, 2 * g), lin)
    seesaw = (not hypotheses(flat)) or is_isomorphic(flat, triv)
    checks = {"uniqueness": uniqueness, "restrictions": unique_restr, "seesaw": seesaw}
    return _report("seesaw", {"g": g, "twist": list(twist.l), "flat_l": lin, "checks": checks},
                   checks, {k: True for k in checks}, passed=all(checks.values()), seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_jacobi(M: RatMatrix, I, J, seed=None) -> VerificationReport:
    t0 = time.perf_counter()
    ok = check_jacobi_identity(M, I, J)
    return _report("jacobi", {"M": M, "I": list(I), "J": list(J)}, ok, True, seed=seed,
                   ms=(time.perf_counter() - t0) * 1e3)


def verify_cauchy_binet(A: RatMatrix, B: RatMatrix, I, J, seed=None) -> VerificationReport:
    t0 = time.perf_counter()
    ok = check_cauchy_binet(A, B, I, J)
    return _report("cauchy-binet", {"A": A, "B": B, "I": list(I), "J": list(J)}, ok, True,
                   seed=seed, ms=(time.perf_counter() - t0) * 1e3)


# --- trial generators -------------------------------------------------------
# each takes (rng, seed, params) and returns a list of reports for one trial

def _pick_g(params, rng, lo=1, hi=4):
    return params["g"] if params.get("g") is not None else rng.randint(lo, hi)


def _ps(params, g):
    return [params["p"]] if params.get("p") is not None else list(range(g + 1))


def _gen_fm(rng, seed, params):
    g = _pick_g(params, rng)
    bound = params.get("bound") or 5
    if params.get("exploratory"):
        E = random_general_E(g, bound, rng)
        L = AppellHumbertData(standard_torus(g), E, (0,) * g, E.transpose())
    else:
        L = AppellHumbertData.from_E(random_symmetric_E(g, bound, rng))
    return [verify_fm_theorem(L, p, seed, exploratory=bool(params.get("exploratory")))
            for p in _ps(params, g)]


def _gen_poincare(rng, seed, params):
    g = _pick_g(params, rng)
    bound = params.get("bound") or 2
    if params.get("variant") == "det":
        while True:
            E = random_symmetric_E(g, bound, rng)
            L = AppellHumbertData.from_E(E)
            if not is_ample(L):
                break
            if g == 1 and det_exact(E) > 0:
                # every 1x1 with positive det is ample; flip the sign
                L = AppellHumbertData.from_E(-E)
                break
        return [verify_generalized_poincare(L, p, "det", seed) for p in _ps(params, g)]
    L = AppellHumbertData.from_E(random_ample_E(g, bound, rng))
    return [verify_generalized_poincare(L, p, "h0", seed) for p in _ps(params, g)]


def _gen_top(rng, seed, params):
    g = _pick_g(params, rng, 1, 5)
    return [verify_top_power(AppellHumbertData.from_E(random_ample_E(g, params.get("bound") or 2, rng)), seed)]


def _gen_rr(rng, seed, params):
    g = _pick_g(params, rng, 1, 5)
    return [verify_geometric_rr(AppellHumbertData.from_E(random_ample_E(g, params.get("bound") or 2, rng)), seed)]


def _gen_binomial(rng, seed, params):
    g = _pick_g(params, rng)
    L = AppellHumbertData.from_E(random_ample_E(g, params.get("bound") or 2, rng))
    pairs = [(p, q) for p in range(g + 1) for q in range(g + 1) if p + q >= g]
    if params.get("p") is not None and params.get("q") is not None:
        pairs = [(params["p"], params["q"])]
    return [verify_binomial_pontryagin(L, p, q, seed) for p, q in pairs]


def _gen_prym(rng, seed, params):
    g0 = params["g"] if params.get("g") is not None else rng.randint(1, 5)
    ds = [params["d"]] if params.get("d") is not None else range(1, g0 + 1)
    return [verify_prym_identity(g0, d, seed) for d in ds]


def _gen_square(rng, seed, params):
    g = _pick_g(params, rng)
    L = AppellHumbertData.from_E(random_symmetric_E(g, params.get("bound") or 5, rng),
                                 [_random_rational(rng) for _ in range(g)])
    x = [_random_rational(rng) for _ in range(g)]
    y = [_random_rational(rng) for _ in range(g)]
    lam = [rng.randint(-4, 4) for _ in range(g)]
    mu = [rng.randint(-4, 4) for _ in range(g)]
    return [verify_square(L, x, y, seed), verify_cocycle(L, lam, mu, x, seed)]


def _gen_seesaw(rng, seed, params):
    g = _pick_g(params, rng, 1, 3)
    T = standard_torus(g)
    points = [[_random_rational(rng) for _ in range(g)] for _ in range(20)]
    return [verify_poincare_bundle(T, points, seed), verify_seesaw(T, rng, seed)]


def _random_invertible(rng, n, bound=5):
    while True:
        M = RatMatrix.from_rows([[_random_rational(rng, bound, 3) for _ in range(n)] for _ in range(n)])
        if det_exact(M) != 0:
            return M


def _gen_jacobi(rng, seed, params):
    n = params["g"] if params.get("g") is not None else rng.randint(1, 5)
    M = _random_invertible(rng, n, params.get("bound") or 5)
    k = rng.randint(0, n)
    I = sorted(rng.sample(range(1, n + 1), k))
    J = sorted(rng.sample(range(1, n + 1), k))
    return [verify_jacobi(M, I, J, seed)]


def _gen_cauchy_binet(rng, seed, params):
    b = params.get("bound") or 5
    r, m, c = (rng.randint(1, 5) for _ in range(3))
    if params.get("g") is not None:
        r = m = c = params["g"]
    A = RatMatrix.from_rows([[_random_rational(rng, b, 3) for _ in range(m)] for _ in range(r)])
    B = RatMatrix.from_rows([[_random_rational(rng, b, 3) for _ in range(c)] for _ in range(m)])
    k = rng.randint(0, min(r, c))
    I = sorted(rng.sample(range(1, r + 1), k))
    J = sorted(rng.sample(range(1, c + 1), k))
    return [verify_cauchy_binet(A, B, I, J, seed)]


GENERATORS: dict[str, Callable] = {
    "fm": _gen_fm,
    "poincare": _gen_poincare,
    "top": _gen_top,
    "rr": _gen_rr,
    "binomial": _gen_binomial,
    "prym": _gen_prym,
    "square": _gen_square,
    "seesaw": _gen_seesaw,
    "jacobi": _gen_jacobi,
    "cauchy-binet": _gen_cauchy_binet,
}


def run_trials(identity: str, trials: int, seed: int, params: dict | None = None,
               workers: int = 1) -> list[list[VerificationReport]]:
    """Run ``trials`` seeded trials; results are ordered by trial index.

    With ``workers > 1`` trials run in a thread pool; each trial draws only
    from its own generator, so the output does not depend on scheduling.
    """
    if identity not in GENERATORS:
        raise KeyError(f"unknown identity {identity!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    gen = GENERATORS[identity]
    params = dict(params or {})

    def one(i):
        s = trial_seed(seed, i)
        return gen(random.Random(s), s, params)

    if workers <= 1:
        return [one(i) for i in range(trials)]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(one, range(trials)))
