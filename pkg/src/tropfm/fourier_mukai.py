"""The Poincare bundle and the Fourier-Mukai transform on torus cohomology.

Two independent routes compute the transform. :func:`fm_oracle` follows
the definition: pull back to ``X x X_dual``, cup with the exponential of
the Poincare class and push forward to ``X_dual``. :func:`fm_closed`
writes down the answer on each basis class as a signed complement. Their
agreement on every basis class is the check on every sign convention.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from tropfm.exact_linalg import IntMatrix, minor
from tropfm.exterior import MultiIndex, complement, shuffle_sign, subsets
from tropfm.line_bundles import (
    AppellHumbertData,
    BundleDomainError,
    is_isomorphic,
    is_nondegenerate,
    phi_matrices,
    restrict,
    trivial_bundle,
)
from tropfm.torus import (
    CohClass,
    HomClass,
    TorusDescriptor,
    cup,
    dual_torus,
    exp_class,
    pd_to_coh,
    pd_to_hom,
    product_torus,
    pullback_p1,
    pushforward_p2,
)

__all__ = [
    "PoincareBundle",
    "poincare_bundle",
    "restriction_check",
    "poincare_chern",
    "kunneth_blocks",
    "fm_kernel",
    "fm_kernel_closed",
    "fm_closed",
    "fm_oracle",
    "pushforward_phi",
]


@dataclass(frozen=True)
class PoincareBundle:
    product: TorusDescriptor
    ah_data: AppellHumbertData

    @property
    def base(self) -> TorusDescriptor:
        return self.product.split[0]


def _poincare_matrix(g: int) -> IntMatrix:
    return IntMatrix.from_rows([[-1 if abs(i - j) == g else 0 for j in range(2 * g)]
                                for i in range(2 * g)])


def poincare_bundle(T: TorusDescriptor) -> PoincareBundle:
    """``l = 0`` and ``E((n1, a1), (n2, a2)) = -a2(n1) - a1(n2)`` on ``X x X_dual``."""
    P = product_torus(T, dual_torus(T))
    return PoincareBundle(P, AppellHumbertData(P, _poincare_matrix(T.g), (0,) * (2 * T.g)))


def restriction_check(PB: PoincareBundle, lstar) -> bool:
    """Restriction to ``X x {L}`` is ``L(0, l*)`` and restriction to ``{0} x X_dual`` is trivial.

    ``lstar`` is the point ``L`` of ``X_dual`` as a rational ``Lambda*``-vector.
    """
    X, Xd = PB.product.split
    lstar = tuple(Fraction(x) for x in lstar)
    on_x = restrict(PB.ah_data, True, lstar)
    target = AppellHumbertData(X, IntMatrix.zeros(X.g, X.g), lstar)
    on_dual = restrict(PB.ah_data, False, (0,) * X.g)
    return is_isomorphic(on_x, target) and is_isomorphic(on_dual, trivial_bundle(Xd))


def poincare_chern(T: TorusDescriptor) -> CohClass:
    """``-sum eta*_i (x) eta_i - sum lambda*_i (x) lambda_i``, written out term by term.

    Built from the formula rather than from the bundle, so that comparing
    with ``chern(poincare_bundle(T).ah_data)`` is a real check.
    """
    g = T.g
    P = product_torus(T, dual_torus(T))
    terms = {}
    for i in range(1, g + 1):
        terms[((i,), (g + i,))] = -1   # lambda*_i against the Lambda** = Lambda slot
        terms[((g + i,), (i,))] = -1   # N** = N slot against eta*_i
    return CohClass(P, terms)


def kunneth_blocks(c: CohClass) -> set[tuple[int, int]]:
    """Which (slot 1 factor, slot 2 factor) pairs carry the (1,1) terms of ``c``."""
    g1 = c.torus.split[0].g
    out = set()
    for (I, J), _ in c.items():
        if len(I) == 1 and len(J) == 1:
            out.add((1 if I[0] <= g1 else 2, 1 if J[0] <= g1 else 2))
    return out


_kernel_lock = threading.Lock()


@lru_cache(maxsize=None)
def _kernel(T: TorusDescriptor) -> CohClass:
    return exp_class(poincare_chern(T))


def fm_kernel(T: TorusDescriptor) -> CohClass:
    """``exp(c1(P_X))`` computed by repeated cup products (cached per torus)."""
    with _kernel_lock:
        return _kernel(T)


def fm_kernel_closed(T: TorusDescriptor) -> CohClass:
    """The ``4^g`` terms of the kernel written down directly.

    For ``R, S`` subsets of ``[g]`` with sizes ``r, s`` the coefficient of
    ``(R + g S | S + g R)`` is ``(-1)^(r + s + r s)``: the product of the
    pairs ``lambda*_i lambda_i`` and ``eta_j eta*_j``, reordered by super
    commutativity.
    """
    g = T.g
    P = product_torus(T, dual_torus(T))
    terms = {}
    for R in subsets(g):
        for S in subsets(g):
            r, s = len(R), len(S)
            I = tuple(R) + tuple(g + j for j in S)
            J = tuple(S) + tuple(g + i for i in R)
            terms[(I, J)] = -1 if (r + s + r * s) % 2 else 1
    return CohClass(P, terms)


def _fm_sign(g: int, I, J) -> int:
    p, q = len(J), len(I)
    n = 2 * g - p - q
    # the last three terms convert the complement to the stored slot order on the dual
    e = n * (n - 1) // 2 + (p + q) + p * (p - 1) // 2 + q * (q - 1) // 2 + g * (p + q)
    return (-1 if e % 2 else 1) * shuffle_sign(complement(I)) * shuffle_sign(complement(J))


def fm_closed(c: CohClass) -> CohClass:
    """Closed form of the transform.

    ``lambda*_I (x) eta*_J`` of bidegree ``(p, q) = (|J|, |I|)`` goes to
    ``sign * (eta*_{J^o} (x) lambda*_{I^o})`` on the dual torus, with
    ``sign = (-1)^(n(n-1)/2 + p + q) shuffle_sign(I^o) shuffle_sign(J^o)``
    times the reading sign ``(-1)^(p(p-1)/2 + q(q-1)/2 + g(p+q))``, where
    ``n = 2g - p - q``. The reading sign is 1 whenever ``p = q``.

    >>> from tropfm.torus import standard_torus
    >>> fm_closed(CohClass.unit(standard_torus(1)))
    CohClass(X^: -1*(eta1|lambda1))
    """
    T = c.torus
    Td = dual_torus(T)
    g = T.g
    table = {}
    for (I, J), v in c.items():
        key = (MultiIndex(complement(J), g), MultiIndex(complement(I), g))
        table[key] = table.get(key, Fraction(0)) + _fm_sign(g, I, J) * v
    return CohClass(Td, table)


def fm_oracle(c: CohClass) -> CohClass:
    """``p2_*(exp(c1(P_X)) cup p1^* c)``, evaluated literally."""
    T = c.torus
    P = product_torus(T, dual_torus(T))
    return pushforward_p2(cup(fm_kernel(T), pullback_p1(c, P)))


def _wedge_image(M, K, g: int) -> dict:
    # image of e_K under the map whose column k is the image of e_k
    out = {}
    for K2 in subsets(g, len(K)):
        m = minor(M, K2, K)
        if m:
            out[K2] = m
    return out


def pushforward_phi(L: AppellHumbertData, c: CohClass) -> CohClass:
    """Push ``c`` forward along ``phi_L: X -> X_dual`` through Poincare duality.

    In homology ``lambda_i`` goes to ``-sum_j E[i][j] eta*_j`` and
    ``eta_j`` to ``-sum_i E[i][j] lambda*_i``; wedge powers act by minors.
    """
    if not is_nondegenerate(L):
        raise BundleDomainError("phi_L is an isogeny only for nondegenerate L")
    if c.torus != L.torus:
        raise ValueError("class and bundle live on different tori")
    T = L.torus
    g = T.g
    M_N, M_Lam = phi_matrices(L)
    img_lam, img_n = {}, {}
    table = {}
    for (K, Lidx), v in pd_to_hom(c).items():
        if K not in img_lam:
            img_lam[K] = _wedge_image(M_Lam, K, g)
        if Lidx not in img_n:
            img_n[Lidx] = _wedge_image(M_N, Lidx, g)
        for K2, a in img_lam[K].items():
            for L2, b in img_n[Lidx].items():
                table[(K2, L2)] = table.get((K2, L2), Fraction(0)) + v * a * b
    return pd_to_coh(HomClass(dual_torus(T), table))
