import concurrent.futures
import math
import random
from fractions import Fraction

import pytest

from tropfm.exact_linalg import IntMatrix
from tropfm.exterior import subsets
from tropfm.fourier_mukai import (
    fm_closed,
    fm_kernel,
    fm_kernel_closed,
    fm_oracle,
    kunneth_blocks,
    poincare_bundle,
    poincare_chern,
    pushforward_phi,
    restriction_check,
)
from tropfm.line_bundles import AppellHumbertData, BundleDomainError, chern, factor_of_automorphy
from tropfm.theorems import random_symmetric_E
from tropfm.torus import (
    CohClass,
    class_power,
    cup,
    dual_torus,
    product_torus,
    standard_torus,
)

X1, X2, X3 = (standard_torus(g) for g in (1, 2, 3))


def test_poincare_bundle_g1():
    PB = poincare_bundle(X1)
    assert PB.ah_data.E == IntMatrix.from_rows([[0, -1], [-1, 0]])
    assert PB.ah_data.l == (0, 0)


def test_poincare_factor_formula():
    # a((lam, nu*), (n, l*)) = l*(lam) + nu*(n) + nu*(lam)
    rng = random.Random(3)
    for g in (1, 2, 3):
        E = poincare_bundle(standard_torus(g)).ah_data
        for _ in range(20):
            lam = [rng.randint(-3, 3) for _ in range(g)]
            nu = [rng.randint(-3, 3) for _ in range(g)]
            n = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(g)]
            ls = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(g)]
            expected = (sum(a * b for a, b in zip(ls, lam)) + sum(a * b for a, b in zip(nu, n))
                        + sum(a * b for a, b in zip(nu, lam)))
            assert factor_of_automorphy(E, lam + nu, n + ls) == expected
    assert factor_of_automorphy(poincare_bundle(X1).ah_data, [1, 0], [0, Fraction(2, 7)]) == Fraction(2, 7)


def test_restrictions():
    PB = poincare_bundle(X1)
    assert restriction_check(PB, [0])
    assert restriction_check(PB, [Fraction(1, 2)])
    assert restriction_check(PB, [Fraction(1, 2) + 3])
    PB3 = poincare_bundle(X3)
    assert restriction_check(PB3, [Fraction(1, 3), Fraction(-5, 2), 7])


def test_poincare_chern():
    c = poincare_chern(X1)
    assert len(c) == 2 and all(v == -1 for _, v in c.items())
    for g in (1, 2, 3):
        T = standard_torus(g)
        assert chern(poincare_bundle(T).ah_data) == poincare_chern(T)
        assert len(poincare_chern(T)) == 2 * g
        assert kunneth_blocks(poincare_chern(T)) == {(1, 2), (2, 1)}


def test_kernel_g1_by_hand():
    # c1 = -a - b with a = (1|2), b = (2|1).  a cup b: slot-1 merge +1, slot-2 merge -1,
    # cross sign (-1)^{1*2} = +1, so a b = -(12|12); likewise b a = -(12|12).
    # Hence c1^2/2 = (ab + ba)/2 = -(12|12).
    P = product_torus(X1, dual_torus(X1))
    expected = CohClass(P, {((), ()): 1, ((1,), (2,)): -1, ((2,), (1,)): -1, ((1, 2), (1, 2)): -1})
    assert fm_kernel(X1) == expected
    assert fm_kernel(standard_torus(0)) == CohClass.unit(product_torus(standard_torus(0), standard_torus(0, "X^")))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_kernel_closed_form(g):
    T = standard_torus(g)
    K = fm_kernel(T)
    assert K == fm_kernel_closed(T)
    assert len(K) == 4 ** g


@pytest.mark.parametrize("g", [1, 2])
def test_kernel_pair_reordering_sign(g):
    # the product of pairs (lam*_i lam_i)(eta_j eta*_j) in any order equals
    # (-1)^{n(n-1)/2} times (all slot-1 generators)(all slot-2 generators in pair order)
    T = standard_torus(g)
    P = product_torus(T, dual_torus(T))
    G = P.g
    for R in subsets(g):
        for S in subsets(g):
            pairs = [((i,), (g + i,)) for i in R] + [((g + j,), (j,)) for j in S]
            prod = CohClass.unit(P)
            for I, J in pairs:
                prod = cup(prod, CohClass.basis_element(P, I, J))
            n = len(pairs)
            left = CohClass.unit(P)
            for I, _ in pairs:
                left = cup(left, CohClass.basis_element(P, I, ()))
            right = CohClass.unit(P)
            for _, J in pairs:
                right = cup(right, CohClass.basis_element(P, (), J))
            assert prod == cup(left, right) * (-1) ** (n * (n - 1) // 2)
            assert G == 2 * g


def test_fm_examples_g1():
    T = X1
    Td = dual_torus(T)
    assert fm_closed(CohClass.unit(T)) == CohClass.basis_element(Td, (1,), (1,), -1)
    assert fm_closed(CohClass.basis_element(T, (1,), (1,))) == CohClass.unit(Td)
    # mixed degree: the two odd classes swap slots
    assert fm_closed(CohClass.basis_element(T, (1,), ())) == CohClass.basis_element(Td, (1,), (), 1)
    assert fm_closed(CohClass.basis_element(T, (), (1,))) == CohClass.basis_element(Td, (), (1,), 1)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_fm_closed_equals_oracle(g):
    T = standard_torus(g)
    for c in CohClass.basis(T):
        assert fm_closed(c) == fm_oracle(c)


def test_fm_linear_on_mixed_input():
    T = X2
    B = CohClass.basis(T)
    c = B[0] * 3 + B[5] * Fraction(-1, 2) + B[11]
    assert fm_closed(c) == fm_closed(B[0]) * 3 + fm_closed(B[5]) * Fraction(-1, 2) + fm_closed(B[11])
    assert fm_closed(c) == fm_oracle(c)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_fm_signed_permutation(g):
    T = standard_torus(g)
    for p in range(g + 1):
        for q in range(g + 1):
            images = set()
            for c in CohClass.basis(T, p, q):
                out = fm_closed(c)
                assert len(out) == 1
                (I, J), v = next(out.items())
                assert v in (1, -1)
                assert out.bidegrees() == {(g - q, g - p)}
                images.add((I, J))
            assert len(images) == math.comb(g, p) * math.comb(g, q)


def test_kernel_cache_is_thread_safe():
    T = standard_torus(3)
    with concurrent.futures.ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda _: fm_kernel(T), range(16)))
    assert all(r is results[0] for r in results)


def test_pushforward_phi_examples():
    L = AppellHumbertData.from_E([[2]])
    out = pushforward_phi(L, CohClass.unit(X1))
    assert out == CohClass.unit(dual_torus(X1)) * 4
    with pytest.raises(BundleDomainError):
        pushforward_phi(AppellHumbertData.from_E([[0]]), CohClass.unit(X1))


@pytest.mark.parametrize("g", [2, 3])
def test_pushforward_phi_diagonal_pattern(g):
    # E = diag(a): phi_* of a basis class scales by a over both complements
    a = [2, 3, 5][:g]
    L = AppellHumbertData.from_E(IntMatrix.diag(a))
    T = L.torus
    for p in range(g + 1):
        for c in CohClass.basis(T, p, p):
            (I, J), _ = next(c.items())
            Io = [i for i in range(1, g + 1) if i not in I]
            Jo = [j for j in range(1, g + 1) if j not in J]
            out = pushforward_phi(L, c)
            assert len(out) == 1
            (K, M), v = next(out.items())
            # a diagonal form keeps every index in place
            assert tuple(K) == tuple(I) and tuple(M) == tuple(J)
            assert abs(v) == math.prod(a[i - 1] for i in Io) * math.prod(a[j - 1] for j in Jo)


def test_pushforward_phi_identity_is_signed_bijection():
    g = 3
    L = AppellHumbertData.from_E(IntMatrix.identity(g))
    for p in range(g + 1):
        seen = set()
        for c in CohClass.basis(L.torus, p, p):
            out = pushforward_phi(L, c)
            (k, v), = out.items()
            assert v in (1, -1)
            seen.add(k)
        assert len(seen) == math.comb(g, p) ** 2


def test_pushforward_phi_injective_and_additive():
    rng = random.Random(8)
    L = AppellHumbertData.from_E(random_symmetric_E(3, 4, rng))
    B = CohClass.basis(L.torus, 1, 1)
    images = [pushforward_phi(L, b) for b in B]
    assert pushforward_phi(L, B[0] + B[4]) == images[0] + images[4]
    # rank of the image vectors
    keys = sorted({k for im in images for k, _ in im.items()}, key=repr)
    from tropfm.exact_linalg import RatMatrix, det_exact
    rows = [[im.terms().get(k, 0) for k in keys] for im in images]
    assert len(keys) == len(B) and det_exact(RatMatrix.from_rows(rows)) != 0


def test_main_identity_g1_by_hand():
    L = AppellHumbertData.from_E([[2]])
    c1 = chern(L)
    lhs = fm_closed(c1)
    rhs = pushforward_phi(L, CohClass.unit(X1)) * Fraction(1, 2)
    assert lhs == rhs == CohClass.unit(dual_torus(X1)) * 2
    lhs0 = fm_closed(CohClass.unit(X1))
    rhs0 = pushforward_phi(L, class_power(c1, 1)) * Fraction(-1, 2)
    assert lhs0 == rhs0
