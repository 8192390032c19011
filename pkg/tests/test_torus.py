from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropfm.exterior import complement, shuffle_sign
from tropfm.torus import (
    CohClass,
    DegreeDomainError,
    HomClass,
    TorusMismatch,
    cap,
    cup,
    degree,
    delta_top,
    dual_torus,
    fundamental_class,
    pd_to_coh,
    pd_to_hom,
    pontryagin_coh,
    pontryagin_hom,
    product_torus,
    pullback_p1,
    pushforward_p2,
    standard_torus,
)

X1, X2, X3, X4 = (standard_torus(g) for g in (1, 2, 3, 4))


def coh(T, I=(), J=(), c=1):
    return CohClass.basis_element(T, I, J, c)


def hom(T, I=(), J=(), c=1):
    return HomClass.basis_element(T, I, J, c)


def key(cls):
    (I, J), v = next(cls.items())
    return tuple(I), tuple(J), v


# --- descriptors -------------------------------------------------------------

def test_dual_torus_labels():
    D = dual_torus(X1)
    assert D.lambda_labels == ("eta1*",) and D.n_labels == ("lambda1*",)
    assert dual_torus(D) == X1
    assert len(CohClass.basis(dual_torus(X2), 1, 1)) == 4


def test_product_torus_labels():
    Y = standard_torus(2, "Y")
    P = product_torus(X1, Y)
    assert P.g == 3 and P.split == (X1, Y)
    assert P.lambda_labels == ("lambda1", "lambda1", "lambda2")
    Q = product_torus(P, X1)
    R = product_torus(X1, product_torus(Y, X1))
    assert Q.lambda_labels == R.lambda_labels and Q.n_labels == R.n_labels
    Z = standard_torus(0, "pt")
    assert product_torus(X1, Z).lambda_labels == X1.lambda_labels


# --- products -----------------------------------------------------------------

def test_cup_examples():
    a = coh(X2, (1,), (2,), 3)
    assert cup(a, CohClass.unit(X2)) == a
    assert cup(CohClass.unit(X2), a) == a
    assert key(cup(coh(X2, (1,)), coh(X2, (2,)))) == ((1, 2), (), 1)
    assert not cup(coh(X1, (1,), (1,)), coh(X1, (1,), (1,)))


def test_cup_cross_sign():
    # eta*_1 then eta*_2 carries the extra block sign
    assert key(cup(coh(X2, (), (1,)), coh(X2, (), (2,)))) == ((), (1, 2), -1)
    # (1,1)-classes commute past each other with no sign
    a, b = coh(X2, (1,), (1,)), coh(X2, (2,), (2,))
    assert cup(a, b) == cup(b, a) == coh(X2, (1, 2), (1, 2))


def test_cup_rejects_other_torus():
    with pytest.raises(TorusMismatch):
        cup(CohClass.unit(X1), CohClass.unit(X2))


@pytest.mark.parametrize("T", [X1, X2, X3], ids=lambda T: f"g{T.g}")
def test_cup_associative(T):
    B = CohClass.basis(T)
    for a in B[:: max(1, len(B) // 16)]:
        for b in B[:: max(1, len(B) // 16)]:
            for c in B[:: max(1, len(B) // 8)]:
                assert cup(cup(a, b), c) == cup(a, cup(b, c))


def test_power_of_chern_class_is_minors():
    # c = 2 l1*e1* + l1*e2* + l2*e1* + 3 l2*e2*; c^2/2 = det E top
    E = [[2, 1], [1, 3]]
    c = CohClass(X2, {((i + 1,), (j + 1,)): E[i][j] for i in range(2) for j in range(2)})
    assert cup(c, c) / 2 == coh(X2, (1, 2), (1, 2), 5)


def test_cap_examples():
    h = hom(X2, (1,), (2,), 7)
    assert cap(CohClass.unit(X2), h) == h
    assert cap(coh(X1, (1,), (1,)), fundamental_class(X1)) == HomClass.unit(X1)
    # e1* contracted into e12 from the right is -e2 in each slot
    assert cap(coh(X2, (1,), (1,)), fundamental_class(X2)) == hom(X2, (2,), (2,))


def test_fundamental_class():
    assert key(fundamental_class(X1)) == ((1,), (1,), 1)
    assert key(fundamental_class(X2)) == ((1, 2), (1, 2), 1)
    top = coh(X3, (1, 2, 3), (1, 2, 3))
    assert degree(cap(top, fundamental_class(X3))) == 1


def test_pd_examples():
    assert pd_to_hom(coh(X1, (1,), (1,))) == HomClass.unit(X1)
    assert pd_to_hom(coh(X2, (1,), (1,))) == hom(X2, (2,), (2,))


@pytest.mark.parametrize("g", range(6))
def test_pd_inverse_and_matches_cap(g):
    T = standard_torus(g)
    for c in CohClass.basis(T):
        h = pd_to_hom(c)
        assert pd_to_coh(h) == c
        I, J, _ = key(c)
        Io, Jo = complement(T.index(I)), complement(T.index(J))
        assert h == hom(T, Io, Jo, shuffle_sign(Io) * shuffle_sign(Jo))
        if g <= 4:
            assert cap(c, fundamental_class(T)) == h


def test_pontryagin_examples():
    h = hom(X2, (1,), (2,))
    assert pontryagin_hom(HomClass.unit(X2), h) == h
    assert pontryagin_hom(hom(X2, (1,), (1,)), hom(X2, (2,), (2,))) == fundamental_class(X2)
    assert not pontryagin_hom(hom(X2, (1,), (1,)), hom(X2, (1,), (2,)))


def test_pontryagin_coh_examples():
    top = coh(X2, (1, 2), (1, 2))
    for c in CohClass.basis(X2):
        assert pontryagin_coh(top, c) == c
    # g=2 by hand: pd(l1*e1*) = l2 e2, pd(l2*e2*) = l1 e1 (signs +1, +1)
    # l2 e2 * l1 e1 = (l2^l1)(e2^e1) = (-l12)(-e12) = [X], back to 1
    assert pontryagin_coh(coh(X2, (1,), (1,)), coh(X2, (2,), (2,))) == CohClass.unit(X2)
    a, b = coh(X2, (1,), ()), coh(X2, (), (2,))
    assert pontryagin_coh(a, b).bidegrees() <= {(1, 1)}


@pytest.mark.parametrize("g", range(5))
def test_pontryagin_associative_unital(g):
    T = standard_torus(g)
    B = HomClass.basis(T)
    step = max(1, len(B) // 12)
    for a in B[::step]:
        assert pontryagin_hom(a, HomClass.unit(T)) == a
        for b in B[::step]:
            for c in B[::step]:
                assert pontryagin_hom(pontryagin_hom(a, b), c) == pontryagin_hom(a, pontryagin_hom(b, c))


def test_degree():
    assert degree(HomClass.unit(X2)) == 1
    assert degree(HomClass.unit(X2) * 3) == 3
    assert degree(HomClass.zero(X2)) == 0
    with pytest.raises(DegreeDomainError):
        degree(hom(X2, (1,), ()))


def test_delta_top():
    assert delta_top(coh(X2, (1, 2), (1, 2))) == 1
    assert delta_top(CohClass.unit(X2)) == 0
    swapped = CohClass.from_json({"torus": "X", "terms": [{"I": [2, 1], "J": [1, 2], "coeff": "1"}]}, X2)
    assert delta_top(swapped) == -1


def test_pullback_and_pushforward():
    Y = standard_torus(1, "Y")
    P = product_torus(X1, Y)
    assert pullback_p1(CohClass.unit(X1), P) == CohClass.unit(P)
    assert key(pullback_p1(coh(X1, (1,), ()), P)) == ((1,), (), 1)
    a, b = coh(X1, (1,), ()), coh(X1, (), (1,))
    assert pullback_p1(cup(a, b), P) == cup(pullback_p1(a, P), pullback_p1(b, P))
    # full X part times the Y class: (l1* e1*) cup (l2*) reorders to l12* (x) e1*,
    # the cross sign (-1)^{1*1} is exactly the factorization sign
    xy = cup(coh(P, (1,), (1,)), coh(P, (2,), ()))
    assert key(xy) == ((1, 2), (1,), -1)
    assert pushforward_p2(xy) == coh(Y, (1,), ())
    assert not pushforward_p2(coh(P, (1,), (2,)))
    with pytest.raises(ValueError):
        pushforward_p2(CohClass.unit(X1))
    # p2_* p1^* x = delta(x) 1: only the top class of X survives
    for T2 in (Y, standard_torus(2, "Z")):
        P2 = product_torus(X2, T2)
        for c in CohClass.basis(X2):
            assert pushforward_p2(pullback_p1(c, P2)) == CohClass.unit(T2) * delta_top(c)


@pytest.mark.parametrize("g", range(1, 5))
def test_cup_graded_commutative(g):
    T = standard_torus(g)
    B = CohClass.basis(T)
    for a in B:
        da = sum(len(x) for x in next(a.items())[0])
        for b in B:
            db = sum(len(x) for x in next(b.items())[0])
            assert cup(a, b) == cup(b, a) * (-1) ** (da * db)


def test_json_round_trip():
    c = CohClass(X2, {((1,), (2,)): Fraction(3, 2), ((), ()): -1})
    doc = c.to_json()
    assert doc["torus"] == "X"
    assert CohClass.from_json(doc, X2) == c
    with pytest.raises(TorusMismatch):
        CohClass.from_json({"torus": "Y", "terms": []}, X2)


def test_classes_are_immutable():
    c = CohClass.unit(X1)
    with pytest.raises(AttributeError):
        c.torus = X2


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(coeffs, min_size=16, max_size=16), st.lists(coeffs, min_size=16, max_size=16),
       st.lists(coeffs, min_size=16, max_size=16))
def test_cup_bilinear(x, y, z):
    B = CohClass.basis(X2)
    a = sum((b * c for b, c in zip(B, x)), CohClass.zero(X2))
    b = sum((b * c for b, c in zip(B, y)), CohClass.zero(X2))
    c = sum((b * c for b, c in zip(B, z)), CohClass.zero(X2))
    assert cup(a + b, c) == cup(a, c) + cup(b, c)
    assert cup(a, b * 3) == cup(a, b) * 3
    assert pd_to_coh(pd_to_hom(a)) == a
