from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropfm.exterior import (
    AmbientMismatch,
    MultiIndex,
    complement,
    contract_indices,
    shuffle_sign,
    subsets,
    wedge_indices,
)


def M(*els, g):
    return MultiIndex(els, g)


def perm_sign(seq):
    inv = sum(1 for a, b in combinations(range(len(seq)), 2) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def test_multiindex_validation():
    with pytest.raises(ValueError):
        MultiIndex((2, 1), 3)
    with pytest.raises(ValueError):
        MultiIndex((0,), 3)
    with pytest.raises(ValueError):
        MultiIndex((4,), 3)
    assert MultiIndex((), 0) == ()


def test_complement():
    assert complement(M(1, 3, g=4)) == (2, 4)
    assert complement(M(g=2)) == (1, 2)
    assert complement(M(1, 2, 3, g=3)) == ()
    for I in subsets(5):
        assert complement(complement(I)) == I


def test_shuffle_sign_examples():
    assert shuffle_sign(M(1, 2, g=4)) == 1
    assert shuffle_sign(M(2, g=2)) == -1


@pytest.mark.parametrize("g", range(9))
def test_shuffle_sign_is_inversion_parity(g):
    for K in subsets(g):
        assert shuffle_sign(K) == perm_sign(tuple(K) + tuple(complement(K)))


def test_wedge_examples():
    assert wedge_indices(M(1, g=2), M(2, g=2)) == ((1, 2), 1)
    assert wedge_indices(M(2, g=2), M(1, g=2)) == ((1, 2), -1)
    assert wedge_indices(M(1, g=2), M(1, g=2)) is None
    with pytest.raises(AmbientMismatch):
        wedge_indices(M(1, g=2), M(1, g=3))


@pytest.mark.parametrize("g", range(1, 6))
def test_wedge_graded_antisymmetry(g):
    for I in subsets(g):
        for J in subsets(g):
            a, b = wedge_indices(I, J), wedge_indices(J, I)
            if a is None:
                assert b is None
                continue
            assert a[0] == b[0]
            assert a[1] == (-1) ** (len(I) * len(J)) * b[1]
            assert a[1] == perm_sign(tuple(I) + tuple(J))


def test_shuffle_pair_relation():
    # K then K^o against K^o then K differ by the block swap (-1)^{|K||K^o|}
    for g in range(7):
        for K in subsets(g):
            Ko = complement(K)
            assert shuffle_sign(K) * shuffle_sign(Ko) == (-1) ** (len(K) * len(Ko))


def test_contract_examples():
    J = M(1, 2, g=2)
    assert contract_indices(M(g=2), J) == (J, 1)
    # right contraction: e_12 = -e_2 ^ e_1, so e_1* takes e_12 to -e_2
    assert contract_indices(M(1, g=2), J) == ((2,), -1)
    assert contract_indices(M(2, g=2), J) == ((1,), 1)
    assert contract_indices(M(2, g=2), M(1, g=2)) is None


@pytest.mark.parametrize("g", range(6))
def test_contract_self_is_unit(g):
    for I in subsets(g):
        assert contract_indices(I, I) == ((), 1)


@pytest.mark.parametrize("g", range(1, 6))
def test_contract_undoes_wedge_on_the_right(g):
    # (e_R ^ e_I) contracted by e_I* gives e_R back
    for I in subsets(g):
        for R in subsets(g):
            w = wedge_indices(R, I)
            if w is None:
                continue
            K, s = w
            rest, t = contract_indices(I, K)
            assert rest == R and s * t == 1


@given(st.integers(0, 8).flatmap(lambda g: st.tuples(st.just(g), st.sets(st.integers(1, max(g, 1)), max_size=g))))
def test_complement_partition(data):
    g, s = data
    s = {x for x in s if x <= g}
    I = MultiIndex(sorted(s), g)
    assert sorted(I + complement(I)) == list(range(1, g + 1))


def test_perm_sign_helper():
    assert all(perm_sign(p) in (1, -1) for p in permutations(range(4)))
