"""Multi-indices and the signs of the exterior algebra.

A :class:`MultiIndex` is a strictly increasing tuple of 1-based indices
together with the ambient rank ``g``. It behaves like a tuple, so it can
be used directly as a dictionary key.

Contraction is a *right* interior product: for ``I`` inside ``K`` write
``e_K = s * e_{K minus I} ^ e_I``; then ``e_I* contracted into e_K`` is
``s * e_{K minus I}``. With this normalization capping with the
fundamental class is exactly Poincare duality with shuffle signs.
"""

from __future__ import annotations

from typing import Iterable, Optional

__all__ = [
    "MultiIndex",
    "AmbientMismatch",
    "complement",
    "shuffle_sign",
    "wedge_indices",
    "contract_indices",
    "subsets",
]


class AmbientMismatch(ValueError):
    """Two multi-indices live in different ranks."""


class MultiIndex(tuple):
    """Strictly increasing tuple of indices in ``1..g``; hashes and compares as a tuple."""

    def __new__(cls, elements: Iterable[int] = (), g: int | None = None):
        els = tuple(int(e) for e in elements)
        if g is None:
            raise TypeError("MultiIndex needs the ambient rank g")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"indices must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > g):
            raise ValueError(f"indices {els} not inside 1..{g}")
        self = super().__new__(cls, els)
        self._g = g
        return self

    def __getnewargs__(self):
        return (tuple(self), self._g)

    @property
    def g(self) -> int:
        return self._g

    def __repr__(self):
        return f"MultiIndex({tuple(self)}, g={self.g})"


def _g(I) -> int:
    g = getattr(I, "g", None)
    if g is None:
        raise TypeError("expected a MultiIndex")
    return g


def _same(I, J) -> int:
    if _g(I) != _g(J):
        raise AmbientMismatch(f"ranks differ: {_g(I)} vs {_g(J)}")
    return _g(I)


def complement(I: MultiIndex) -> MultiIndex:
    g = _g(I)
    s = set(I)
    return MultiIndex((i for i in range(1, g + 1) if i not in s), g)


def shuffle_sign(K) -> int:
    """Sign of the permutation listing ``K`` and then its complement, both ascending.

    Equals ``(-1)^(sum K - |K|(|K|+1)/2)`` and does not depend on ``g``.
    """
    k = len(K)
    return -1 if (sum(K) - k * (k + 1) // 2) % 2 else 1


def _merge_sign(a, b) -> Optional[int]:
    # sign sorting a+b; None when they overlap
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        if j < len(b) and b[j] == x:
            return None
        inversions += j
    return -1 if inversions % 2 else 1


def wedge_indices(I: MultiIndex, J: MultiIndex) -> Optional[tuple[MultiIndex, int]]:
    """``e_I ^ e_J`` as ``(sorted union, sign)``; ``None`` if they share an index."""
    g = _same(I, J)
    s = _merge_sign(I, J)
    if s is None:
        return None
    return MultiIndex(sorted(I + J), g), s


def contract_indices(I: MultiIndex, J: MultiIndex) -> Optional[tuple[MultiIndex, int]]:
    """Right interior product of ``e_I*`` into ``e_J``; ``None`` unless ``I`` is inside ``J``."""
    g = _same(I, J)
    if not set(I) <= set(J):
        return None
    rest = tuple(j for j in J if j not in set(I))
    return MultiIndex(rest, g), _merge_sign(rest, I)


def subsets(g: int, k: int | None = None) -> list[MultiIndex]:
    """All multi-indices of rank ``g`` (of size ``k`` when given), by size then lexicographically."""
    from itertools import combinations

    sizes = range(g + 1) if k is None else (k,)
    return [MultiIndex(c, g) for s in sizes for c in combinations(range(1, g + 1), s)]
