"""Line bundles on tori given by Appell-Humbert data ``(E, l)``.

``E[i][j] = E(lambda_i, eta_j)`` is the integer pairing matrix between
the lattice ``Lambda`` and the integral structure ``N``. ``l`` lists the
values ``l(lambda_i)``. The optional matrix ``P`` places ``Lambda``
inside ``N_R``: column ``i`` holds ``lambda_i`` in ``eta`` coordinates.
Without ``P`` the two bases are identified and ``E`` must be symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from tropfm.exact_linalg import (
    IntMatrix,
    RatMatrix,
    SmithForm,
    det_exact,
    format_rational,
    inverse,
    minor,
    parse_rational,
    smith_normal_form,
)
from tropfm.torus import CohClass, TorusDescriptor, TorusMismatch, standard_torus

__all__ = [
    "BundleDomainError",
    "AppellHumbertData",
    "LatticePoint",
    "trivial_bundle",
    "factor_of_automorphy",
    "tensor",
    "inverse_bundle",
    "translate_pullback",
    "is_isomorphic",
    "theorem_of_square_check",
    "chern",
    "gram",
    "is_nondegenerate",
    "is_ample",
    "phi_matrices",
    "h0",
    "deg_phi",
    "kernel_invariants",
    "restrict",
]


class BundleDomainError(ValueError):
    """The bundle does not satisfy the operation's hypothesis (ample, nondegenerate)."""


def _vec(values, n: int, what: str) -> tuple[Fraction, ...]:
    v = tuple(parse_rational(x) for x in values)
    if len(v) != n:
        raise ValueError(f"{what} must have length {n}, got {len(v)}")
    return v


@dataclass(frozen=True)
class AppellHumbertData:
    torus: TorusDescriptor
    E: IntMatrix
    l: tuple[Fraction, ...]
    P: Optional[RatMatrix] = None

    def __post_init__(self):
        g = self.torus.g
        E = self.E if isinstance(self.E, IntMatrix) else IntMatrix.from_rows(
            self.E.to_rows() if isinstance(self.E, RatMatrix) else self.E)
        if (E.rows, E.cols) != (g, g):
            raise ValueError(f"E must be {g}x{g}")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "l", _vec(self.l, g, "l"))
        if self.P is None:
            if not E.is_symmetric():
                raise ValueError("without an embedding P the matrix E must be symmetric")
        else:
            P = self.P if isinstance(self.P, RatMatrix) else RatMatrix.from_rows(self.P)
            if (P.rows, P.cols) != (g, g) or det_exact(P) == 0:
                raise ValueError("P must be an invertible g x g matrix")
            object.__setattr__(self, "P", P)
            if not gram(self).is_symmetric():
                raise ValueError("the form E is not symmetric through P")

    @classmethod
    def from_E(cls, E, l=None, P=None, torus: TorusDescriptor | None = None):
        E = E if isinstance(E, IntMatrix) else IntMatrix.from_rows(E)
        T = torus or standard_torus(E.rows)
        return cls(T, E, tuple(l) if l is not None else (0,) * E.rows, P)

    @property
    def g(self) -> int:
        return self.torus.g

    def embedding(self) -> RatMatrix:
        return self.P if self.P is not None else RatMatrix.identity(self.g)

    def to_json(self) -> dict:
        doc = {"g": self.g, "E": [[int(x) for x in self.E.row(i)] for i in range(self.g)],
               "l": [format_rational(x) for x in self.l]}
        if self.P is not None:
            doc["P"] = self.P.to_json()
        return doc

    @classmethod
    def from_json(cls, doc, torus: TorusDescriptor | None = None) -> "AppellHumbertData":
        if not isinstance(doc, dict) or "E" not in doc:
            raise ValueError("bundle JSON needs at least 'E'")
        E = doc["E"]
        g = doc.get("g", len(E))
        if not isinstance(E, list) or len(E) != g:
            raise ValueError("'E' must be a g x g list of integers")
        E = IntMatrix.from_rows([[_int(x) for x in row] for row in E])
        P = doc.get("P")
        if P is not None:
            P = RatMatrix.from_json(P) if isinstance(P, dict) else RatMatrix.from_rows(P)
        return cls.from_E(E, doc.get("l"), P, torus)


def _int(x) -> int:
    q = parse_rational(x)
    if q.denominator != 1:
        raise ValueError(f"E entries must be integers, got {x!r}")
    return int(q)


@dataclass(frozen=True)
class LatticePoint:
    """Rational coordinates tagged with the basis they refer to: ``"Lambda"`` or ``"N"``."""

    coords: tuple[Fraction, ...]
    basis: str = "N"

    def __post_init__(self):
        if self.basis not in ("Lambda", "N"):
            raise ValueError("basis must be 'Lambda' or 'N'")
        object.__setattr__(self, "coords", tuple(parse_rational(x) for x in self.coords))


def _point(x, basis: str, g: int) -> tuple[Fraction, ...]:
    if isinstance(x, LatticePoint):
        if x.basis != basis:
            raise ValueError(f"expected a point in {basis} coordinates, got {x.basis}")
        x = x.coords
    return _vec(x, g, f"{basis} point")


def trivial_bundle(T: TorusDescriptor, P: RatMatrix | None = None) -> AppellHumbertData:
    return AppellHumbertData(T, IntMatrix.zeros(T.g, T.g), (0,) * T.g, P)


def _pair(u, M: RatMatrix, v) -> Fraction:
    return sum((u[i] * M[i, j] * v[j] for i in range(len(u)) for j in range(len(v))), Fraction(0))


def factor_of_automorphy(L: AppellHumbertData, lam, x) -> Fraction:
    """``a(lambda, x) = l(lambda) - E(lambda, x) - E(lambda, lambda) / 2``.

    ``lam`` is an integral point of ``Lambda``; ``x`` is a point of
    ``N_R`` in ``eta`` coordinates.
    """
    g = L.g
    lam = _point(lam, "Lambda", g)
    if any(c.denominator != 1 for c in lam):
        raise ValueError("lambda must be an integral lattice point")
    x = _point(x, "N", g)
    lam_n = L.embedding().apply(lam)
    lin = sum((a * b for a, b in zip(L.l, lam)), Fraction(0))
    return lin - _pair(lam, L.E, x) - _pair(lam, L.E, lam_n) / 2


def _same_torus(L1: AppellHumbertData, L2: AppellHumbertData):
    if L1.torus != L2.torus:
        raise TorusMismatch(f"{L1.torus.name} vs {L2.torus.name}")
    if L1.P != L2.P:
        raise TorusMismatch("bundles use different embeddings P")


def tensor(L1: AppellHumbertData, L2: AppellHumbertData) -> AppellHumbertData:
    _same_torus(L1, L2)
    return AppellHumbertData(L1.torus, L1.E + L2.E,
                             tuple(a + b for a, b in zip(L1.l, L2.l)), L1.P)


def inverse_bundle(L: AppellHumbertData) -> AppellHumbertData:
    return AppellHumbertData(L.torus, -L.E, tuple(-a for a in L.l), L.P)


def translate_pullback(L: AppellHumbertData, x) -> AppellHumbertData:
    """``t_x^* L = L(E, l - E(-, x))`` for ``x`` in ``N_R``."""
    x = _point(x, "N", L.g)
    shift = L.E.apply(x)
    return AppellHumbertData(L.torus, L.E, tuple(a - b for a, b in zip(L.l, shift)), L.P)


def is_isomorphic(L1: AppellHumbertData, L2: AppellHumbertData) -> bool:
    """Same ``E`` and ``l1 - l2`` integral on the ``eta`` basis of ``N``."""
    _same_torus(L1, L2)
    if L1.E != L2.E:
        return False
    diff = RatMatrix(1, L1.g, [a - b for a, b in zip(L1.l, L2.l)])
    on_n = diff @ inverse(L1.embedding()) if L1.P is not None else diff
    return all(on_n[0, j].denominator == 1 for j in range(L1.g))


def theorem_of_square_check(L: AppellHumbertData, x, y) -> bool:
    """``t_{x+y}^* L`` against ``t_x^* L (x) t_y^* L (x) L^-1``."""
    x = _point(x, "N", L.g)
    y = _point(y, "N", L.g)
    lhs = translate_pullback(L, tuple(a + b for a, b in zip(x, y)))
    rhs = tensor(tensor(translate_pullback(L, x), translate_pullback(L, y)), inverse_bundle(L))
    return is_isomorphic(lhs, rhs)


def chern(L: AppellHumbertData) -> CohClass:
    """``sum E[i][j] lambda*_i (x) eta*_j`` in ``H^{1,1}``."""
    g = L.g
    return CohClass(L.torus, {((i + 1,), (j + 1,)): L.E[i, j]
                              for i in range(g) for j in range(g)})


def gram(L: AppellHumbertData) -> RatMatrix:
    """Gram matrix of the form on the ``eta`` basis, ``(P^-1)^T E``; ``E`` itself without ``P``."""
    if L.P is None:
        return L.E
    return inverse(L.P).transpose() @ L.E


def is_nondegenerate(L: AppellHumbertData) -> bool:
    return det_exact(L.E) != 0


def is_ample(L: AppellHumbertData) -> bool:
    """Positive definite, by the signs of the leading principal minors."""
    if not is_nondegenerate(L):
        return False
    Q = gram(L)
    return all(minor(Q, range(1, k + 1), range(1, k + 1)) > 0 for k in range(1, L.g + 1))


def phi_matrices(L: AppellHumbertData) -> tuple[IntMatrix, IntMatrix]:
    """Matrices of the analytic representation ``x -> -E(-, x)``.

    ``M_N = -E`` sends ``eta_j`` to ``-sum_i E[i][j] lambda*_i`` (column
    ``j``); ``M_Lambda = -E^T`` sends ``lambda_i`` to
    ``-sum_j E[i][j] eta*_j`` (column ``i``).
    """
    return -L.E, -L.E.transpose()


def _smith(L: AppellHumbertData) -> SmithForm:
    if not is_nondegenerate(L):
        raise BundleDomainError("E is degenerate")
    return smith_normal_form(L.E)


def h0(L: AppellHumbertData) -> int:
    """Number of global sections of an ample bundle, ``det E``."""
    if not is_ample(L):
        raise BundleDomainError("h0 is computed for ample bundles only")
    d = abs(det_exact(L.E))
    if d != _smith(L).order:
        raise ArithmeticError(f"det E = {d} disagrees with the cokernel order")
    return int(d)


def deg_phi(L: AppellHumbertData) -> int:
    """Index ``[Lambda(L) : Lambda]``, read off the Smith form of ``E``."""
    order = _smith(L).order
    if order != abs(det_exact(L.E)):
        raise ArithmeticError("Smith form order disagrees with |det E|")
    return int(order)


def kernel_invariants(L: AppellHumbertData) -> SmithForm:
    """Invariant factors of the finite group ``K(L)``."""
    return _smith(L)


def restrict(L: AppellHumbertData, first: bool, point: Sequence) -> AppellHumbertData:
    """Restrict a bundle on ``T1 x T2`` to ``T1 x {y}`` (``first``) or ``{x} x T2``.

    ``point`` is given in the ``N`` coordinates of the other factor. The
    restriction is ``(E_11, l_1 - E_12 y)`` or ``(E_22, l_2 - E_21 x)``.
    """
    T = L.torus
    if T.split is None:
        raise ValueError("restriction needs a product torus")
    T1, T2 = T.split
    g1 = T1.g
    if L.P is not None:
        P = L.P
        if any(P[i, j] for i in range(g1) for j in range(g1, T.g)) or any(
                P[i, j] for i in range(g1, T.g) for j in range(g1)):
            raise ValueError("restriction needs a block-diagonal embedding")
    keep = range(g1) if first else range(g1, T.g)
    other = range(g1, T.g) if first else range(g1)
    Tk = T1 if first else T2
    pt = _vec(point, len(other), "point")
    E = IntMatrix.from_rows([[L.E[i, j] for j in keep] for i in keep])
    l = tuple(L.l[i] - sum((L.E[i, j] * pt[n] for n, j in enumerate(other)), Fraction(0))
              for i in keep)
    P = None if L.P is None else RatMatrix.from_rows([[L.P[i, j] for j in keep] for i in keep])
    return AppellHumbertData(Tk, E, l, P)
