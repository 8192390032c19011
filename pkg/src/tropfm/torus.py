"""Real tori with integral structure and their bigraded (co)homology.

A class on a torus of rank ``g`` is a sparse table keyed by pairs of
multi-indices ``(I, J)``. For cohomology ``I`` indexes the wedge of
``Lambda*`` and ``J`` the wedge of ``N*``, and the key has bidegree
``(p, q) = (|J|, |I|)``. Homology uses ``Lambda`` and ``N`` in the same
slots.

Products use the slotwise wedge together with the cross sign
``(-1)^(|J_a| (|I_b| + |J_b|))``. This is the super-exterior algebra on
the basis ``lambda*_I ^ reversed(eta*_J)``: it is graded commutative in
total degree, associative, and it makes ``c^p / p!`` of a (1,1)-class
``sum E_ij lambda*_i (x) eta*_j`` equal to ``sum det E_{I,J} lambda*_I (x) eta*_J``
with no extra sign. On a product torus it is also the rule that turns
the exponential of the Poincare class into its closed form.

On the dual torus slot 1 holds ``N`` indices and slot 2 holds
``Lambda`` indices, since ``Lambda_dual = N*`` and ``N_dual = Lambda*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

from tropfm.exact_linalg import format_rational, parse_rational
from tropfm.exterior import MultiIndex, complement, contract_indices, shuffle_sign, subsets

__all__ = [
    "TorusMismatch",
    "DegreeDomainError",
    "TorusDescriptor",
    "standard_torus",
    "dual_torus",
    "product_torus",
    "CohClass",
    "HomClass",
    "cup",
    "cap",
    "pontryagin_hom",
    "pontryagin_coh",
    "fundamental_class",
    "pd_to_hom",
    "pd_to_coh",
    "degree",
    "delta_top",
    "pullback_p1",
    "pushforward_p2",
    "class_power",
    "exp_class",
]


class TorusMismatch(ValueError):
    """Operands live on different tori."""


class DegreeDomainError(ValueError):
    """A homology class has components outside H_{0,0}."""


@dataclass(frozen=True)
class TorusDescriptor:
    """The torus ``N_R / Lambda`` of rank ``g``.

    ``split`` holds the two factors when the torus was built by
    :func:`product_torus`; ``name`` is the identity tag written into class
    JSON.
    """

    g: int
    lambda_labels: tuple[str, ...]
    n_labels: tuple[str, ...]
    name: str = "X"
    split: Optional[tuple["TorusDescriptor", "TorusDescriptor"]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("rank must be nonnegative")
        if len(self.lambda_labels) != self.g or len(self.n_labels) != self.g:
            raise ValueError("label lists must have length g")
        if self.split is not None and self.split[0].g + self.split[1].g != self.g:
            raise ValueError("split sizes must sum to g")

    def index(self, I: Iterable[int] = ()) -> MultiIndex:
        return MultiIndex(I, self.g)

    @property
    def full(self) -> MultiIndex:
        return MultiIndex(range(1, self.g + 1), self.g)


def standard_torus(g: int, name: str = "X") -> TorusDescriptor:
    """Rank-``g`` torus with bases ``lambda_i`` of ``Lambda`` and ``eta_i`` of ``N``."""
    return TorusDescriptor(g, tuple(f"lambda{i}" for i in range(1, g + 1)),
                           tuple(f"eta{i}" for i in range(1, g + 1)), name)


def _star(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def dual_torus(T: TorusDescriptor) -> TorusDescriptor:
    """``Lambda*_R / N*``: the lattice is ``N*`` and the integral structure ``Lambda*``.

    Dualizing twice gives back ``T``.
    """
    if T.split is not None:
        raise ValueError("dual of a product torus is not modelled")
    name = T.name[:-1] if T.name.endswith("^") else T.name + "^"
    return TorusDescriptor(T.g, tuple(_star(x) for x in T.n_labels),
                           tuple(_star(x) for x in T.lambda_labels), name)


def product_torus(T1: TorusDescriptor, T2: TorusDescriptor) -> TorusDescriptor:
    """``T1 x T2`` with ``Lambda = Lambda1 + Lambda2`` and ``N = N1 + N2``; block 1 comes first."""
    return TorusDescriptor(T1.g + T2.g, T1.lambda_labels + T2.lambda_labels,
                           T1.n_labels + T2.n_labels, f"{T1.name}x{T2.name}", (T1, T2))


Key = tuple  # (MultiIndex, MultiIndex)


class _Bigraded:
    """Sparse bigraded multivector with exact rational coefficients."""

    __slots__ = ("torus", "_terms")
    _dual_slots = False

    def __init__(self, torus: TorusDescriptor, terms: Mapping | None = None):
        g = torus.g
        table: dict[Key, Fraction] = {}
        for (I, J), v in (terms or {}).items():
            v = parse_rational(v)
            if v:
                key = (_as_index(I, g), _as_index(J, g))
                table[key] = table.get(key, Fraction(0)) + v
        object.__setattr__(self, "torus", torus)
        object.__setattr__(self, "_terms", {k: v for k, v in table.items() if v})

    @classmethod
    def _raw(cls, torus, table: dict):
        obj = object.__new__(cls)
        object.__setattr__(obj, "torus", torus)
        object.__setattr__(obj, "_terms", {k: v for k, v in table.items() if v})
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("classes are immutable")

    # construction helpers
    @classmethod
    def zero(cls, torus):
        return cls._raw(torus, {})

    @classmethod
    def unit(cls, torus):
        e = MultiIndex((), torus.g)
        return cls._raw(torus, {(e, e): Fraction(1)})

    @classmethod
    def basis_element(cls, torus, I=(), J=(), coeff=1):
        return cls(torus, {(tuple(I), tuple(J)): coeff})

    @classmethod
    def basis(cls, torus, p: int | None = None, q: int | None = None) -> list:
        """Basis classes of bidegree ``(p, q)``, or of every bidegree when omitted."""
        g = torus.g
        out = []
        for I in subsets(g, q):
            for J in subsets(g, p):
                out.append(cls._raw(torus, {(I, J): Fraction(1)}))
        return out

    # inspection
    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items(), key=_sort_key))

    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, I=(), J=()) -> Fraction:
        g = self.torus.g
        return self._terms.get((MultiIndex(I, g), MultiIndex(J, g)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(J), len(I)) for I, J in self._terms}

    def component(self, p: int, q: int):
        return type(self)._raw(self.torus, {k: v for k, v in self._terms.items()
                                            if len(k[1]) == p and len(k[0]) == q})

    # arithmetic
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.torus != self.torus:
            raise TorusMismatch(f"{self.torus.name} vs {other.torus.name}")

    def __add__(self, other):
        self._check(other)
        t = dict(self._terms)
        for k, v in other._terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return type(self)._raw(self.torus, t)

    def __neg__(self):
        return type(self)._raw(self.torus, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, _Bigraded):
            return NotImplemented
        s = parse_rational(s)
        return type(self)._raw(self.torus, {k: s * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / parse_rational(s))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.torus == other.torus and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        if not self._terms:
            return f"{type(self).__name__}({self.torus.name}: 0)"
        parts = []
        for (I, J), v in self.items():
            parts.append(f"{format_rational(v)}*{self._label(I, J)}")
        return f"{type(self).__name__}({self.torus.name}: {' + '.join(parts)})"

    def _label(self, I, J) -> str:
        T = self.torus
        f = _star if self._dual_slots else str
        left = "^".join(f(T.lambda_labels[i - 1]) for i in I) or "1"
        right = "^".join(f(T.n_labels[j - 1]) for j in J) or "1"
        return f"({left}|{right})"

    # serialization
    def to_json(self) -> dict:
        return {"torus": self.torus.name,
                "terms": [{"I": list(I), "J": list(J), "coeff": format_rational(v)}
                          for (I, J), v in self.items()]}

    @classmethod
    def from_json(cls, doc, torus: TorusDescriptor):
        if not isinstance(doc, dict) or "terms" not in doc:
            raise ValueError("class JSON needs a 'terms' list")
        if doc.get("torus", torus.name) != torus.name:
            raise TorusMismatch(f"class is on {doc.get('torus')!r}, expected {torus.name!r}")
        table = {}
        for t in doc["terms"]:
            if not isinstance(t, dict) or not {"I", "J", "coeff"} <= t.keys():
                raise ValueError("each term needs 'I', 'J' and 'coeff'")
            # unsorted input is normalized with its permutation sign
            I, sI = _normalize(t["I"], torus.g)
            J, sJ = _normalize(t["J"], torus.g)
            if sI and sJ:
                key = (I, J)
                table[key] = table.get(key, Fraction(0)) + sI * sJ * parse_rational(t["coeff"])
        return cls._raw(torus, table)


class CohClass(_Bigraded):
    """Class in ``H^{p,q} = wedge^q Lambda* (x) wedge^p N*``; key ``(I, J)`` has bidegree ``(|J|, |I|)``."""

    __slots__ = ()
    _dual_slots = True


class HomClass(_Bigraded):
    """Class in ``H_{p,q} = wedge^q Lambda (x) wedge^p N``."""

    __slots__ = ()
    _dual_slots = False


def _as_index(I, g) -> MultiIndex:
    if isinstance(I, MultiIndex):
        if I.g != g:
            raise TorusMismatch(f"multi-index of rank {I.g} on a rank-{g} torus")
        return I
    return MultiIndex(I, g)


def _normalize(seq, g) -> tuple[MultiIndex, int]:
    """Sort a list of indices, returning the sign of the sort (0 on repeats)."""
    seq = [int(x) for x in seq]
    if len(set(seq)) != len(seq):
        return MultiIndex((), g), 0
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return MultiIndex(sorted(seq), g), (-1 if inv % 2 else 1)


def _sort_key(item):
    (I, J), _ = item
    return (len(I) + len(J), len(J), tuple(I), tuple(J))


def _merge(a, b):
    """Sorted union and sign of ``e_a ^ e_b``; ``None`` on overlap."""
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        if j < len(b) and b[j] == x:
            return None
        inversions += j
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def _product(a: _Bigraded, b: _Bigraded, out_type):
    g = a.torus.g
    table: dict = {}
    mi = {}
    for (I1, J1), c1 in a._terms.items():
        cross = len(J1)
        for (I2, J2), c2 in b._terms.items():
            r1 = _merge(I1, I2)
            if r1 is None:
                continue
            r2 = _merge(J1, J2)
            if r2 is None:
                continue
            s = r1[0] * r2[0]
            if cross * (len(I2) + len(J2)) % 2:
                s = -s
            k = (r1[1], r2[1])
            table[k] = table.get(k, Fraction(0)) + (c1 * c2 if s > 0 else -c1 * c2)
    out = {}
    for (I, J), v in table.items():
        if v:
            for K in (I, J):
                if K not in mi:
                    mi[K] = MultiIndex(K, g)
            out[(mi[I], mi[J])] = v
    return out_type._raw(a.torus, out)


def cup(a: CohClass, b: CohClass) -> CohClass:
    """Cup product: slotwise wedge with cross sign ``(-1)^(|J_a| (|I_b| + |J_b|))``.

    >>> T = standard_torus(2)
    >>> x = CohClass.basis_element(T, (1,), ())
    >>> y = CohClass.basis_element(T, (2,), ())
    >>> cup(x, y).coefficient((1, 2), ())
    Fraction(1, 1)
    """
    if not isinstance(a, CohClass) or not isinstance(b, CohClass):
        raise TypeError("cup needs two cohomology classes")
    a._check(b)
    return _product(a, b, CohClass)


def pontryagin_hom(h1: HomClass, h2: HomClass) -> HomClass:
    """Pontryagin product on homology, with the same sign rule as :func:`cup`."""
    if not isinstance(h1, HomClass) or not isinstance(h2, HomClass):
        raise TypeError("Pontryagin product needs two homology classes")
    h1._check(h2)
    return _product(h1, h2, HomClass)


def cap(c: CohClass, h: HomClass) -> HomClass:
    """Slotwise right contraction of ``c`` into ``h``."""
    if not isinstance(c, CohClass) or not isinstance(h, HomClass):
        raise TypeError("cap takes a cohomology class and a homology class")
    if c.torus != h.torus:
        raise TorusMismatch(f"{c.torus.name} vs {h.torus.name}")
    table: dict = {}
    for (I, J), a in c._terms.items():
        for (K, L), b in h._terms.items():
            r1 = contract_indices(I, K)
            if r1 is None:
                continue
            r2 = contract_indices(J, L)
            if r2 is None:
                continue
            k = (r1[0], r2[0])
            table[k] = table.get(k, Fraction(0)) + r1[1] * r2[1] * a * b
    return HomClass._raw(c.torus, table)


def fundamental_class(T: TorusDescriptor) -> HomClass:
    """``lambda_[g] (x) eta_[g]`` with coefficient +1."""
    return HomClass._raw(T, {(T.full, T.full): Fraction(1)})


def pd_to_hom(c: CohClass) -> HomClass:
    """Poincare duality: ``lambda*_I (x) eta*_J`` goes to ``shuffle_sign(I^o) shuffle_sign(J^o) lambda_{I^o} (x) eta_{J^o}``."""
    table = {}
    for (I, J), v in c._terms.items():
        Io, Jo = complement(I), complement(J)
        table[(Io, Jo)] = shuffle_sign(Io) * shuffle_sign(Jo) * v
    return HomClass._raw(c.torus, table)


def pd_to_coh(h: HomClass) -> CohClass:
    """Inverse of :func:`pd_to_hom`."""
    table = {}
    for (K, L), v in h._terms.items():
        table[(complement(K), complement(L))] = shuffle_sign(K) * shuffle_sign(L) * v
    return CohClass._raw(h.torus, table)


def pontryagin_coh(c1: CohClass, c2: CohClass) -> CohClass:
    """Pontryagin product transported to cohomology through Poincare duality."""
    return pd_to_coh(pontryagin_hom(pd_to_hom(c1), pd_to_hom(c2)))


def degree(h: HomClass) -> Fraction:
    """Coefficient of ``[1]`` in ``H_{0,0}``; other components are an error."""
    if not isinstance(h, HomClass):
        raise TypeError("degree is defined on homology")
    if any(len(I) or len(J) for I, J in h._terms):
        raise DegreeDomainError("class has components outside H_{0,0}")
    return h.coefficient((), ())


def delta_top(c: CohClass) -> Fraction:
    """Coefficient of ``lambda*_[g] (x) eta*_[g]``."""
    return c.coefficient(c.torus.full, c.torus.full)


def pullback_p1(c: CohClass, P: TorusDescriptor) -> CohClass:
    """``x -> x (x) 1`` along the first projection of ``P = T1 x T2``."""
    if P.split is None:
        raise ValueError("pullback needs a product torus")
    if P.split[0] != c.torus:
        raise TorusMismatch("first factor of the product is not the class's torus")
    g = P.g
    return CohClass._raw(P, {(MultiIndex(I, g), MultiIndex(J, g)): v
                             for (I, J), v in c._terms.items()})


def pushforward_p2(c: CohClass) -> CohClass:
    """``x (x) y -> delta(x) y`` along the second projection.

    Each product monomial is factored as (block 1 part) times (block 2
    part) under the cup product; the sign of that factorization is the
    cup cross sign, and only terms whose block 1 part is top survive.
    """
    P = c.torus
    if P.split is None:
        raise ValueError("pushforward needs a product torus")
    T1, T2 = P.split
    g1 = T1.g
    table: dict = {}
    for (I, J), v in c._terms.items():
        I1 = [i for i in I if i <= g1]
        J1 = [j for j in J if j <= g1]
        if len(I1) != g1 or len(J1) != g1:
            continue
        I2 = MultiIndex((i - g1 for i in I if i > g1), T2.g)
        J2 = MultiIndex((j - g1 for j in J if j > g1), T2.g)
        s = -1 if g1 * (len(I2) + len(J2)) % 2 else 1
        table[(I2, J2)] = table.get((I2, J2), Fraction(0)) + s * v
    return CohClass._raw(T2, table)


def class_power(c: CohClass, k: int) -> CohClass:
    """``c`` cupped with itself ``k`` times; the 0th power is the unit."""
    if k < 0:
        raise ValueError("negative power")
    out = CohClass.unit(c.torus)
    for _ in range(k):
        out = cup(out, c)
    return out


def exp_class(c: CohClass) -> CohClass:
    """``sum_k c^k / k!``; the series stops once the powers vanish."""
    total = CohClass.unit(c.torus)
    term = CohClass.unit(c.torus)
    k = 0
    while True:
        k += 1
        term = cup(term, c) / k
        if not term:
            return total
        total = total + term
