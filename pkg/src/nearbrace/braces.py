"""Near braces: two group tables on one carrier linked by

    a*(b + c) = a*b - a*0 + a*c

where ``0`` is the additive neutral and ``*`` the multiplication. A near brace
with ``0 == 1`` is a left skew brace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groups import Diagnostics, GroupTable, InvalidStructureError, _first_true, validate_group


class ConstructionError(ValueError):
    """A construction broke an axiom; ``axiom`` names it, ``witness`` locates it."""

    def __init__(self, message: str, axiom: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


def _distributivity_mask(A: np.ndarray, neg: np.ndarray, M: np.ndarray, zero: int) -> np.ndarray:
    n = A.shape[0]
    a, b, c = np.indices((n, n, n), sparse=True)
    lhs = M[a, A[b, c]]
    rhs = A[A[M[a, b], neg[M[a, zero]]], M[a, c]]
    return lhs != rhs


def validate_near_brace(add: GroupTable, mul: GroupTable) -> Diagnostics:
    """Check left near-brace distributivity over all triples.

    The witness is the lexicographically first failing ``(a, b, c)``.
    """
    if add.order != mul.order:
        raise ValueError(f"carrier size mismatch: {add.order} vs {mul.order}")
    wit = _first_true(_distributivity_mask(add.table, add.inverse, mul.table, add.identity))
    if wit is None:
        return Diagnostics()
    return Diagnostics((("distributivity", wit),))


@dataclass(frozen=True, eq=False)
class NearBrace:
    add: GroupTable
    mul: GroupTable
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        if not self._checked:
            diag = validate_near_brace(self.add, self.mul)
            if not diag.ok:
                raise InvalidStructureError(f"not a near brace: {diag.describe()}", diag)
        if self.add.labels != self.mul.labels:
            object.__setattr__(self, "add", GroupTable(self.add.table, self.mul.labels))

    # shorthands used by every verification kernel
    @property
    def n(self) -> int:
        return self.mul.order

    @property
    def A(self) -> np.ndarray:
        return self.add.table

    @property
    def M(self) -> np.ndarray:
        return self.mul.table

    @property
    def neg(self) -> np.ndarray:
        return self.add.inverse

    @property
    def minv(self) -> np.ndarray:
        return self.mul.inverse

    @property
    def zero(self) -> int:
        return self.add.identity

    @property
    def one(self) -> int:
        return self.mul.identity

    @property
    def labels(self) -> tuple[str, ...]:
        return self.mul.labels

    @property
    def is_skew(self) -> bool:
        return self.zero == self.one

    @property
    def is_brace(self) -> bool:
        return self.is_skew and self.add.is_abelian

    @property
    def is_singular(self) -> bool:
        return singular_witness(self) is None

    def plus(self, a: int, b: int) -> int:
        return int(self.A[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.A[a, self.neg[b]])

    def times(self, a: int, b: int) -> int:
        return int(self.M[a, b])

    def heap(self, a, b, c):
        """``a - b + c``, elementwise on arrays."""
        return self.A[self.A[a, self.neg[b]], c]

    def __eq__(self, other):
        if not isinstance(other, NearBrace):
            return NotImplemented
        return self.add == other.add and self.mul == other.mul

    def __hash__(self):
        return hash((self.add, self.mul))

    def __repr__(self):
        return f"NearBrace(n={self.n}, zero={self.zero}, one={self.one})"


def _trusted(add_table: np.ndarray, mul: GroupTable) -> NearBrace:
    """Wrap a table already known to satisfy distributivity."""
    return NearBrace(GroupTable(add_table, mul.labels), mul, _checked=True)


def singular_witness(nb: NearBrace) -> tuple[int, ...] | None:
    """First ``a`` violating ``a - a*0 = 1`` or ``-a*0 + a = 1``."""
    idx = np.arange(nb.n)
    a0 = nb.M[idx, nb.zero]
    left = nb.A[idx, nb.neg[a0]]
    right = nb.A[nb.neg[a0], idx]
    bad = (left != nb.one) | (right != nb.one)
    return _first_true(bad)


# -- constructions -------------------------------------------------------------


def trivial_near_brace(g: GroupTable, kappa: int) -> NearBrace:
    """``a + b = a * kappa^-1 * b`` for a central ``kappa``; the zero is ``kappa``."""
    if not g.is_central(kappa):
        raise ConstructionError(f"kappa={kappa} is not central", "central", (kappa,))
    T, kinv = g.table, g.inverse[kappa]
    add = T[T[:, kinv][:, None], np.arange(g.order)[None, :]]
    return NearBrace(GroupTable(add, g.labels), g)


@dataclass(frozen=True, eq=False)
class SigmaFamily:
    """``sigma[x][y] = sigma_x(y)`` with the fixed deformation element ``z``."""

    sigma: np.ndarray
    z: int

    def __post_init__(self):
        arr = np.asarray(self.sigma, dtype=np.int64)
        n = arr.shape[0]
        if arr.shape != (n, n):
            raise ValueError("sigma must be square")
        if not 0 <= self.z < n:
            raise ValueError(f"z={self.z} outside the carrier")
        for x in range(n):
            if sorted(arr[x].tolist()) != list(range(n)):
                raise ValueError(f"sigma row {x} is not a permutation")
        arr.setflags(write=False)
        object.__setattr__(self, "sigma", arr)

    @property
    def n(self) -> int:
        return self.sigma.shape[0]


def addition_from_sigma(g: GroupTable, fam: SigmaFamily) -> NearBrace:
    """Build ``y + x = x * sigma_{x^-1}(y * z) * z^-1`` and validate the result.

    Raises ``ConstructionError`` naming the first broken axiom.
    """
    if fam.n != g.order:
        raise ValueError("sigma family and group differ in size")
    n, T, inv, z = g.order, g.table, g.inverse, fam.z
    S = fam.sigma
    y, x = np.indices((n, n))
    plus = T[T[x, S[inv[x], T[y, z]]], inv[z]]

    i, j, k = np.indices((n, n, n), sparse=True)
    wit = _first_true(plus[plus[i, j], k] != plus[i, plus[j, k]])
    if wit is not None:
        raise ConstructionError(f"addition not associative at {wit}", "associativity", wit)

    # candidate neutral 0_x = sigma_{x^-1}^{-1}(z) * z^-1, one per x
    zeros = []
    for xx in range(n):
        pre = int(np.flatnonzero(S[inv[xx]] == z)[0])
        zeros.append(int(T[pre, inv[z]]))
    if len(set(zeros)) != 1:
        x2 = next(k for k in range(n) if zeros[k] != zeros[0])
        raise ConstructionError("neutral element not unique", "neutral", (0, x2))

    diag = validate_group(n, plus)
    if not diag.ok:
        name, w = diag.failures[0]
        raise ConstructionError(f"addition is not a group: {name} at {w}", name, w)
    add = GroupTable(plus, g.labels)
    if add.identity != zeros[0]:  # pragma: no cover - the lemma forces agreement
        raise ConstructionError("derived neutral disagrees with table", "neutral", (zeros[0],))
    diag = validate_near_brace(add, g)
    if not diag.ok:
        raise ConstructionError(f"addition not distributive at {diag.failures[0][1]}",
                                "distributivity", diag.failures[0][1])
    return _trusted(plus, g)


def sigma_family_of(nb: NearBrace, z: int) -> SigmaFamily:
    """The family ``sigma_x(y) = x*y - x*0*z + z`` read off a near brace."""
    n = nb.n
    x, y = np.indices((n, n))
    sig = nb.heap(nb.M[x, y], nb.M[nb.M[x, nb.zero], z], z)
    return SigmaFamily(sig, z)


def retract(nb: NearBrace, e: int) -> NearBrace:
    """The near brace with addition ``a - e + b`` (its zero is ``e``)."""
    n = nb.n
    a, b = np.indices((n, n))
    return _trusted(nb.heap(a, e, b), nb.mul)


def shift_to_skew(nb: NearBrace) -> NearBrace:
    """Addition ``a - 1 + b``: a left skew brace with the same multiplication."""
    return retract(nb, nb.one)


def shift_by(sb: NearBrace, t: int) -> NearBrace:
    """Inverse of ``shift_to_skew``: the addition ``a - t + b`` on a skew brace."""
    if not sb.is_skew:
        raise ValueError("shift_by expects a skew brace (zero == one)")
    return retract(sb, t)


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok

    @classmethod
    def from_witness(cls, wit: tuple[int, ...] | None) -> "Check":
        return cls(True) if wit is None else cls(False, wit)


@dataclass(frozen=True)
class StructuralReport:
    distributivity: Check
    is_skew: Check
    is_singular: Check
    zero_mul_zero_is_neg_one: Check
    one_plus_one_is_zero_inverse: Check
    one_central_in_add: Check
    negation_identity: Check
    ternary_distributivity: Check
    zero_right_distributive: Check

    def as_dict(self) -> dict[str, Check]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @property
    def singular_identities_hold(self) -> bool:
        return bool(self.zero_mul_zero_is_neg_one and self.one_plus_one_is_zero_inverse
                    and self.one_central_in_add)


def structural_report(nb: NearBrace) -> StructuralReport:
    n, A, M, neg = nb.n, nb.A, nb.M, nb.neg
    zero, one, minv = nb.zero, nb.one, nb.minv
    idx = np.arange(n)

    dist = _first_true(_distributivity_mask(A, neg, M, zero))

    zz = int(M[zero, zero])
    zero_sq = Check.from_witness(None if zz == neg[one] else (zero,))
    opo = int(A[one, one])
    one_one = Check.from_witness(None if opo == minv[zero] else (one,))
    central = Check.from_witness(_first_true(A[idx, one] != A[one, idx]))

    # a*(-b) = a*0 - a*b + a*0
    a, b = np.indices((n, n))
    a0 = M[a, zero]
    neg_id = _first_true(M[a, neg[b]] != nb.heap(a0, M[a, b], a0))

    # a*(b - c + d) = a*b - a*c + a*d
    a, b, c, d = np.indices((n, n, n, n), sparse=True)
    tern = _first_true(M[a, nb.heap(b, c, d)] != nb.heap(M[a, b], M[a, c], M[a, d]))

    # 0 in the right-distributive set: (a - b + c)*0 = a*0 - b*0 + c*0
    a, b, c = np.indices((n, n, n), sparse=True)
    zr = _first_true(M[nb.heap(a, b, c), zero] != nb.heap(M[a, zero], M[b, zero], M[c, zero]))

    return StructuralReport(
        distributivity=Check.from_witness(dist),
        is_skew=Check.from_witness(None if zero == one else (zero, one)),
        is_singular=Check.from_witness(singular_witness(nb)),
        zero_mul_zero_is_neg_one=zero_sq,
        one_plus_one_is_zero_inverse=one_one,
        one_central_in_add=central,
        negation_identity=Check.from_witness(neg_id),
        ternary_distributivity=Check.from_witness(tern),
        zero_right_distributive=Check.from_witness(zr),
    )


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    law: str | None = None
    witness: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def check_morphism(f: Sequence[int], src: NearBrace, dst: NearBrace) -> MorphismCheck:
    """Test ``f(a+b) = f(a)+f(b)`` and ``f(a*b) = f(a)*f(b)`` for all pairs."""
    fa = np.asarray(f, dtype=np.int64)
    if fa.shape != (src.n,):
        raise ValueError(f"map has {fa.shape[0] if fa.ndim else 0} entries, expected {src.n}")
    if fa.min(initial=0) < 0 or fa.max(initial=0) >= dst.n:
        raise ValueError("map leaves the target carrier")
    a, b = np.indices((src.n, src.n))
    add_bad = _first_true(fa[src.A[a, b]] != dst.A[fa[a], fa[b]])
    if add_bad is not None:
        return MorphismCheck(False, "addition", add_bad)
    mul_bad = _first_true(fa[src.M[a, b]] != dst.M[fa[a], fa[b]])
    if mul_bad is not None:
        return MorphismCheck(False, "multiplication", mul_bad)
    return MorphismCheck(True)
