"""Right-distributive elements and admissible parameter triples.

A triple ``(z1, z2, xi)`` is admissible for a near brace when all three
elements are right distributive,

    (a - b + c)*h = a*h - b*h + c*h,

and both

    c1 = a*z2*z1 - a*xi        c2 = -a*xi + a*z1*z2

are independent of ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .braces import NearBrace


class NonConstantError(ValueError):
    def __init__(self, which: str, a1: int, a2: int, values: tuple[int, int]):
        super().__init__(f"{which} depends on a: a={a1} gives {values[0]}, a={a2} gives {values[1]}")
        self.which = which
        self.a1, self.a2 = a1, a2
        self.values = values


@dataclass(frozen=True, order=True)
class ParamTriple:
    z1: int
    z2: int
    xi: int
    c1: int
    c2: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.z1, self.z2, self.xi)

    def to_json(self) -> dict:
        return {"z1": self.z1, "z2": self.z2, "xi": self.xi, "c1": self.c1, "c2": self.c2}

    @classmethod
    def from_json(cls, doc: dict) -> "ParamTriple":
        return cls(*(int(doc[k]) for k in ("z1", "z2", "xi", "c1", "c2")))


@dataclass(frozen=True)
class InverseParams:
    hz1: int
    hz2: int
    hxi: int


def inverse_params(nb: NearBrace, p: ParamTriple) -> InverseParams:
    xinv = int(nb.minv[p.xi])
    return InverseParams(hz1=nb.times(p.z1, xinv), hz2=nb.times(p.z2, xinv), hxi=xinv)


def right_distributive_mask(nb: NearBrace) -> np.ndarray:
    """Boolean vector: ``h`` is right distributive."""
    n, M = nb.n, nb.M
    a, b, c = np.indices((n, n, n), sparse=True)
    s = nb.heap(a, b, c)  # (n, n, n)
    out = np.empty(n, dtype=bool)
    for h in range(n):
        Mh = M[:, h]
        out[h] = np.array_equal(Mh[s], nb.heap(Mh[a], Mh[b], Mh[c]))
    return out


def right_distributive_set(nb: NearBrace) -> list[int]:
    return [int(h) for h in np.flatnonzero(right_distributive_mask(nb))]


def _constant_vectors(nb: NearBrace, z1: int, z2: int, xi: int) -> tuple[np.ndarray, np.ndarray]:
    M = nb.M
    a = np.arange(nb.n)
    axi = M[a, xi]
    c1 = nb.heap(M[M[a, z2], z1], axi, nb.zero)
    c2 = nb.A[nb.neg[axi], M[M[a, z1], z2]]
    return c1, c2


def constants_for(nb: NearBrace, z1: int, z2: int, xi: int) -> tuple[int, int]:
    """Return ``(c1, c2)``, or raise ``NonConstantError`` with two disagreeing ``a``."""
    for name, vec in zip(("c1", "c2"), _constant_vectors(nb, z1, z2, xi)):
        bad = np.flatnonzero(vec != vec[0])
        if len(bad):
            a2 = int(bad[0])
            raise NonConstantError(name, 0, a2, (int(vec[0]), int(vec[a2])))
    c1, c2 = _constant_vectors(nb, z1, z2, xi)
    return int(c1[0]), int(c2[0])


def make_triple(nb: NearBrace, z1: int, z2: int, xi: int) -> ParamTriple:
    """Admissibility-checked triple; raises ``ValueError`` if inadmissible."""
    for h in (z1, z2, xi):
        if not 0 <= h < nb.n:
            raise ValueError(f"element {h} outside the carrier")
    rd = right_distributive_mask(nb)
    for name, h in (("z1", z1), ("z2", z2), ("xi", xi)):
        if not rd[h]:
            raise ValueError(f"{name}={h} is not right distributive")
    c1, c2 = constants_for(nb, z1, z2, xi)
    return ParamTriple(z1, z2, xi, c1, c2)


def _scan(nb: NearBrace, z_pool: Iterable[int], xi_pool: Iterable[int]) -> list[ParamTriple]:
    M, n = nb.M, nb.n
    a = np.arange(n)
    z_pool, xi_pool = list(z_pool), list(xi_pool)
    out = []
    for z1 in z_pool:
        for z2 in z_pool:
            t12 = M[M[a, z2], z1]
            t21 = M[M[a, z1], z2]
            for xi in xi_pool:
                axi = M[a, xi]
                c1 = nb.heap(t12, axi, nb.zero)
                if not (c1 == c1[0]).all():
                    continue
                c2 = nb.A[nb.neg[axi], t21]
                if not (c2 == c2[0]).all():
                    continue
                out.append(ParamTriple(z1, z2, xi, int(c1[0]), int(c2[0])))
    out.sort()
    return out


def admissible_params(nb: NearBrace) -> list[ParamTriple]:
    """Every admissible triple, in lexicographic ``(z1, z2, xi)`` order."""
    rd = right_distributive_set(nb)
    return _scan(nb, rd, rd)


def weak_only_params(nb: NearBrace) -> list[ParamTriple]:
    """Triples with right-distributive ``z1, z2`` and constant ``c1, c2`` whose
    ``xi`` is *not* right distributive."""
    rd = right_distributive_mask(nb)
    zs = [int(h) for h in np.flatnonzero(rd)]
    xis = [int(h) for h in np.flatnonzero(~rd)]
    return _scan(nb, zs, xis)


def single_parameter(nb: NearBrace, z: int) -> tuple[int, int, int]:
    """The ``(1, z, 0*z)`` specialisation."""
    return (nb.one, z, nb.times(nb.zero, z))


# -- coincidence lemmas ----------------------------------------------------------


@dataclass(frozen=True)
class CoincidenceReport:
    tables_equal: bool
    kind: str  # "single", "swapped", "identical" or "other"
    identity_holds: bool | None
    witness: tuple[int, ...] = ()


def sigma_table(nb: NearBrace, z1: int, z2: int, xi: int) -> np.ndarray:
    """``sigma[a][b] = a*b*z1 - a*xi + z2``."""
    n, M = nb.n, nb.M
    a, b = np.indices((n, n))
    return nb.heap(M[M[a, b], z1], M[a, xi], z2)


def coincidence_kind(nb: NearBrace, t1: tuple[int, int, int], t2: tuple[int, int, int]) -> str:
    if t1 == t2:
        return "identical"
    one = nb.one
    if t1[0] == one and t2[0] == one and t1 == single_parameter(nb, t1[1]) and t2 == single_parameter(nb, t2[1]):
        return "single"
    if t1[2] == t2[2] and (t1[0], t1[1]) == (t2[1], t2[0]):
        return "swapped"
    return "other"


def sigma_coincidence_check(nb: NearBrace, t1, t2) -> CoincidenceReport:
    """If the two sigma tables coincide, test the matching necessary identity.

    ``single`` pairs ``(1, z, 0*z)`` / ``(1, w, 0*w)`` need ``z^-1*w - 1 = w - z``;
    ``swapped`` pairs ``(z1, z2, xi)`` / ``(z2, z1, xi)`` need ``0*z1^-1*z2 = z2 - z1``.
    """
    k1 = t1.key if isinstance(t1, ParamTriple) else tuple(t1)
    k2 = t2.key if isinstance(t2, ParamTriple) else tuple(t2)
    equal = bool(np.array_equal(sigma_table(nb, *k1), sigma_table(nb, *k2)))
    kind = coincidence_kind(nb, k1, k2)
    if not equal:
        return CoincidenceReport(False, kind, None)
    if kind == "identical":
        return CoincidenceReport(True, kind, True)
    if kind == "single":
        z, w = k1[1], k2[1]
        lhs = nb.minus(nb.times(int(nb.minv[z]), w), nb.one)
        rhs = nb.minus(w, z)
        return CoincidenceReport(True, kind, lhs == rhs, (z, w))
    if kind == "swapped":
        z1, z2 = k1[0], k1[1]
        lhs = nb.times(nb.times(nb.zero, int(nb.minv[z1])), z2)
        rhs = nb.minus(z2, z1)
        return CoincidenceReport(True, kind, lhs == rhs, (z1, z2))
    return CoincidenceReport(True, kind, None)
