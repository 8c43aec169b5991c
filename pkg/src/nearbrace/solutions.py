"""Set-theoretic braid solutions ``r(x, y) = (sigma_x(y), tau_y(x))`` stored as
two lookup tables, plus their construction from near braces and exhaustive
verification.

Table conventions: ``sigma[x, y] = sigma_x(y)`` and ``tau[y, x] = tau_y(x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .braces import NearBrace
from .groups import GroupTable, _first_true
from .params import ParamTriple, inverse_params, make_triple, right_distributive_mask


class InternalConsistencyError(RuntimeError):
    """Two independent verification routes disagreed."""


@dataclass(frozen=True, eq=False)
class BraidMap:
    sigma: np.ndarray
    tau: np.ndarray
    params: ParamTriple | None = None
    brace: NearBrace | None = field(default=None, repr=False)

    def __post_init__(self):
        s = np.asarray(self.sigma, dtype=np.int64).copy()
        t = np.asarray(self.tau, dtype=np.int64).copy()
        n = s.shape[0]
        if s.shape != (n, n) or t.shape != (n, n):
            raise ValueError("sigma and tau must be square tables of the same order")
        if n and (min(s.min(), t.min()) < 0 or max(s.max(), t.max()) >= n):
            raise ValueError("table entries outside the carrier")
        s.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "sigma", s)
        object.__setattr__(self, "tau", t)

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    def __call__(self, x, y):
        """Apply the map to (arrays of) pairs."""
        return self.sigma[x, y], self.tau[y, x]

    def __eq__(self, other):
        if not isinstance(other, BraidMap):
            return NotImplemented
        return (np.array_equal(self.sigma, other.sigma) and np.array_equal(self.tau, other.tau)
                and self.params == other.params)

    def __hash__(self):
        return hash((self.sigma.tobytes(), self.tau.tobytes(), self.params))


def flip(n: int) -> BraidMap:
    x, y = np.indices((n, n))
    return BraidMap(y, y)  # sigma_x(y) = y, tau_y(x) = x


def identity_map(n: int) -> BraidMap:
    x, y = np.indices((n, n))
    # r(x, y) = (x, y): sigma_x(y) = x, tau_y(x) = y (stored as tau[y, x])
    return BraidMap(x, x)


def tau_from_sigma(sigma: np.ndarray, group: GroupTable) -> np.ndarray:
    """``tau[b, a] = sigma_a(b)^-1 * a * b``."""
    T, inv = group.table, group.inverse
    n = group.order
    b, a = np.indices((n, n))
    return T[inv[sigma[a, b]], T[a, b]]


# -- construction -------------------------------------------------------------------


def _triple(nb: NearBrace, p) -> ParamTriple:
    if isinstance(p, ParamTriple):
        return make_triple(nb, p.z1, p.z2, p.xi)
    return make_triple(nb, *p)


def build_solution(nb: NearBrace, p) -> BraidMap:
    """``sigma_a(b) = a*b*z1 - a*xi + z2`` and ``tau_b(a) = sigma_a(b)^-1 * a * b``."""
    p = _triple(nb, p)
    n, M = nb.n, nb.M
    a, b = np.indices((n, n))
    sigma = nb.heap(M[M[a, b], p.z1], M[a, p.xi], p.z2)
    return BraidMap(sigma, tau_from_sigma(sigma, nb.mul), p, nb)


def build_inverse(nb: NearBrace, p) -> BraidMap:
    """``sigma^_x(y) = z2^ - x*xi^ + x*y*z1^`` with ``xi^ = xi^-1`` and ``zi^ = zi*xi^-1``."""
    p = _triple(nb, p)
    h = inverse_params(nb, p)
    n, M = nb.n, nb.M
    x, y = np.indices((n, n))
    sigma = nb.heap(h.hz2, M[x, h.hxi], M[M[x, y], h.hz1])
    return BraidMap(sigma, tau_from_sigma(sigma, nb.mul), p, nb)


def gv_solution(sb: NearBrace) -> BraidMap:
    """``sigma_a(b) = -a + a*b`` on a skew brace."""
    if not sb.is_skew:
        raise ValueError("gv_solution needs a skew brace")
    n = sb.n
    a, b = np.indices((n, n))
    sigma = sb.A[sb.neg[a], sb.M[a, b]]
    return BraidMap(sigma, tau_from_sigma(sigma, sb.mul), None, sb)


# -- verification ---------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionReport:
    braid_ok: bool
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    nondegenerate: bool
    involutive: bool
    multiplicative: bool | None = None
    p_braiding: bool | None = None
    witnesses: dict = field(default_factory=dict)

    def verdicts(self) -> dict:
        out = {k: getattr(self, k) for k in
               ("braid_ok", "c1_ok", "c2_ok", "c3_ok", "nondegenerate", "involutive")}
        if self.multiplicative is not None:
            out["multiplicative"] = self.multiplicative
        if self.p_braiding is not None:
            out["p_braiding"] = self.p_braiding
        return out


def _triples(n: int):
    return np.indices((n, n, n), sparse=True)


def constraint_masks(m: BraidMap) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Failure masks of the three component constraints over ``(eta, x, y)``."""
    S, T = m.sigma, m.tau
    e, x, y = _triples(m.n)
    s_ex = S[e, x]
    t_xe = T[x, e]
    s_xy = S[x, y]
    t_yx = T[y, x]
    c1 = S[e, s_xy] != S[s_ex, S[t_xe, y]]
    c2 = T[y, t_xe] != T[t_yx, T[s_xy, e]]
    c3 = T[S[t_xe, y], s_ex] != S[T[s_xy, e], t_yx]
    return c1, c2, c3


def _r12(m, u, v, w):
    a, b = m(u, v)
    return a, b, w


def _r23(m, u, v, w):
    b, c = m(v, w)
    return u, b, c


def braid_direct_mask(m: BraidMap) -> np.ndarray:
    """``(r x id)(id x r)(r x id) != (id x r)(r x id)(id x r)`` over all triples."""
    n = m.n
    u, v, w = (np.broadcast_to(t, (n, n, n)) for t in _triples(n))
    left = _r12(m, *_r23(m, *_r12(m, u, v, w)))
    right = _r23(m, *_r12(m, *_r23(m, u, v, w)))
    return (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])


def _is_row_bijective(table: np.ndarray) -> tuple[int, ...] | None:
    srt = np.sort(table, axis=1)
    bad = np.flatnonzero((srt != np.arange(table.shape[0])).any(axis=1))
    return None if len(bad) == 0 else (int(bad[0]),)


def multiplicativity_witness(m: BraidMap, group: GroupTable) -> tuple[int, ...] | None:
    n = m.n
    a, b = np.indices((n, n))
    return _first_true(group.table[m.sigma[a, b], m.tau[b, a]] != group.table[a, b])


def check_multiplicativity(m: BraidMap, nb: NearBrace | GroupTable | None = None) -> bool:
    """``sigma_a(b) * tau_b(a) == a * b`` for every pair."""
    group = _group_of(m, nb)
    return multiplicativity_witness(m, group) is None


def _group_of(m: BraidMap, source) -> GroupTable:
    if isinstance(source, GroupTable):
        return source
    if isinstance(source, NearBrace):
        return source.mul
    if m.brace is not None:
        return m.brace.mul
    raise ValueError("no multiplicative group available for this map")


def analyze_solution(m: BraidMap, group: GroupTable | NearBrace | None = None) -> SolutionReport:
    """Exhaustive braid, non-degeneracy and involutivity checks.

    The braid verdict is computed twice, from the component constraints and
    from the composed maps; ``InternalConsistencyError`` if they disagree.
    """
    n = m.n
    wit: dict[str, tuple[int, ...]] = {}
    masks = constraint_masks(m)
    oks = []
    for name, mask in zip(("C1", "C2", "C3"), masks):
        w = _first_true(mask)
        oks.append(w is None)
        if w is not None:
            wit[name] = w
    direct = _first_true(braid_direct_mask(m))
    braid_ok = all(oks)
    if braid_ok != (direct is None):
        raise InternalConsistencyError("component constraints and composed maps disagree")
    if direct is not None:
        wit["braid"] = direct

    ws, wt = _is_row_bijective(m.sigma), _is_row_bijective(m.tau)
    if ws is not None:
        wit["sigma_row"] = ws
    if wt is not None:
        wit["tau_row"] = wt

    x, y = np.indices((n, n))
    s1, t1 = m(x, y)
    s2, t2 = m(s1, t1)
    inv_w = _first_true((s2 != x) | (t2 != y))
    if inv_w is not None:
        wit["involutive"] = inv_w

    mult = pbr = None
    grp = None
    try:
        grp = _group_of(m, group)
    except ValueError:
        pass
    if grp is not None:
        mw = multiplicativity_witness(m, grp)
        mult = mw is None
        if mw is not None:
            wit["multiplicative"] = mw
        from .pbraiding import check_p_braiding

        pbr = check_p_braiding(m, grp).verdict
    return SolutionReport(braid_ok, oks[0], oks[1], oks[2], ws is None and wt is None,
                          inv_w is None, mult, pbr, wit)


def braid_ok(m: BraidMap) -> bool:
    return not any(mask.any() for mask in constraint_masks(m))


def yang_baxter_form(m: BraidMap) -> bool:
    """Check ``r12 r13 r23 = r23 r13 r12`` for ``r(y, x) = (sigma_x(y), tau_y(x))``."""
    return yang_baxter_witness(m) is None


def yang_baxter_witness(m: BraidMap) -> tuple[int, ...] | None:
    n = m.n
    S, T = m.sigma, m.tau

    def r(u, v):
        # r(u, v) = r-check(v, u)
        return S[v, u], T[u, v]

    def apply(i, j, trip):
        out = list(trip)
        out[i], out[j] = r(trip[i], trip[j])
        return tuple(out)

    trip = tuple(np.broadcast_to(t, (n, n, n)) for t in _triples(n))
    left = apply(0, 1, apply(0, 2, apply(1, 2, trip)))
    right = apply(1, 2, apply(0, 2, apply(0, 1, trip)))
    mask = (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])
    return _first_true(mask)


def inverse_pair_witness(m: BraidMap, w: BraidMap) -> tuple[str, tuple[int, ...]] | None:
    """First failure among the four identities making ``w`` the inverse of ``m``."""
    if m.n != w.n:
        raise ValueError("maps differ in order")
    n = m.n
    x, y = np.indices((n, n))
    S, T, Sh, Th = m.sigma, m.tau, w.sigma, w.tau
    checks = (
        ("hat_sigma(sigma, tau) = x", Sh[S[x, y], T[y, x]] != x),
        ("hat_tau(tau, sigma) = y", Th[T[y, x], S[x, y]] != y),
        ("sigma(hat_sigma, hat_tau) = x", S[Sh[x, y], Th[y, x]] != x),
        ("tau(hat_tau, hat_sigma) = y", T[Th[y, x], Sh[x, y]] != y),
    )
    for name, mask in checks:
        wit = _first_true(mask)
        if wit is not None:
            return name, wit
    return None


def verify_inverse_pair(m: BraidMap, w: BraidMap) -> bool:
    return inverse_pair_witness(m, w) is None


# -- identities of the multi-parametric family ------------------------------------


def composite_identity_masks(nb: NearBrace, m: BraidMap) -> tuple[np.ndarray, np.ndarray]:
    """Failure masks over ``(a, b, c)`` for

    ``sigma_a(sigma_b(c)) = a*b*c*z1*z1 - a*b*xi*z1 + c1 + z2`` and
    ``sigma_a(b) * sigma_{tau_b(a)}(c) = a*b*c*z1 + c2 - a*xi*z2 + z2*z2``,

    the right-hand sides tabulated directly from the near brace.
    """
    p = m.params
    if p is None:
        raise ValueError("map carries no parameters")
    M, A = nb.M, nb.A
    S, T = m.sigma, m.tau
    a, b, c = _triples(nb.n)
    z1, z2, xi, c1, c2 = p.z1, p.z2, p.xi, p.c1, p.c2
    abc = M[M[a, b], c]
    lhs2 = S[a, S[b, c]]
    rhs2 = A[A[nb.heap(M[M[abc, z1], z1], M[M[M[a, b], xi], z1], nb.zero), c1], z2]
    lhs3 = M[S[a, b], S[T[b, a], c]]
    rhs3 = A[nb.heap(A[M[abc, z1], c2], M[M[a, xi], z2], nb.zero), M[z2, z2]]
    return lhs2 != rhs2, lhs3 != rhs3


# -- reductions ------------------------------------------------------------------------


@dataclass(frozen=True)
class RumpReport:
    sigma_matches: bool
    braid_ok: bool
    nondegenerate: bool
    involutive: bool

    @property
    def ok(self) -> bool:
        return self.sigma_matches and self.braid_ok and self.nondegenerate and self.involutive


def rump_check(b: NearBrace) -> RumpReport:
    """On a brace, the ``(1, 1, 1)`` solution is ``sigma_x(y) = x*y - x`` and involutive."""
    if not b.is_brace:
        raise ValueError("rump_check needs a brace (zero == one, abelian addition)")
    one = b.one
    m = build_solution(b, (one, one, one))
    n = b.n
    x, y = np.indices((n, n))
    expected = b.A[b.M[x, y], b.neg[x]]
    rep = analyze_solution(m)
    return RumpReport(bool(np.array_equal(m.sigma, expected)), rep.braid_ok, rep.nondegenerate,
                      rep.involutive)


TWIST_MAX_ORDER = 5


def _twist_masks(nb: NearBrace, z: int, maps: np.ndarray) -> np.ndarray:
    n, M = nb.n, nb.M
    a, b = np.indices((n, n))
    src = nb.heap(M[a, b], M[a, z], z)  # a*b - a*z + z
    # target(u, v) = u*v - u*0*z + z
    tgt = nb.heap(M[a, b], M[M[a, nb.zero], z], z)
    lhs = maps[:, src]  # (N, n, n)
    rhs = tgt[maps[:, :, None], maps[:, None, :]]
    ok = (lhs == rhs).all(axis=(1, 2))
    ok &= (maps == nb.one).any(axis=1)
    return ok


def twist_solutions(nb: NearBrace, z: int, max_order: int = TWIST_MAX_ORDER) -> list[tuple[int, ...]]:
    """Every ``f`` with ``f(e) = 1`` for some ``e`` and
    ``f(a*b - a*z + z) = f(a)*f(b) - f(a)*0*z + z``, in lexicographic order."""
    n = nb.n
    if n > max_order:
        raise ValueError(f"twist search is exhaustive over n^n maps; order {n} > {max_order}")
    if not right_distributive_mask(nb)[z]:
        raise ValueError(f"z={z} is not right distributive")
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)
    ok = _twist_masks(nb, z, maps)
    return [tuple(int(v) for v in row) for row in maps[ok]]


def twist_search(nb: NearBrace, z: int, max_order: int = TWIST_MAX_ORDER) -> tuple[int, ...] | None:
    """First twist map in lexicographic order, or ``None``."""
    found = twist_solutions(nb, z, max_order)
    return found[0] if found else None
