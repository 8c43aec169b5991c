"""Exhaustive search for near-brace additions on a fixed multiplicative group.

The search assigns whole rows of the addition table. Row ``p`` is the left
translation ``rho_p(y) = p + y``, a permutation with ``rho_p(0) = p``. Two
rules force new rows from known ones:

* group closure: ``rho_{p+q} = rho_p . rho_q`` and ``rho_{-p} = rho_p^-1``
* distributivity: ``rho_{a*b} = L_a . rho_b . L_a^-1 . rho_{a*0}``, where
  ``L_a`` is left multiplication. This identity is equivalent to
  ``a*(b+c) = a*b - a*0 + a*c`` for all ``c``.

A forced row that clashes with an assigned row, fails ``rho_p(0) = p`` or
repeats an entry in some column prunes the branch. Complete tables are
re-validated from scratch before being accepted.
"""

from __future__ import annotations

import logging

import numpy as np

from .braces import NearBrace, validate_near_brace
from .groups import GroupTable, validate_group

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_ORDER = 8


class _Conflict(Exception):
    pass


class _State:
    __slots__ = ("n", "zero", "rows", "col_used", "order")

    def __init__(self, n: int, zero: int):
        self.n = n
        self.zero = zero
        self.rows: list[tuple[int, ...] | None] = [None] * n
        self.col_used = [0] * n  # bitmask of values taken in each column
        self.order: list[int] = []  # assignment order, drives closure

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.n, s.zero = self.n, self.zero
        s.rows = list(self.rows)
        s.col_used = list(self.col_used)
        s.order = list(self.order)
        return s


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[v] for v in q)


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class _Search:
    def __init__(self, mul: GroupTable, zero: int, limit: int | None):
        self.mul = mul
        self.n = mul.order
        self.zero = zero
        self.limit = limit
        T = mul.table.tolist()
        self.T = T
        n = self.n
        self.L = [tuple(T[a]) for a in range(n)]
        self.Linv = [_invert(self.L[a]) for a in range(n)]
        # a with a*0 == p, for each p
        self.a_of_zero_image = [0] * n
        for a in range(n):
            self.a_of_zero_image[T[a][zero]] = a
        self.found: list[np.ndarray] = []
        self.nodes = 0

    # -- propagation ---------------------------------------------------------

    def _assign(self, st: _State, p: int, row: tuple[int, ...], queue: list[int]):
        if row[st.zero] != p:
            raise _Conflict
        cur = st.rows[p]
        if cur is not None:
            if cur != row:
                raise _Conflict
            return
        used = st.col_used
        for w, v in enumerate(row):
            if used[w] >> v & 1:
                raise _Conflict
        for w, v in enumerate(row):
            used[w] |= 1 << v
        st.rows[p] = row
        queue.append(p)

    def _close(self, st: _State, queue: list[int]):
        rows, T, L, Linv = st.rows, self.T, self.L, self.Linv
        while queue:
            p = queue.pop()
            rp = rows[p]
            st.order.append(p)
            inv_p = _invert(rp)
            self._assign(st, inv_p[st.zero], inv_p, queue)
            for q in list(st.order):
                rq = rows[q]
                self._assign(st, rp[q], _compose(rp, rq), queue)
                self._assign(st, rq[p], _compose(rq, rp), queue)
                # p as rho_b, q as rho_{a*0}
                a = self.a_of_zero_image[q]
                self._assign(st, T[a][p], _compose(_compose(L[a], rp), _compose(Linv[a], rq)), queue)
                # q as rho_b, p as rho_{a*0}
                a = self.a_of_zero_image[p]
                self._assign(st, T[a][q], _compose(_compose(L[a], rq), _compose(Linv[a], rp)), queue)

    # -- branching -------------------------------------------------------------

    def _candidates(self, st: _State, x: int):
        """Permutations with ``perm[zero] = x`` avoiding every used column value."""
        n, zero, used = self.n, st.zero, st.col_used
        perm = [-1] * n
        perm[zero] = x
        taken = 1 << x
        positions = [w for w in range(n) if w != zero]

        def rec(k: int, taken: int):
            if k == len(positions):
                yield tuple(perm)
                return
            w = positions[k]
            block = taken | used[w]
            for v in range(n):
                if not block >> v & 1:
                    perm[w] = v
                    yield from rec(k + 1, taken | 1 << v)
            perm[w] = -1

        yield from rec(0, taken)

    def run(self):
        st = _State(self.n, self.zero)
        queue: list[int] = []
        try:
            self._assign(st, self.zero, tuple(range(self.n)), queue)
            self._close(st, queue)
        except _Conflict:  # pragma: no cover - identity row never conflicts
            return
        self._dfs(st)

    def _dfs(self, st: _State) -> bool:
        """Return True to stop the whole search (limit reached)."""
        self.nodes += 1
        try:
            x = st.rows.index(None)
        except ValueError:
            table = np.array(st.rows, dtype=np.int64)
            if self._accept(table):
                self.found.append(table)
                if self.limit is not None and len(self.found) >= self.limit:
                    return True
            return False
        for cand in self._candidates(st, x):
            child = st.copy()
            queue: list[int] = []
            try:
                self._assign(child, x, cand, queue)
                self._close(child, queue)
            except _Conflict:
                continue
            if self._dfs(child):
                return True
        return False

    def _accept(self, table: np.ndarray) -> bool:
        if not validate_group(self.n, table).ok:
            return False
        add = GroupTable(table, self.mul.labels)
        return validate_near_brace(add, self.mul).ok


def enumerate_near_braces(
    mul: GroupTable,
    limit: int | None = None,
    *,
    zero: int | None = None,
    skew_only: bool = False,
    max_order: int = EXHAUSTIVE_MAX_ORDER,
) -> list[NearBrace]:
    """All near braces ``(X, +, mul)``, sorted by the flattened addition table.

    ``zero`` pins the additive neutral; ``skew_only`` pins it to the
    multiplicative identity. With ``limit`` the search stops after that many
    hits (deterministically) and the hits are returned sorted.
    """
    n = mul.order
    if n > max_order:
        raise ValueError(f"order {n} exceeds the exhaustive bound {max_order}; raise max_order to force")
    if skew_only:
        zero = mul.identity
    zeros = range(n) if zero is None else [zero]
    tables: list[np.ndarray] = []
    for z in zeros:
        remaining = None if limit is None else limit - len(tables)
        if remaining is not None and remaining <= 0:
            break
        search = _Search(mul, z, remaining)
        search.run()
        log.debug("zero=%d: %d nodes, %d structures", z, search.nodes, len(search.found))
        tables.extend(search.found)
    tables.sort(key=lambda t: t.ravel().tolist())
    return [NearBrace(GroupTable(t, mul.labels), mul, _checked=True) for t in tables]


def count_near_braces(mul: GroupTable, **kwargs) -> int:
    return len(enumerate_near_braces(mul, **kwargs))
