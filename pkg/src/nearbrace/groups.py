"""Finite groups stored as validated Cayley tables.

Elements are the indices ``0..n-1``. Every constructor in this module puts
the identity at index 0; tables loaded from elsewhere may put it anywhere
(additive groups of near braces routinely do).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_CONSTRUCT_ORDER = 64


class InvalidStructureError(ValueError):
    """Raised when a table fails its structural invariants."""

    def __init__(self, message: str, diagnostics: "Diagnostics | None" = None):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Diagnostics:
    """Outcome of a validation pass: one ``(check, witness)`` per failed check."""

    failures: tuple[tuple[str, tuple[int, ...]], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed(self, name: str) -> bool:
        return any(check == name for check, _ in self.failures)

    def witness(self, name: str) -> tuple[int, ...] | None:
        for check, wit in self.failures:
            if check == name:
                return wit
        return None

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{name} fails at {wit}" for name, wit in self.failures)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [[n, list(w)] for n, w in self.failures]}


def as_table(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _permutation_witness(rows: np.ndarray) -> tuple[int, int, int] | None:
    """First ``(row, j1, j2)`` with ``rows[row, j1] == rows[row, j2]``, j1 < j2."""
    n = rows.shape[1]
    for i, row in enumerate(rows):
        seen: dict[int, int] = {}
        for j, v in enumerate(row.tolist()):
            if v in seen:
                return (i, seen[v], j)
            seen[v] = j
        if len(seen) != n:  # pragma: no cover - unreachable with n entries
            return (i, 0, 0)
    return None


def validate_group(n: int, table) -> Diagnostics:
    """Check group axioms on an ``n x n`` table, reporting a witness per failed check.

    Raises ``ValueError`` only for malformed dimensions.
    """
    arr = as_table(table)
    if arr.shape != (n, n):
        raise ValueError(f"table has shape {arr.shape}, expected ({n}, {n})")
    if n == 0:
        raise ValueError("a group needs at least one element")

    failures: list[tuple[str, tuple[int, ...]]] = []
    bad = _first_true((arr < 0) | (arr >= n))
    if bad is not None:
        # Nothing else is meaningful once an entry is out of range.
        return Diagnostics((("range", bad),))

    row_wit = _permutation_witness(arr)
    if row_wit is not None:
        failures.append(("latin_row", row_wit))
    col_wit = _permutation_witness(arr.T)
    if col_wit is not None:
        failures.append(("latin_column", col_wit))

    i, j, k = np.indices((n, n, n), sparse=True)
    assoc = _first_true(arr[arr[i, j], k] != arr[i, arr[j, k]])
    if assoc is not None:
        failures.append(("associativity", assoc))

    idx = np.arange(n)
    two_sided = [
        e for e in range(n) if np.array_equal(arr[e], idx) and np.array_equal(arr[:, e], idx)
    ]
    if len(two_sided) != 1:
        failures.append(("identity", tuple(two_sided)))
    else:
        e = two_sided[0]
        for a in range(n):
            if not np.any((arr[a] == e) & (arr[:, a] == e)):
                failures.append(("inverse", (a,)))
                break
    return Diagnostics(tuple(failures))


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group ``table[i][j] = i * j`` with derived identity and inverses.

    Construction validates; an invalid table raises ``InvalidStructureError``.
    """

    table: np.ndarray
    labels: tuple[str, ...] = ()
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        arr = as_table(self.table).copy()
        n = arr.shape[0]
        diag = validate_group(n, arr)
        if not diag.ok:
            raise InvalidStructureError(f"not a group: {diag.describe()}", diag)
        arr.setflags(write=False)
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be n distinct strings")
        e = int(np.flatnonzero((arr == np.arange(n)).all(axis=1))[0])
        inv = np.argmax(arr == e, axis=1).astype(np.int64)
        inv.setflags(write=False)
        object.__setattr__(self, "table", arr)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.op(out, a)
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.op(x, a)
            k += 1
        return k

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(self.order) if np.array_equal(t[a], t[:, a])]

    def is_central(self, a: int) -> bool:
        return bool(np.array_equal(self.table[a], self.table[:, a]))

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.labels, self.table.tobytes()))

    def __repr__(self):
        return f"GroupTable(order={self.order}, identity={self.identity})"


# -- standard families --------------------------------------------------------


def _check_size(n: int):
    if n > MAX_CONSTRUCT_ORDER:
        raise ValueError(f"order {n} exceeds the construction cap {MAX_CONSTRUCT_ORDER}")


def cyclic(n: int) -> GroupTable:
    """Powers of a generator g: index k is g^k."""
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    _check_size(n)
    idx = np.arange(n)
    labels = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    return GroupTable((idx[:, None] + idx[None, :]) % n, tuple(labels[:n]))


def dihedral(m: int) -> GroupTable:
    """Dihedral group of order ``m = 2k``: rotations r^j (index j), then r^j s (index k + j)."""
    if m % 2 or m < 4:
        raise ValueError("dihedral(m) needs even m >= 4")
    _check_size(m)
    k = m // 2

    def decode(x):
        return x % k, x // k

    table = np.empty((m, m), dtype=np.int64)
    for x in range(m):
        a, f = decode(x)
        for y in range(m):
            b, g = decode(y)
            # r^a s^f r^b s^g = r^(a + (-1)^f b) s^(f+g)
            rot = (a + (b if f == 0 else -b)) % k
            table[x, y] = rot + k * ((f + g) % 2)
    labels = ["e"] + [f"r^{j}" for j in range(1, k)] + ["s"] + [f"r^{j}s" for j in range(1, k)]
    return GroupTable(table, tuple(labels))


def symmetric(k: int) -> GroupTable:
    """S_k on one-line permutations in lexicographic order; (p q)(x) = p(q(x))."""
    if k < 1 or k > 4:
        raise ValueError("symmetric(k) is supported for 1 <= k <= 4")
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(k))]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return GroupTable(table, tuple(labels))


_Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion(n: int = 8) -> GroupTable:
    """Q8 ordered as 1, -1, i, -i, j, -j, k, -k."""
    if n != 8:
        raise ValueError("only quaternion(8) is supported")
    # unit products of 1, i, j, k as (sign, unit)
    units = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def split(label):
        return (-1, label[1:]) if label.startswith("-") else (1, label)

    index = {lab: i for i, lab in enumerate(_Q8_LABELS)}
    table = np.empty((8, 8), dtype=np.int64)
    for x, lx in enumerate(_Q8_LABELS):
        sx, ux = split(lx)
        for y, ly in enumerate(_Q8_LABELS):
            sy, uy = split(ly)
            s, u = units[(ux, uy)]
            sign = sx * sy * s
            table[x, y] = index[u if sign > 0 else "-" + u]
    return GroupTable(table, _Q8_LABELS)


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Pairs (a, b) at index a * |H| + b."""
    if g.identity != 0 or h.identity != 0:
        raise ValueError("factors must have the identity at index 0")
    n, m = g.order, h.order
    _check_size(n * m)
    gi = np.repeat(np.arange(n), m)
    hi = np.tile(np.arange(m), n)
    table = g.table[gi[:, None], gi[None, :]] * m + h.table[hi[:, None], hi[None, :]]
    labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a in range(n) for b in range(m))
    return GroupTable(table, labels)


_FAMILY_RE = re.compile(r"^\s*(cyclic|dihedral|symmetric|quaternion)\s*[:(]\s*(\d+)\s*\)?\s*$")
_ALIASES = {"klein": "cyclic:2*cyclic:2", "v4": "cyclic:2*cyclic:2"}


def build_standard(spec: str) -> GroupTable:
    """Build a group from a descriptor such as ``cyclic:4``, ``dihedral:8``,
    ``symmetric:3``, ``quaternion:8`` or a product ``cyclic:2*cyclic:4``."""
    text = _ALIASES.get(spec.strip().lower(), spec)
    parts = [p for p in text.split("*")]
    if len(parts) > 1:
        out = build_standard(parts[0])
        for p in parts[1:]:
            out = direct_product(out, build_standard(p))
        return out
    m = _FAMILY_RE.match(text.lower())
    if not m:
        raise ValueError(f"unsupported group family {spec!r}")
    family, size = m.group(1), int(m.group(2))
    builders = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric, "quaternion": quaternion}
    return builders[family](size)


def standard_catalogue(max_order: int = 8) -> list[str]:
    """Every standard-family descriptor of order at most ``max_order``."""
    out = [f"cyclic:{n}" for n in range(1, max_order + 1)]
    out += [f"dihedral:{m}" for m in range(4, max_order + 1, 2)]
    out += [f"symmetric:{k}" for k, n in ((1, 1), (2, 2), (3, 6), (4, 24)) if n <= max_order]
    if max_order >= 8:
        out.append("quaternion:8")
    prods = ["cyclic:2*cyclic:2", "cyclic:2*cyclic:3", "cyclic:2*cyclic:4", "cyclic:2*cyclic:2*cyclic:2",
             "cyclic:3*cyclic:3", "cyclic:2*cyclic:6", "cyclic:2*symmetric:3"]
    for p in prods:
        order = 1
        for part in p.split("*"):
            order *= build_standard(part).order
        if order <= max_order:
            out.append(p)
    return out


# One representative per isomorphism type, orders 1..8.
_SMALL_GROUPS = {
    1: ["cyclic:1"],
    2: ["cyclic:2"],
    3: ["cyclic:3"],
    4: ["cyclic:4", "cyclic:2*cyclic:2"],
    5: ["cyclic:5"],
    6: ["cyclic:6", "symmetric:3"],
    7: ["cyclic:7"],
    8: ["cyclic:8", "cyclic:2*cyclic:4", "cyclic:2*cyclic:2*cyclic:2", "dihedral:8", "quaternion:8"],
}


def small_groups(max_order: int) -> list[str]:
    """Descriptors for all groups of order ``<= max_order`` up to isomorphism (max 8)."""
    if max_order > 8:
        raise ValueError("small_groups covers orders up to 8")
    return [d for n in range(1, max_order + 1) for d in _SMALL_GROUPS[n]]


def relabel(g: GroupTable, perm: Sequence[int]) -> GroupTable:
    """Renumber elements so that old element ``perm[k]`` becomes index ``k``."""
    perm = np.asarray(perm)
    pos = np.empty_like(perm)
    pos[perm] = np.arange(len(perm))
    table = pos[g.table[perm[:, None], perm[None, :]]]
    return GroupTable(table, tuple(g.labels[p] for p in perm))
