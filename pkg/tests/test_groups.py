from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearbrace.groups import (
    GroupTable,
    InvalidStructureError,
    build_standard,
    cyclic,
    dihedral,
    direct_product,
    quaternion,
    relabel,
    small_groups,
    standard_catalogue,
    symmetric,
    validate_group,
)


def _naive_is_group(t) -> bool:
    n = len(t)
    if any(sorted(r) != list(range(n)) for r in t):
        return False
    if any(sorted(t[i][j] for i in range(n)) != list(range(n)) for j in range(n)):
        return False
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return False
    return any(all(t[e][x] == x == t[x][e] for x in range(n)) for e in range(n))


def test_cyclic_small():
    assert cyclic(1).table.tolist() == [[0]]
    c2 = cyclic(2)
    assert c2.table.tolist() == [[0, 1], [1, 0]]
    assert c2.inverse.tolist() == [0, 1]


def test_symmetric3_has_three_involutions():
    s3 = symmetric(3)
    assert validate_group(6, s3.table).ok
    assert sum(s3.element_order(a) == 2 for a in range(6)) == 3
    assert not s3.is_abelian
    assert s3.labels[0] == "123"


@pytest.mark.parametrize("spec", standard_catalogue(8) + ["symmetric:4", "dihedral:16", "cyclic:8*cyclic:8"])
def test_standard_groups_valid(spec):
    g = build_standard(spec)
    assert validate_group(g.order, g.table).ok
    assert g.identity == 0
    assert all(g.inverse[g.inverse[i]] == i for i in range(g.order))


@pytest.mark.parametrize("spec", standard_catalogue(6))
def test_standard_groups_match_naive_oracle(spec):
    assert _naive_is_group(build_standard(spec).table.tolist())


def test_family_orderings():
    d = dihedral(8)
    r, s = 1, 4
    assert d.power(r, 4) == 0 and d.element_order(s) == 2
    # s r s = r^-1
    assert d.op(d.op(s, r), s) == d.inv(r)
    q = quaternion(8)
    assert q.labels[:3] == ("1", "-1", "i")
    assert q.center() == [0, 1]
    assert q.op(2, 2) == 1  # i*i = -1


def test_direct_product():
    g, h = cyclic(2), symmetric(3)
    p = direct_product(g, h)
    assert p.order == 12 and p.identity == 0
    for a, b, c, d in itertools.product(range(2), range(6), range(2), range(6)):
        assert p.op(a * 6 + b, c * 6 + d) == g.op(a, c) * 6 + h.op(b, d)


def test_mutated_cyclic4_rejected():
    t = cyclic(4).table.copy()
    t[1, 1], t[1, 2] = t[1, 2], t[1, 1]
    d = validate_group(4, t)
    assert not d.ok
    assert d.failed("latin_column") or d.failed("associativity")


def test_visible_duplicate():
    d = validate_group(2, [[0, 1], [1, 1]])
    assert not d.ok
    assert d.witness("latin_row")[0] == 1


def test_bad_dimensions():
    with pytest.raises(ValueError):
        validate_group(3, [[0, 1], [1, 0]])
    with pytest.raises(InvalidStructureError):
        GroupTable([[0, 1], [1, 1]])


@pytest.mark.parametrize("spec", ["cyclic:0", "dihedral:3", "symmetric:5", "quaternion:16", "cyclic:65", "foo:2",
                                  "cyclic:8*cyclic:9"])
def test_build_standard_errors(spec):
    with pytest.raises(ValueError):
        build_standard(spec)


def test_small_groups_pairwise_distinct_invariants():
    sig = []
    for spec in small_groups(8):
        g = build_standard(spec)
        orders = sorted(g.element_order(a) for a in range(g.order))
        sig.append((g.order, g.is_abelian, tuple(orders), len(g.center())))
    assert len(set(sig)) == len(sig) == 14


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(small_groups(6)), st.randoms(use_true_random=False))
def test_relabel_preserves_group_axioms(spec, rnd):
    g = build_standard(spec)
    perm = list(range(1, g.order))
    rnd.shuffle(perm)
    h = relabel(g, [0] + perm)
    assert validate_group(h.order, h.table).ok
    assert h.is_abelian == g.is_abelian


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(small_groups(6)), st.data())
def test_single_entry_mutation_detected(spec, data):
    g = build_standard(spec)
    n = g.order
    if n == 1:
        return
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1).filter(lambda v: v != g.table[i, j]))
    t = g.table.copy()
    t[i, j] = v
    d = validate_group(n, t)
    assert not d.ok
    assert d.failed("latin_row") and d.witness("latin_row")[0] == i


def test_tables_are_read_only():
    g = cyclic(3)
    with pytest.raises(ValueError):
        g.table[0, 0] = 1
    assert isinstance(g.table, np.ndarray)
