from __future__ import annotations

import itertools

import numpy as np
import pytest

from nearbrace.braces import shift_to_skew
from nearbrace.enumeration import count_near_braces, enumerate_near_braces
from nearbrace.groups import build_standard, cyclic, small_groups


def _all_group_tables(n: int) -> set[bytes]:
    """Every group table on 0..n-1, as relabellings of the isomorphism types."""
    out = set()
    for spec in small_groups(n):
        g = build_standard(spec)
        if g.order != n:
            continue
        T = g.table
        for perm in itertools.permutations(range(n)):
            p = np.array(perm)
            inv = np.argsort(p)
            out.add(p[T[inv][:, inv]].astype(np.int64).tobytes())
    return out


def _naive_near_braces(mul: np.ndarray) -> list[np.ndarray]:
    n = mul.shape[0]
    found = []
    for raw in _all_group_tables(n):
        add = np.frombuffer(raw, dtype=np.int64).reshape(n, n)
        zero = next(e for e in range(n) if (add[e] == np.arange(n)).all())
        neg = np.argmax(add == zero, axis=1)
        ok = True
        for a, b, c in itertools.product(range(n), repeat=3):
            if mul[a, add[b, c]] != add[add[mul[a, b], neg[mul[a, zero]]], mul[a, c]]:
                ok = False
                break
        if ok:
            found.append(add)
    found.sort(key=lambda t: t.ravel().tolist())
    return found


def test_tiny_counts():
    assert count_near_braces(cyclic(1)) == 1
    found = enumerate_near_braces(cyclic(2))
    assert len(found) == 2
    assert sorted(nb.zero for nb in found) == [0, 1]


@pytest.mark.parametrize("spec", small_groups(5))
def test_matches_brute_force_oracle(spec):
    g = build_standard(spec)
    engine = [nb.A for nb in enumerate_near_braces(g)]
    oracle = _naive_near_braces(g.table)
    assert len(engine) == len(oracle)
    for a, b in zip(engine, oracle):
        assert np.array_equal(a, b)


@pytest.mark.parametrize("spec", small_groups(6))
def test_shift_correspondence(spec):
    g = build_standard(spec)
    found = enumerate_near_braces(g)
    skew = enumerate_near_braces(g, skew_only=True)
    assert len(found) == g.order * len(skew)
    assert {shift_to_skew(nb) for nb in found} == set(skew)


def test_known_skew_counts():
    # skew braces with a given multiplicative group of order <= 6
    counts = {spec: count_near_braces(build_standard(spec), skew_only=True) for spec in small_groups(6)}
    assert counts == {"cyclic:1": 1, "cyclic:2": 1, "cyclic:3": 1, "cyclic:4": 2, "cyclic:2*cyclic:2": 4,
                      "cyclic:5": 1, "cyclic:6": 3, "symmetric:3": 5}


def test_canonical_order_and_determinism():
    g = build_standard("symmetric:3")
    a = enumerate_near_braces(g)
    b = enumerate_near_braces(g)
    keys = [nb.A.ravel().tolist() for nb in a]
    assert keys == sorted(keys)
    assert a == b


def test_limit_and_zero_pin():
    g = build_standard("cyclic:4")
    assert len(enumerate_near_braces(g, 3)) == 3
    assert enumerate_near_braces(g, 3) == enumerate_near_braces(g, 3)
    pinned = enumerate_near_braces(g, zero=2)
    assert len(pinned) == 2 and all(nb.zero == 2 for nb in pinned)


def test_order_bound():
    with pytest.raises(ValueError):
        enumerate_near_braces(build_standard("cyclic:9"))
    assert count_near_braces(build_standard("cyclic:9"), max_order=9) == 9 * count_near_braces(
        build_standard("cyclic:9"), skew_only=True, max_order=9)
