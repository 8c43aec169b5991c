from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearbrace.gaussian import (
    I,
    ONE,
    EXAMPLE_PARAMS,
    QGauss,
    QParams,
    SplitMix64,
    check_constants,
    QConstancyError,
    displayed_sigma,
    format_qgauss,
    parse_qgauss,
    qoi_add_i,
    qoi_braid_check,
    qoi_constants,
    qoi_inv,
    qoi_membership,
    qoi_mul,
    qoi_neg_i,
    qoi_sample,
    qoi_sigma_tau,
    qoi_sub_i,
)


def q(text: str) -> QGauss:
    return parse_qgauss(text)


def test_membership_examples():
    assert qoi_membership(ONE)
    assert not qoi_membership(QGauss(Fraction(0)))
    assert not qoi_membership(QGauss(Fraction(1, 2)))
    assert qoi_membership(q("-1"))
    assert not qoi_membership(q("2/3+4/5i"))  # 10 + 12 = 22 over 15


def test_mul_inv_examples():
    assert qoi_mul(ONE, I) == I
    assert qoi_mul(I, I) == q("-1")
    inv = qoi_inv(q("1+2i"))
    assert inv == q("1/5-2/5i") and qoi_membership(inv)
    with pytest.raises(ZeroDivisionError):
        qoi_inv(QGauss(Fraction(0)))


def test_additive_examples():
    a = q("3/7-2i")
    assert qoi_add_i(a, I) == a
    assert qoi_add_i(ONE, ONE) == q("2-i") and qoi_membership(q("2-i"))
    assert qoi_neg_i(ONE) == q("-1+2i")
    assert qoi_add_i(ONE, q("-1+2i")) == I
    assert qoi_sub_i(a, a) == I


@pytest.mark.parametrize("text", ["i", "-i", "1", "-1", "5", "3", "15", "2/3+4/5i", "-1/3i", "7/9-i"])
def test_parse_format_round_trip(text):
    v = q(text)
    assert q(format_qgauss(v)) == v


@pytest.mark.parametrize("text", ["1/2", "i/4", "", "abc", "1+", "3/0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        q(text)


def test_splitmix_reference_values():
    # published outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_sample_contract():
    assert qoi_sample(7, 6, 0) == []
    xs = qoi_sample(7, 6, 10)
    assert len(xs) == 10 and all(qoi_membership(v) for v in xs)
    assert xs == qoi_sample(7, 6, 10)
    assert xs != qoi_sample(8, 6, 10)


_members = st.builds(
    lambda m, p, k, r: QGauss(Fraction(m, 2 * p + 1), Fraction(k, 2 * r + 1)),
    st.integers(-30, 30), st.integers(0, 20), st.integers(-30, 30), st.integers(0, 20),
).filter(qoi_membership)


@settings(max_examples=300, deadline=None)
@given(_members, _members)
def test_closure(a, b):
    for v in (qoi_mul(a, b), qoi_inv(a), qoi_add_i(a, b), qoi_neg_i(a), qoi_sub_i(a, b)):
        assert qoi_membership(v)


@settings(max_examples=200, deadline=None)
@given(_members, _members, _members)
def test_near_brace_distributivity(a, b, c):
    # a(b + c) = ab - a*i + ac with i the neutral element
    assert qoi_mul(a, qoi_add_i(b, c)) == qoi_add_i(qoi_sub_i(qoi_mul(a, b), qoi_mul(a, I)), qoi_mul(a, c))


@pytest.mark.parametrize("p", EXAMPLE_PARAMS, ids=str)
def test_example_parameter_sets(p):
    samples = qoi_sample(42, 6, 100)
    assert check_constants(p, samples) == (I, I)
    rep = qoi_braid_check(p, seed=42, count=200)
    assert rep.ok and rep.triples == 200
    a, b = ONE, I
    s, t = qoi_sigma_tau(p, a, b)
    assert qoi_mul(s, t) == qoi_mul(a, b)


def test_displayed_forms():
    # the abbreviated displays agree with the general formula only for (5, 3, 15)
    reps = {str(p): qoi_braid_check(p, seed=42, count=200).displayed_braid_ok for p in EXAMPLE_PARAMS}
    assert reps == {str(EXAMPLE_PARAMS[0]): False, str(EXAMPLE_PARAMS[1]): False, str(EXAMPLE_PARAMS[2]): True}
    assert displayed_sigma(QParams(I, ONE, ONE), ONE, ONE) is None


def test_constancy_broken():
    p = QParams(ONE, ONE, I)
    c_1, c_3 = qoi_constants(p, ONE), qoi_constants(p, QGauss(Fraction(3)))
    assert c_1[0] != c_3[0]
    with pytest.raises(QConstancyError):
        check_constants(p, [ONE, QGauss(Fraction(3))])
    rep = qoi_braid_check(p, seed=42, count=200)
    assert not rep.constants_ok and not rep.ok and rep.triples == 0


def test_nonmember_parameter_reported():
    rep = qoi_braid_check(QParams(I, I, q("2")), seed=1, count=5)
    assert not rep.ok and "membership_xi" in rep.witnesses
