"""Exact model of the infinite near brace Q(O(i)).

Carrier: Gaussian rationals ``x + y i`` whose components have odd reduced
denominators and whose numerators, written over a common odd denominator,
have an odd sum. Multiplication is complex multiplication; addition is
``a +_i b = a - i + b`` with neutral ``i``.

Only exact arithmetic is used (``fractions.Fraction`` components).

Sampling uses SplitMix64 so that sample streams are reproducible from the
seed alone, independent of the host language's RNG::

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z      = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output = z ^ (z >> 31)

Integers in ``[lo, hi]`` are drawn as ``lo + output mod (hi - lo + 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next_u64() % (hi - lo + 1)


@dataclass(frozen=True)
class QGauss:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "QGauss") -> "QGauss":
        return QGauss(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QGauss") -> "QGauss":
        return QGauss(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QGauss":
        return QGauss(-self.re, -self.im)

    def __mul__(self, other: "QGauss") -> "QGauss":
        return QGauss(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def conj(self) -> "QGauss":
        return QGauss(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def reciprocal(self) -> "QGauss":
        d = self.norm()
        if d == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QGauss(self.re / d, -self.im / d)

    def __str__(self) -> str:
        return format_qgauss(self)


ZERO = QGauss(Fraction(0))
ONE = QGauss(Fraction(1))
I = QGauss(Fraction(0), Fraction(1))
TWO_I = QGauss(Fraction(0), Fraction(2))


def qoi_membership(v: QGauss) -> bool:
    """Odd reduced denominators, and an odd numerator sum over the common denominator."""
    d1, d2 = v.re.denominator, v.im.denominator
    if d1 % 2 == 0 or d2 % 2 == 0:
        return False
    d = lcm(d1, d2)
    num_sum = v.re.numerator * (d // d1) + v.im.numerator * (d // d2)
    return num_sum % 2 == 1


def qoi_mul(a: QGauss, b: QGauss) -> QGauss:
    return a * b


def qoi_inv(a: QGauss) -> QGauss:
    return a.reciprocal()


def qoi_add_i(a: QGauss, b: QGauss) -> QGauss:
    return a - I + b


def qoi_neg_i(a: QGauss) -> QGauss:
    """The ``+_i`` inverse ``2i - a``."""
    return TWO_I - a


def qoi_sub_i(a: QGauss, b: QGauss) -> QGauss:
    """``a -_i b = a +_i (2i - b) = a - b + i``."""
    return qoi_add_i(a, qoi_neg_i(b))


# -- literals -------------------------------------------------------------------------

_NUM = r"[0-9]+(?:/[0-9]+)?"
_TERM = re.compile(rf"([+-]?)\s*({_NUM})?\s*(i?)")


def _odd_fraction(text: str) -> Fraction:
    if "/" in text and int(text.split("/")[1]) % 2 == 0:
        raise ValueError(f"denominator of {text!r} must be odd")
    f = Fraction(text)
    if f.denominator % 2 == 0:  # pragma: no cover - caught above
        raise ValueError(f"denominator of {text!r} must be odd")
    return f


def parse_qgauss(text: str) -> QGauss:
    """Parse literals such as ``i``, ``-i``, ``-1``, ``15`` or ``2/3+4/5i``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty literal")
    re_part, im_part = Fraction(0), Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and not m.group(3)):
            raise ValueError(f"cannot parse complex literal {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if seen and not m.group(1):
            raise ValueError(f"missing operator in {text!r}")
        mag = _odd_fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * mag
        else:
            re_part += sign * mag
        pos = m.end()
        seen = True
    return QGauss(re_part, im_part)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_qgauss(v: QGauss) -> str:
    if v.im == 0:
        return _frac_str(v.re)
    im = v.im
    if im == 1:
        im_s = "i"
    elif im == -1:
        im_s = "-i"
    else:
        im_s = _frac_str(im) + "i"
    if v.re == 0:
        return im_s
    return _frac_str(v.re) + ("" if im_s.startswith("-") else "+") + im_s


# -- the multi-parametric maps ---------------------------------------------------------


@dataclass(frozen=True)
class QParams:
    z1: QGauss
    z2: QGauss
    xi: QGauss

    @classmethod
    def parse(cls, z1: str, z2: str, xi: str) -> "QParams":
        return cls(parse_qgauss(z1), parse_qgauss(z2), parse_qgauss(xi))

    def __str__(self):
        return f"({self.z1}, {self.z2}, {self.xi})"


EXAMPLE_PARAMS = (
    QParams(I, I, -ONE),
    QParams(I, -I, ONE),
    QParams(QGauss(5), QGauss(3), QGauss(15)),
)


def qoi_constants(p: QParams, a: QGauss) -> tuple[QGauss, QGauss]:
    """``c1 = a*z2*z1 -_i a*xi`` and ``c2 = -_i(a*xi) +_i a*z1*z2`` at one ``a``."""
    axi = a * p.xi
    c1 = qoi_sub_i(a * p.z2 * p.z1, axi)
    c2 = qoi_add_i(qoi_neg_i(axi), a * p.z1 * p.z2)
    return c1, c2


def qoi_sigma(p: QParams, a: QGauss, b: QGauss) -> QGauss:
    """``a*b*z1 -_i a*xi +_i z2``."""
    return qoi_add_i(qoi_sub_i(a * b * p.z1, a * p.xi), p.z2)


def qoi_tau(p: QParams, a: QGauss, b: QGauss) -> QGauss:
    """``tau_b(a) = sigma_a(b)^-1 * a * b``."""
    return qoi_sigma(p, a, b).reciprocal() * a * b


def qoi_sigma_tau(p: QParams, a: QGauss, b: QGauss) -> tuple[QGauss, QGauss]:
    s = qoi_sigma(p, a, b)
    return s, s.reciprocal() * a * b


def qoi_inverse_params(p: QParams) -> QParams:
    """``(z1 * xi^-1, z2 * xi^-1, xi^-1)``."""
    xinv = p.xi.reciprocal()
    return QParams(p.z1 * xinv, p.z2 * xinv, xinv)


def qoi_hat_sigma(p: QParams, x: QGauss, y: QGauss) -> QGauss:
    """``z2^ -_i x*xi^ +_i x*y*z1^`` with the inverse parameters."""
    h = qoi_inverse_params(p)
    return qoi_add_i(qoi_sub_i(h.z2, x * h.xi), x * y * h.z1)


def qoi_hat_tau(p: QParams, x: QGauss, y: QGauss) -> QGauss:
    """``tau^_y(x) = sigma^_x(y)^-1 * x * y``."""
    return qoi_hat_sigma(p, x, y).reciprocal() * x * y


def displayed_sigma(p: QParams, a: QGauss, b: QGauss) -> QGauss | None:
    """Abbreviated sigma forms commonly quoted for the three example parameter sets.

    ``None`` for parameters outside those three.
    """
    if p == EXAMPLE_PARAMS[0]:
        return qoi_add_i(a * b * I, a)
    if p == EXAMPLE_PARAMS[1]:
        return qoi_sub_i(a * b * I, a)
    if p == EXAMPLE_PARAMS[2]:
        return qoi_add_i(qoi_sub_i(a * b * QGauss(5), QGauss(15) * a), QGauss(3))
    return None


# -- sampling --------------------------------------------------------------------------


def qoi_sample(seed: int, bound: int, count: int) -> list[QGauss]:
    """``count`` members with ``|numerators| <= bound`` and odd denominators ``<= 2*bound+1``.

    Each candidate draws, in order: real numerator, real denominator index
    ``p``, imaginary numerator, imaginary denominator index ``q``; the
    denominators are ``2p+1`` and ``2q+1`` with ``p, q in [0, bound]``.
    Non-members are rejected.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = SplitMix64(seed)
    out: list[QGauss] = []
    while len(out) < count:
        m = rng.randint(-bound, bound)
        p = rng.randint(0, bound)
        k = rng.randint(-bound, bound)
        q = rng.randint(0, bound)
        v = QGauss(Fraction(m, 2 * p + 1), Fraction(k, 2 * q + 1))
        if qoi_membership(v):
            out.append(v)
    return out


# -- checks ------------------------------------------------------------------------------


class QConstancyError(ValueError):
    def __init__(self, which: str, a1: QGauss, a2: QGauss, v1: QGauss, v2: QGauss):
        super().__init__(f"{which} is not constant: a={a1} gives {v1}, a={a2} gives {v2}")
        self.which = which
        self.witness = (a1, a2, v1, v2)


def check_constants(p: QParams, samples: list[QGauss]) -> tuple[QGauss, QGauss]:
    """Evaluate ``c1, c2`` on every sample; raise ``QConstancyError`` on disagreement."""
    if not samples:
        raise ValueError("need at least one sample")
    ref = qoi_constants(p, samples[0])
    for a in samples[1:]:
        cur = qoi_constants(p, a)
        for k, name in enumerate(("c1", "c2")):
            if cur[k] != ref[k]:
                raise QConstancyError(name, samples[0], a, ref[k], cur[k])
    return ref


@dataclass
class QoiBraidReport:
    params: QParams
    c1: QGauss | None = None
    c2: QGauss | None = None
    constants_ok: bool = False
    braid_ok: bool = False
    multiplicative_ok: bool = False
    nondegenerate_ok: bool = False
    closure_ok: bool = False
    inverse_ok: bool = False
    displayed_braid_ok: bool | None = None
    triples: int = 0
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.constants_ok and self.braid_ok and self.multiplicative_ok
                and self.nondegenerate_ok and self.closure_ok and self.inverse_ok)

    def to_json(self) -> dict:
        return {
            "params": {"z1": str(self.params.z1), "z2": str(self.params.z2), "xi": str(self.params.xi)},
            "c1": None if self.c1 is None else str(self.c1),
            "c2": None if self.c2 is None else str(self.c2),
            "constants_ok": self.constants_ok,
            "braid_ok": self.braid_ok,
            "multiplicative_ok": self.multiplicative_ok,
            "nondegenerate_ok": self.nondegenerate_ok,
            "closure_ok": self.closure_ok,
            "inverse_ok": self.inverse_ok,
            "displayed_braid_ok": self.displayed_braid_ok,
            "triples": self.triples,
            "witnesses": {k: [str(v) for v in w] for k, w in self.witnesses.items()},
        }


def _braid_sides(sig, eta, x, y):
    """Both sides of the braid equation at ``(eta, x, y)`` for a sigma function."""

    def r(u, v):
        s = sig(u, v)
        return s, s.reciprocal() * u * v

    # (r x id)(id x r)(r x id)
    a1, a2 = r(eta, x)
    b2, b3 = r(a2, y)
    l1, l2 = r(a1, b2)
    left = (l1, l2, b3)
    # (id x r)(r x id)(id x r)
    c2, c3 = r(x, y)
    d1, d2 = r(eta, c2)
    r2, r3 = r(d2, c3)
    right = (d1, r2, r3)
    return left, right, (a1, a2, b2, b3, l1, l2, c2, c3, d1, d2, r2, r3)


def qoi_braid_check(p: QParams, seed: int = 42, count: int = 200, *, bound: int = 6,
                    constant_samples: int = 100) -> QoiBraidReport:
    """Sampled exact check of the braid equation and companion identities."""
    rep = QoiBraidReport(p)
    for name, v in (("z1", p.z1), ("z2", p.z2), ("xi", p.xi)):
        if not qoi_membership(v):
            rep.witnesses["membership_" + name] = (v,)
            return rep
    const_pool = qoi_sample(seed, bound, constant_samples)
    try:
        rep.c1, rep.c2 = check_constants(p, const_pool)
        rep.constants_ok = True
    except QConstancyError as exc:
        rep.witnesses["constancy_" + exc.which] = exc.witness
        return rep

    pool = qoi_sample(seed + 1, bound, 3 * count)
    triples = [tuple(pool[3 * k:3 * k + 3]) for k in range(count)]
    rep.triples = len(triples)
    braid = mult = closure = inverse = True
    displayed = displayed_sigma(p, ONE, ONE) is not None
    disp_ok = True if displayed else None
    for eta, x, y in triples:
        left, right, inter = _braid_sides(lambda u, v: qoi_sigma(p, u, v), eta, x, y)
        if braid and left != right:
            braid = False
            rep.witnesses["braid"] = (eta, x, y)
        if closure and not all(qoi_membership(v) for v in inter):
            closure = False
            bad = next(v for v in inter if not qoi_membership(v))
            rep.witnesses["closure"] = (eta, x, y, bad)
        for a, b in ((eta, x), (x, y)):
            s, t = qoi_sigma_tau(p, a, b)
            if mult and s * t != a * b:
                mult = False
                rep.witnesses["multiplicative"] = (a, b)
            if inverse:
                hs, ht = qoi_hat_sigma(p, a, b), qoi_hat_tau(p, a, b)
                k2 = (
                    qoi_hat_sigma(p, s, t) == a,
                    qoi_hat_tau(p, s, t) == b,
                    qoi_sigma(p, hs, ht) == a,
                    qoi_tau(p, hs, ht) == b,
                )
                if not all(k2):
                    inverse = False
                    rep.witnesses["inverse"] = (a, b)
        if disp_ok:
            dl, dr, _ = _braid_sides(lambda u, v: displayed_sigma(p, u, v), eta, x, y)
            if dl != dr:
                disp_ok = False
                rep.witnesses["displayed_braid"] = (eta, x, y)
    # sigma_a injective on the sample for a few fixed a
    nondeg = True
    bs = [t[1] for t in triples]
    for a in [t[0] for t in triples[:5]]:
        images = {qoi_sigma(p, a, b) for b in set(bs)}
        if len(images) != len(set(bs)):
            nondeg = False
            rep.witnesses["nondegenerate"] = (a,)
            break
    rep.braid_ok, rep.multiplicative_ok, rep.closure_ok = braid, mult, closure
    rep.inverse_ok, rep.nondegenerate_ok, rep.displayed_braid_ok = inverse, nondeg, disp_ok
    return rep
