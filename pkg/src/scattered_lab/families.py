"""Known families of maximum scattered subspaces and the trinomial family.

Tags: ``PR`` (x^(q^s)), ``LP`` (delta x^(q^s) + x^(q^(n-s))), ``CMPZ``
(delta x^(q^s) + x^(q^(s+n/2))) and ``TRI`` (x^q + x^(q^3) + b x^(q^5)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDegree, BadParameter, BadResidue, GcdViolation, NormCondition, ParameterError
from .gf import Field, quadratic_roots
from .linpoly import QPoly, dickson, minor, qpoly
from .linset import is_scattered

TAGS = ("PR", "LP", "CMPZ", "TRI")


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    field: Field
    s: int | None = None
    b: int | None = None
    delta: int | None = None

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.s is not None:
            out["s"] = self.s
        if self.b is not None:
            out["b"] = self.field.coords(self.b)
        if self.delta is not None:
            out["delta"] = self.field.coords(self.delta)
        return out

    def poly(self) -> QPoly:
        if self.tag == "PR":
            return make_pseudoregulus(self.field, self.s)
        if self.tag == "LP":
            return make_lp(self.field, self.s, self.delta)
        if self.tag == "CMPZ":
            return make_cmpz(self.field, self.s, self.delta)
        if self.tag == "TRI":
            return make_trinomial(self.field, self.b)
        raise ParameterError(f"unknown family tag {self.tag!r}")


def _check_s(F: Field, s: int, modulus: int) -> None:
    if not 1 <= s <= F.n - 1:
        raise GcdViolation(f"s={s} outside 1..{F.n - 1}")
    if math.gcd(s, modulus) != 1:
        raise GcdViolation(f"gcd({s}, {modulus}) != 1")


def make_pseudoregulus(F: Field, s: int) -> QPoly:
    _check_s(F, s, F.n)
    return qpoly(F, {s: 1})


def make_lp(F: Field, s: int, delta: int) -> QPoly:
    if F.n < 4:
        raise BadDegree(f"n={F.n} < 4")
    _check_s(F, s, F.n)
    if F.norm(delta, 1) in (0, 1):
        raise NormCondition("N_{q^n/q}(delta) must avoid {0, 1}")
    return qpoly(F, {s: delta, F.n - s: 1})


def make_cmpz(F: Field, s: int, delta: int) -> QPoly:
    """Candidate only: scatteredness still has to be confirmed by the caller."""
    if F.n not in (6, 8):
        raise BadDegree(f"n={F.n} not in (6, 8)")
    half = F.n // 2
    _check_s(F, s, half)
    if F.norm(delta, half) in (0, 1):
        raise NormCondition("N_{q^n/q^(n/2)}(delta) must avoid {0, 1}")
    return qpoly(F, {s: delta, (s + half) % F.n: 1})


def make_trinomial(F: Field, b: int) -> QPoly:
    if F.n != 6:
        raise BadDegree(f"n={F.n} != 6")
    if F.q % 2 == 0 or F.q % 5 not in (0, 1, 4):
        raise BadResidue(f"q={F.q} must be odd with q = 0, 1 or 4 mod 5")
    if F.add(F.mul(b, b), b) != 1:
        raise BadParameter("b does not satisfy b^2 + b = 1")
    if not F.in_subfield(b, F.e):
        raise BadParameter("b is not in F_q")
    return qpoly(F, {1: 1, 3: 1, 5: b})


# ---------------------------------------------------------------------------
# deterministic parameter choices
# ---------------------------------------------------------------------------

def default_lp_delta(F: Field) -> int:
    """First power of the primitive element whose F_q-norm avoids {0, 1}."""
    for k in range(F.N):
        d = F.g_pow(k)
        if F.norm(d, 1) not in (0, 1):
            return d
    raise NormCondition(f"no admissible delta over q={F.q}")


def cmpz_deltas(F: Field, s: int = 1, limit: int | None = None):
    """Yield ``(delta, scattered)`` over admissible powers of g in exponent order."""
    half = F.n // 2
    stop = F.N if limit is None else min(F.N, limit)
    for k in range(stop):
        d = F.g_pow(k)
        if F.norm(d, half) in (0, 1):
            continue
        yield d, bool(is_scattered(make_cmpz(F, s, d), dual=False))


def find_cmpz_delta(F: Field, s: int = 1) -> int:
    for d, ok in cmpz_deltas(F, s):
        if ok:
            return d
    raise NormCondition(f"no scattered CMPZ instance over q={F.q}, n={F.n}")


def trinomial_parameters(F: Field) -> list[int]:
    """Roots of ``b^2 + b - 1`` in F_q."""
    return quadratic_roots(F, 1, F.neg(1), within=F.e)


# ---------------------------------------------------------------------------
# the matrix D_{m,b} and its two minors
# ---------------------------------------------------------------------------

def r_mb(F: Field, m: int, b: int) -> QPoly:
    """``m x + x^q + x^(q^3) + b x^(q^5)``."""
    if F.n != 6:
        raise BadDegree(f"n={F.n} != 6")
    return qpoly(F, {0: m, 1: 1, 3: 1, 5: b})


def dickson_rmb(F: Field, m: int, b: int) -> np.ndarray:
    return dickson(r_mb(F, m, b))


def minors_636_4(F: Field, m: int, b: int) -> tuple[int, int]:
    """Closed forms of the (6,3) and (6,4) deletion minors of D_{m,b}."""
    if F.n != 6:
        raise BadDegree(f"n={F.n} != 6")
    q = F.q
    P = F.pow
    add, sub, mul = F.add, F.sub, F.mul
    two, three = F.from_int(2), F.from_int(3)
    one_minus_b = sub(1, b)
    three_b = mul(three, b)

    norm_m = P(m, 1 + q**3)
    norm_mq = P(m, q + q**4)
    m63 = sub(two, three_b)
    m63 = add(m63, mul(sub(b, 1), add(norm_m, norm_mq)))
    m63 = add(m63, P(norm_m, q + 1))
    m63 = add(m63, mul(one_minus_b, sub(P(m, 1 + q), P(m, q**3 + q**4))))

    mq2, mq4 = P(m, q**2), P(m, q**4)
    two_minus_3b = sub(two, three_b)
    m64 = mul(two_minus_3b, m)
    m64 = add(m64, mul(two_minus_3b, mq2))
    m64 = add(m64, mul(one_minus_b, mq4))
    m64 = add(m64, P(m, 1 + q + q**2))
    m64 = add(m64, mul(b, P(m, 1 + q + q**4)))
    m64 = add(m64, mul(b, P(m, q + q**2 + q**4)))
    return m63, m64


def direct_minors(F: Field, m: int, b: int) -> tuple[int, int]:
    D = dickson_rmb(F, m, b)
    return minor(F, D, 6, 3), minor(F, D, 6, 4)


def minor_sign(F: Field, b: int) -> int:
    """Field element ``+-1`` relating closed form and deletion minor, fixed at m = 0."""
    closed, _ = minors_636_4(F, 0, b)
    direct, _ = direct_minors(F, 0, b)
    if closed == direct:
        return 1
    if closed == F.neg(direct):
        return F.neg(1)
    raise BadParameter("closed-form M_{6,3}(0) differs from the deletion minor beyond sign")
