"""F_q-linear sets of rank n in PG(1, q^n).

A point ``<(1, m)>`` is identified with its slope ``m``; ``<(0, 1)>`` is
:data:`INFINITY`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import ConsistencyError, FieldMismatch, ParameterError, ZeroMap
from .gf import Field
from .linpoly import QPoly, dickson_shift_ranks, eval_all, log_q


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


@dataclass
class LinearSet:
    """Points of a linear set with their weights.

    ``slopes`` is sorted; ``weights[i]`` is the weight of ``<(1, slopes[i])>``.
    """

    field: Field
    slopes: np.ndarray
    weights: np.ndarray
    rank: int
    infinity_weight: int = 0

    def __len__(self) -> int:
        return int(self.slopes.shape[0]) + (1 if self.infinity_weight else 0)

    def __contains__(self, point) -> bool:
        return self.weight(point) > 0

    def weight(self, point) -> int:
        if point is INFINITY:
            return self.infinity_weight
        i = np.searchsorted(self.slopes, point)
        if i < self.slopes.shape[0] and self.slopes[i] == point:
            return int(self.weights[i])
        return 0

    def points(self) -> dict:
        pts = {int(m): int(w) for m, w in zip(self.slopes, self.weights)}
        if self.infinity_weight:
            pts[INFINITY] = self.infinity_weight
        return pts

    def histogram(self) -> dict[int, int]:
        """``{weight: number of points}``."""
        ws, cs = np.unique(self.weights, return_counts=True)
        h = {int(w): int(c) for w, c in zip(ws, cs)}
        if self.infinity_weight:
            h[self.infinity_weight] = h.get(self.infinity_weight, 0) + 1
        return h

    def partition_ok(self) -> bool:
        q = self.field.q
        total = sum((q**w - 1) * c for w, c in self.histogram().items())
        return total == q**self.rank - 1

    def is_scattered(self) -> bool:
        return bool((self.weights <= 1).all()) and self.infinity_weight <= 1


def _weights_from_counts(F: Field, counts: np.ndarray) -> np.ndarray:
    lookup = {F.q**k - 1: k for k in range(F.n + 1)}
    try:
        return np.array([lookup[int(c)] for c in counts], dtype=np.int64)
    except KeyError as exc:
        raise ConsistencyError(f"point with {exc.args[0]} vectors is not an F_q-subspace") from None


def slope_counts(f: QPoly) -> np.ndarray:
    """``counts[m] = #{x != 0 : f(x) = m x}`` for every field element m."""
    F = f.field
    xs = np.arange(1, F.order, dtype=np.int64)
    ly = F.to_log(eval_all(f, xs))
    lx = F.log[xs]
    slope = F.from_log(np.where(ly < 0, -1, (ly - lx) % F.N))
    return np.bincount(slope, minlength=F.order)


def linear_set(f: QPoly) -> LinearSet:
    """The linear set L_f defined by ``U_f = {(x, f(x))}``."""
    F = f.field
    counts = slope_counts(f)
    pts = np.nonzero(counts)[0]
    return LinearSet(F, pts.astype(np.int64), _weights_from_counts(F, counts[pts]), F.n)


def linear_set_from_subspace(F: Field, basis: Sequence[tuple[int, int]]) -> LinearSet:
    """Linear set of the F_q-span of vectors ``(u, v)`` in F^2."""
    sub = F.subfield(F.e)
    U = np.zeros(1, dtype=np.int64)
    V = np.zeros(1, dtype=np.int64)
    for u, v in basis:
        cu = F.vmul(sub, np.full_like(sub, u))
        cv = F.vmul(sub, np.full_like(sub, v))
        U = F.vadd(U[:, None], cu[None, :]).ravel()
        V = F.vadd(V[:, None], cv[None, :]).ravel()
    k = len(basis)
    if np.unique(U * F.order + V).shape[0] != F.q**k:
        raise ParameterError("vectors are not F_q-independent")
    nz = (U != 0) | (V != 0)
    U, V = U[nz], V[nz]
    inf_count = int(np.count_nonzero(U == 0))
    fin = U != 0
    lu, lv = F.to_log(U[fin]), F.to_log(V[fin])
    slope = F.from_log(np.where(lv < 0, -1, (lv - lu) % F.N))
    counts = np.bincount(slope, minlength=F.order)
    pts = np.nonzero(counts)[0]
    inf_w = _weights_from_counts(F, np.array([inf_count]))[0] if inf_count else 0
    return LinearSet(F, pts.astype(np.int64), _weights_from_counts(F, counts[pts]), k, int(inf_w))


@dataclass
class ScatterResult:
    """Outcome of :func:`is_scattered`; truthy iff scattered."""

    scattered: bool
    witness: int | None
    bad_slopes: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.scattered


def is_scattered(f: QPoly, dual: bool = True, threads: int = 1) -> ScatterResult:
    """Whether every ``f - m*id`` has kernel of dimension at most one.

    The slope histogram gives the kernel sizes of all ``f - m*id`` at once;
    with ``dual`` the Dickson-rank sweep recomputes them independently.
    """
    F = f.field
    counts = slope_counts(f)
    bad = np.nonzero(counts >= F.q**2 - 1)[0]
    if dual:
        ranks = dickson_shift_ranks(f, threads=threads)  # index m <-> f + m*id
        low = np.nonzero(ranks <= F.n - 2)[0]
        bad_rank = np.sort(F.vneg(low))
        if not np.array_equal(np.sort(bad), bad_rank):
            raise ConsistencyError("slope count and Dickson rank disagree on scatteredness")
    bad_list = [int(m) for m in np.sort(bad)]
    return ScatterResult(not bad_list, bad_list[0] if bad_list else None, bad_list)


def max_linearity(f: QPoly) -> int:
    """Largest t | n with ``lambda * U_f = U_f`` for every lambda in F_{q^t}^*."""
    F = f.field
    if f.is_zero():
        raise ZeroMap("the zero map has no linear set")
    basis = F.power_basis()
    fb = eval_all(f, basis)
    best = 1
    for t in range(1, F.n + 1):
        if F.n % t:
            continue
        lams = F.subfield(F.e * t)[1:]
        prods = F.vmul(lams[:, None], basis[None, :])
        lhs = eval_all(f, prods.ravel()).reshape(prods.shape)
        rhs = F.vmul(lams[:, None], fb[None, :])
        if np.array_equal(lhs, rhs):
            best = t
    g = 0
    for i in f.support():
        g = np.gcd(g, i)
    by_gcd = int(np.gcd(F.n, g))
    if by_gcd != best:
        raise ConsistencyError(f"linearity scan gives {best}, coefficient gcd gives {by_gcd}")
    return best


def contains_direct(f: QPoly, g: QPoly) -> bool:
    """``L_f`` contained in ``L_g``, by comparing slope sets."""
    if f.field != g.field:
        raise FieldMismatch("different fields")
    sf = np.nonzero(slope_counts(f))[0]
    sg = np.nonzero(slope_counts(g))[0]
    return bool(np.isin(sf, sg).all())


def contains_dickson(f: QPoly, g: QPoly, threads: int = 1) -> bool:
    """Containment via Dickson determinants.

    For each x the q-polynomial ``F(Y) = f(x) Y - x g(Y)`` must be singular;
    vanishing at every x of F_{q^n} is divisibility by ``x^(q^n) - x``.
    """
    if f.field != g.field:
        raise FieldMismatch("different fields")
    F = f.field
    n = F.n
    xs = F.elements()
    fx = eval_all(f, xs)
    b = np.empty((xs.shape[0], n), dtype=np.int64)
    b[:, 0] = F.vsub(fx, F.vmul(xs, np.full_like(xs, g.coeffs[0])))
    for i in range(1, n):
        b[:, i] = F.vneg(F.vmul(xs, np.full_like(xs, g.coeffs[i])))
    lb = F.to_log(b)
    mats = np.empty((xs.shape[0], n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            col = lb[:, (j - i) % n]
            mats[:, i, j] = np.where(col < 0, -1, (col * F.qpow[i]) % F.N)
    _, dets = kernels.rank_det(mats, F.zech, F.N, F.negshift, threads=threads)
    return bool((dets < 0).all())


def lemma36_invariants(f: QPoly) -> tuple[int, ...]:
    """Coefficient expressions shared by q-polynomials with the same linear set.

    Returns ``a_0``, then ``a_k a_{n-k}^(q^k)`` for k = 1..n-1, then
    ``a_1 a_{k-1}^q a_{n-k}^(q^k) + a_k a_{n-1}^q a_{n-k+1}^(q^k)`` for
    k = 2..n-1 (indices mod n).
    """
    F = f.field
    n = F.n
    a = lambda i: f.coeffs[i % n]  # noqa: E731
    fr = F.frobenius
    out = [a(0)]
    for k in range(1, n):
        out.append(F.mul(a(k), fr(a(n - k), k)))
    for k in range(2, n):
        t1 = F.prod([a(1), fr(a(k - 1), 1), fr(a(n - k), k)])
        t2 = F.prod([a(k), fr(a(n - 1), 1), fr(a(n - k + 1), k)])
        out.append(F.add(t1, t2))
    return tuple(out)


def lemma36_check(f: QPoly, g: QPoly) -> bool:
    """Necessary condition for ``L_f = L_g``; a True result proves nothing."""
    if f.field != g.field:
        raise FieldMismatch("different fields")
    return lemma36_invariants(f) == lemma36_invariants(g)
