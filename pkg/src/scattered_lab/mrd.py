"""Rank-metric codes ``C_f = {x -> a f(x) + b x}`` and their MRD property.

Codewords are F_q-linear maps of F_{q^n}; as matrices over F_q they have
rank ``n - kernel_dim``.  Scaling a codeword by a nonzero field element does
not change its rank, so the minimum distance is read off the ``q^n + 1``
projective classes ``(a : b)``: ``f + m*id`` for every m, plus ``id``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import fp
from .errors import ConsistencyError, DegenerateCode, DependentBasis, FieldMismatch, ParameterError, SizeLimitExceeded
from .gf import Field
from .linpoly import QPoly, adjoint, compose, dickson_shift_ranks, eval_all, log_q, qpoly
from .linset import is_scattered, slope_counts

BRUTE_LIMIT = 1 << 17


@dataclass(frozen=True)
class RankCode:
    """The F_q-linear code C_f of n x n matrices over F_q, dimension 2n."""

    field: Field
    f: QPoly

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dimension(self) -> int:
        return 2 * self.field.n

    def basis(self) -> list[QPoly]:
        """``g^k f`` then ``g^k id`` for k < n: an F_q-basis."""
        F = self.field
        gs = [F.g_pow(k) for k in range(F.n)]
        return [self.f.scale(a) for a in gs] + [qpoly(F, {0: a}) for a in gs]


def _fp_vector(f: QPoly) -> np.ndarray:
    """The map f as a flattened matrix over F_p (columns: images of t^i)."""
    F = f.field
    t = F.p if F.degree > 1 else 1
    xs = np.array([F.pow(t, i) for i in range(F.degree)], dtype=np.int64)
    ys = eval_all(f, xs)
    return np.array([F.coords(int(y)) for y in ys], dtype=np.int64).T.ravel()


def _fq_basis_over_fp(F: Field) -> list[int]:
    """``w^k`` for k < e with w primitive in F_q."""
    w = F.g_pow(F.N // (F.q - 1))
    return [F.pow(w, k) for k in range(F.e)]


def code_from(f: QPoly) -> RankCode:
    F = f.field
    if f.is_scalar():
        raise DegenerateCode("f is an F_{q^n}-multiple of the identity")
    code = RankCode(F, f)
    cs = _fq_basis_over_fp(F)
    vecs = [_fp_vector(b.scale(c)) for b in code.basis() for c in cs]
    if fp.rank(np.array(vecs), F.p) != code.dimension * F.e:
        raise ConsistencyError("the maps g^k f, g^k id are F_q-dependent")
    return code


def class_ranks(c: RankCode, threads: int = 1) -> np.ndarray:
    """Ranks of ``f + m*id`` for every m (index = element), then of ``id``.

    Computed by Dickson rank and again from the slope histogram (the kernel of
    ``f + m*id`` is the slope ``-m`` set); the two must agree.
    """
    F = c.field
    by_rank = dickson_shift_ranks(c.f, threads=threads)
    counts = slope_counts(c.f)[F.vneg(F.elements())]
    # the histogram skips x = 0, hence the + 1
    by_kernel = np.array([F.n - log_q(F, int(k) + 1) for k in counts], dtype=np.int64)
    if not np.array_equal(by_rank, by_kernel):
        raise ConsistencyError("Dickson rank and kernel count disagree on a codeword class")
    return np.append(by_rank, F.n)


def rank_spectrum(c: RankCode, threads: int = 1) -> dict[int, int]:
    """``{rank: number of projective classes}``."""
    r, k = np.unique(class_ranks(c, threads), return_counts=True)
    return {int(a): int(b) for a, b in zip(r, k)}


def min_distance(c: RankCode, threads: int = 1) -> int:
    return int(class_ranks(c, threads).min())


def singleton_holds(c: RankCode, d: int) -> bool:
    """``#C <= q^(n (n - d + 1))`` on exponents."""
    return c.dimension <= c.n * (c.n - d + 1)


def is_mrd(c: RankCode, threads: int = 1, d: int | None = None) -> bool:
    """Singleton equality, cross-checked against scatteredness of f."""
    d = min_distance(c, threads) if d is None else d
    if not singleton_holds(c, d):
        raise ConsistencyError(f"Singleton bound violated with d={d}")
    mrd = c.dimension == c.n * (c.n - d + 1)
    if mrd != bool(is_scattered(c.f, dual=False)):
        raise ConsistencyError("MRD status and scatteredness disagree")
    return mrd


def adjoint_code(c: RankCode) -> RankCode:
    return code_from(adjoint(c.f))


# ---------------------------------------------------------------------------
# matrices over F_q
# ---------------------------------------------------------------------------

def matrix_rep(f: QPoly, basis=None) -> np.ndarray:
    """``M[j, i]`` with ``f(b_i) = sum_j M[j, i] b_j``; entries are F_q elements.

    ``basis`` defaults to the power basis.  Coordinates over F_q are found by
    solving over F_p against the products ``w^k b_j``.
    """
    F = f.field
    n = F.n
    basis = F.power_basis() if basis is None else np.asarray(basis, dtype=np.int64)
    if basis.shape != (n,):
        raise ParameterError(f"need {n} basis elements")
    cs = _fq_basis_over_fp(F)
    T = np.array([F.coords(F.mul(c, int(b))) for b in basis for c in cs], dtype=np.int64).T
    rhs = np.array([F.coords(int(y)) for y in eval_all(f, basis)], dtype=np.int64).T
    Z = fp.solve(T, rhs, F.p)
    if Z is None:
        raise DependentBasis("basis is not F_q-independent")
    M = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        for i in range(n):
            M[j, i] = F.sum(F.mul(int(Z[j * F.e + k, i]), c) for k, c in enumerate(cs))
    return M


# ---------------------------------------------------------------------------
# left idealiser
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Idealiser:
    kind: str          # "Scalars" or "FullCode"
    order: int
    fof_in_span: bool  # whether f o f alone lies in span{f, id}

    def to_json(self) -> dict:
        return {"kind": self.kind, "order": self.order, "fof_in_span": self.fof_in_span}


def span_coefficients(f: QPoly, h: QPoly) -> tuple[int, int] | None:
    """``(alpha, beta)`` with ``h = alpha f + beta id``, or None."""
    if f.field != h.field:
        raise FieldMismatch("different fields")
    F = f.field
    i0 = next(i for i in range(1, F.n) if f.coeffs[i])
    alpha = F.div(h.coeffs[i0], f.coeffs[i0])
    beta = F.sub(h.coeffs[0], F.mul(alpha, f.coeffs[0]))
    if f.scale(alpha) + qpoly(F, {0: beta}) != h:
        return None
    return alpha, beta


def left_idealiser(c: RankCode) -> Idealiser:
    """``{A : A o C in C}``, which is either the scalar maps or all of C.

    It contains every scalar map, lies inside C (since id is in C) and is
    closed under left scalar multiplication, so it is an F_{q^n}-subspace of
    the 2-dimensional space C.  It is all of C iff ``f o c`` is in C for c
    running over an F_q-basis of C.
    """
    f = c.f
    fof = span_coefficients(f, compose(f, f)) is not None
    full = all(span_coefficients(f, compose(f, b)) is not None for b in c.basis())
    if full:
        return Idealiser("FullCode", c.q ** (2 * c.n), fof)
    return Idealiser("Scalars", c.q ** c.n, fof)


# ---------------------------------------------------------------------------
# exhaustive oracles for tiny codes
# ---------------------------------------------------------------------------

def _check_tiny(c: RankCode) -> None:
    if c.field.e != 1:
        raise ParameterError("exhaustive oracles need q prime")
    if c.q ** c.dimension > BRUTE_LIMIT:
        raise SizeLimitExceeded(f"q^(2n) = {c.q ** c.dimension} codewords exceed {BRUTE_LIMIT}")


def basis_matrices(c: RankCode) -> np.ndarray:
    return np.stack([matrix_rep(b) for b in c.basis()])


def materialize(c: RankCode) -> np.ndarray:
    """All ``q^(2n)`` codewords as n x n matrices over F_p (q prime)."""
    _check_tiny(c)
    p = c.q
    B = basis_matrices(c)
    combos = np.array(list(itertools.product(range(p), repeat=B.shape[0])), dtype=np.int64)
    return np.einsum("cr,rij->cij", combos, B) % p


def brute_min_rank(c: RankCode) -> int:
    words = materialize(c)
    return min(fp.rank(w, c.q) for w in words[1:])


def brute_idealiser_order(c: RankCode) -> int:
    """Number of codewords A with ``A C`` inside C, by matrix products."""
    p = c.q
    words = materialize(c)
    B = basis_matrices(c)
    R, piv = fp.rref(B.reshape(B.shape[0], -1), p)
    prods = np.einsum("aij,rjk->arik", words, B) % p
    ok = fp.in_rowspace(R[:len(piv)], piv, prods.reshape(-1, c.n * c.n), p)
    return int(ok.reshape(words.shape[0], B.shape[0]).all(axis=1).sum())


def code_report(c: RankCode, threads: int = 1) -> dict:
    ranks = class_ranks(c, threads)
    d = int(ranks.min())
    r, k = np.unique(ranks, return_counts=True)
    return {
        "params": [c.n, c.n, c.q, d],
        "mrd": is_mrd(c, threads, d),
        "singleton": singleton_holds(c, d),
        "idealiser": left_idealiser(c).to_json(),
        "rank_spectrum": {str(int(a)): int(b) for a, b in zip(r, k)},
        "defining_f": [c.field.coords(a) for a in c.f.coeffs],
    }
