"""q-polynomials over F_{q^n}, Dickson matrices and exact linear algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import ConsistencyError, DivisionByZero, FieldMismatch, ParameterError
from .gf import Field


@dataclass(frozen=True)
class QPoly:
    """``f(x) = sum_{i<n} coeffs[i] * x^(q^i)`` over ``field``."""

    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.n:
            raise ParameterError(f"expected {self.field.n} coefficients, got {len(self.coeffs)}")

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def __add__(self, other: "QPoly") -> "QPoly":
        _same_field(self, other)
        F = self.field
        return QPoly(F, tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QPoly") -> "QPoly":
        _same_field(self, other)
        F = self.field
        return QPoly(F, tuple(F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "QPoly":
        """The map ``x -> c * f(x)``."""
        return QPoly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_scalar(self) -> bool:
        """True when f is ``a_0 * x`` (an F_{q^n}-multiple of the identity)."""
        return not any(self.coeffs[1:])

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coeffs) if a]

    def logs(self) -> np.ndarray:
        return self.field.to_log(np.array(self.coeffs, dtype=np.int64))

    def __repr__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                mono = "x" if i == 0 else f"x^(q^{i})"
                terms.append(mono if a == 1 else f"{a}*{mono}")
        return "QPoly(" + (" + ".join(terms) or "0") + ")"


def _same_field(f: QPoly, g: QPoly) -> None:
    if f.field != g.field:
        raise FieldMismatch("q-polynomials live over different fields")


def qpoly(F: Field, coeffs: Sequence[int] | Mapping[int, int]) -> QPoly:
    """Build a q-polynomial from a full list or a sparse ``{i: a_i}`` map."""
    if isinstance(coeffs, Mapping):
        c = [0] * F.n
        for i, a in coeffs.items():
            c[i % F.n] = F.add(c[i % F.n], int(a))
        return QPoly(F, tuple(c))
    return QPoly(F, tuple(int(a) for a in coeffs))


def identity(F: Field) -> QPoly:
    return qpoly(F, {0: 1})


def zero(F: Field) -> QPoly:
    return qpoly(F, {})


def monomial(F: Field, i: int, a: int = 1) -> QPoly:
    return qpoly(F, {i: a})


def trace_poly(F: Field) -> QPoly:
    return QPoly(F, (1,) * F.n)


def random_qpoly(F: Field, rng: np.random.Generator) -> QPoly:
    return QPoly(F, tuple(int(x) for x in rng.integers(0, F.order, F.n)))


# ---------------------------------------------------------------------------
# evaluation, composition, adjoint
# ---------------------------------------------------------------------------

def eval_poly(f: QPoly, x: int) -> int:
    F = f.field
    acc = 0
    for i, a in enumerate(f.coeffs):
        if a:
            acc = F.add(acc, F.mul(a, F.frobenius(x, i)))
    return acc


def eval_all(f: QPoly, xs=None) -> np.ndarray:
    """Vectorized evaluation; ``xs`` defaults to every field element."""
    F = f.field
    xs = F.elements() if xs is None else np.asarray(xs, dtype=np.int64)
    out = kernels.eval_qpoly(f.logs(), F.qpow, F.to_log(xs), F.zech, F.N)
    return F.from_log(out)


def compose(f: QPoly, g: QPoly) -> QPoly:
    """``f o g`` reduced modulo ``x^(q^n) - x``."""
    _same_field(f, g)
    F = f.field
    n = F.n
    c = [0] * n
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                k = (i + j) % n
                c[k] = F.add(c[k], F.mul(a, F.frobenius(b, i)))
    return QPoly(F, tuple(c))


def adjoint(f: QPoly) -> QPoly:
    """``sum a_i^(q^(n-i)) x^(q^(n-i))``."""
    F = f.field
    n = F.n
    c = [0] * n
    for i, a in enumerate(f.coeffs):
        c[(n - i) % n] = F.frobenius(a, n - i)
    return QPoly(F, tuple(c))


def apply_automorphism(f: QPoly, j: int) -> QPoly:
    """Raise every coefficient to the ``p^j``-th power."""
    F = f.field
    return QPoly(F, tuple(F.automorphism(a, j) for a in f.coeffs))


# ---------------------------------------------------------------------------
# Dickson matrices and dense linear algebra over F_{q^n}
# ---------------------------------------------------------------------------

def dickson(f: QPoly) -> np.ndarray:
    """Dickson matrix: entry ``(i, j) = a_{(j-i) mod n}^(q^i)`` (0-indexed)."""
    F = f.field
    n = F.n
    D = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            D[i, j] = F.frobenius(f.coeffs[(j - i) % n], i)
    return D


def rank_det_batch(F: Field, mats: np.ndarray, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Ranks and determinants (as field elements) of a stack of matrices."""
    mats = np.asarray(mats, dtype=np.int64)
    ranks, dets = kernels.rank_det(F.to_log(mats), F.zech, F.N, F.negshift, threads=threads)
    return ranks, F.from_log(dets)


def rank(F: Field, M) -> int:
    return int(rank_det_batch(F, np.asarray(M)[None])[0][0])


def det(F: Field, M) -> int:
    M = np.asarray(M)
    if M.shape[0] != M.shape[1]:
        raise ParameterError("determinant of a non-square matrix")
    return int(rank_det_batch(F, M[None])[1][0])


def minor(F: Field, M, i: int, j: int) -> int:
    """Determinant after deleting row ``i`` and column ``j`` (1-indexed)."""
    M = np.asarray(M)
    sub = np.delete(np.delete(M, i - 1, axis=0), j - 1, axis=1)
    return det(F, sub)


def dickson_shift_ranks(f: QPoly, ms=None, threads: int = 1, chunk: int = 32768) -> np.ndarray:
    """``rank(dickson(f + m*id))`` for every ``m`` in ``ms`` (default: all of F)."""
    F = f.field
    n = F.n
    ms = F.elements() if ms is None else np.asarray(ms, dtype=np.int64)
    base = F.to_log(dickson(f))
    a0 = f.coeffs[0]
    out = np.empty(ms.shape[0], dtype=np.int64)
    idx = np.arange(n)
    for lo in range(0, ms.shape[0], chunk):
        part = ms[lo:lo + chunk]
        la = F.to_log(F.vadd(np.full_like(part, a0), part))
        batch = np.broadcast_to(base, (part.shape[0], n, n)).copy()
        diag = np.where(la[:, None] < 0, -1, (la[:, None] * F.qpow[None, :]) % F.N)
        batch[:, idx, idx] = diag
        r, _ = kernels.rank_det(batch, F.zech, F.N, F.negshift, threads=threads)
        out[lo:lo + chunk] = r
    return out


def mat_mul(F: Field, A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            out[i, j] = F.sum(F.mul(int(A[i, k]), int(B[k, j])) for k in range(A.shape[1]))
    return out


def mat_inverse(F: Field, M) -> np.ndarray:
    """Gauss-Jordan inverse over F."""
    M = [[int(x) for x in row] for row in np.asarray(M)]
    n = len(M)
    A = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise DivisionByZero("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(inv, x) for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                fct = A[r][c]
                A[r] = [F.sub(x, F.mul(fct, y)) for x, y in zip(A[r], A[c])]
    return np.array([row[n:] for row in A], dtype=np.int64)


def inverse(f: QPoly) -> QPoly:
    """Compositional inverse of an invertible q-polynomial.

    Dickson matrices form a ring isomorphic to the q-polynomials mod x^(q^n)-x,
    so the first row of ``dickson(f)^-1`` carries the coefficients.
    """
    Dinv = mat_inverse(f.field, dickson(f))
    return QPoly(f.field, tuple(int(x) for x in Dinv[0]))


# ---------------------------------------------------------------------------
# kernels of q-polynomials
# ---------------------------------------------------------------------------

def log_q(F: Field, count: int) -> int:
    """Exact ``log_q(count)``; raises if ``count`` is not a power of q."""
    k = round(math.log(count, F.q)) if count > 1 else 0
    if F.q**k != count:
        raise ConsistencyError(f"{count} is not a power of q={F.q}")
    return k


def kernel_dim(f: QPoly) -> int:
    """F_q-dimension of ker f, by exhaustive count and by Dickson rank."""
    F = f.field
    zeros = int(np.count_nonzero(eval_all(f) == 0))
    by_count = log_q(F, zeros)
    by_rank = F.n - rank(F, dickson(f))
    if by_count != by_rank:
        raise ConsistencyError(f"kernel dimension {by_count} by count, {by_rank} by Dickson rank")
    return by_count
