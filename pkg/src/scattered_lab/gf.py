"""Finite field arithmetic in F_{q^n}, q = p^e, as a degree e*n extension of F_p.

Elements are plain Python ints: the element ``c_0 + c_1 t + ... + c_{d-1} t^{d-1}``
(``d = e*n``, coefficients in ``0..p-1``) is encoded as ``sum c_i p^i``.
Scalar arithmetic goes through discrete-log and Zech tables built once at
construction; the same tables feed the vectorized helpers and the kernels.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ConsistencyError, DivisionByZero, NonPrime, NotADivisor, ParameterError, Reducible, SizeLimitExceeded

DEFAULT_TABLE_BUDGET = 1 << 22


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` by trial division."""
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^e``; raise :class:`NonPrime` if ``q`` is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise NonPrime(f"{q} is not a prime power")
    p = fs[0]
    e = round(math.log(q, p))
    if p**e != q:
        raise NonPrime(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists, lowest degree first
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        k >>= 1
    return result


def is_irreducible(mu: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    mu = list(mu)
    d = len(mu) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    # a root in F_p means a linear factor
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(mu)) % p == 0:
            return False
    x = [0, 1]
    frob = [x]  # frob[k] = x^(p^k) mod mu
    for _ in range(d):
        frob.append(_ppowmod(frob[-1], p, mu, p))
    if _psub(frob[d], x, p):
        return False
    for r in prime_factors(d):
        g = _pgcd(mu, _psub(frob[d // r], x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``d`` over F_p.

    Candidates are ordered by the tuple ``(c_0, c_1, ..., c_{d-1})``.
    """
    for low in itertools.product(range(p), repeat=d):
        mu = tuple(low) + (1,)
        if is_irreducible(mu, p):
            return mu
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class Field:
    """F_{q^n} with q = p^e.

    Parameters
    ----------
    p, e, n : int
        Characteristic, degree of F_q over F_p, degree of the extension over F_q.
    mu : sequence of int, optional
        Monic irreducible modulus of degree ``e*n`` over F_p, lowest
        coefficient first.  Defaults to :func:`smallest_irreducible`.
    table_budget : int
        Largest field order for which tables are built.
    """

    def __init__(self, p: int, e: int, n: int, mu: Sequence[int] | None = None,
                 table_budget: int = DEFAULT_TABLE_BUDGET):
        if not is_prime(p):
            raise NonPrime(f"p={p} is not prime")
        if e < 1 or n < 1:
            raise ParameterError("e and n must be positive")
        d = e * n
        order = p**d
        if order > table_budget:
            raise SizeLimitExceeded(f"field of order {order} exceeds table budget {table_budget}")
        if mu is None:
            mu = smallest_irreducible(p, d)
        else:
            mu = tuple(int(c) % p for c in mu)
            if len(mu) != d + 1 or mu[-1] != 1:
                raise ParameterError(f"modulus must be monic of degree {d}")
            if not is_irreducible(mu, p):
                raise Reducible(f"modulus {list(mu)} is reducible over F_{p}")
        self.p, self.e, self.n = p, e, n
        self.q = p**e
        self.degree = d
        self.order = order
        self.N = order - 1
        self.mu = tuple(mu)
        self.negshift = self.N // 2 if p % 2 else 0
        self._pw = np.array([p**i for i in range(d)], dtype=np.int64)
        self.gen = self._find_primitive()
        self._build_tables()
        self.qpow = np.array([pow(self.q, i, self.N) if self.N > 1 else 0 for i in range(n)], dtype=np.int64)

    # -- construction ------------------------------------------------------

    def coords(self, a: int) -> list[int]:
        """Coordinate vector of ``a`` over F_p in the power basis of t."""
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coords(self, c: Iterable[int]) -> int:
        c = list(c)
        if len(c) > self.degree:
            raise ParameterError("too many coordinates")
        return sum((int(x) % self.p) * self.p**i for i, x in enumerate(c))

    def mul_schoolbook(self, a: int, b: int) -> int:
        """Multiply via polynomial product mod mu (no tables)."""
        return self.from_coords(_pmod(_pmul(self.coords(a), self.coords(b), self.p), self.mu, self.p))

    def _pow_schoolbook(self, a: int, k: int) -> int:
        return self.from_coords(_ppowmod(self.coords(a), k, self.mu, self.p))

    def _find_primitive(self) -> int:
        if self.N == 1:
            return 1
        primes = prime_factors(self.N)
        for c in range(2, self.order):
            if all(self._pow_schoolbook(c, self.N // r) != 1 for r in primes):
                return c
        raise AssertionError("no primitive element")  # pragma: no cover

    def _mult_matrix(self, c: int) -> np.ndarray:
        """Matrix over F_p of y -> c*y on coordinate columns."""
        cols = []
        y = c
        for _ in range(self.degree):
            cols.append(self.coords(y))
            y = self._times_t(y)
        return np.array(cols, dtype=np.int64).T

    def _times_t(self, y: int) -> int:
        c = self.coords(y)
        shifted = [0] + c
        return self.from_coords(_pmod(shifted, self.mu, self.p))

    def _build_tables(self):
        N, p = self.N, self.p
        block = max(1, math.isqrt(N) + 1)
        mg = self._mult_matrix(self.gen)
        first = np.empty((block, self.degree), dtype=np.int64)
        v = np.array(self.coords(1), dtype=np.int64)
        for k in range(block):
            first[k] = v
            v = (mg @ v) % p
        step = self._mult_matrix(self.from_coords(v.tolist()))  # multiplication by g^block
        digits = np.empty((block * (N // block + 1), self.degree), dtype=np.int64)
        cur = first
        for b in range(N // block + 1):
            digits[b * block:(b + 1) * block] = cur
            cur = (cur @ step.T) % p
        exp = (digits[:N] @ self._pw).astype(np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any() or log[0] != -1:
            raise AssertionError("exponent table is not a bijection onto F^*")
        d0 = exp % p
        plus_one = exp - d0 + (d0 + 1) % p
        self.exp = exp
        self.log = log
        self.zech = log[plus_one]
        self.frob_table = self.from_log(np.where(log < 0, -1, (log * self.q) % N)) if N > 0 else log + 1
        for arr in (self.exp, self.log, self.zech, self.frob_table):
            arr.setflags(write=False)

    # -- descriptors -------------------------------------------------------

    def descriptor(self) -> dict:
        return {"p": self.p, "e": self.e, "n": self.n, "mu": list(self.mu)}

    def __repr__(self) -> str:
        return f"Field(q={self.q}, n={self.n}, mu={list(self.mu)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.e, self.n, self.mu) == (other.p, other.e, other.n, other.mu)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.n, self.mu))

    # -- element access ----------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` in the prime field."""
        return int(k) % self.p

    def g_pow(self, k: int) -> int:
        return int(self.exp[k % self.N])

    def subfield(self, h: int) -> np.ndarray:
        """Sorted elements of the subfield F_{p^h}, ``h | e*n``."""
        if self.degree % h:
            raise NotADivisor(f"{h} does not divide {self.degree}")
        step = self.N // (self.p**h - 1)
        sub = np.concatenate(([0], self.exp[::step]))
        return np.sort(sub)

    def power_basis(self) -> np.ndarray:
        """``1, t, ..., t^(n-1)``: an F_q-basis of F_{q^n} since t generates it."""
        t = self.p if self.degree > 1 else 1
        return np.array([self.pow(t, i) for i in range(self.n)], dtype=np.int64)

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.order))

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = int(self.log[a]), int(self.log[b])
        z = int(self.zech[(lb - la) % self.N])
        return 0 if z < 0 else int(self.exp[(la + z) % self.N])

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + self.negshift) % self.N])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.N])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return int(self.exp[(-int(self.log[a])) % self.N])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("0 raised to a negative power")
            return 1 if k == 0 else 0
        return int(self.exp[(int(self.log[a]) * k) % self.N])

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.add(acc, x)
        return acc

    def prod(self, items: Iterable[int]) -> int:
        acc = 1
        for x in items:
            acc = self.mul(acc, x)
        return acc

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a^(q^i)``; ``i`` is read mod n."""
        if a == 0:
            return 0
        i %= self.n
        return int(self.exp[(int(self.log[a]) * int(self.qpow[i])) % self.N])

    def automorphism(self, a: int, j: int) -> int:
        """``a^(p^j)``; ``j`` is read mod e*n."""
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) * pow(self.p, j % self.degree, self.N)) % self.N])

    def norm(self, a: int, h: int) -> int:
        """Norm from F_{q^n} down to F_{q^h}, ``h | n``."""
        if h < 1 or self.n % h:
            raise NotADivisor(f"{h} does not divide n={self.n}")
        r = self.pow(a, (self.q**self.n - 1) // (self.q**h - 1))
        if not self.in_subfield(r, self.e * h):
            raise ConsistencyError("norm left the subfield")
        return r

    def in_subfield(self, a: int, h: int) -> bool:
        """Whether ``a`` lies in F_{p^h}; ``h | e*n``."""
        if h < 1 or self.degree % h:
            raise NotADivisor(f"{h} does not divide {self.degree}")
        return self.automorphism(a, h) == a

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        return self.N // math.gcd(self.N, int(self.log[a]))

    # -- vectorized arithmetic on int-encoded arrays -----------------------

    def to_log(self, a) -> np.ndarray:
        return self.log[np.asarray(a, dtype=np.int64)]

    def from_log(self, la) -> np.ndarray:
        la = np.asarray(la, dtype=np.int64)
        return np.where(la < 0, 0, self.exp[np.where(la < 0, 0, la)])

    def vadd(self, a, b) -> np.ndarray:
        return self.from_log(kernels.ladd(self.to_log(a), self.to_log(b), self.zech, self.N))

    def vmul(self, a, b) -> np.ndarray:
        return self.from_log(kernels.lmul(self.to_log(a), self.to_log(b), self.N))

    def vneg(self, a) -> np.ndarray:
        return self.from_log(kernels.lneg(self.to_log(a), self.negshift, self.N))

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vfrobenius(self, a, i: int = 1) -> np.ndarray:
        la = self.to_log(a)
        return self.from_log(np.where(la < 0, -1, (la * int(self.qpow[i % self.n])) % self.N))


@functools.lru_cache(maxsize=32)
def _cached_field(p, e, n, mu, table_budget):
    return Field(p, e, n, mu, table_budget)


def make_field(p: int, e: int, n: int, mu: Sequence[int] | None = None,
               table_budget: int = DEFAULT_TABLE_BUDGET) -> Field:
    """Build (or fetch from cache) the field F_{(p^e)^n}."""
    return _cached_field(p, e, n, None if mu is None else tuple(int(c) for c in mu), table_budget)


def field_for_q(q: int, n: int, mu: Sequence[int] | None = None) -> Field:
    p, e = prime_power(q)
    return make_field(p, e, n, mu)


def quadratic_roots(F: Field, c1: int, c0: int, within: int | None = None) -> list[int]:
    """Distinct roots of ``x^2 + c1 x + c0``.

    ``within`` restricts the scan to the subfield F_{p^within}.
    """
    xs = F.elements() if within is None else F.subfield(within)
    val = F.vadd(F.vadd(F.vmul(xs, xs), F.vmul(np.full_like(xs, c1), xs)), np.full_like(xs, c0))
    return sorted(int(x) for x in xs[val == 0])
