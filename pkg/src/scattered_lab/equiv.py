"""Equivalence of subspaces U_f under scalars, GL(2, q^n) and Gamma-L(2, q^n).

A semilinear map ``(M, j)`` sends ``(x, y)`` to ``M (x^(p^j), y^(p^j))``.
Because ``f(x)^sigma = f^sigma(x^sigma)``, it maps ``U_f`` onto ``U_h`` iff
the linear map ``M`` sends ``U_{f^sigma}`` onto ``U_h``, i.e. iff

    h o (A*id + B*s) = C*id + D*s        with s = f^sigma

as q-polynomials.  The scan enumerates ``(A, B)``; the identity then fixes
``(C, D)`` or rules the pair out, coordinate by coordinate.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExceeded, ConsistencyError, DegenerateSubspace, DivisionByZero, FieldMismatch, NotSameLinearSet, ParameterError
from .gf import Field
from .linpoly import QPoly, apply_automorphism, compose, eval_poly, inverse, qpoly
from .linset import INFINITY, contains_direct


@dataclass(frozen=True)
class SemilinearMap:
    field: Field
    A: int
    B: int
    C: int
    D: int
    j: int = 0

    def det(self) -> int:
        F = self.field
        return F.sub(F.mul(self.A, self.D), F.mul(self.B, self.C))

    def matrix(self) -> tuple[int, int, int, int]:
        return (self.A, self.B, self.C, self.D)

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        F = self.field
        xs, ys = F.automorphism(x, self.j), F.automorphism(y, self.j)
        return (F.add(F.mul(self.A, xs), F.mul(self.B, ys)), F.add(F.mul(self.C, xs), F.mul(self.D, ys)))

    def __matmul__(self, other: "SemilinearMap") -> "SemilinearMap":
        """``self`` after ``other``."""
        F = self.field
        au = lambda a: F.automorphism(a, self.j)  # noqa: E731
        A2, B2, C2, D2 = (au(x) for x in other.matrix())
        A = F.add(F.mul(self.A, A2), F.mul(self.B, C2))
        B = F.add(F.mul(self.A, B2), F.mul(self.B, D2))
        C = F.add(F.mul(self.C, A2), F.mul(self.D, C2))
        D = F.add(F.mul(self.C, B2), F.mul(self.D, D2))
        return SemilinearMap(F, A, B, C, D, (self.j + other.j) % F.degree)

    def to_json(self) -> dict:
        F = self.field
        return {"matrix": [[F.coords(self.A), F.coords(self.B)], [F.coords(self.C), F.coords(self.D)]],
                "automorphism": self.j}


def identity_map(F: Field) -> SemilinearMap:
    return SemilinearMap(F, 1, 0, 0, 1, 0)


def maps_onto(phi: SemilinearMap, f: QPoly, h: QPoly) -> bool:
    """Exact check that ``phi`` is invertible and sends U_f into (hence onto) U_h."""
    F = f.field
    if phi.det() == 0:
        return False
    for x in F.power_basis():
        x = int(x)
        u, v = phi(x, eval_poly(f, x))
        if eval_poly(h, u) != v:
            return False
    return True


def image_qpoly(f: QPoly, phi: SemilinearMap) -> QPoly:
    """The q-polynomial h with ``phi(U_f) = U_h``."""
    F = f.field
    s = apply_automorphism(f, phi.j)
    first = qpoly(F, {0: phi.A}) + s.scale(phi.B)
    second = qpoly(F, {0: phi.C}) + s.scale(phi.D)
    try:
        inv = inverse(first)
    except DivisionByZero:
        raise DegenerateSubspace("image of U_f is not the graph of a q-polynomial") from None
    return compose(second, inv)


def map_linear_set_points(points: dict, phi: SemilinearMap) -> dict:
    """Push a ``{point: weight}`` map through the induced collineation."""
    F = phi.field
    out = {}
    for pt, w in points.items():
        u, v = phi(0, 1) if pt is INFINITY else phi(1, int(pt))
        img = INFINITY if u == 0 else F.div(v, u)
        out[img] = w
    return out


def random_gl(F: Field, rng: np.random.Generator) -> SemilinearMap:
    while True:
        A, B, C, D = (F.random_element(rng) for _ in range(4))
        phi = SemilinearMap(F, A, B, C, D)
        if phi.det():
            return phi


# ---------------------------------------------------------------------------
# scalar equivalence and Z(Gamma-L) lower bounds
# ---------------------------------------------------------------------------

def scalar_equiv(f: QPoly, h: QPoly) -> int | None:
    """Some lambda with ``lambda * U_f = U_h``, i.e. ``h_i = f_i lambda^(1 - q^i)``."""
    if f.field != h.field:
        raise FieldMismatch("different fields")
    F = f.field
    if f.support() != h.support() or f.coeffs[0] != h.coeffs[0]:
        return None
    rest = [i for i in f.support() if i]
    if not rest:
        return 1
    i = rest[0]
    N = F.N
    r = int(F.log[F.div(h.coeffs[i], f.coeffs[i])])
    a = (1 - F.q**i) % N
    g = int(np.gcd(a, N))
    if r % g:
        return None
    Ng = N // g
    base = (r // g) * pow(a // g, -1, Ng) % Ng if Ng > 1 else 0
    for k in range(g):
        lam = F.g_pow(base + k * Ng)
        if all(F.mul(fc, F.pow(lam, 1 - F.q**t)) == hc
               for t, (fc, hc) in enumerate(zip(f.coeffs, h.coeffs)) if fc):
            return lam
    return None


def zgl_lower_bound(fs: list[QPoly]) -> int:
    """Number of scalar classes among subspaces defining one linear set."""
    if not fs:
        raise ParameterError("empty list")
    ref = fs[0]
    for g in fs[1:]:
        if not (contains_direct(ref, g) and contains_direct(g, ref)):
            raise NotSameLinearSet("inputs do not define the same linear set")
    reps: list[QPoly] = []
    for g in fs:
        if not any(scalar_equiv(r, g) is not None for r in reps):
            reps.append(g)
    return len(reps)


# ---------------------------------------------------------------------------
# the (A, B) scan
# ---------------------------------------------------------------------------

def _u_table(h: QPoly) -> np.ndarray:
    """Row i holds the log coefficients of ``h o (A*id)`` for A of log i-1."""
    F = h.field
    lh = h.logs()
    la = np.arange(-1, F.N, dtype=np.int64)
    u = np.full((F.order, F.n), -1, dtype=np.int64)
    for k in range(F.n):
        if lh[k] >= 0:
            u[1:, k] = (lh[k] + F.qpow[k] * la[1:]) % F.N
    return u


def _v_table(h: QPoly, s: QPoly) -> np.ndarray:
    """Row i holds the log coefficients of ``h o (B*s)`` for B of log i-1."""
    F = h.field
    n, N = F.n, F.N
    lh, ls = h.logs(), s.logs()
    lb = np.arange(0, N, dtype=np.int64)
    v = np.full((F.order, n), -1, dtype=np.int64)
    for k in range(n):
        acc = np.full(N, -1, dtype=np.int64)
        for t in range(n):
            c = ls[(k - t) % n]
            if lh[t] < 0 or c < 0:
                continue
            term = (lh[t] + F.qpow[t] * ((lb + c) % N)) % N
            acc = kernels.ladd(acc, term, F.zech, N)
        v[1:, k] = acc
    return v


def _row_elem(F: Field, row: int) -> int:
    return 0 if row == 0 else F.g_pow(row - 1)


@dataclass
class ScanReport:
    """Outcome of an (A, B) scan; ``complete`` means the whole space was covered."""

    maps: list[SemilinearMap]
    complete: bool
    scanned: int
    total: int
    resume_token: str | None = None
    automorphisms: list[int] = field(default_factory=list)

    @property
    def witness(self) -> SemilinearMap | None:
        return self.maps[0] if self.maps else None


def _parse_token(token: str | None) -> tuple[int, int]:
    if not token:
        return 0, 0
    try:
        j, row = token.split(":")
        return int(j), int(row)
    except ValueError:
        raise ParameterError(f"malformed resume token {token!r}") from None


def scan(f: QPoly, h: QPoly, autos: list[int], stop_first: bool, budget: int | None = None,
         resume: str | None = None, threads: int = 1, rows_per_chunk: int = 64) -> ScanReport:
    """Enumerate ``(j, A, B)`` in lexicographic order (A, B by discrete log, zero first).

    ``budget`` caps the number of ``(A, B)`` candidates examined by this call;
    an unfinished scan reports a token ``"j:row"`` that resumes it.
    """
    if f.field != h.field:
        raise FieldMismatch("different fields")
    F = f.field
    if f.is_scalar() or h.is_scalar():
        raise DegenerateSubspace("U_f must not be an F_{q^n}-subspace")
    order = F.order
    total = len(autos) * order * order
    j0, row0 = _parse_token(resume)
    u = _u_table(h)
    found: list[SemilinearMap] = []
    scanned = 0
    done_before = sum(order * order for j in autos if j < j0) + row0 * order
    for j in autos:
        if j < j0:
            continue
        s = apply_automorphism(f, j)
        v = _v_table(h, s)
        ls = s.logs()
        row = row0 if j == j0 else 0
        while row < order:
            nrows = rows_per_chunk * max(1, threads)
            if budget is not None:
                room = (budget - scanned) // order
                if room <= 0:
                    return ScanReport(found, False, done_before + scanned, total, f"{j}:{row}", autos)
                nrows = min(nrows, room)
            hi = min(order, row + nrows)
            step = -(-(hi - row) // max(1, threads))
            batch = [(lo, min(hi, lo + step)) for lo in range(row, hi, step)]
            cost = (hi - row) * order
            row = hi

            def work(rng, v=v, ls=ls):
                return kernels.pair_scan(u, v, ls, rng[0], rng[1], F.zech, F.N, F.negshift, stop_first)

            if len(batch) == 1:
                parts = [work(batch[0])]
            else:
                with ThreadPoolExecutor(max_workers=threads) as ex:
                    parts = list(ex.map(work, batch))
            scanned += cost
            for part in parts:
                for ai, bi, lc, ld in part:
                    A, B = _row_elem(F, int(ai)), _row_elem(F, int(bi))
                    C = 0 if lc < 0 else F.g_pow(int(lc))
                    D = 0 if ld < 0 else F.g_pow(int(ld))
                    phi = SemilinearMap(F, A, B, C, D, j)
                    if not maps_onto(phi, f, h):
                        raise ConsistencyError(f"scan produced a map that fails exact verification: {phi}")
                    found.append(phi)
                    if stop_first:
                        return ScanReport(found, True, done_before + scanned, total, None, autos)
    return ScanReport(found, True, done_before + scanned, total, None, autos)


def automorphism_range(F: Field, mode: str) -> list[int]:
    if mode == "linear":
        return [0]
    if mode == "semilinear":
        return list(range(F.degree))
    raise ParameterError(f"mode must be 'linear' or 'semilinear', got {mode!r}")


def gammaL_scan(f: QPoly, h: QPoly, mode: str = "semilinear", budget: int | None = None,
                resume: str | None = None, threads: int = 1) -> ScanReport:
    return scan(f, h, automorphism_range(f.field, mode), True, budget, resume, threads)


def gammaL_equivalent(f: QPoly, h: QPoly, mode: str = "semilinear", budget: int | None = None,
                      resume: str | None = None, threads: int = 1) -> SemilinearMap | None:
    """A map sending U_f onto U_h, or None after an exhaustive scan.

    The identity is tried before the scan.  Raises :class:`BudgetExceeded`
    when the cap stops the scan first.
    """
    if f.field == h.field and maps_onto(identity_map(f.field), f, h):
        return identity_map(f.field)
    rep = gammaL_scan(f, h, mode, budget, resume, threads)
    if rep.witness is None and not rep.complete:
        raise BudgetExceeded(rep.resume_token, rep.scanned, rep.total)
    return rep.witness


# ---------------------------------------------------------------------------
# stabilizers
# ---------------------------------------------------------------------------

@dataclass
class StabReport:
    order: int
    elements: list[SemilinearMap]
    generators: list[SemilinearMap]
    linear_only: bool = True

    def to_json(self, with_elements: bool = False) -> dict:
        out = {"order": self.order, "linear_only": self.linear_only,
               "generators": [g.to_json() for g in self.generators]}
        if with_elements:
            out["elements"] = [g.to_json() for g in self.elements]
        return out


def _key(phi: SemilinearMap) -> tuple:
    return (phi.A, phi.B, phi.C, phi.D, phi.j)


def closure(gens: list[SemilinearMap]) -> set[tuple]:
    """Element keys of the group generated by ``gens``."""
    if not gens:
        return set()
    F = gens[0].field
    start = identity_map(F)
    seen = {_key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g @ x
                k = _key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
        frontier = nxt
    return set(seen)


def generators_of(elements: list[SemilinearMap]) -> list[SemilinearMap]:
    """Greedy generating set, scanning elements in order."""
    gens: list[SemilinearMap] = []
    group: set[tuple] = set()
    target = {_key(e) for e in elements}
    for el in elements:
        if group == target:
            break
        if _key(el) not in group:
            gens.append(el)
            group = closure(gens)
    if group != target:
        raise ConsistencyError("stabilizer elements are not closed under composition")
    return gens


def gl_stabilizer(f: QPoly, threads: int = 1) -> StabReport:
    """All of GL(2, q^n) fixing U_f, by exhaustive (A, B) scan."""
    rep = scan(f, f, [0], stop_first=False, threads=threads)
    gens = generators_of(rep.maps)
    return StabReport(len(rep.maps), rep.maps, gens, True)
