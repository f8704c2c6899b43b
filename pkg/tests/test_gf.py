import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scattered_lab.errors import DivisionByZero, NonPrime, NotADivisor, ParameterError, Reducible, SizeLimitExceeded
from scattered_lab.gf import (Field, field_for_q, is_irreducible, is_prime, make_field, prime_factors, prime_power,
                              quadratic_roots, smallest_irreducible)


# ---------------------------------------------------------------------------
# independent oracle: irreducibility by trial division
# ---------------------------------------------------------------------------

def _polydivmod(a, b, p):
    """Remainder of a by monic b over F_p, coefficient lists low to high."""
    a = list(a)
    while len(a) >= len(b):
        c = a[-1] % p
        if c:
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return a


def _irreducible_by_trial_division(mu, p):
    d = len(mu) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not any(_polydivmod(mu, list(low) + [1], p)):
                return False
    return True


def _first_irreducible_brute(p, d):
    for low in itertools.product(range(p), repeat=d):
        mu = list(low) + [1]
        if _irreducible_by_trial_division(mu, p):
            return tuple(mu)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 4), (2, 6), (2, 12), (3, 4), (3, 6), (5, 6)])
def test_modulus_is_brute_force_smallest(p, d):
    assert smallest_irreducible(p, d) == _first_irreducible_brute(p, d)


def test_degree_twelve_modulus_is_irreducible(F9):
    assert _irreducible_by_trial_division(list(F9.mu), 3)


@pytest.mark.parametrize("p,d", [(2, 3), (2, 5), (3, 3), (5, 2)])
def test_irreducibility_test_matches_trial_division(p, d):
    for low in itertools.product(range(p), repeat=d):
        mu = list(low) + [1]
        assert is_irreducible(mu, p) == _irreducible_by_trial_division(mu, p)


def test_modulus_is_deterministic():
    a = Field(3, 1, 6)
    b = Field(3, 1, 6)
    assert a.mu == b.mu == (1, 0, 0, 0, 1, 1, 1)
    assert a.gen == b.gen and np.array_equal(a.exp, b.exp)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_prime_helpers():
    assert [m for m in range(30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(728) == [2, 7, 13]
    assert prime_power(9) == (3, 2)
    assert prime_power(5) == (5, 1)
    with pytest.raises(NonPrime):
        prime_power(6)


@pytest.mark.parametrize("p,n,size", [(3, 6, 729), (5, 6, 15625)])
def test_cardinality(p, n, size):
    F = make_field(p, 1, n)
    assert F.order == size
    assert np.unique(F.exp).shape[0] == size - 1
    assert np.unique(F.elements()).shape[0] == size


def test_generator_has_full_order(F3, F5, F4, F9):
    for F in (F3, F5, F4, F9):
        assert F.pow(F.gen, F.N) == 1
        assert F.order_of(F.gen) == F.N
        assert all(F.pow(F.gen, F.N // r) != 1 for r in prime_factors(F.N))


def test_construction_errors():
    with pytest.raises(NonPrime):
        Field(4, 1, 2)
    with pytest.raises(Reducible):
        Field(3, 1, 2, mu=[2, 0, 1])  # x^2 - 1
    with pytest.raises(ParameterError):
        Field(3, 1, 2, mu=[1, 1])
    with pytest.raises(SizeLimitExceeded):
        Field(2, 1, 30)


def test_explicit_modulus(F3):
    G = make_field(3, 1, 6, mu=[2, 1, 0, 0, 0, 0, 1])  # x^6 + x + 2
    assert G.mu != F3.mu
    assert G.order == 729 and G.order_of(G.gen) == 728


def test_log_table_matches_schoolbook(F3, F4, F9):
    rng = np.random.default_rng(7)
    for F in (F3, F4, F9):
        a = rng.integers(0, F.order, 10_000 if F is F3 else 2000)
        b = rng.integers(0, F.order, a.shape[0])
        got = F.vmul(a, b)
        want = [F.mul_schoolbook(int(x), int(y)) for x, y in zip(a, b)]
        assert np.array_equal(got, want)


def test_vectorized_matches_scalar(F5):
    rng = np.random.default_rng(3)
    a = rng.integers(0, F5.order, 500)
    b = rng.integers(0, F5.order, 500)
    assert list(F5.vadd(a, b)) == [F5.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F5.vsub(a, b)) == [F5.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F5.vneg(a)) == [F5.neg(int(x)) for x in a]
    assert list(F5.vfrobenius(a, 2)) == [F5.frobenius(int(x), 2) for x in a]


def test_addition_is_coordinatewise(F9):
    rng = np.random.default_rng(11)
    for _ in range(300):
        a, b = (int(x) for x in rng.integers(0, F9.order, 2))
        want = F9.from_coords([(x + y) % 3 for x, y in zip(F9.coords(a), F9.coords(b))])
        assert F9.add(a, b) == want


# ---------------------------------------------------------------------------
# arithmetic laws (property tests)
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module", params=[(3, 6), (4, 6), (5, 6), (9, 3), (2, 5)])
def field(request):
    return field_for_q(*request.param)


elem = st.integers(min_value=0, max_value=1 << 30)


@given(a=elem, b=elem, c=elem)
def test_field_axioms(field, a, b, c):
    F = field
    a, b, c = a % F.order, b % F.order, c % F.order
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@given(a=elem, b=elem)
def test_frobenius_is_field_automorphism(field, a, b):
    F = field
    a, b = a % F.order, b % F.order
    assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))
    for i in range(F.n):
        assert F.frobenius(F.add(a, b), i) == F.add(F.frobenius(a, i), F.frobenius(b, i))
        assert F.frobenius(F.mul(a, b), i) == F.mul(F.frobenius(a, i), F.frobenius(b, i))
        assert F.frobenius(a, i) == F.pow(a, F.q**i)
    assert F.frobenius(a, 0) == a
    assert F.frobenius(a, F.n) == a
    assert F.frobenius(F.frobenius(a, 1), F.n - 1) == a
    assert F.automorphism(a, F.e) == F.frobenius(a, 1)


@given(a=elem, b=elem)
def test_norm_is_multiplicative_into_subfield(field, a, b):
    F = field
    a, b = a % F.order, b % F.order
    for h in range(1, F.n + 1):
        if F.n % h:
            continue
        na = F.norm(a, h)
        assert F.in_subfield(na, F.e * h)
        assert F.norm(F.mul(a, b), h) == F.mul(na, F.norm(b, h))
        # definition as a product of conjugates
        conj = F.prod(F.frobenius(a, h * k) for k in range(F.n // h))
        assert na == conj


def test_random_inverse_law(F5):
    rng = np.random.default_rng(0)
    for _ in range(500):
        a = F5.random_element(rng, nonzero=True)
        assert F5.mul(a, F5.inv(a)) == 1


def test_pow_conventions(F3):
    assert F3.pow(0, 0) == 1
    assert F3.pow(0, 5) == 0
    assert F3.pow(F3.gen, F3.N) == 1
    assert F3.pow(F3.gen, 10**12) == F3.pow(F3.gen, 10**12 % F3.N)
    assert F3.pow(F3.gen, -1) == F3.inv(F3.gen)
    with pytest.raises(DivisionByZero):
        F3.inv(0)
    with pytest.raises(DivisionByZero):
        F3.pow(0, -1)


# ---------------------------------------------------------------------------
# subfields, norms, roots
# ---------------------------------------------------------------------------

def test_frobenius_fixes_prime_subfield(F3, F9):
    for c in F3.subfield(1):
        assert F3.frobenius(int(c), 1) == int(c)
    for c in F9.subfield(2):
        assert F9.frobenius(int(c), 1) == int(c)


def test_subfield_counts(F3, F9):
    for F in (F3, F9):
        assert sum(F.in_subfield(int(a), F.e * 3) for a in F.elements()) == F.q**3
        assert F.subfield(F.e).shape[0] == F.q
    assert F3.in_subfield(1, 1)
    assert not F3.in_subfield(F3.gen, F3.e)
    with pytest.raises(NotADivisor):
        F3.in_subfield(1, 4)
    with pytest.raises(NotADivisor):
        F3.norm(1, 4)


def _order_by_factoring(F, a):
    """Order of a nonzero element: strip prime factors of N while a^(k/r) = 1."""
    k = F.N
    for r in prime_factors(F.N):
        while k % r == 0 and F.pow(a, k // r) == 1:
            k //= r
    return k


def test_norm_of_primitive_generates_base_field(F3, F4, F5, F9):
    for F in (F3, F4, F5, F9):
        assert F.norm(1, 1) == 1
        z = F.norm(F.gen, 1)
        assert _order_by_factoring(F, z) == F.q - 1 == F.order_of(z)


def test_quadratic_roots(F3, F5, F9):
    # b^2 + b - 1 over F_5: 4 + 2 = 6 = 1, so b = 2 is the double root
    assert [b for b in range(5) if (b * b + b - 1) % 5 == 0] == [2]
    assert quadratic_roots(F5, 1, F5.neg(1), within=1) == [2]
    assert quadratic_roots(F3, 1, F3.neg(1), within=1) == []
    roots9 = quadratic_roots(F9, 1, F9.neg(1), within=2)
    assert len(roots9) == 2
    for r in roots9:
        assert F9.add(F9.mul(r, r), r) == 1 and F9.in_subfield(r, 2)
    for F in (F3, F5):
        assert quadratic_roots(F, 0, F.neg(1), within=F.e) == sorted([1, F.neg(1)])
