import numpy as np
import pytest

from scattered_lab.equiv import (SemilinearMap, closure, gammaL_equivalent, gammaL_scan, generators_of, gl_stabilizer,
                                 identity_map, image_qpoly, map_linear_set_points, maps_onto, random_gl, scalar_equiv,
                                 zgl_lower_bound)
from scattered_lab.errors import BudgetExceeded, ConsistencyError, DegenerateSubspace, NotSameLinearSet, ParameterError
from scattered_lab.families import default_lp_delta, make_lp, make_pseudoregulus, make_trinomial
from scattered_lab.linpoly import adjoint, apply_automorphism, compose, eval_poly, identity, monomial, qpoly
from scattered_lab.linset import linear_set


def _random_semilinear(F, rng):
    phi = random_gl(F, rng)
    return SemilinearMap(F, phi.A, phi.B, phi.C, phi.D, int(rng.integers(0, F.degree)))


def _random_image(f, rng):
    """A random GL image of U_f that is again a graph."""
    while True:
        phi = random_gl(f.field, rng)
        try:
            return phi, image_qpoly(f, phi)
        except DegenerateSubspace:
            continue


# ---------------------------------------------------------------------------
# semilinear maps
# ---------------------------------------------------------------------------

def test_composition_matches_application(F4):
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b = _random_semilinear(F4, rng), _random_semilinear(F4, rng)
        x, y = (int(v) for v in rng.integers(0, F4.order, 2))
        assert (a @ b)(x, y) == a(*b(x, y))
    e = identity_map(F4)
    assert e(5, 7) == (5, 7) and e.det() == 1


def test_image_qpoly_and_point_maps(F3):
    rng = np.random.default_rng(1)
    f = make_lp(F3, 1, default_lp_delta(F3))
    for _ in range(5):
        phi, h = _random_image(f, rng)
        assert maps_onto(phi, f, h)
        assert map_linear_set_points(linear_set(f).points(), phi) == linear_set(h).points()


# ---------------------------------------------------------------------------
# scalar equivalence
# ---------------------------------------------------------------------------

def test_scalar_equiv_examples(F3):
    d = default_lp_delta(F3)
    g = make_lp(F3, 1, d)
    assert scalar_equiv(g, g) == 1
    assert scalar_equiv(g, adjoint(g)) is None


def test_scalar_equiv_recovers_lambda(F3):
    f = monomial(F3, 1)
    fq = set(int(c) for c in F3.subfield(1)[1:])
    rng = np.random.default_rng(2)
    for lam0 in rng.integers(1, F3.order, 20):
        lam0 = int(lam0)
        # lam0 * U_f is the graph of lam0 * f(x / lam0)
        h = compose(qpoly(F3, {0: lam0}), compose(f, qpoly(F3, {0: F3.inv(lam0)})))
        lam = scalar_equiv(f, h)
        assert lam is not None and F3.div(lam, lam0) in fq
        assert all(eval_poly(h, F3.mul(lam, x)) == F3.mul(lam, eval_poly(f, x)) for x in range(1, 60))


def test_zgl_lower_bound(F3, F4, F5):
    for F in (F3, F4):
        g = make_lp(F, 1, default_lp_delta(F))
        assert zgl_lower_bound([g]) == 1
        assert zgl_lower_bound([g, adjoint(g)]) == 2
    t = make_trinomial(F5, 2)
    assert zgl_lower_bound([t, adjoint(t)]) == 2
    with pytest.raises(NotSameLinearSet):
        zgl_lower_bound([monomial(F3, 1), monomial(F3, 2)])
    with pytest.raises(ParameterError):
        zgl_lower_bound([])


# ---------------------------------------------------------------------------
# stabilizers
# ---------------------------------------------------------------------------

def test_stabilizer_is_a_group(F3):
    f = make_lp(F3, 1, default_lp_delta(F3))
    st = gl_stabilizer(f)
    assert st.order == 8
    keys = {(m.A, m.B, m.C, m.D, m.j) for m in st.elements}
    assert closure(st.generators) == keys
    for m in st.elements:
        assert any((m @ k).matrix() == (1, 0, 0, 1) for k in st.elements)
        assert maps_onto(m, f, f)


def test_pseudoregulus_stabilizer_generated_by_powers(F3):
    st = gl_stabilizer(make_pseudoregulus(F3, 1))
    assert st.order == 728
    assert len(closure(st.generators)) == 728


def test_stabilizer_order_is_conjugation_invariant(F3):
    rng = np.random.default_rng(3)
    f = make_lp(F3, 1, default_lp_delta(F3))
    for _ in range(2):
        _, h = _random_image(f, rng)
        assert gl_stabilizer(h).order == 8


def test_trinomial_stabilizer_is_diagonal(F5):
    st = gl_stabilizer(make_trinomial(F5, 2))
    want = {(int(l), 0, 0, F5.frobenius(int(l), 1), 0) for l in F5.subfield(2)[1:]}
    assert {(m.A, m.B, m.C, m.D, m.j) for m in st.elements} == want


def test_generators_of_rejects_non_groups(F3):
    rng = np.random.default_rng(4)
    with pytest.raises(ConsistencyError):
        generators_of([random_gl(F3, rng)])


# ---------------------------------------------------------------------------
# equivalence search
# ---------------------------------------------------------------------------

def test_self_equivalence_is_identity(F3):
    f = make_lp(F3, 1, default_lp_delta(F3))
    assert gammaL_equivalent(f, f, mode="linear") == identity_map(F3)


def test_lp_pair_is_linearly_equivalent(F3):
    d = default_lp_delta(F3)
    f, h = make_lp(F3, 1, d), make_lp(F3, 5, F3.inv(d))
    w = gammaL_equivalent(f, h, mode="linear")
    assert w is not None and w.j == 0 and maps_onto(w, f, h)
    assert map_linear_set_points(linear_set(f).points(), w) == linear_set(h).points()


def test_random_image_is_found(F3):
    rng = np.random.default_rng(5)
    f = make_lp(F3, 1, default_lp_delta(F3))
    _, h = _random_image(f, rng)
    rep = gammaL_scan(f, h, mode="linear")
    assert rep.complete and maps_onto(rep.witness, f, h)


def test_semilinear_image_needs_automorphism(F4):
    f = qpoly(F4, {1: F4.gen, 5: 1})
    h = apply_automorphism(f, 1)
    w = gammaL_equivalent(f, h, mode="semilinear")
    assert w is not None and maps_onto(w, f, h)


def test_inequivalent_pair_scanned_completely(F3):
    f = make_pseudoregulus(F3, 1)
    h = make_lp(F3, 1, default_lp_delta(F3))
    rep = gammaL_scan(f, h, mode="semilinear")
    assert rep.witness is None and rep.complete and rep.scanned == rep.total == 6 * 729 * 729


def test_budget_and_resume_cover_the_scan(F3):
    f = make_pseudoregulus(F3, 1)
    h = make_lp(F3, 1, default_lp_delta(F3))
    with pytest.raises(BudgetExceeded) as exc:
        gammaL_equivalent(f, h, mode="semilinear", budget=729 * 100)
    token = exc.value.token
    assert token == "0:100" and exc.value.scanned == 729 * 100
    chunks = 1
    while True:
        rep = gammaL_scan(f, h, mode="semilinear", budget=729 * 1000, resume=token)
        chunks += 1
        assert rep.witness is None
        if rep.complete:
            break
        token = rep.resume_token
    assert rep.scanned == rep.total and chunks == 6


def test_resumed_scan_finds_the_same_witness(F3):
    d = default_lp_delta(F3)
    f, h = make_lp(F3, 1, d), make_lp(F3, 5, F3.inv(d))
    full = gammaL_scan(f, h, mode="linear")
    token, found = None, None
    while found is None:
        rep = gammaL_scan(f, h, mode="linear", budget=729 * 7, resume=token)
        found, token = rep.witness, rep.resume_token
        assert found is not None or not rep.complete
    assert found == full.witness


def test_scan_errors(F3):
    f = make_pseudoregulus(F3, 1)
    with pytest.raises(DegenerateSubspace):
        gammaL_scan(identity(F3), f)
    with pytest.raises(ParameterError):
        gammaL_scan(f, f, mode="bogus")
    with pytest.raises(ParameterError):
        gammaL_scan(f, f, resume="nonsense")
