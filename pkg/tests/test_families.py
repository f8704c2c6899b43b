import numpy as np
import pytest

from scattered_lab.errors import BadDegree, BadParameter, BadResidue, GcdViolation, NormCondition
from scattered_lab.families import (FamilySpec, cmpz_deltas, default_lp_delta, dickson_rmb, direct_minors,
                                    find_cmpz_delta, make_cmpz, make_lp, make_pseudoregulus, make_trinomial,
                                    minor_sign, minors_636_4, r_mb, trinomial_parameters)
from scattered_lab.gf import field_for_q
from scattered_lab.linpoly import dickson, kernel_dim, minor, rank
from scattered_lab.linset import contains_direct, is_scattered, linear_set


def test_pseudoregulus(F3):
    assert make_pseudoregulus(F3, 1).coeffs == (0, 1, 0, 0, 0, 0)
    assert is_scattered(make_pseudoregulus(F3, 1))
    with pytest.raises(GcdViolation):
        make_pseudoregulus(F3, 2)
    f1, f5 = make_pseudoregulus(F3, 1), make_pseudoregulus(F3, 5)
    assert contains_direct(f1, f5) and contains_direct(f5, f1)


def test_lp_rejections(F3):
    one = 1
    with pytest.raises(NormCondition):
        make_lp(F3, 1, one)
    with pytest.raises(NormCondition):
        make_lp(F3, 1, 0)
    F2 = field_for_q(2, 6)
    with pytest.raises(NormCondition):
        default_lp_delta(F2)
    for d in range(1, F2.order, 7):
        with pytest.raises(NormCondition):
            make_lp(F2, 1, d)
    with pytest.raises(BadDegree):
        make_lp(field_for_q(3, 3), 1, 2)


def test_lp_default_delta_is_primitive(F3, F4, F5):
    for F in (F3, F4, F5):
        assert default_lp_delta(F) == F.gen


def test_cmpz_rejections(F3):
    with pytest.raises(BadDegree):
        make_cmpz(field_for_q(3, 5), 1, 2)
    cube = F3.subfield(3)
    norm_one = next(int(d) for d in cube[1:] if F3.norm(int(d), 3) == 1)
    with pytest.raises(NormCondition):
        make_cmpz(F3, 1, norm_one)
    with pytest.raises(GcdViolation):
        make_cmpz(F3, 3, F3.gen)


def test_cmpz_first_scattered_delta(F3):
    seen = list(cmpz_deltas(F3, 1, limit=40))
    assert [d for d, _ in seen[:4]] == [4, 16, 28, 112]
    assert [ok for _, ok in seen[:4]] == [False, False, False, True]
    assert find_cmpz_delta(F3, 1) == 112
    # the rejected candidates really have a heavy point (weight histogram path)
    for d, ok in seen[:3]:
        assert max(linear_set(make_cmpz(F3, 1, d)).histogram()) >= 2


def test_trinomial_rejections(F3, F4, F5):
    with pytest.raises(BadResidue):
        make_trinomial(F3, 1)
    with pytest.raises(BadResidue):
        make_trinomial(F4, 1)
    with pytest.raises(BadParameter):
        make_trinomial(F5, 3)
    with pytest.raises(BadDegree):
        make_trinomial(field_for_q(5, 4), 2)


def test_trinomial_parameters(F3, F5, F9):
    assert trinomial_parameters(F5) == [2]
    assert trinomial_parameters(F3) == []
    roots = trinomial_parameters(F9)
    assert len(roots) == 2 and all(F9.in_subfield(b, 2) for b in roots)
    assert F9.add(roots[0], roots[1]) == F9.neg(1)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_known_families_are_scattered(q):
    F = field_for_q(q, 6)
    members = [make_pseudoregulus(F, 1), make_pseudoregulus(F, 5),
               make_lp(F, 1, default_lp_delta(F)), make_lp(F, 5, default_lp_delta(F)),
               make_cmpz(F, 1, find_cmpz_delta(F, 1))]
    for f in members:
        assert is_scattered(f)


def test_trinomial_scattered_at_q9(F9):
    for b in trinomial_parameters(F9):
        assert is_scattered(make_trinomial(F9, b))


def test_family_spec_roundtrip(F5):
    spec = FamilySpec("TRI", F5, b=2)
    assert spec.poly() == make_trinomial(F5, 2)
    assert spec.to_json() == {"tag": "TRI", "b": [2, 0, 0, 0, 0, 0]}
    lp = FamilySpec("LP", F5, s=1, delta=F5.gen)
    assert lp.poly() == make_lp(F5, 1, F5.gen)


# ---------------------------------------------------------------------------
# the matrix D_{m,b} and its minors
# ---------------------------------------------------------------------------

def test_dickson_rmb(F5):
    assert list(dickson_rmb(F5, 0, 2)[0]) == [0, 1, 0, 1, 0, 2]
    assert np.array_equal(dickson_rmb(F5, 9, 2), dickson(r_mb(F5, 9, 2)))


def test_minors_at_zero(F5, F9):
    for F, bs in ((F5, [2]), (F9, trinomial_parameters(F9))):
        for b in bs:
            m63, m64 = minors_636_4(F, 0, b)
            assert m63 == F.sub(F.from_int(2), F.mul(F.from_int(3), b))
            assert m64 == 0
            assert minor_sign(F, b) == 1


def test_minor_64_on_the_norm_curve(F5):
    b = 2
    target = F5.sub(1, b)
    curve = [int(m) for m in F5.subfield(2) if F5.pow(int(m), F5.q + 1) == target]
    assert len(curve) == F5.q + 1
    for m in curve:
        _, m64 = minors_636_4(F5, m, b)
        assert m64 == F5.mul(F5.from_int(4), F5.mul(m, target)) != 0


def test_closed_forms_match_deletion_minors(F5, F9):
    rng = np.random.default_rng(12)
    for F in (F5, F9):
        for b in trinomial_parameters(F):
            for m in rng.integers(0, F.order, 60):
                assert minors_636_4(F, int(m), b) == direct_minors(F, int(m), b)


def test_minors_never_vanish_together(F5):
    assert not any(minors_636_4(F5, m, 2) == (0, 0) for m in range(F5.order))


def test_rank_floor_samples(F5):
    for m in range(0, F5.order, 311):
        D = dickson_rmb(F5, m, 2)
        assert rank(F5, D) >= 5
        assert kernel_dim(r_mb(F5, m, 2)) <= 1
        assert minor(F5, D, 6, 3) == minors_636_4(F5, m, 2)[0]
