import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homkit.corpus import h4, sigma_t_form
from homkit.exactlin import QQ
from homkit.homcore import ConditionsFailed, verify
from homkit.lazy import (
    COCYCLE_ANTIPODE_IDENTITIES,
    FieldTooLarge,
    PreconditionFailed,
    build_S1,
    build_S2,
    centrality_report,
    check_S1_S2,
    check_lazy,
    check_lazy_functional,
    check_left_cocycle,
    check_normal_form,
    check_right_cocycle,
    coboundary_D1,
    deform,
    form_convolve,
    form_inverse,
    functional_convolve,
    functional_inverse,
    is_coboundary,
    is_lazy_cocycle,
    lazy_cocycles,
    lazy_cohomology,
    lazy_functionals,
    sample_lazy_functionals,
    sigma_bar_pair,
    trivial_form,
    verify_cocycle_antipode_identities,
    z2l_inverse,
    z2l_product,
)

from conftest import GF3, GF5
from oracles import form_convolution, frac, laziness_defect, left_cocycle_defect

ts = st.integers(min_value=-3, max_value=3)


@pytest.mark.parametrize("t", [0, 1, 2])
def test_sigma_t_is_lazy_cocycle(field, t):
    H = h4(field)
    s = sigma_t_form(t, field)
    assert check_normal_form(H, s).ok
    assert check_left_cocycle(H, s).ok
    assert check_right_cocycle(H, s).ok
    assert check_lazy(H, s).ok


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 2), ts)
def test_checks_agree_with_loop_oracles(idx, delta, t):
    H = h4()
    s = sigma_t_form(t)
    s[idx] = s[idx] + delta
    assert check_lazy(H, s).ok == (laziness_defect(H.mul, H.comul, s) == 0)
    lib = check_left_cocycle(H, s)["left cocycle identity"].passed
    assert lib == (left_cocycle_defect(H.mul, H.comul, H.alpha, s) == 0)


@given(ts, ts)
def test_convolution_agrees_with_oracle_and_is_additive(a, b):
    H = h4()
    sa, sb = sigma_t_form(a), sigma_t_form(b)
    prod = form_convolve(H, sa, sb)
    assert np.array_equal(frac(prod), form_convolution(H.comul, sa, sb))
    # on H4 the family sigma_t is a one-parameter group under convolution
    assert np.array_equal(prod, sigma_t_form(a + b))


@given(ts)
def test_inverse_of_sigma_t(t):
    H = h4()
    s = sigma_t_form(t)
    si = form_inverse(H, s)
    assert np.array_equal(si, sigma_t_form(-t))
    assert np.array_equal(z2l_inverse(H, s), si)
    assert np.array_equal(z2l_product(H, s, si), trivial_form(H))


@given(ts, ts)
def test_products_of_lazy_cocycles_are_lazy_cocycles(a, b):
    H = h4(GF5)
    s = z2l_product(H, sigma_t_form(a, GF5), sigma_t_form(b, GF5))
    assert is_lazy_cocycle(H, s)


@pytest.mark.parametrize("side", ["left", "right", "two_sided"])
def test_deformations_are_hom_associative(side):
    H = h4()
    d = deform(H, sigma_t_form(1), side)
    assert d.report.ok and verify("algebra", d.algebra).ok


def test_deform_refuses_non_cocycle():
    H = h4()
    s = sigma_t_form(1)
    s[2, 3] += 1
    with pytest.raises(ConditionsFailed):
        deform(H, s)
    with pytest.raises(ValueError):
        deform(H, sigma_t_form(1), "middle")


@pytest.mark.parametrize("t", [1, 2])
def test_cocycle_antipode_identities(field, t):
    rep = verify_cocycle_antipode_identities(h4(field), sigma_t_form(t, field))
    assert rep.ok, rep.summary()
    assert rep.names() == COCYCLE_ANTIPODE_IDENTITIES


def test_identities_skip_laziness_dependent_ones_for_non_lazy():
    H = h4()
    # a normalized cocycle that is not lazy: D1 of a non-lazy functional
    f = QQ.array([1, 2, 0, 0])
    s = coboundary_D1(H, f)
    assert check_left_cocycle(H, s).ok and not check_lazy(H, s).ok
    rep = verify_cocycle_antipode_identities(H, s)
    assert len(rep.names()) < len(COCYCLE_ANTIPODE_IDENTITIES)
    assert rep.notes


@pytest.mark.parametrize("t", [0, 1, 2])
def test_S1_S2(field, t):
    H = h4(field)
    s = sigma_t_form(t, field)
    rep = check_S1_S2(H, s)
    assert rep.ok, rep.summary()
    if t == 0:
        assert np.array_equal(build_S1(H, s), H.antipode)
        assert np.array_equal(build_S2(H, s), H.antipode_inv)


def test_S1_S2_need_lazy():
    H = h4()
    with pytest.raises(PreconditionFailed):
        check_S1_S2(H, coboundary_D1(H, QQ.array([1, 2, 0, 0])))


def test_lazy_functionals_gf3():
    H = h4(GF3)
    fs = lazy_functionals(H)
    assert [list(f) for f in fs] == [list(H.counit)]
    assert check_lazy_functional(H, fs[0]).ok


def test_functional_inverse(field):
    H = h4(field)
    f = field.array([1, 2, 0, 0])
    fi = functional_inverse(H, f)
    assert np.array_equal(functional_convolve(H, f, fi), H.counit)


def test_coboundary_needs_normalized_input():
    H = h4()
    with pytest.raises(PreconditionFailed):
        coboundary_D1(H, QQ.array([2, 1, 0, 0]))


def test_cohomology_gf3():
    H = h4(GF3)
    c = lazy_cohomology(H)
    assert c.certificate["exhaustive"] and c.certificate["candidates_examined"] == 3 ** c.certificate["free_parameters"]
    assert len(c.cocycles) == 3 and len(c.coboundaries) == 1
    assert c.class_sizes == [1, 1, 1]
    # sigma_t runs through all three classes, and the class map is a group isomorphism Z/3
    assert sorted(c.class_of(sigma_t_form(t, GF3)) for t in range(3)) == [0, 1, 2]
    assert sorted(map(sorted, c.group_table)) == [[0, 1, 2]] * 3
    assert centrality_report(H, c.coboundaries, c.cocycles).ok


def test_parallel_enumeration_matches_serial():
    H = h4(GF5)
    serial, c1 = lazy_cocycles(H)
    parallel, c2 = lazy_cocycles(H, workers=2)
    assert [s.tolist() for s in serial] == [s.tolist() for s in parallel]
    assert c1 == c2


def test_bound_and_field_limits():
    with pytest.raises(FieldTooLarge):
        lazy_cocycles(h4(GF5), bound=10)
    with pytest.raises(ValueError):
        lazy_cohomology(h4(QQ))
    with pytest.raises(FieldTooLarge):
        lazy_cohomology(h4(GF3), dim_limit=2)


def test_is_coboundary_search():
    H = h4(GF3)
    assert is_coboundary(H, trivial_form(H)).witness is not None
    res = is_coboundary(H, sigma_t_form(1, GF3))
    assert res.witness is None and res.examined >= 1


def test_sampling_is_seeded():
    H = h4(GF3)
    a = sample_lazy_functionals(H, 5, seed=1)
    b = sample_lazy_functionals(H, 5, seed=1)
    assert [x.tolist() for x in a] == [x.tolist() for x in b]


def test_sigma_bar_inverse_pair_shapes():
    H = h4()
    sb, sbi, rep = sigma_bar_pair(H, sigma_t_form(1))
    assert sb.shape == (16, 16) and sbi.shape == (16, 16) and rep.ok
