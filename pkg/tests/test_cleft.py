import numpy as np
import pytest

from homkit.cleft import (
    NotClosed,
    check_cleft,
    coinvariant_projection,
    coinvariants,
    crossed_comodule,
    extract_crossed_data,
    gamma_from_crossed,
    gamma_inv_coaction_check,
    normalize_gamma,
    project_to_coinvariants,
    regular_comodule,
    roundtrip_cleft,
    verify_comodule_algebra,
)
from homkit.corpus import action_h4, h4, kaa, sigma_t
from homkit.crossed import build_crossed_product
from homkit.exactlin import QQ
from homkit.homcore import ConditionsFailed, conv_unit, convolve
from homkit.lazy import trivial_form


@pytest.mark.parametrize("t", [0, 1, 2])
def test_roundtrip(field, t):
    rep = roundtrip_cleft(kaa(field), h4(field), action_h4(field), sigma_t(t, field))
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("t", [0, 1, 2])
def test_gamma_and_inverse(t):
    cp = build_crossed_product(h4(), kaa(), action_h4(), sigma_t(t))
    cd, rep = gamma_from_crossed(cp)
    assert rep.ok
    B = cp.algebra
    assert np.array_equal(convolve(cd.gamma, cd.gamma_inv, cp.H, B), conv_unit(cp.H, B))
    assert np.array_equal(convolve(cd.gamma_inv, cd.gamma, cp.H, B), conv_unit(cp.H, B))
    M = crossed_comodule(cp)
    assert verify_comodule_algebra(M).ok
    assert gamma_inv_coaction_check(M, cd.gamma_inv).ok
    assert coinvariants(M).dim == 2


def test_projection_lands_in_coinvariants():
    cp = build_crossed_product(h4(), kaa(), action_h4(), sigma_t(1))
    cd, _ = gamma_from_crossed(cp)
    M = crossed_comodule(cp)
    for i in range(8):
        _, rep = project_to_coinvariants(M, cd.gamma_inv, QQ.basis(8, i))
        assert rep.ok
    P = coinvariant_projection(M, cd.gamma_inv)
    sub = coinvariants(M)
    sub.coordinates(P)  # every column lies in the coinvariant span


def test_regular_comodule_recovers_trivial_data():
    H = h4()
    M = regular_comodule(H)
    assert check_cleft(M, QQ.eye(4)).ok
    ex = extract_crossed_data(M, QQ.eye(4))
    assert ex.report.ok and ex.A.dim == 1
    assert np.array_equal(ex.sigma.reshape(4, 4), trivial_form(H))


def test_normalize_gamma_rescales_by_unit():
    H = h4()
    M = regular_comodule(H)
    assert np.array_equal(normalize_gamma(M, 2 * QQ.eye(4)), QQ.eye(4))


def test_extract_refuses_non_cleft():
    M = regular_comodule(h4())
    with pytest.raises(ConditionsFailed):
        extract_crossed_data(M, QQ.zeros((4, 4)))


def test_no_coinvariants_raises():
    H = h4()
    M = regular_comodule(H)
    M.rho = M.rho * 0
    with pytest.raises(NotClosed):
        coinvariants(M)
