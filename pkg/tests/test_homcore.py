import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homkit.corpus import ALPHA_H4, h4, h4_via_twist, kc2, sweedler
from homkit.exactlin import QQ, Singular
from homkit.homcore import (
    HomAlgebra,
    NotEndomorphism,
    NotInvertible,
    Report,
    conv_invert,
    conv_unit,
    convolve,
    dual,
    ground_algebra,
    verify,
    yau_twist,
)

from oracles import hom_associativity_defect


def test_h4_passes_hopf_axioms(H):
    rep = verify("hopf", H)
    assert rep.ok, rep.summary()
    assert all(e.n_failed == 0 for e in rep.entries)


def test_hand_tables_match_twist_of_sweedler(field):
    a, b = h4(field), h4_via_twist(field)
    for name in ("mul", "comul", "unit", "counit", "alpha", "antipode"):
        assert np.array_equal(getattr(a, name), getattr(b, name)), name


def test_sweedler_and_kc2_are_classical_hopf():
    for X in (sweedler(), kc2()):
        assert verify("hopf", X).ok


def test_yau_twist_rejects_non_endomorphism():
    with pytest.raises(NotEndomorphism):
        yau_twist(sweedler(), np.diag([1, -1, 1, 1]))


def test_singular_alpha_refused():
    with pytest.raises(Singular):
        HomAlgebra(field=QQ, mul=QQ.zeros((2, 2, 2)), unit=QQ.array([1, 0]), alpha=QQ.array([[1, 0], [0, 0]]))


def test_dual_is_hom_hopf(H):
    Hd, rep = dual(H)
    assert rep.ok
    assert np.array_equal(Hd.alpha, H.alpha.T)


def test_antipode_is_convolution_inverse_of_identity(H):
    assert np.array_equal(conv_invert(H.field.eye(4), H, H), H.antipode)
    assert np.array_equal(convolve(H.antipode, H.field.eye(4), H, H), conv_unit(H, H))


def test_non_invertible_functional():
    H = h4()
    k = ground_algebra(QQ)
    with pytest.raises(NotInvertible) as exc:
        conv_invert(QQ.zeros((1, 4)), H, k)
    assert exc.value.kind == "none"


def test_report_witnesses_and_dict():
    rep = Report(title="t")
    rep.add("zero", QQ.zeros((2, 2)))
    e = rep.add("nonzero", QQ.array([[0, 1], [0, 0]]))
    assert not rep.ok and rep.failed() == ["nonzero"]
    assert e.witnesses == [(0, 1)] and e.n_failed == 1
    d = rep.to_dict(QQ.format)
    assert d["pass"] is False and [c["axiom"] for c in d["checks"]] == ["zero", "nonzero"]
    assert "FAIL" in rep.summary()


@given(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), st.integers(1, 3))
def test_associativity_check_agrees_with_loop_oracle(idx, delta):
    H = h4()
    mul = H.mul.copy()
    mul[idx] = mul[idx] + delta
    A = HomAlgebra(field=QQ, mul=mul, unit=H.unit, alpha=QQ.array(ALPHA_H4))
    rep = verify("algebra", A)
    assert rep["Hom-associativity"].passed == (hom_associativity_defect(mul, ALPHA_H4) == 0)
