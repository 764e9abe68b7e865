"""Worked example data: Sweedler's algebra, its Hom twist H4, k[a]/(a^2), the
H4-action, the cocycle family sigma_t and the reference crossed-product table.

Basis orders are fixed: H4 = (1, g, x, y), k[a]/(a^2) = (1, a), and the crossed
product A#H uses (a_i # h_j) at index ``4 * i + j``.
"""

from __future__ import annotations


import numpy as np

from .exactlin import QQ, Field
from .homcore import HomAlgebra, HomHopfAlgebra, hopf_from_classical, yau_twist

H4_LABELS = ["1", "g", "x", "y"]
KAA_LABELS = ["1", "a"]
ALPHA_H4 = np.diag([1, 1, -1, -1])

# classical Sweedler algebra, y = gx
_SWEEDLER_PRODUCTS = {
    ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": 1}, ("1", "y"): {"y": 1},
    ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}, ("g", "x"): {"y": 1}, ("g", "y"): {"x": 1},
    ("x", "1"): {"x": 1}, ("x", "g"): {"y": -1}, ("x", "x"): {}, ("x", "y"): {},
    ("y", "1"): {"y": 1}, ("y", "g"): {"x": -1}, ("y", "x"): {}, ("y", "y"): {},
}
_SWEEDLER_COPRODUCTS = {
    "1": {("1", "1"): 1},
    "g": {("g", "g"): 1},
    "x": {("x", "g"): 1, ("1", "x"): 1},
    "y": {("y", "1"): 1, ("g", "y"): 1},
}

# multiplication and comultiplication tables of the Hom-Hopf algebra H4
H4_PRODUCTS = {
    ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": -1}, ("1", "y"): {"y": -1},
    ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}, ("g", "x"): {"y": -1}, ("g", "y"): {"x": -1},
    ("x", "1"): {"x": -1}, ("x", "g"): {"y": 1}, ("x", "x"): {}, ("x", "y"): {},
    ("y", "1"): {"y": -1}, ("y", "g"): {"x": 1}, ("y", "x"): {}, ("y", "y"): {},
}
H4_COPRODUCTS = {
    "1": {("1", "1"): 1},
    "g": {("g", "g"): 1},
    "x": {("x", "g"): -1, ("1", "x"): -1},
    "y": {("y", "1"): -1, ("g", "y"): -1},
}
H4_COUNIT = {"1": 1, "g": 1, "x": 0, "y": 0}
H4_ANTIPODE = {"1": {"1": 1}, "g": {"g": 1}, "x": {"y": 1}, "y": {"x": -1}}


def _tables(labels, products, coproducts, counit, antipode, F: Field):
    idx = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    mul = F.zeros((n, n, n))
    for (a, b), out in products.items():
        for c, v in out.items():
            mul[idx[a], idx[b], idx[c]] = F(v)
    comul = F.zeros((n, n, n))
    for a, terms in coproducts.items():
        for (b, c), v in terms.items():
            comul[idx[a], idx[b], idx[c]] = F(v)
    eps = F.array([counit[l] for l in labels])
    S = F.zeros((n, n))
    for a, out in antipode.items():
        for b, v in out.items():
            S[idx[b], idx[a]] = F(v)
    return mul, comul, eps, S


def sweedler(F: Field = QQ) -> HomHopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra with identity structure map."""
    S = {"1": {"1": 1}, "g": {"g": 1}, "x": {"y": 1}, "y": {"x": -1}}
    mul, comul, eps, S = _tables(H4_LABELS, _SWEEDLER_PRODUCTS, _SWEEDLER_COPRODUCTS, H4_COUNIT, S, F)
    return hopf_from_classical(F, mul, F.basis(4, 0), comul, eps, S, labels=list(H4_LABELS))


def h4(F: Field = QQ) -> HomHopfAlgebra:
    """H4 exactly as tabulated: the Yau twist of Sweedler's algebra by diag(1,1,-1,-1)."""
    mul, comul, eps, S = _tables(H4_LABELS, H4_PRODUCTS, H4_COPRODUCTS, H4_COUNIT, H4_ANTIPODE, F)
    return HomHopfAlgebra(
        field=F, mul=mul, unit=F.basis(4, 0), comul=comul, counit=eps,
        alpha=F.array(ALPHA_H4), antipode=S, labels=list(H4_LABELS),
    )


def h4_via_twist(F: Field = QQ) -> HomHopfAlgebra:
    return yau_twist(sweedler(F), ALPHA_H4)


def kaa(F: Field = QQ) -> HomAlgebra:
    """k[a]/(a^2) with identity structure map."""
    mul = F.zeros((2, 2, 2))
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = F.one
    return HomAlgebra(field=F, mul=mul, unit=F.basis(2, 0), alpha=F.eye(2), labels=list(KAA_LABELS))


def action_h4(F: Field = QQ, g_on_a: int = 1) -> np.ndarray:
    """``act[i, j, k]``: coefficient of ``e_k`` in ``h_i . a_j``.

    h.1 = eps(h)1, 1.a = a, g.a = a, x.a = y.a = 0.  ``g_on_a`` lets tests
    flip the sign of g.a.
    """
    act = F.zeros((4, 2, 2))
    for i, l in enumerate(H4_LABELS):
        act[i, 0, 0] = F(H4_COUNIT[l])
    act[0, 1, 1] = F.one
    act[1, 1, 1] = F(g_on_a)
    return act


def sigma_t_form(t, F: Field = QQ) -> np.ndarray:
    """The scalar bilinear form sigma_t on H4 as a 4x4 matrix ``s[i, j] = sigma(h_i, h_j)``."""
    t = F(t)
    half = t / F(2)
    return F.array([
        [1, 1, 0, 0],
        [1, 1, 0, 0],
        [0, 0, half, -half],
        [0, 0, half, -half],
    ])


def sigma_t(t, F: Field = QQ, dim_a: int = 2) -> np.ndarray:
    """sigma_t as a map H4 (x) H4 -> A, valued in multiples of the unit ``e_0`` of A."""
    s = sigma_t_form(t, F)
    out = F.zeros((4, 4, dim_a))
    out[:, :, 0] = s
    return out


def kc2(F: Field = QQ) -> HomHopfAlgebra:
    """The group algebra of the cyclic group of order two."""
    mul = F.zeros((2, 2, 2))
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = mul[1, 1, 0] = F.one
    comul = F.zeros((2, 2, 2))
    comul[0, 0, 0] = comul[1, 1, 1] = F.one
    return hopf_from_classical(F, mul, [1, 0], comul, [1, 1], np.eye(2, dtype=int), labels=["1", "c"])


CROSSED_LABELS = [f"{a}#{h}" for a in KAA_LABELS for h in H4_LABELS]

# Reference 8x8 table.  Each entry is "<coefficient> <label>" with coefficient
# one of "1", "-1", "t/2", "-t/2".  "0" marks a zero product.
REFERENCE_CROSSED_TABLE = [
    ["1#1", "1#g", "-1#x", "-1#y", "a#1", "a#g", "-a#x", "-a#y"],
    ["1#g", "1#1", "-1#y", "-1#x", "a#g", "a#1", "-a#y", "-a#x"],
    ["-1#x", "1#y", "0", "0", "-a#x", "a#y", "-t/2 a#1", "-t/2 a#g"],
    ["-1#y", "1#x", "0", "0", "-a#y", "a#x", "-t/2 a#g", "t/2 a#1"],
    ["a#1", "a#g", "-a#x", "-a#y", "0", "0", "0", "0"],
    ["a#g", "a#1", "-a#y", "-a#y", "0", "0", "0", "0"],
    ["-a#x", "a#y", "t/2 a#1", "-t/2 a#g", "0", "0", "0", "0"],
    ["a#y", "a#x", "t/2 a#g", "-t/2 a#1", "0", "0", "0", "0"],
]


def parse_table_entry(entry: str, t, F: Field = QQ) -> np.ndarray:
    """Vector in the 8-dimensional crossed product for one reference table entry."""
    v = F.zeros(8)
    entry = entry.strip()
    if entry == "0":
        return v
    if " " in entry:
        coef_text, label = entry.split()
    else:
        coef_text, label = ("-", entry[1:]) if entry.startswith("-") else ("", entry)
    coef = {"": F.one, "-": -F.one, "t/2": F(t) / F(2), "-t/2": -F(t) / F(2)}[coef_text]
    v[CROSSED_LABELS.index(label)] = coef
    return v


def reference_crossed_table(t, F: Field = QQ) -> np.ndarray:
    """``T[i, j, k]``: coefficient of basis ``k`` in the reference product of ``i`` and ``j``."""
    return np.array(
        [[parse_table_entry(e, t, F) for e in row] for row in REFERENCE_CROSSED_TABLE], dtype=object
    )


def reference_biproduct_table(F: Field = QQ) -> np.ndarray:
    """Reference multiplication for k#_sigma H at t = 0 (equal to H4's)."""
    return h4(F).mul.copy()




# Entries (row label, column label) where the reference table disagrees with the
# crossed-product formula.  Entries involving t/2 only differ when t != 0.
_ALWAYS_DIFFERENT = [("a#g", "1#y"), ("a#y", "1#1")]
_DIFFERENT_WHEN_T_NONZERO = [
    ("1#x", "1#x"), ("1#x", "1#y"), ("1#x", "a#x"),
    ("1#y", "1#x"), ("1#y", "1#y"), ("1#y", "a#x"), ("1#y", "a#y"),
]


def known_table_discrepancies(t, F: Field = QQ) -> list[tuple[int, int]]:
    """Index pairs of the reference table that contradict the formula, sorted."""
    pairs = list(_ALWAYS_DIFFERENT)
    if F(t) != 0:
        pairs += _DIFFERENT_WHEN_T_NONZERO
    return sorted((CROSSED_LABELS.index(r), CROSSED_LABELS.index(c)) for r, c in pairs)


def kaa_coalgebra_data(F: Field = QQ):
    """k[a]/(a^2) as algebra and coalgebra: 1 grouplike, a primitive, identity structure map."""
    from .homcore import HomBialgebra

    A = kaa(F)
    comul = F.zeros((2, 2, 2))
    comul[0, 0, 0] = F.one
    comul[1, 1, 0] = comul[1, 0, 1] = F.one
    return HomBialgebra(
        field=F, mul=A.mul, unit=A.unit, comul=comul, counit=F.array([1, 0]),
        alpha=F.eye(2), labels=list(KAA_LABELS),
    )


def coaction_g(F: Field = QQ) -> np.ndarray:
    """Left H4-coaction on k[a]/(a^2): 1 -> 1 (x) 1, a -> g (x) a."""
    rho = F.zeros((2, 4, 2))
    rho[0, 0, 0] = F.one
    rho[1, 1, 1] = F.one
    return rho


def yd_module_h4_sigma1(F: Field = QQ):
    """A two-dimensional YD module over ``H4(sigma_1)`` with ``Delta`` on both sides.

    ``mu = diag(1, -1)``, ``g`` acts trivially, ``x.m0 = -m1/2``, ``x.m1 = m0``,
    ``y.m0 = m1/2``, ``y.m1 = m0``; ``m0 -> m0 (x) 1`` and ``m1 -> -m1 (x) g``.
    """
    from .ydmod import YDModule

    mu = F.array([[1, 0], [0, -1]])
    act = F.zeros((4, 2, 2))
    act[0] = mu.T
    act[1, 0, 0] = act[1, 1, 1] = F.one
    act[2, 0, 1], act[2, 1, 0] = F(-1) / F(2), F.one
    act[3, 0, 1], act[3, 1, 0] = F(1) / F(2), F.one
    co = F.zeros((2, 2, 4))
    co[0, 0, 0] = F.one
    co[1, 1, 1] = -F.one
    return YDModule(mu, act, co)
