"""Weak actions, twisted cocycles and the Hom-crossed product ``A #_sigma H``.

``act[i, j, k]`` is the coefficient of ``a_k`` in ``h_i . a_j`` and
``sigma[i, j, k]`` the coefficient of ``a_k`` in ``sigma(h_i, h_j)``.  The
crossed product lives on ``A (x) H`` with ``a_i # h_j`` at index
``i * dim(H) + j``.

Iterated coproducts are materialised with the bracketing written in each
formula: ``h11 (x) h12 (x) h2`` is ``(Delta (x) id) Delta`` and
``h1 (x) h21 (x) h22`` is ``(id (x) Delta) Delta``; in the Hom setting these
differ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlin import ShapeMismatch, contract, is_zero, kron
from .homcore import (
    ConditionsFailed,
    HomAlgebra,
    HomHopfAlgebra,
    Report,
    conv_invert,
    tensor_coalgebra,
    verify,
)


def delta_left(H) -> np.ndarray:
    """``D[h, p, q, r]`` for ``h11 (x) h12 (x) h2``."""
    return contract("hsr,spq->hpqr", H.comul, H.comul)


def delta_right(H) -> np.ndarray:
    """``D[h, p, q, r]`` for ``h1 (x) h21 (x) h22``."""
    return contract("hps,sqr->hpqr", H.comul, H.comul)


def twist_args(sigma: np.ndarray, H, m: int, n: int) -> np.ndarray:
    """``sigma o (alpha^m (x) alpha^n)``."""
    return contract("ai,bj,abk->ijk", H.apow(m), H.apow(n), sigma)


def twist_action(act: np.ndarray, H, A, m: int, n: int) -> np.ndarray:
    """``(h, a) -> alpha^m(h) . beta^n(a)``."""
    return contract("ai,bj,abk->ijk", H.apow(m), A.apow(n), act)


@dataclass(eq=False)
class WeakAction:
    H: HomHopfAlgebra
    A: HomAlgebra
    act: np.ndarray

    def report(self) -> Report:
        return check_weak_action(self.H, self.A, self.act)


@dataclass(eq=False)
class CocycleMap:
    H: HomHopfAlgebra
    A: HomAlgebra
    sigma: np.ndarray
    _inverse: np.ndarray | None = None

    @property
    def inverse(self) -> np.ndarray:
        """Two-sided convolution inverse (raises ``NotInvertible``)."""
        if self._inverse is None:
            self._inverse = sigma_inverse(self.H, self.A, self.sigma)
        return self._inverse


@dataclass(eq=False)
class CrossedProduct:
    algebra: HomAlgebra
    A: HomAlgebra
    H: HomHopfAlgebra
    act: np.ndarray
    sigma: np.ndarray

    @property
    def mul(self) -> np.ndarray:
        return self.algebra.mul

    def index(self, i: int, j: int) -> int:
        return i * self.H.dim + j

    def element(self, a: np.ndarray, h: np.ndarray) -> np.ndarray:
        return np.multiply.outer(a, h).reshape(-1)

    def product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.algebra.product(u, v)


def _check_shapes(H, A, act=None, sigma=None):
    if act is not None and act.shape != (H.dim, A.dim, A.dim):
        raise ShapeMismatch(f"action must be {(H.dim, A.dim, A.dim)}, got {act.shape}")
    if sigma is not None and sigma.shape != (H.dim, H.dim, A.dim):
        raise ShapeMismatch(f"cocycle must be {(H.dim, H.dim, A.dim)}, got {sigma.shape}")


def check_weak_action(H, A, act) -> Report:
    _check_shapes(H, A, act)
    rep = Report(title="weak action")
    lhs = contract("ijm,km->ijk", act, A.alpha)
    rep.add("beta(h.a)=alpha(h).beta(a)", lhs, twist_action(act, H, A, 1, 1))
    lhs = contract("pi,jlm,pmk->ijlk", H.apow(2), A.mul, act)
    rhs = contract("iab,ajc,bld,cdk->ijlk", H.comul, act, act, A.mul)
    rep.add("alpha^2(h).(ab)=(h1.a)(h2.b)", lhs, rhs)
    rep.add("h.1=eps(h)1", contract("ijk,j->ik", act, A.unit), np.multiply.outer(H.counit, A.unit))
    return rep


def check_module_algebra(H, A, act) -> Report:
    """Weak action plus the Hom-module axioms (needed for the smash product)."""
    rep = check_weak_action(H, A, act)
    rep.title = "module algebra"
    rep.add("1.a=beta(a)", contract("i,ijk->kj", H.unit, act), A.alpha)
    lhs = contract("pi,qjm,pmk->iqjk", H.alpha, act, act)  # alpha(h).(l.a)
    rhs = contract("iqm,ja,mak->iqjk", H.mul, A.alpha, act)  # (hl).beta(a)
    rep.add("alpha(h).(l.a)=(hl).beta(a)", lhs, rhs)
    return rep


def check_twisted_module(H, A, act, sigma) -> Report:
    _check_shapes(H, A, act, sigma)
    rep = Report(title="twisted module")
    rep.add("1.a=beta(a)", contract("i,ijk->kj", H.unit, act), A.alpha)
    s11 = twist_args(sigma, H, 1, 1)
    inner = twist_action(act, H, A, -1, 0)  # alpha^-1(l) . a
    lhs = contract(
        "iab,jcd,ckm,amn,bdq,nqo->ijko", H.comul, H.comul, inner, act, s11, A.mul
    )
    hl = contract("bdr,sr->bds", H.mul, H.apow(-1))  # alpha^-1(h2 l2)
    rhs = contract(
        "iab,jcd,acp,bds,sem,ek,pmo->ijko", H.comul, H.comul, s11, hl, act, A.alpha, A.mul
    )
    rep.add("twisted module law", lhs, rhs)
    return rep


def check_normal(H, A, sigma) -> Report:
    _check_shapes(H, A, sigma=sigma)
    rep = Report(title="normal cocycle")
    eu = np.multiply.outer(H.counit, A.unit)
    rep.add("sigma(h,1)=eps(h)1", contract("ijk,j->ik", sigma, H.unit), eu)
    rep.add("sigma(1,h)=eps(h)1", contract("jik,j->ik", sigma, H.unit), eu)
    rep.add("sigma(alpha,alpha)=beta sigma", twist_args(sigma, H, 1, 1), contract("ijm,km->ijk", sigma, A.alpha))
    return rep


def check_cocycle(H, A, act, sigma) -> Report:
    """``(h1.sigma(l1,m1)) sigma(alpha(h2), l2 m2) = sigma(alpha(h1),alpha(l1)) sigma(h2 l2, alpha^2(m))``."""
    _check_shapes(H, A, act, sigma)
    rep = Report(title="cocycle")
    s10 = twist_args(sigma, H, 1, 0)
    lhs = contract(
        "iab,jcd,kef,cep,apq,dfr,brs,qso->ijko",
        H.comul, H.comul, H.comul, sigma, act, H.mul, s10, A.mul,
    )
    s02 = twist_args(sigma, H, 0, 2)
    rhs = contract(
        "iab,jcd,acp,bdr,rks,pso->ijko",
        H.comul, H.comul, twist_args(sigma, H, 1, 1), H.mul, s02, A.mul,
    )
    rep.add("twisted cocycle identity", lhs, rhs)
    return rep


def crossed_conditions(H, A, act, sigma) -> Report:
    rep = Report(title="crossed product conditions")
    rep.extend(check_twisted_module(H, A, act, sigma), "twisted module: ")
    rep.extend(check_normal(H, A, sigma), "normal: ")
    rep.extend(check_cocycle(H, A, act, sigma), "cocycle: ")
    return rep


def crossed_mul(H, A, act, sigma) -> np.ndarray:
    """Structure constants of ``(a#h)(b#g) =
    a[(alpha^-4(h11).beta^-2(b)) sigma(alpha^-3(h12), alpha^-2(g1))] # alpha^-1(h2 g2)``."""
    dl = delta_left(H)
    x = twist_action(act, H, A, -4, -2)
    y = twist_args(sigma, H, -3, -2)
    hpart = contract("gvw,rwm,nm->rgvn", H.comul, H.mul, H.apow(-1))  # alpha^-1(h2 g2), g1 = v
    bracket = contract("pbc,qve,cef->pqvbf", x, y, A.mul)
    t = contract("hpqr,pqvbf,rgvn,afo->ahbgon", dl, bracket, hpart, A.mul)
    n = A.dim * H.dim
    return t.reshape(n, n, n)


def build_crossed_product(H, A, act, sigma, override: bool = False) -> CrossedProduct:
    """``A #_sigma H``.  Refuses inputs failing the three conditions unless ``override``."""
    _check_shapes(H, A, act, sigma)
    if not override:
        rep = check_weak_action(H, A, act).extend(crossed_conditions(H, A, act, sigma))
        if not rep.ok:
            raise ConditionsFailed(rep, "crossed product conditions")
    alg = HomAlgebra(
        field=H.field,
        mul=crossed_mul(H, A, act, sigma),
        unit=np.multiply.outer(A.unit, H.unit).reshape(-1),
        alpha=kron(A.alpha, H.alpha),
        labels=[f"{a}#{h}" for a in A.labels for h in H.labels],
    )
    return CrossedProduct(alg, A, H, act, sigma)


def smash_mul(H, A, act) -> np.ndarray:
    """``(a#h)(b#k) = a(alpha^-2(h1).beta^-1(b)) # alpha^-1(h2) k``."""
    x = twist_action(act, H, A, -2, -1)
    t = contract("hpr,pbc,aco,sr,skn->ahbkon", H.comul, x, A.mul, H.apow(-1), H.mul)
    n = A.dim * H.dim
    return t.reshape(n, n, n)


def trivial_sigma(H, A) -> np.ndarray:
    return contract("i,j,k->ijk", H.counit, H.counit, A.unit)


def build_smash_product(H, A, act, override: bool = False) -> CrossedProduct:
    if not override:
        rep = check_module_algebra(H, A, act)
        if not rep.ok:
            raise ConditionsFailed(rep, "module algebra")
    alg = HomAlgebra(
        field=H.field,
        mul=smash_mul(H, A, act),
        unit=np.multiply.outer(A.unit, H.unit).reshape(-1),
        alpha=kron(A.alpha, H.alpha),
        labels=[f"{a}#{h}" for a in A.labels for h in H.labels],
    )
    return CrossedProduct(alg, A, H, act, trivial_sigma(H, A))


def sigma_inverse(H, A, sigma) -> np.ndarray:
    """Convolution inverse of ``sigma: H (x) H -> A`` (componentwise coproduct on ``H (x) H``)."""
    HH = tensor_coalgebra(H, H)
    f = sigma.reshape(H.dim * H.dim, A.dim).T
    g = conv_invert(f, HH, A)
    return g.T.reshape(H.dim, H.dim, A.dim)


def verify_crossed_identities(H, A, act, sigma, sigma_inv: np.ndarray | None = None) -> Report:
    """The crossed-product identities for ``h.sigma``, ``h.sigma^-1`` and products of
    the embedded ``a#1`` and ``1#h``.

    The factor beside ``l1`` in the first identity is taken as ``h12 g12``; the
    variant splitting ``l`` as ``l11 (x) l12 (x) l2`` is evaluated as a side note.
    """
    if sigma_inv is None:
        sigma_inv = sigma_inverse(H, A, sigma)
    rep = Report(title="crossed product identities")
    act_sigma = contract("ijm,hmk->hijk", sigma, act)  # h . sigma(g, l)
    dl = delta_left(H)
    dr = delta_right(H)
    s33 = twist_args(sigma, H, -3, -3)
    s42 = twist_args(sigma, H, -4, -2)
    inv12 = twist_args(sigma_inv, H, -1, -2)
    hm = H.mul
    # [sigma(a^-3 h11, a^-3 g11) sigma(a^-4(h12 g12), a^-2 l1)] sigma^-1(a^-1 h2, a^-2(g2 l2))
    rhs = contract(
        "hpqr,gstu,lvw,psA,qtm,mvB,ABC,uwn,rnD,CDk->hglk",
        dl, dl, H.comul, s33, hm, s42, A.mul, hm, inv12, A.mul,
    )
    rep.add("h.sigma(g,l)", act_sigma, rhs)
    literal = contract(
        "hpqr,gstu,lvwx,psA,qwm,mvB,ABC,uxn,rnD,CDk->hglk",
        dl, dl, dl, s33, hm, s42, A.mul, hm, inv12, A.mul,
    )
    same = is_zero(act_sigma - literal)
    rep.notes.append(f"h.sigma(g,l) with l split three ways: {'holds' if same else 'fails'}")

    act_inv = contract("ijm,hmk->hijk", sigma_inv, act)
    s_12 = twist_args(sigma, H, -1, -2)
    inv42 = twist_args(sigma_inv, H, -4, -2)
    inv33 = twist_args(sigma_inv, H, -3, -3)
    # sigma(a^-1 h1, a^-2(g1 l1)) [sigma^-1(a^-4(h21 g21), a^-2 l2) sigma^-1(a^-3 h22, a^-3 g22)]
    rhs = contract(
        "hpqr,gstu,lvw,svm,pmA,qtn,nwB,ruC,BCD,ADk->hglk",
        dr, dr, H.comul, hm, s_12, hm, inv42, inv33, A.mul, A.mul,
    )
    rep.add("h.sigma^-1(g,l)", act_inv, rhs)

    cp = crossed_mul(H, A, act, sigma)
    nA, nH = A.dim, H.dim
    T = cp.reshape(nA, nH, nA, nH, nA, nH)
    uH, uA = H.unit, A.unit
    lhs = contract("ahbgon,h,g->abon", T, uH, uH)
    rhs = contract("abo,n->abon", A.mul, uH)
    rep.add("(a#1)(b#1)=ab#1", lhs, rhs)
    lhs = contract("ahbgon,a,b->hgon", T, uA, uA)
    rhs = contract("hpq,grs,prk,qsm,mn->hgkn", H.comul, H.comul, sigma, hm, H.apow(-1))
    rep.add("(1#h)(1#g)=sigma(h1,g1)#alpha^-1(h2g2)", lhs, rhs)
    lhs = contract("ahbgon,a,g->hbon", T, uA, uH)
    rhs = contract("hpq,rp,rbo,qn->hbon", H.comul, H.apow(-1), act, H.field.eye(nH))
    rep.add("(1#h)(a#1)=alpha^-1(h1).a#h2", lhs, rhs)
    lhs = contract("ahbgon,h,b->agon", T, uH, uA)
    rhs = contract("oa,ng->agon", A.alpha, H.alpha)
    rep.add("(a#1)(1#h)=beta(a)#alpha(h)", lhs, rhs)
    return rep


def crossed_table_discrepancies(cp: CrossedProduct, reference: np.ndarray) -> list[tuple[int, int]]:
    """Basis pairs where a reference multiplication table differs from ``cp``."""
    n = cp.algebra.dim
    return [(i, j) for i in range(n) for j in range(n) if not is_zero(cp.mul[i, j] - reference[i, j])]


def structure_map_multiplicative(cp: CrossedProduct) -> bool:
    al = cp.algebra.alpha
    lhs = contract("ijm,km->ijk", cp.mul, al)
    rhs = contract("ai,bj,abk->ijk", al, al, cp.mul)
    return is_zero(lhs - rhs)


def carrier_report(cp: CrossedProduct) -> Report:
    return verify("algebra", cp.algebra)


__all__ = [
    "CocycleMap",
    "CrossedProduct",
    "WeakAction",
    "build_crossed_product",
    "build_smash_product",
    "carrier_report",
    "check_cocycle",
    "check_module_algebra",
    "check_normal",
    "check_twisted_module",
    "check_weak_action",
    "crossed_conditions",
    "crossed_mul",
    "crossed_table_discrepancies",
    "delta_left",
    "delta_right",
    "sigma_inverse",
    "smash_mul",
    "structure_map_multiplicative",
    "trivial_sigma",
    "twist_action",
    "twist_args",
    "verify_crossed_identities",
]
