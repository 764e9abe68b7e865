"""Comodule algebras, coinvariants and cleft extensions.

A right coaction ``B -> B (x) H`` is stored as ``rho[i, j, k]``, the coefficient
of ``b_j (x) h_k`` in ``rho(b_i)``.  Maps ``H -> B`` are ``(dim B, dim H)``
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crossed import (
    CrossedProduct,
    build_crossed_product,
    check_weak_action,
    crossed_conditions,
    delta_right,
)
from .exactlin import NoSolution, ShapeMismatch, contract, kernel, matmul, solve_linear
from .homcore import (
    ConditionsFailed,
    HomAlgebra,
    HomHopfAlgebra,
    NotInvertible,
    Report,
    conv_invert,
    conv_unit,
    convolve,
)


class NotClosed(ValueError):
    """A candidate subalgebra is not closed under the product or the structure map."""


class NotInA(ValueError):
    """An element that should be coinvariant is not."""


@dataclass(eq=False)
class ComoduleAlgebra:
    B: HomAlgebra
    rho: np.ndarray
    H: HomHopfAlgebra

    def __post_init__(self):
        if self.rho.shape != (self.B.dim, self.B.dim, self.H.dim):
            raise ShapeMismatch(f"coaction must be {(self.B.dim, self.B.dim, self.H.dim)}")

    def coact(self, v: np.ndarray) -> np.ndarray:
        return contract("i,ijk->jk", v, self.rho)


@dataclass(eq=False)
class CleftData:
    gamma: np.ndarray
    gamma_inv: np.ndarray
    normalized: bool


@dataclass(eq=False)
class CoinvariantSubalgebra:
    inclusion: np.ndarray  # columns span the coinvariants inside B
    algebra: HomAlgebra

    @property
    def dim(self) -> int:
        return self.inclusion.shape[1]

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of the columns of ``vectors`` (elements of B) in the inclusion basis."""
        return in_span(self.inclusion, vectors)


def in_span(basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Solve ``basis @ x = vectors`` exactly; raises :class:`NotInA` on failure."""
    try:
        return solve_linear(basis, vectors).solution
    except NoSolution:
        raise NotInA("element is not in the coinvariant subalgebra") from None


def regular_comodule(H: HomHopfAlgebra) -> ComoduleAlgebra:
    """``H`` coacting on itself by its comultiplication."""
    return ComoduleAlgebra(H.algebra, H.comul.copy(), H)


def crossed_comodule(cp: CrossedProduct) -> ComoduleAlgebra:
    """``A #_sigma H`` with ``a#h -> beta(a)#h1 (x) alpha^-1(h2)``."""
    H, A = cp.H, cp.A
    rho = contract("ja,hpq,rq->ahjpr", A.alpha, H.comul, H.apow(-1))
    n = A.dim * H.dim
    return ComoduleAlgebra(cp.algebra, rho.reshape(n, n, H.dim), H)


def verify_comodule_algebra(M: ComoduleAlgebra) -> Report:
    B, rho, H = M.B, M.rho, M.H
    rep = Report(title="comodule algebra")
    rep.add("(id(x)eps) rho = beta", contract("ijk,k->ji", rho, H.counit), B.alpha)
    rep.add(
        "(beta(x)alpha) rho = rho beta",
        contract("iab,ja,kb->ijk", rho, B.alpha, H.alpha),
        contract("mi,mjk->ijk", B.alpha, rho),
    )
    rep.add(
        "(rho(x)alpha) rho = (beta(x)Delta) rho",
        contract("iab,acd,eb->icde", rho, rho, H.alpha),
        contract("iab,ca,bde->icde", rho, B.alpha, H.comul),
    )
    rep.add(
        "rho multiplicative",
        contract("ijm,mcd->ijcd", B.mul, rho),
        contract("iab,jpq,apc,bqd->ijcd", rho, rho, B.mul, H.mul),
    )
    rep.add("rho(1)=1(x)1", contract("i,ijk->jk", B.unit, rho), np.multiply.outer(B.unit, H.unit))
    return rep


def coinvariants(M: ComoduleAlgebra) -> CoinvariantSubalgebra:
    """``{b : rho(b) = beta(b) (x) 1}`` with its induced Hom-algebra structure."""
    B, rho, H = M.B, M.rho, M.H
    F = B.field
    n = B.dim
    # column i: rho(b_i) - beta(b_i) (x) 1, flattened over (b_j, h_k)
    diff = np.transpose(rho, (1, 2, 0)) - contract("ji,k->jki", B.alpha, H.unit)
    basis = kernel(diff.reshape(n * H.dim, n), F)
    if not basis:
        raise NotClosed("no coinvariants at all")
    J = np.stack(basis, axis=1)
    r = J.shape[1]
    prods = contract("xi,yj,xyk->kij", J, J, B.mul).reshape(n, r * r)
    try:
        mul = in_span(J, prods).reshape(r, r, r).transpose(1, 2, 0)
        alpha = in_span(J, matmul(B.alpha, J))
        unit = in_span(J, B.unit)
    except NotInA as exc:
        raise NotClosed(str(exc)) from None
    alg = HomAlgebra(field=F, mul=mul.copy(), unit=unit, alpha=alpha, labels=[f"c{i}" for i in range(r)])
    return CoinvariantSubalgebra(J, alg)


def check_comodule_map(M: ComoduleAlgebra, gamma: np.ndarray) -> Report:
    H, B = M.H, M.B
    rep = Report(title="comodule map")
    rep.add("gamma alpha = beta gamma", matmul(gamma, H.alpha), matmul(B.alpha, gamma))
    rep.add(
        "rho gamma = (gamma(x)id) Delta",
        contract("mi,mjk->ijk", gamma, M.rho),
        contract("iab,ja->ijb", H.comul, gamma),
    )
    return rep


def check_cleft(M: ComoduleAlgebra, gamma: np.ndarray) -> Report:
    rep = check_comodule_map(M, gamma)
    rep.title = "cleft map"
    try:
        conv_invert(gamma, M.H, M.B)
        rep.flag("convolution invertible", True)
    except NotInvertible as exc:
        rep.flag("convolution invertible", False, note=exc.kind)
    rep.add("gamma(1)=1", matmul(gamma, M.H.unit), M.B.unit)
    return rep


def normalize_gamma(M: ComoduleAlgebra, gamma: np.ndarray) -> np.ndarray:
    """``h -> gamma(alpha^-1 h) u`` with ``u`` the two-sided inverse of ``gamma(1)``.

    The ``alpha^-1`` compensates for ``x 1 = beta(x)``; with ``u`` a scalar
    multiple of 1 this is plain rescaling.

    Raises ``ConditionsFailed`` when ``gamma(1)`` has no inverse in ``B`` or the
    rescaled map is no longer cleft.
    """
    B = M.B
    g1 = matmul(gamma, M.H.unit)
    if np.array_equal(g1, B.unit):
        return gamma
    left = contract("x,xjk->kj", g1, B.mul)  # u -> g1 u
    right = contract("x,jxk->kj", g1, B.mul)  # u -> u g1
    try:
        u = solve_linear(np.concatenate([left, right]), np.concatenate([B.unit, B.unit]), B.field).solution
    except NoSolution:
        rep = Report(title="normalization")
        rep.flag("gamma(1) invertible", False)
        raise ConditionsFailed(rep, "normalization") from None
    out = contract("xh,y,xyk->kh", matmul(gamma, M.H.apow(-1)), u, B.mul)
    rep = check_cleft(M, out)
    if not rep.ok:
        raise ConditionsFailed(rep, "normalized gamma")
    return out


def gamma_inv_coaction_check(M: ComoduleAlgebra, gamma_inv: np.ndarray) -> Report:
    """``rho gamma^-1 = (gamma^-1 (x) S) tau Delta``."""
    H = M.H
    rep = Report(title="coaction of the inverse")
    rep.add(
        "rho gamma^-1 = (gamma^-1(x)S) tau Delta",
        contract("mi,mcd->icd", gamma_inv, M.rho),
        contract("ipq,cq,dp->icd", H.comul, gamma_inv, H.antipode),
    )
    return rep


def coinvariant_projection(M: ComoduleAlgebra, gamma_inv: np.ndarray) -> np.ndarray:
    """Matrix of ``b -> b(0) gamma^-1(b(1))``."""
    return contract("iab,cb,ack->ki", M.rho, gamma_inv, M.B.mul)


def project_to_coinvariants(M: ComoduleAlgebra, gamma_inv: np.ndarray, b: np.ndarray):
    """``b(0) gamma^-1(b(1))`` together with a membership report."""
    out = matmul(coinvariant_projection(M, gamma_inv), b)
    rep = Report(title="projection")
    rep.add("rho(p)=beta(p)(x)1", M.coact(out), np.multiply.outer(matmul(M.B.alpha, out), M.H.unit))
    return out, rep


@dataclass(eq=False)
class ExtractedData:
    A: CoinvariantSubalgebra
    act: np.ndarray
    sigma: np.ndarray
    Phi: np.ndarray  # A # H -> B
    Psi: np.ndarray  # B -> A # H
    crossed: CrossedProduct | None
    report: Report


def _to_a_coords(sub: CoinvariantSubalgebra, t: np.ndarray) -> np.ndarray:
    """Rewrite the last axis of ``t`` (B coordinates) in the coinvariant basis."""
    lead = t.shape[:-1]
    flat = t.reshape(-1, t.shape[-1]).T
    return sub.coordinates(flat).T.reshape(*lead, sub.dim)


def extract_crossed_data(M: ComoduleAlgebra, gamma: np.ndarray, gamma_inv: np.ndarray | None = None) -> ExtractedData:
    """Recover the action, the cocycle and the isomorphism ``A #_sigma H = B`` from a cleft map."""
    B, H = M.B, M.H
    rep = check_cleft(M, gamma)
    if not rep.ok:
        raise ConditionsFailed(rep, "cleft map")
    if gamma_inv is None:
        gamma_inv = conv_invert(gamma, H, B)
    sub = coinvariants(M)
    J = sub.inclusion
    nA, nH = sub.dim, H.dim
    bm = B.mul

    # h.a = (gamma(alpha^-2 h1) beta^-1(a)) gamma^-1(alpha^-1 h2)
    g2 = matmul(gamma, H.apow(-2))
    gi1 = matmul(gamma_inv, H.apow(-1))
    first = contract("xp,yj,xyz->pjz", g2, matmul(B.apow(-1), J), bm)
    act_b = contract("hpq,pjz,wq,zwk->hjk", H.comul, first, gi1, bm)
    # sigma(h,g) = (gamma(alpha^-3 h1) gamma(alpha^-3 g1)) gamma^-1(alpha^-3(h2 g2))
    g3 = matmul(gamma, H.apow(-3))
    gi3 = matmul(gamma_inv, H.apow(-3))
    pair = contract("xp,yr,xyz->prz", g3, g3, bm)
    tail = contract("qsm,wm->qsw", H.mul, gi3)
    sigma_b = contract("hpq,grs,prz,qsw,zwk->hgk", H.comul, H.comul, pair, tail, bm)
    act = _to_a_coords(sub, act_b)
    sigma = _to_a_coords(sub, sigma_b)

    # Phi(a#h) = beta^-2(a) gamma(alpha^-2 h)
    Phi = contract("xj,yh,xyk->kjh", matmul(B.apow(-2), J), g2, bm).reshape(B.dim, nA * nH)
    # Psi(b) = beta^-2(b(0)(0) gamma^-1(b(0)(1))) # b(1)
    inner = contract("ban,acd,ed,cez->bzn", M.rho, M.rho, gamma_inv, bm)
    inner = contract("kz,bzn->bnk", B.apow(-2), inner)
    Psi = _to_a_coords(sub, inner)  # [b, n, j]
    Psi = np.transpose(Psi, (2, 1, 0)).reshape(nA * nH, B.dim)

    F = B.field
    rep.add("Phi Psi = id", matmul(Phi, Psi), F.eye(B.dim))
    rep.add("Psi Phi = id", matmul(Psi, Phi), F.eye(nA * nH))
    rep.extend(check_weak_action(H, sub.algebra, act), "recovered ")
    rep.extend(crossed_conditions(H, sub.algebra, act, sigma), "recovered ")
    cp = None
    if rep.ok:
        cp = build_crossed_product(H, sub.algebra, act, sigma)
        rep.add(
            "Phi multiplicative",
            contract("ijm,km->ijk", cp.mul, Phi),
            contract("xi,yj,xyk->ijk", Phi, Phi, bm),
        )
        rep.add("Phi(1#1)=1", matmul(Phi, cp.algebra.unit), B.unit)
        # left A-module map: Phi(beta(a) b # alpha(h)) = a Phi(b#h)
        Aa = sub.algebra
        phi3 = Phi.reshape(B.dim, nA, nH)
        lhs = contract("xa,xbm,nh,kmn->abhk", Aa.alpha, Aa.mul, H.alpha, phi3)
        rhs = contract("xa,ybh,xyk->abhk", J, phi3, bm)
        rep.add("Phi left A-linear", lhs, rhs)
        # right H-comodule map against a#h -> beta(a)#h1 (x) alpha^-1(h2)
        rho_cp = crossed_comodule(cp).rho
        rep.add(
            "Phi right H-colinear",
            contract("ui,uvw->ivw", Phi, M.rho),
            contract("ixw,vx->ivw", rho_cp, Phi),
        )
    return ExtractedData(sub, act, sigma, Phi, Psi, cp, rep)


def gamma_from_crossed(cp: CrossedProduct, sigma_inv: np.ndarray | None = None) -> tuple[CleftData, Report]:
    """``gamma(h) = 1#alpha(h)`` with the explicit inverse
    ``lambda(h) = sigma^-1(S alpha^-1(h21), alpha^-1(h22)) # S(h1)``."""
    from .crossed import sigma_inverse

    H, A = cp.H, cp.A
    if sigma_inv is None:
        sigma_inv = sigma_inverse(H, A, cp.sigma)
    nA, nH = A.dim, H.dim
    gamma = contract("i,jh->ijh", A.unit, H.alpha).reshape(nA * nH, nH)
    sa = matmul(H.antipode, H.apow(-1))
    lam = contract("hpqr,xq,yr,xyk,np->knh", delta_right(H), sa, H.apow(-1), sigma_inv, H.antipode)
    lam = lam.reshape(nA * nH, nH)
    M = crossed_comodule(cp)
    rep = check_cleft(M, gamma)
    B = cp.algebra
    unit = conv_unit(H, B)
    rep.add("lambda*gamma = eta eps", convolve(lam, gamma, H, B), unit)
    rep.add("gamma*lambda = eta eps", convolve(gamma, lam, H, B), unit)
    return CleftData(gamma, lam, normalized=True), rep


def roundtrip_cleft(A: HomAlgebra, H: HomHopfAlgebra, act: np.ndarray, sigma: np.ndarray) -> Report:
    """Crossed product -> cleft map -> recovered crossed data -> isomorphism checks."""
    cp = build_crossed_product(H, A, act, sigma)
    M = crossed_comodule(cp)
    rep = Report(title="cleft round trip")
    rep.extend(verify_comodule_algebra(M), "comodule: ")
    cd, grep = gamma_from_crossed(cp)
    rep.extend(grep, "gamma: ")
    rep.extend(gamma_inv_coaction_check(M, cd.gamma_inv), "gamma: ")
    ex = extract_crossed_data(M, cd.gamma, cd.gamma_inv)
    rep.extend(ex.report, "extract: ")
    rep.flag("coinvariants have dim A", ex.A.dim == A.dim, note=f"dim {ex.A.dim}")
    # Phi(a#1) = beta^-1(a): the inclusion up to the structure map
    phi3 = ex.Phi.reshape(cp.algebra.dim, ex.A.dim, H.dim)
    rep.add("Phi(a#1)=beta^-1(a)", contract("kmn,n->km", phi3, H.unit), matmul(cp.algebra.apow(-1), ex.A.inclusion))
    standard = contract("ij,n->inj", A.field.eye(A.dim), H.unit).reshape(cp.algebra.dim, A.dim)
    if np.array_equal(ex.A.inclusion, standard):
        rep.add("recovered action = action", ex.act, act)
        rep.add("recovered sigma = sigma", ex.sigma, sigma)
    else:
        rep.notes.append("coinvariant basis is not a#1; recovered data compared only through Phi")
    return rep


__all__ = [
    "CleftData",
    "CoinvariantSubalgebra",
    "ComoduleAlgebra",
    "ExtractedData",
    "NotClosed",
    "NotInA",
    "check_cleft",
    "check_comodule_map",
    "coinvariant_projection",
    "coinvariants",
    "crossed_comodule",
    "extract_crossed_data",
    "gamma_from_crossed",
    "gamma_inv_coaction_check",
    "in_span",
    "normalize_gamma",
    "project_to_coinvariants",
    "regular_comodule",
    "roundtrip_cleft",
    "verify_comodule_algebra",
]
