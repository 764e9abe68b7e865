"""Smash coproducts, the bialgebra conditions for ``A #_sigma H`` and its antipode.

``A`` carries both an algebra and a coalgebra structure with one structure map
``beta``; it is passed as a :class:`HomBialgebra` purely as a container (no
compatibility between the two is assumed).  A left coaction ``A -> H (x) A`` is
``rho[i, j, k]``, the coefficient of ``h_j (x) a_k`` in ``rho(a_i)``.
"""

from __future__ import annotations

import numpy as np

from .crossed import crossed_mul, delta_left, trivial_sigma, twist_action, twist_args
from .exactlin import Field, ShapeMismatch, contract, kron, matmul
from .homcore import (
    ConditionsFailed,
    HomBialgebra,
    HomCoalgebra,
    HomHopfAlgebra,
    NotInvertible,
    Report,
    conv_invert,
    conv_unit,
    convolve,
    tensor_coalgebra,
    verify,
)

BIPRODUCT_CONDITIONS = [f"A{i}" for i in range(1, 10)]


def _coaction_shape(H, C, rho):
    if rho.shape != (C.dim, H.dim, C.dim):
        raise ShapeMismatch(f"left coaction must be {(C.dim, H.dim, C.dim)}, got {rho.shape}")


def trivial_coaction(H, C) -> np.ndarray:
    """``c -> 1 (x) gamma(c)``."""
    return contract("j,ki->ijk", H.unit, C.alpha)


def check_left_comodule(H, C, rho) -> Report:
    _coaction_shape(H, C, rho)
    rep = Report(title="left comodule")
    rep.add("(eps(x)id) rho = gamma", contract("ijk,j->ki", rho, H.counit), C.alpha)
    rep.add(
        "(alpha(x)gamma) rho = rho gamma",
        contract("iab,ja,kb->ijk", rho, H.alpha, C.alpha),
        contract("mi,mjk->ijk", C.alpha, rho),
    )
    rep.add(
        "(alpha(x)rho) rho = (Delta(x)gamma) rho",
        contract("iab,ca,bde->icde", rho, H.alpha, rho),
        contract("iab,acd,eb->icde", rho, H.comul, C.alpha),
    )
    return rep


def check_comodule_coalgebra(C: HomCoalgebra, rho: np.ndarray, H) -> Report:
    """Left comodule axioms plus compatibility with the coproduct of ``C``.

    The counit law is read as ``c(-1) eps(c(0)) = eps(c) 1``.
    """
    rep = check_left_comodule(H, C, rho)
    rep.title = "comodule coalgebra"
    lhs = contract("iab,ca,bde->icde", rho, H.apow(2), C.comul)
    rhs = contract("ixy,xpq,yrs,prc->icqs", C.comul, rho, rho, H.mul)
    rep.add("alpha^2(c(-1))(x)c(0)1(x)c(0)2 = c1(-1)c2(-1)(x)c1(0)(x)c2(0)", lhs, rhs)
    rep.add(
        "c(-1) eps(c(0)) = eps(c) 1",
        contract("ijk,k->ji", rho, C.counit),
        np.multiply.outer(H.unit, C.counit),
    )
    return rep


def smash_comul(C, rho, H) -> np.ndarray:
    """``Delta(c x h) = c1 x alpha^-2(c2(-1)) alpha^-1(h1) (x) gamma^-1(c2(0)) x h2``."""
    t = contract(
        "cxp,pqr,Qq,hsw,Ss,QSy,zr->chxyzw",
        C.comul, rho, H.apow(-2), H.comul, H.apow(-1), H.mul, C.apow(-1),
    )
    n = C.dim * H.dim
    return t.reshape(n, n, n)


def build_smash_coproduct(C: HomCoalgebra, rho: np.ndarray, H, check: bool = True) -> tuple[HomCoalgebra, Report]:
    rep = check_comodule_coalgebra(C, rho, H) if check else Report(title="comodule coalgebra")
    if check and not rep.ok:
        raise ConditionsFailed(rep, "comodule coalgebra")
    out = HomCoalgebra(
        field=H.field,
        comul=smash_comul(C, rho, H),
        counit=np.multiply.outer(C.counit, H.counit).reshape(-1),
        alpha=kron(C.alpha, H.alpha),
        labels=[f"{c}x{h}" for c in C.labels for h in H.labels],
    )
    rep.extend(verify("coalgebra", out), "smash coproduct: ")
    return out, rep


def check_twisted_comodule_cocycle(A: HomBialgebra, H, sigma, rho) -> Report:
    """``beta(a1) (x) alpha^-1(a2(-1)) alpha(g) (x) a2(0)
    = a1 sigma(alpha^-2(a2(-1)1), g1) (x) alpha^-2(a2(-1)2) g2 (x) a2(0)``."""
    _coaction_shape(H, A, rho)
    rep = Report(title="twisted comodule cocycle")
    # residual indexed by (a, g, output A, output H, output A)
    lhs = contract(
        "ixy,ux,ypq,sp,tg,stn->igunq",
        A.comul, A.alpha, rho, H.apow(-1), H.alpha, H.mul,
    )
    rhs = contract(
        "ixy,ypq,pcd,Cc,Dd,gef,Ceb,xbu,Dfn->igunq",
        A.comul, rho, H.comul, H.apow(-2), H.apow(-2), H.comul, sigma, A.mul, H.mul,
    )
    rep.add("twisted comodule cocycle", lhs, rhs)
    return rep


def check_biproduct_conditions(A: HomBialgebra, H, act, sigma, rho) -> Report:
    """The nine conditions A1..A9, each evaluated independently.

    A4 and A5 use the same element ``a`` on both sides.
    """
    _coaction_shape(H, A, rho)
    F = H.field
    rep = Report(title="biproduct conditions")
    eA, uA, mA, dA, bA = A.counit, A.unit, A.mul, A.comul, A.alpha
    eH = H.counit

    # A1 eps_A is a Hom-algebra map
    r = Report()
    r.add("mult", contract("ijk,k->ij", mA, eA), np.multiply.outer(eA, eA))
    r.add("unit", np.array([contract("i,i->", uA, eA)], dtype=object), np.array([F.one], dtype=object))
    r.add("alpha", matmul(eA, bA), eA)
    _merge(rep, "A1", r)

    rep.add("A2", contract("hak,k->ha", act, eA), np.multiply.outer(eH, eA))

    # A3 sigma is a Hom-coalgebra map H (x) H -> A
    HH = tensor_coalgebra(H, H)
    s = sigma.reshape(H.dim * H.dim, A.dim)
    r = Report()
    r.add("alpha", contract("ik,jk->ij", s, bA), contract("mk,mi->ik", s, HH.alpha))
    r.add("counit", contract("ik,k->i", s, eA), HH.counit)
    r.add("comul", contract("ik,kab->iab", s, dA), contract("ipq,pa,qb->iab", HH.comul, s, s))
    _merge(rep, "A3", r)

    # A4 Delta_A(h.a) = (a^-2(h11).b^-1(a1)) sigma(a^-1 h12, a^-1 a2(-1)) (x) h2 . b^-1(a2(0))
    rep.add("A4", contract("hak,kxy->haxy", act, dA), _a4_rhs(A, H, act, sigma, rho))

    # A5 (a^-1(h1).a)(-1) alpha(h2) (x) (a^-1(h1).a)(0) = alpha(h1 a(-1)) (x) h2 . a(0)
    inner = contract("hpq,mp,mak->hqak", H.comul, H.apow(-1), act)
    lhs = contract("hqak,kcz,nq,cnd->hadz", inner, rho, H.alpha, H.mul)
    rhs = contract("hpq,acs,pcm,dm,qsz->hadz", H.comul, rho, H.mul, H.alpha, act)
    rep.add("A5", lhs, rhs)

    # A6 Delta_A(ab)
    lhs = contract("abk,kxy->abxy", mA, dA)
    rep.add("A6", lhs, _a6_rhs(A, H, act, sigma, rho))

    # A7 sigma(h1,g1)(-1)(h2 g2) (x) sigma(h1,g1)(0) = alpha(h1 g1) (x) sigma(alpha h2, alpha g2)
    lhs = contract("hpq,grs,prk,kcz,qsm,cmd->hgdz", H.comul, H.comul, sigma, rho, H.mul, H.mul)
    rhs = contract("hpq,grs,prm,dm,qsz->hgdz", H.comul, H.comul, H.mul, H.alpha, twist_args(sigma, H, 1, 1))
    rep.add("A7", lhs, rhs)

    rep.add("A8", contract("i,ixy->xy", uA, dA), np.multiply.outer(uA, uA))

    r = Report()
    r.add("mult", contract("abk,kcz->abcz", mA, rho), contract("apx,bqy,pqc,xyz->abcz", rho, rho, H.mul, mA))
    r.add("unit", contract("i,icz->cz", uA, rho), np.multiply.outer(H.unit, uA))
    _merge(rep, "A9", r)
    rep.notes.append("A4, A5: the right-hand side is evaluated at the same element a as the left")
    return rep


def _merge(rep: Report, name: str, parts: Report) -> None:
    res = rep.flag(name, parts.ok, note=None if parts.ok else "failed: " + ", ".join(parts.failed()))
    res.witnesses = [w for e in parts.entries for w in e.witnesses][:32]
    res.residuals = [v for e in parts.entries for v in e.residuals][:32]
    res.n_failed = sum(e.n_failed for e in parts.entries)


def _a4_rhs(A, H, act, sigma, rho):
    x = twist_action(act, H, A, -2, -1)  # a^-2(h11) . b^-1(a1)
    s = twist_args(sigma, H, -1, -1)
    last = twist_action(act, H, A, 0, -1)  # h2 . b^-1(a2(0))
    return contract(
        "hpqr,axy,ytz,pxc,qtd,cde,rzf->haef",
        delta_left(H), A.comul, rho, x, s, A.mul, last,
    )


def _a6_rhs(A, H, act, sigma, rho):
    """``a1[(a^-4(a2(-1)1).b^-2(b1)) sigma(a^-3(a2(-1)2), a^-2(b2(-1)))] (x) b^-1(a2(0) b2(0))``."""
    x = twist_action(act, H, A, -4, -2)
    s = twist_args(sigma, H, -3, -2)
    tail = contract("uvm,zm->uvz", A.mul, A.apow(-1))
    return contract(
        "axy,ypu,pcd,bXY,YqV,cXe,dqf,efg,xgk,uVz->abkz",
        A.comul, rho, H.comul, A.comul, rho, x, s, A.mul, A.mul, tail,
    )


def assemble_bialgebra(A: HomBialgebra, H, act, sigma, rho, override: bool = False) -> tuple[HomBialgebra, Report]:
    """``A #_sigma H`` with the crossed product and the smash coproduct."""
    rep = check_biproduct_conditions(A, H, act, sigma, rho)
    if not override and not rep.ok:
        raise ConditionsFailed(rep, "biproduct conditions")
    C = A.coalgebra
    Cop, crep = build_smash_coproduct(C, rho, H, check=not override)
    rep.extend(crep)
    Aalg = A.algebra
    bi = HomBialgebra(
        field=H.field,
        mul=crossed_mul(H, Aalg, act, sigma),
        unit=np.multiply.outer(A.unit, H.unit).reshape(-1),
        comul=Cop.comul,
        counit=Cop.counit,
        alpha=kron(A.alpha, H.alpha),
        labels=[f"{a}#{h}" for a in A.labels for h in H.labels],
    )
    rep.extend(verify("bialgebra", bi), "assembled: ")
    rep.extend(multiplicativity_parts(bi, A.dim, H.dim), "assembled: ")
    return bi, rep


def multiplicativity_parts(bi: HomBialgebra, nA: int, nH: int) -> Report:
    """``Delta(uv) = Delta(u)Delta(v)`` restricted to ``u, v`` of the forms ``a#1`` and ``1#h``."""
    F = bi.field
    lhs = contract("uvm,mxy->uvxy", bi.mul, bi.comul)
    rhs = contract("upq,vrs,prx,qsy->uvxy", bi.comul, bi.comul, bi.mul, bi.mul)
    res = lhs - rhs
    a1 = [i * nH for i in range(nA)]
    h1 = list(range(nH))  # 1 # h, assuming the unit of A is its first basis vector
    rep = Report(title="multiplicativity")
    zero = F.zeros(res.shape[2:])
    for name, us, vs in (("a#1, b#1", a1, a1), ("a#1, 1#g", a1, h1), ("1#h, b#1", h1, a1), ("1#h, 1#g", h1, h1)):
        rep.add(name, np.stack([res[u, v] for u in us for v in vs]), np.stack([zero for _ in us for _ in vs]))
    return rep


def check_sigma_antipode(H, A, sigma, S) -> tuple[Report, dict]:
    """The sigma-antipode conditions with the componentwise coproduct on ``H (x) H``.

    The second return value exposes the intermediate ``(id (x) S) Delta`` images
    pushed through ``Delta_{H(x)H}`` for auditing.
    """
    rep = Report(title="sigma-antipode")
    rep.add("alpha S = S alpha", matmul(H.alpha, S), matmul(S, H.alpha))
    HH = tensor_coalgebra(H, H)
    nH = H.dim
    right = contract("hpq,rq->hpr", H.comul, S).reshape(nH, nH * nH)  # h1 (x) S(h2)
    left = contract("hpq,rp->hrq", H.comul, S).reshape(nH, nH * nH)  # S(h1) (x) h2
    s = sigma.reshape(nH * nH, A.dim)
    m = H.mul.reshape(nH * nH, nH)
    target = contract("h,k,n->hkn", H.counit, A.unit, H.unit)
    audit = {}
    for name, img in (("id(x)S", right), ("S(x)id", left)):
        pushed = contract("hu,uvw->hvw", img, HH.comul)
        audit[name] = pushed
        rep.add(name, contract("hvw,vk,wn->hkn", pushed, s, m), target)
    return rep, audit


def convolution_inverse_of_identity(A: HomBialgebra) -> np.ndarray:
    """``S_A`` with ``S_A * id = id * S_A = eta eps`` on ``A``'s coalgebra and algebra."""
    return conv_invert(A.field.eye(A.dim), A.coalgebra, A.algebra)


def build_biproduct_antipode(bi: HomBialgebra, A: HomBialgebra, H, sigma, rho, S_H, S_A) -> tuple[HomHopfAlgebra, Report]:
    """``S(a#h) = (1 # S_H(alpha^-3(a(-1)) alpha^-2(h))) (S_A(beta^-2(a(0))) # 1)``."""
    F = H.field
    pre = Report(title="antipode hypotheses")
    srep, _ = check_sigma_antipode(H, A.algebra, sigma, S_H)
    pre.extend(srep, "S_H: ")
    pre.add("beta S_A = S_A beta", matmul(A.alpha, S_A), matmul(S_A, A.alpha))
    ident = F.eye(A.dim)
    unit = conv_unit(A.coalgebra, A.algebra)
    pre.add("S_A * id = eta eps", convolve(S_A, ident, A.coalgebra, A.algebra), unit)
    pre.add("id * S_A = eta eps", convolve(ident, S_A, A.coalgebra, A.algebra), unit)
    if not pre.ok:
        raise ConditionsFailed(pre, "antipode hypotheses")
    nA, nH = A.dim, H.dim
    T = bi.mul.reshape(nA, nH, nA, nH, nA, nH)
    X = contract("qp,sh,qsm,jm->phj", H.apow(-3), H.apow(-2), H.mul, S_H)  # S_H(a^-3(p) a^-2(h))
    Y = matmul(S_A, A.apow(-2))  # column r: S_A(beta^-2(a_r))
    out = contract("apr,phj,x,ir,xjiyon,y->ahon", rho, X, A.unit, Y, T, H.unit)
    S = out.reshape(nA * nH, nA * nH).T
    hopf = HomHopfAlgebra(
        field=F, mul=bi.mul, unit=bi.unit, comul=bi.comul, counit=bi.counit,
        alpha=bi.alpha, antipode=S.copy(), labels=bi.labels,
    )
    rep = verify("hopf", hopf)
    return hopf, pre.extend(rep)


def check_admissible_pair(A: HomBialgebra, H: HomHopfAlgebra, act, rho) -> Report:
    """Trivial-cocycle biproduct conditions plus Hopf assembly."""
    sigma = trivial_sigma(H, A.algebra)
    rep = Report(title="admissible pair")
    bi, brep = assemble_bialgebra(A, H, act, sigma, rho, override=True)
    rep.extend(brep)
    if not rep.ok:
        return rep
    try:
        S_A = convolution_inverse_of_identity(A)
    except NotInvertible as exc:
        rep.flag("S_A exists", False, note=exc.kind)
        return rep
    try:
        _, hrep = build_biproduct_antipode(bi, A, H, sigma, rho, H.antipode, S_A)
    except ConditionsFailed as exc:
        rep.extend(exc.report, "hypotheses: ")
        return rep
    rep.extend(hrep, "hopf: ")
    return rep


def ground_bialgebra_data(F: Field) -> HomBialgebra:
    """``k`` as algebra and coalgebra."""
    one = F.array([[[1]]])
    return HomBialgebra(field=F, mul=one, unit=F.array([1]), comul=one.copy(), counit=F.array([1]), alpha=F.eye(1), labels=["1"])


__all__ = [
    "BIPRODUCT_CONDITIONS",
    "assemble_bialgebra",
    "build_biproduct_antipode",
    "build_smash_coproduct",
    "check_admissible_pair",
    "check_biproduct_conditions",
    "check_comodule_coalgebra",
    "check_left_comodule",
    "check_sigma_antipode",
    "check_twisted_comodule_cocycle",
    "convolution_inverse_of_identity",
    "ground_bialgebra_data",
    "multiplicativity_parts",
    "smash_comul",
    "trivial_coaction",
]
