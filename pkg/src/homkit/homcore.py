"""Hom-algebras, Hom-coalgebras, Hom-bialgebras and Hom-Hopf algebras.

Conventions for structure constants in a fixed basis ``e_0 .. e_{n-1}``:

* ``mul[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``;
* ``comul[i, j, k]`` is the coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``;
* a linear map ``V -> W`` is a ``(dim W, dim V)`` matrix whose column ``i``
  is the image of ``e_i``;
* ``unit`` is the vector of ``1`` and ``counit`` the row vector of ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .exactlin import (
    Field,
    NoSolution,
    ShapeMismatch,
    Singular,
    contract,
    field_of,
    matrix_inverse,
    matmul,
    solve_linear,
)

MAX_WITNESSES = 32


class NotInvertible(ArithmeticError):
    """Convolution inverse missing; ``kind`` is ``'one_sided'`` or ``'none'``."""

    def __init__(self, kind: str, msg: str = ""):
        super().__init__(msg or f"not convolution invertible ({kind})")
        self.kind = kind


class NotEndomorphism(ValueError):
    def __init__(self, report: Report):
        super().__init__("not a Hopf endomorphism: " + ", ".join(report.failed()))
        self.report = report


class ConditionsFailed(ValueError):
    """A construction was refused because its hypotheses do not hold."""

    def __init__(self, report: Report, what: str = "conditions"):
        super().__init__(f"{what} failed: " + ", ".join(report.failed()))
        self.report = report


# ---------------------------------------------------------------- reports


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witnesses: list[tuple[int, ...]] = dc_field(default_factory=list)
    residuals: list[Any] = dc_field(default_factory=list)
    n_failed: int = 0
    note: str | None = None

    def to_dict(self, fmt=str) -> dict:
        d = {
            "axiom": self.name,
            "pass": self.passed,
            "n_failed": self.n_failed,
            "witnesses": [list(w) for w in self.witnesses],
            "residuals": [fmt(r) for r in self.residuals],
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """Named pass/fail record; a failing entry carries the basis multi-indices
    where its residual tensor is nonzero (first ``MAX_WITNESSES`` of them)."""

    title: str = ""
    entries: list[AxiomResult] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> AxiomResult:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def failed(self) -> list[str]:
        return [e.name for e in self.entries if not e.passed]

    def add(self, name: str, lhs, rhs=None, note: str | None = None) -> AxiomResult:
        """Record ``lhs - rhs`` (or ``lhs`` alone) as the residual of ``name``."""
        lhs = np.asarray(lhs, dtype=object)
        if rhs is not None:
            rhs = np.asarray(rhs, dtype=object)
            if lhs.shape != rhs.shape:
                raise ShapeMismatch(f"{name}: {lhs.shape} vs {rhs.shape}")
            diff = lhs - rhs
        else:
            diff = lhs
        wit, res, n = [], [], 0
        for idx, x in np.ndenumerate(diff):
            if x != 0:
                n += 1
                if len(wit) < MAX_WITNESSES:
                    wit.append(tuple(int(i) for i in idx))
                    res.append(x)
        entry = AxiomResult(name, n == 0, wit, res, n, note)
        self.entries.append(entry)
        return entry

    def flag(self, name: str, passed: bool, note: str | None = None) -> AxiomResult:
        entry = AxiomResult(name, bool(passed), [] if passed else [()], [], 0 if passed else 1, note)
        self.entries.append(entry)
        return entry

    def extend(self, other: Report, prefix: str = "") -> Report:
        for e in other.entries:
            self.entries.append(
                AxiomResult(prefix + e.name, e.passed, e.witnesses, e.residuals, e.n_failed, e.note)
            )
        self.notes.extend(other.notes)
        return self

    def to_dict(self, fmt=str) -> dict:
        return {
            "title": self.title,
            "pass": self.ok,
            "checks": [e.to_dict(fmt) for e in self.entries],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = [f"{self.title or 'report'}: {'PASS' if self.ok else 'FAIL'}"]
        for e in self.entries:
            tag = "ok  " if e.passed else "FAIL"
            extra = "" if e.passed else f"  ({e.n_failed} nonzero, first at {e.witnesses[0]})"
            lines.append(f"  [{tag}] {e.name}{extra}")
        return "\n".join(lines)


# ---------------------------------------------------------------- structures


class _HomSpace:
    """Shared plumbing: a space with an invertible structure map ``alpha``."""

    field: Field
    alpha: np.ndarray
    labels: list[str] | None

    def _init_space(self):
        n = self.alpha.shape[0]
        if self.alpha.shape != (n, n):
            raise ShapeMismatch(f"structure map must be square, got {self.alpha.shape}")
        if self.labels is None:
            self.labels = [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ShapeMismatch("label count differs from dimension")
        # raises Singular: every downstream formula uses negative powers
        self._powers = {0: self.field.eye(n), 1: self.alpha, -1: matrix_inverse(self.alpha, self.field)}

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    @property
    def alpha_inv(self) -> np.ndarray:
        return self._powers[-1]

    def apow(self, n: int) -> np.ndarray:
        """``alpha^n`` for any integer ``n``."""
        if n not in self._powers:
            step = self.apow(1 if n > 0 else -1)
            self._powers[n] = matmul(step, self.apow(n - 1 if n > 0 else n + 1))
        return self._powers[n]

    def vec(self, i: int) -> np.ndarray:
        return self.field.basis(self.dim, i)


@dataclass(eq=False, kw_only=True)
class HomAlgebra(_HomSpace):
    field: Field
    mul: np.ndarray
    unit: np.ndarray
    alpha: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self):
        self._init_space()
        n = self.dim
        if self.mul.shape != (n, n, n) or self.unit.shape != (n,):
            raise ShapeMismatch("multiplication/unit shapes disagree with alpha")

    def product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return contract("i,j,ijk->k", u, v, self.mul)


@dataclass(eq=False, kw_only=True)
class HomCoalgebra(_HomSpace):
    field: Field
    comul: np.ndarray
    counit: np.ndarray
    alpha: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self):
        self._init_space()
        n = self.dim
        if self.comul.shape != (n, n, n) or self.counit.shape != (n,):
            raise ShapeMismatch("comultiplication/counit shapes disagree with alpha")

    def coproduct(self, v: np.ndarray) -> np.ndarray:
        return contract("i,ijk->jk", v, self.comul)


@dataclass(eq=False, kw_only=True)
class HomBialgebra(_HomSpace):
    field: Field
    mul: np.ndarray
    unit: np.ndarray
    comul: np.ndarray
    counit: np.ndarray
    alpha: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self):
        self._init_space()
        n = self.dim
        for name, arr, shape in (
            ("mul", self.mul, (n, n, n)),
            ("comul", self.comul, (n, n, n)),
            ("unit", self.unit, (n,)),
            ("counit", self.counit, (n,)),
        ):
            if arr.shape != shape:
                raise ShapeMismatch(f"{name} has shape {arr.shape}, expected {shape}")

    product = HomAlgebra.product
    coproduct = HomCoalgebra.coproduct

    @property
    def algebra(self) -> HomAlgebra:
        return HomAlgebra(field=self.field, mul=self.mul, unit=self.unit, alpha=self.alpha, labels=self.labels)

    @property
    def coalgebra(self) -> HomCoalgebra:
        return HomCoalgebra(
            field=self.field, comul=self.comul, counit=self.counit, alpha=self.alpha, labels=self.labels
        )


@dataclass(eq=False, kw_only=True)
class HomHopfAlgebra(HomBialgebra):
    antipode: np.ndarray

    def __post_init__(self):
        super().__post_init__()
        if self.antipode.shape != (self.dim, self.dim):
            raise ShapeMismatch("antipode shape")
        try:
            self.antipode_inv: np.ndarray | None = matrix_inverse(self.antipode, self.field)
        except Singular:
            self.antipode_inv = None

    @property
    def antipode_invertible(self) -> bool:
        return self.antipode_inv is not None

    def spow(self, n: int) -> np.ndarray:
        """``S^n``; negative powers need an invertible antipode."""
        if n < 0 and self.antipode_inv is None:
            raise Singular("antipode is not invertible")
        m = self.antipode if n > 0 else self.antipode_inv
        out = self.field.eye(self.dim)
        for _ in range(abs(n)):
            out = matmul(m, out)
        return out


# ---------------------------------------------------------------- verification


def _algebra_checks(rep: Report, A) -> None:
    mul, u, al = A.mul, A.unit, A.alpha
    rep.add("alpha multiplicative", contract("ijm,km->ijk", mul, al), contract("ai,bj,abk->ijk", al, al, mul))
    rep.add("alpha(1)=1", matmul(al, u), u)
    rep.add("left unit 1a=alpha(a)", contract("i,ijk->jk", u, mul), al.T)
    rep.add("right unit a1=alpha(a)", contract("jik,i->jk", mul, u), al.T)
    lhs = contract("ai,jkm,amo->ijko", al, mul, mul)
    rhs = contract("ijm,ck,mco->ijko", mul, al, mul)
    rep.add("Hom-associativity", lhs, rhs)


def _coalgebra_checks(rep: Report, C) -> None:
    d, e, al = C.comul, C.counit, C.alpha
    rep.add("counit alpha-invariant", matmul(e, al), e)
    rep.add("alpha comultiplicative", contract("iab,ca,db->icd", d, al, al), contract("mi,mcd->icd", al, d))
    rep.add("left counit", contract("iab,a->bi", d, e), al)
    rep.add("right counit", contract("iab,b->ai", d, e), al)
    lhs = contract("ist,spq,rt->ipqr", d, d, al)
    rhs = contract("ist,ps,tqr->ipqr", d, al, d)
    rep.add("Hom-coassociativity", lhs, rhs)


def _bialgebra_checks(rep: Report, B) -> None:
    mul, d, u, e = B.mul, B.comul, B.unit, B.counit
    lhs = contract("ijm,mpq->ijpq", mul, d)
    rhs = contract("iab,jcd,acp,bdq->ijpq", d, d, mul, mul)
    rep.add("Delta multiplicative", lhs, rhs)
    rep.add("Delta(1)=1(x)1", contract("i,ipq->pq", u, d), np.multiply.outer(u, u))
    rep.add("eps multiplicative", contract("ijk,k->ij", mul, e), np.multiply.outer(e, e))
    rep.add("eps(1)=1", np.array([np.dot(e, u)], dtype=object), np.array([B.field.one], dtype=object))


def _hopf_checks(rep: Report, H: HomHopfAlgebra) -> None:
    mul, d, u, e, S, al = H.mul, H.comul, H.unit, H.counit, H.antipode, H.alpha
    rep.add("S alpha = alpha S", matmul(S, al), matmul(al, S))
    unit_counit = np.multiply.outer(e, u)
    rep.add("S(h1)h2=eps(h)1", contract("iab,ca,cbk->ik", d, S, mul), unit_counit)
    rep.add("h1S(h2)=eps(h)1", contract("iab,cb,ack->ik", d, S, mul), unit_counit)
    rep.add(
        "Delta S = (S(x)S) flip Delta",
        contract("mi,mpq->ipq", S, d),
        contract("iab,pb,qa->ipq", d, S, S),
    )
    rep.add("S anti-multiplicative", contract("ijm,km->ijk", mul, S), contract("aj,bi,abk->ijk", S, S, mul))
    rep.add("eps S = eps", matmul(e, S), e)


def verify(kind: str, X) -> Report:
    """Check every axiom of ``kind`` in {algebra, coalgebra, bialgebra, hopf}."""
    rep = Report(title=f"verify {kind}")
    if kind == "algebra":
        _algebra_checks(rep, X)
    elif kind == "coalgebra":
        _coalgebra_checks(rep, X)
    elif kind in ("bialgebra", "hopf"):
        _algebra_checks(rep, X)
        _coalgebra_checks(rep, X)
        _bialgebra_checks(rep, X)
        if kind == "hopf":
            _hopf_checks(rep, X)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return rep


# ---------------------------------------------------------------- constructions


def hopf_from_classical(field: Field, mul, unit, comul, counit, antipode, labels=None) -> HomHopfAlgebra:
    """Wrap classical Hopf data as a Hom-Hopf algebra with identity structure map."""
    n = len(unit)
    return HomHopfAlgebra(
        field=field,
        mul=field.array(mul),
        unit=field.array(unit),
        comul=field.array(comul),
        counit=field.array(counit),
        alpha=field.eye(n),
        antipode=field.array(antipode),
        labels=labels,
    )


def check_hopf_endomorphism(H: HomHopfAlgebra, endo: np.ndarray) -> Report:
    rep = Report(title="Hopf endomorphism")
    mul, d, u, e, S = H.mul, H.comul, H.unit, H.counit, H.antipode
    rep.add("multiplicative", contract("ijm,km->ijk", mul, endo), contract("ai,bj,abk->ijk", endo, endo, mul))
    rep.add("unital", matmul(endo, u), u)
    rep.add("comultiplicative", contract("mi,mcd->icd", endo, d), contract("iab,ca,db->icd", d, endo, endo))
    rep.add("counital", matmul(e, endo), e)
    rep.add("commutes with antipode", matmul(S, endo), matmul(endo, S))
    return rep


def yau_twist(H: HomHopfAlgebra, endo) -> HomHopfAlgebra:
    """``H_alpha = (H, alpha mu, 1, Delta alpha, eps, S, alpha)`` for a classical ``H``."""
    F = H.field
    endo = F.array(endo)
    if not np.array_equal(H.alpha, F.eye(H.dim)):
        raise ValueError("yau_twist expects classical input (structure map = id)")
    rep = check_hopf_endomorphism(H, endo)
    if not rep.ok:
        raise NotEndomorphism(rep)
    return HomHopfAlgebra(
        field=F,
        mul=contract("ijm,km->ijk", H.mul, endo),
        unit=H.unit.copy(),
        comul=contract("mi,mab->iab", endo, H.comul),
        counit=H.counit.copy(),
        alpha=endo,
        antipode=H.antipode.copy(),
        labels=list(H.labels),
    )


def dual(H: HomHopfAlgebra) -> tuple[HomHopfAlgebra, Report]:
    """The dual Hom-Hopf algebra in the dual basis, with its own verification."""
    Hd = HomHopfAlgebra(
        field=H.field,
        mul=np.transpose(H.comul, (1, 2, 0)).copy(),
        unit=H.counit.copy(),
        comul=np.transpose(H.mul, (2, 0, 1)).copy(),
        counit=H.unit.copy(),
        alpha=H.alpha.T.copy(),
        antipode=H.antipode.T.copy(),
        labels=[f"{l}*" for l in H.labels],
    )
    return Hd, verify("hopf", Hd)


# ---------------------------------------------------------------- convolution


def convolve(f: np.ndarray, g: np.ndarray, C, A) -> np.ndarray:
    """``mu_A (f (x) g) Delta_C`` for maps ``C -> A`` given as matrices."""
    if f.shape != (A.dim, C.dim) or g.shape != (A.dim, C.dim):
        raise ShapeMismatch(f"maps must be {A.dim}x{C.dim}")
    return contract("iab,pa,qb,pqk->ki", C.comul, f, g, A.mul)


def conv_unit(C, A) -> np.ndarray:
    """``eta_A eps_C``."""
    return np.multiply.outer(A.unit, C.counit)


def _conv_system(f: np.ndarray, C, A, side: str) -> np.ndarray:
    # rows (k, i), columns (q, b): linear coefficients of the unknown map
    if side == "right":  # f * g
        t = contract("iab,pa,pqk->kiqb", C.comul, f, A.mul)
    else:  # g * f
        t = contract("iba,pa,qpk->kiqb", C.comul, f, A.mul)
    return t.reshape(A.dim * C.dim, A.dim * C.dim)


def conv_invert(f: np.ndarray, C, A) -> np.ndarray:
    """Two-sided convolution inverse of ``f: C -> A``.

    Solves ``f*g = eta eps`` and ``g*f = eta eps`` jointly; raises
    :class:`NotInvertible` with kind ``'one_sided'`` when only ``f*g = eta eps``
    is solvable and ``'none'`` otherwise.
    """
    F = C.field
    rhs = conv_unit(C, A).reshape(-1)
    right = _conv_system(f, C, A, "right")
    left = _conv_system(f, C, A, "left")
    try:
        sol = solve_linear(np.concatenate([right, left]), np.concatenate([rhs, rhs]), F)
    except NoSolution:
        try:
            solve_linear(right, rhs, F)
        except NoSolution:
            raise NotInvertible("none") from None
        raise NotInvertible("one_sided") from None
    return sol.solution.reshape(A.dim, C.dim)


def tensor_coalgebra(C, D) -> HomCoalgebra:
    """``C (x) D`` with componentwise coproduct and structure map ``alpha_C (x) alpha_D``."""
    F = C.field
    n, m = C.dim, D.dim
    comul = contract("iab,jcd->ijacbd", C.comul, D.comul).reshape(n * m, n * m, n * m)
    counit = np.multiply.outer(C.counit, D.counit).reshape(-1)
    alpha = np.kron(C.alpha, D.alpha)
    labels = [f"{a}(x){b}" for a in C.labels for b in D.labels]
    return HomCoalgebra(field=F, comul=comul, counit=counit, alpha=alpha, labels=labels)


def ground_algebra(F: Field) -> HomAlgebra:
    """The one-dimensional algebra ``k``."""
    return HomAlgebra(field=F, mul=F.array([[[1]]]), unit=F.array([1]), alpha=F.eye(1), labels=["1"])


def ground_hopf(F: Field) -> HomHopfAlgebra:
    return HomHopfAlgebra(
        field=F,
        mul=F.array([[[1]]]),
        unit=F.array([1]),
        comul=F.array([[[1]]]),
        counit=F.array([1]),
        alpha=F.eye(1),
        antipode=F.eye(1),
        labels=["1"],
    )


__all__ = [
    "AxiomResult",
    "ConditionsFailed",
    "HomAlgebra",
    "HomBialgebra",
    "HomCoalgebra",
    "HomHopfAlgebra",
    "NotEndomorphism",
    "NotInvertible",
    "Report",
    "check_hopf_endomorphism",
    "conv_invert",
    "conv_unit",
    "convolve",
    "dual",
    "field_of",
    "ground_algebra",
    "ground_hopf",
    "hopf_from_classical",
    "tensor_coalgebra",
    "verify",
    "yau_twist",
]
