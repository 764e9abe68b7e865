"""Command line front end: ``homkit <verb> ...``.

Exit codes: 0 every check passed, 1 checks ran and something failed, 2 bad input
or usage.  Machine-readable output goes to stdout as canonical JSON; a human
summary goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from io import StringIO

import numpy as np

from . import corpus, io
from .biproduct import assemble_bialgebra, build_smash_coproduct, check_biproduct_conditions, check_sigma_antipode
from .crossed import build_crossed_product, build_smash_product, crossed_conditions, trivial_sigma, verify_crossed_identities
from .exactlin import QQ, Field, FieldMismatch, ShapeMismatch
from .homcore import ConditionsFailed, HomBialgebra, HomCoalgebra, NotInvertible, Report, verify
from .lazy import (
    FieldTooLarge,
    PreconditionFailed,
    check_lazy,
    check_left_cocycle,
    check_normal_form,
    deform,
    form_inverse,
    lazy_cocycles,
    lazy_cohomology,
    trivial_form,
    verify_cocycle_antipode_identities,
)
from .ydmod import (
    build_b_ltimes_a,
    build_dual_yd,
    check_yd_module,
    deformed_bicomodule,
    diagonal_crossed_product,
)

CORPUS_NAMES = ("h4", "kaa", "sigma_t", "crossed_h4", "action_h4", "yd_h4")
CONSTRUCT_TARGETS = ("crossed", "smash", "smash-coproduct", "biproduct", "deform", "bltimes", "dual-yd", "diagonal")
CHECK_TARGETS = ("cocycle", "lazy", "biproduct-conditions", "yd", "lemma25", "lemma46", "sigma-antipode")


class UsageError(Exception):
    pass


class UnknownName(UsageError):
    pass


def worker_count() -> int:
    raw = os.environ.get("HOMKIT_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"HOMKIT_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise UsageError(f"HOMKIT_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------- loading helpers


def _structure(path: str | None, what: str, field: Field | None = None):
    if path is None:
        raise UsageError(f"--{what} is required")
    return io.structure_from_doc(io.load(path), field)


def _tensor(path: str | None, what: str, role: str | None = None, field: Field | None = None) -> np.ndarray:
    if path is None:
        raise UsageError(f"--{what} is required")
    return io.tensor_from_doc(io.load(path), role, field)


def _form(path: str | None, H) -> np.ndarray:
    """A scalar form; a cocycle file with a one-dimensional target is accepted too."""
    if path is None:
        return trivial_form(H)
    arr = io.tensor_from_doc(io.load(path), None, H.field)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.shape != (H.dim, H.dim):
        raise io.SchemaError(f"form must have shape {(H.dim, H.dim)}, got {arr.shape}")
    return arr


def _as_algebra(X):
    return X.algebra if isinstance(X, HomBialgebra) else X


def _as_coalgebra(X):
    if isinstance(X, HomBialgebra):
        return X.coalgebra
    if isinstance(X, HomCoalgebra):
        return X
    raise io.SchemaError("a coalgebra or bialgebra file is required")


def _inputs(args, names) -> list[str]:
    return [getattr(args, n) for n in names if getattr(args, n, None)]


def _field(text: str | None, default: Field = QQ) -> Field:
    if text is None:
        return default
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(doc: dict, out: str | None) -> None:
    text = io.write(doc, out)
    if out is None:
        sys.stdout.write(text)


def _finish(verb: str, inputs: list[str], reports: list[Report], F, extra=None, artifact=None, out=None) -> int:
    if artifact is not None and out is not None:
        io.write(artifact, out)
    doc = io.run_report(verb, inputs, reports, F, extra)
    if artifact is not None and out is None:
        doc["artifact"] = artifact
    sys.stdout.write(io.dumps(doc))
    for r in reports:
        sys.stderr.write(r.summary() + "\n")
    return 0 if doc["pass"] else 1


# ---------------------------------------------------------------- verbs


def cmd_corpus(args) -> int:
    F = _field(args.field)
    t = F(args.t) if args.t is not None else F.one
    name = args.name
    if name == "h4":
        doc = io.structure_to_doc(corpus.h4(F))
    elif name == "kaa":
        doc = io.structure_to_doc(corpus.kaa_coalgebra_data(F) if args.coalgebra else corpus.kaa(F))
    elif name == "sigma_t":
        if args.dim_a == 1:
            doc = io.tensor_to_doc(corpus.sigma_t_form(t, F), F, "form", {"t": F.format(t)})
        else:
            doc = io.tensor_to_doc(corpus.sigma_t(t, F, args.dim_a), F, "cocycle", {"t": F.format(t)})
    elif name == "action_h4":
        doc = io.tensor_to_doc(corpus.action_h4(F, args.g_on_a), F, "action", {"g_on_a": args.g_on_a})
    elif name == "crossed_h4":
        H, A = corpus.h4(F), corpus.kaa(F)
        cp = build_crossed_product(H, A, corpus.action_h4(F), corpus.sigma_t(t, F))
        reference = corpus.reference_crossed_table(t, F)
        flagged = corpus.known_table_discrepancies(t, F)
        doc = io.structure_to_doc(cp.algebra)
        doc["reference_table"] = io.encode(reference, F)
        doc["discrepancies"] = [[int(i), int(j)] for i, j in flagged]
        doc["meta"] = {"t": F.format(t)}
    elif name == "yd_h4":
        doc = io.yd_to_doc(corpus.yd_module_h4_sigma1(F), F)
    else:
        raise UnknownName(f"unknown corpus name {name!r}; choose from {', '.join(CORPUS_NAMES)}")
    _emit(doc, args.out)
    return 0


def cmd_verify(args) -> int:
    reports, F = [], None
    for path in args.files:
        X = io.structure_from_doc(io.load(path))
        F = X.field
        rep = verify(args.kind, X)
        rep.title = f"{args.kind}: {path}"
        reports.append(rep)
    return _finish("verify", list(args.files), reports, F)


def cmd_construct(args) -> int:
    target = args.target
    if target in ("crossed", "smash"):
        H = _structure(args.hopf, "hopf")
        A = _as_algebra(_structure(args.base, "base", H.field))
        act = _tensor(args.action, "action", None, H.field)
        if target == "crossed":
            sigma = _tensor(args.cocycle, "cocycle", None, H.field) if args.cocycle else trivial_sigma(H, A)
            cp = build_crossed_product(H, A, act, sigma, override=args.override)
        else:
            cp = build_smash_product(H, A, act, override=args.override)
        rep = verify("algebra", cp.algebra)
        rep.title = f"{target} product"
        return _finish("construct " + target, _inputs(args, ("hopf", "base", "action", "cocycle")), [rep], H.field, artifact=io.structure_to_doc(cp.algebra), out=args.out)
    if target == "smash-coproduct":
        H = _structure(args.hopf, "hopf")
        C = _structure(args.base, "base", H.field)
        rho = _tensor(args.coaction, "coaction", None, H.field)
        coalg, rep = build_smash_coproduct(_as_coalgebra(C), rho, H, check=not args.override)
        rep.extend(verify("coalgebra", coalg), "carrier: ")
        return _finish("construct smash-coproduct", _inputs(args, ("hopf", "base", "coaction")), [rep], H.field, artifact=io.structure_to_doc(coalg), out=args.out)
    if target == "biproduct":
        H = _structure(args.hopf, "hopf")
        A = _structure(args.base, "base", H.field)
        act = _tensor(args.action, "action", None, H.field)
        rho = _tensor(args.coaction, "coaction", None, H.field)
        sigma = _tensor(args.cocycle, "cocycle", None, H.field) if args.cocycle else trivial_sigma(H, A)
        bi, rep = assemble_bialgebra(A, H, act, sigma, rho, override=args.override)
        return _finish("construct biproduct", _inputs(args, ("hopf", "base", "action", "coaction", "cocycle")), [rep], H.field, artifact=io.structure_to_doc(bi), out=args.out)
    if target == "deform":
        H = _structure(args.hopf, "hopf")
        s = _form(args.form, H)
        d = deform(H, s, args.side, override=args.override)
        return _finish("construct deform", _inputs(args, ("hopf", "form")), [d.report], H.field, artifact=io.structure_to_doc(d.algebra), out=args.out)
    if target == "bltimes":
        H = _structure(args.hopf, "hopf")
        B = _structure(args.base, "base", H.field)
        A = _structure(args.algebra, "algebra", H.field)
        act = _tensor(args.action, "action", None, H.field)
        rho = _tensor(args.coaction, "coaction", None, H.field) if args.coaction else H.comul
        alg, rep = build_b_ltimes_a(H, _as_algebra(B), act, _as_algebra(A), rho, override=args.override)
        return _finish("construct bltimes", _inputs(args, ("hopf", "base", "algebra", "action", "coaction")), [rep], H.field, artifact=io.structure_to_doc(alg), out=args.out)
    if target == "dual-yd":
        H = _structure(args.hopf, "hopf")
        s = _form(args.form, H)
        if not args.module:
            raise UsageError("--module is required")
        M = io.yd_from_doc(io.load(args.module))
        D = build_dual_yd(H, s, M, args.variant)
        rep = check_yd_module(deformed_bicomodule(H, form_inverse(H, s)), D)
        rep.title = f"dual ({args.variant})"
        return _finish("construct dual-yd", _inputs(args, ("hopf", "form", "module")), [rep], H.field, artifact=io.yd_to_doc(D, H.field), out=args.out)
    if target == "diagonal":
        H = _structure(args.hopf, "hopf")
        s = _form(args.form, H)
        alg, rep = diagonal_crossed_product(H, deformed_bicomodule(H, s), dual_alpha=args.dual_alpha)
        return _finish("construct diagonal", _inputs(args, ("hopf", "form")), [rep], H.field, artifact=io.structure_to_doc(alg), out=args.out)
    raise UnknownName(target)


def cmd_check(args) -> int:
    target = args.target
    H = _structure(args.hopf, "hopf")
    F = H.field
    reps: list[Report] = []
    if target == "cocycle":
        if args.base:
            A = _as_algebra(_structure(args.base, "base", F))
            reps.append(crossed_conditions(H, A, _tensor(args.action, "action", None, F), _tensor(args.cocycle, "cocycle", None, F)))
        else:
            reps += [check_normal_form(H, _form(args.form, H)), check_left_cocycle(H, _form(args.form, H))]
        names = ("hopf", "base", "action", "cocycle", "form")
    elif target == "lazy":
        s = _form(args.form, H)
        reps += [check_normal_form(H, s), check_left_cocycle(H, s), check_lazy(H, s)]
        names = ("hopf", "form")
    elif target == "biproduct-conditions":
        A = _structure(args.base, "base", F)
        sigma = _tensor(args.cocycle, "cocycle", None, F) if args.cocycle else trivial_sigma(H, A)
        reps.append(check_biproduct_conditions(A, H, _tensor(args.action, "action", None, F), sigma, _tensor(args.coaction, "coaction", None, F)))
        names = ("hopf", "base", "action", "coaction", "cocycle")
    elif target == "yd":
        s = _form(args.form, H)
        if not args.module:
            raise UsageError("--module is required")
        reps.append(check_yd_module(deformed_bicomodule(H, s), io.yd_from_doc(io.load(args.module))))
        names = ("hopf", "form", "module")
    elif target == "lemma25":
        A = _as_algebra(_structure(args.base, "base", F))
        reps.append(verify_crossed_identities(H, A, _tensor(args.action, "action", None, F), _tensor(args.cocycle, "cocycle", None, F)))
        names = ("hopf", "base", "action", "cocycle")
    elif target == "lemma46":
        reps.append(verify_cocycle_antipode_identities(H, _form(args.form, H)))
        names = ("hopf", "form")
    elif target == "sigma-antipode":
        A = _as_algebra(_structure(args.base, "base", F))
        sigma = _tensor(args.cocycle, "cocycle", None, F)
        rep, _ = check_sigma_antipode(H, A, sigma, H.antipode)
        reps.append(rep)
        names = ("hopf", "base", "cocycle")
    else:
        raise UnknownName(target)
    return _finish("check " + target, _inputs(args, names), reps, F)


def _hopf_over(args, F: Field):
    if args.hopf:
        return io.structure_from_doc(io.load(args.hopf), F)
    return corpus.h4(F)


def cmd_search(args) -> int:
    F = _field(args.field)
    if not F.is_finite:
        raise UsageError("search needs --field gf:P")
    H = _hopf_over(args, F)
    if H.dim > args.dim_limit:
        raise UsageError(f"dimension {H.dim} exceeds --dim-limit {args.dim_limit}")
    found, cert = lazy_cocycles(H, args.bound, workers=worker_count())
    extra = {"certificate": cert, "cocycles": [io.encode(s, F) for s in found]}
    return _finish("search lazy", _inputs(args, ("hopf",)), [], F, extra)


def cmd_cohomology(args) -> int:
    F = _field(args.field)
    if not F.is_finite:
        raise UsageError("cohomology needs --field gf:P")
    H = _hopf_over(args, F)
    c = lazy_cohomology(H, args.bound, args.dim_limit, workers=worker_count())
    extra = {
        "certificate": c.certificate,
        "representatives": [io.encode(r, F) for r in c.representatives],
        "class_sizes": c.class_sizes,
        "coboundaries": [io.encode(b, F) for b in c.coboundaries],
        "group_table": c.group_table,
    }
    return _finish("cohomology lazy", _inputs(args, ("hopf",)), [], F, extra)


def _combo(vec, labels, F: Field) -> str:
    terms = []
    for x, lab in zip(vec, labels):
        if x == 0:
            continue
        s = F.format(x)
        terms.append(lab if s == "1" else f"-{lab}" if s == "-1" else f"{s}*{lab}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def render_table(doc: dict, fmt: str) -> str:
    X = io.structure_from_doc(doc)
    if not hasattr(X, "mul"):
        raise io.SchemaError("table rendering needs a multiplication")
    F, labels = X.field, list(X.labels)
    rows = [[_combo(X.mul[i, j], labels, F) for j in range(X.dim)] for i in range(X.dim)]
    if fmt == "csv":
        buf = StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + labels)
        for lab, row in zip(labels, rows):
            w.writerow([lab] + row)
        return buf.getvalue()
    out = ["| | " + " | ".join(labels) + " |", "|---" * (X.dim + 1) + "|"]
    out += [f"| {lab} | " + " | ".join(row) + " |" for lab, row in zip(labels, rows)]
    return "\n".join(out) + "\n"


def cmd_report(args) -> int:
    sys.stdout.write(render_table(io.load(args.file), args.format))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homkit", description="Exact checks for Hom-Hopf constructions.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("corpus", help="emit a built-in example as JSON")
    c.add_argument("name")
    c.add_argument("--t", default=None, help="cocycle parameter (default 1)")
    c.add_argument("--field", default=None)
    c.add_argument("--dim-a", type=int, default=2, help="target dimension for sigma_t (1 gives a scalar form)")
    c.add_argument("--g-on-a", type=int, default=1, choices=(1, -1))
    c.add_argument("--coalgebra", action="store_true", help="kaa with its primitive coalgebra structure")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_corpus)

    v = sub.add_parser("verify", help="verify structure axioms")
    v.add_argument("--kind", required=True, choices=("algebra", "coalgebra", "bialgebra", "hopf"))
    v.add_argument("files", nargs="+")
    v.set_defaults(func=cmd_verify)

    def common(sp):
        sp.add_argument("--hopf")
        sp.add_argument("--base")
        sp.add_argument("--algebra")
        sp.add_argument("--action")
        sp.add_argument("--cocycle")
        sp.add_argument("--coaction")
        sp.add_argument("--form")
        sp.add_argument("--module")

    k = sub.add_parser("construct", help="build a structure")
    k.add_argument("target", choices=CONSTRUCT_TARGETS)
    common(k)
    k.add_argument("--side", default="two_sided", choices=("left", "right", "two_sided"))
    k.add_argument("--variant", default="S1", choices=("S1", "S2"))
    k.add_argument("--dual-alpha", default="transpose", choices=("transpose", "inverse_transpose"))
    k.add_argument("--override", action="store_true", help="build even when preconditions fail")
    k.add_argument("--out", default=None)
    k.set_defaults(func=cmd_construct)

    ch = sub.add_parser("check", help="run a condition suite")
    ch.add_argument("target", choices=CHECK_TARGETS)
    common(ch)
    ch.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="enumerate lazy cocycles over GF(p)")
    s.add_argument("what", choices=("lazy",))
    s.add_argument("--field", required=True)
    s.add_argument("--hopf")
    s.add_argument("--dim-limit", type=int, default=4)
    s.add_argument("--bound", type=int, default=10**7)
    s.set_defaults(func=cmd_search)

    co = sub.add_parser("cohomology", help="lazy cohomology classes over GF(p)")
    co.add_argument("what", choices=("lazy",))
    co.add_argument("--field", required=True)
    co.add_argument("--hopf")
    co.add_argument("--dim-limit", type=int, default=4)
    co.add_argument("--bound", type=int, default=10**7)
    co.set_defaults(func=cmd_cohomology)

    r = sub.add_parser("report", help="render a multiplication table")
    r.add_argument("what", choices=("table",))
    r.add_argument("file")
    r.add_argument("--format", default="md", choices=("md", "csv"))
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        worker_count()
        return args.func(args)
    except (UsageError, io.SchemaError, FieldTooLarge, PreconditionFailed, ShapeMismatch, FieldMismatch) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ConditionsFailed as exc:
        doc = io.run_report(args.verb, [], [exc.report], None)
        sys.stdout.write(io.dumps(doc))
        sys.stderr.write(exc.report.summary() + "\n")
        return 1
    except NotInvertible as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
