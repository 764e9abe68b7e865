"""Acceptance criteria, each at its stated tolerance (exact zero) and time limit.

Every test records a single PASS/FAIL line shown in the terminal summary.
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import product

import numpy as np
import pytest

from homkit import io
from homkit.biproduct import (
    BIPRODUCT_CONDITIONS,
    assemble_bialgebra,
    build_biproduct_antipode,
    check_biproduct_conditions,
    ground_bialgebra_data,
    trivial_coaction,
)
from homkit.cleft import coinvariants, crossed_comodule, extract_crossed_data, gamma_from_crossed
from homkit.cli import main
from homkit.corpus import (
    action_h4,
    h4,
    kaa,
    known_table_discrepancies,
    reference_crossed_table,
    sigma_t,
    sigma_t_form,
    yd_module_h4_sigma1,
)
from homkit.crossed import build_crossed_product, carrier_report, crossed_conditions, crossed_table_discrepancies
from homkit.exactlin import QQ
from homkit.homcore import conv_unit, convolve, verify
from homkit.lazy import (
    COCYCLE_ANTIPODE_IDENTITIES,
    centrality_report,
    check_lazy,
    check_left_cocycle,
    check_S1_S2,
    coboundary_D1,
    form_inverse,
    form_key,
    lazy_cohomology,
    sample_lazy_functionals,
    trivial_form,
    verify_cocycle_antipode_identities,
)
from homkit.ydmod import (
    build_dual_yd,
    character_module,
    check_yd_module,
    deformed_bicomodule,
    one_dimensional_yd_modules,
)

from conftest import ACCEPTANCE_LINES, GF3, GF5
from oracles import crossed_product_entry, frac


class Unattainable(AssertionError):
    """A criterion that cannot hold mathematically; see the decisions log."""


@contextmanager
def criterion(number: int, title: str, limit: float | None):
    info: dict = {"detail": ""}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        reason = info["detail"] or f"{type(exc).__name__}: {exc}".splitlines()[0]
        ACCEPTANCE_LINES[str(number)] = f"criterion {number} [FAIL] {title}: {reason} ({elapsed:.2f} s)"
        raise
    elapsed = time.perf_counter() - start
    within = limit is None or elapsed < limit
    bound = f" < {limit:g} s" if limit is not None else ""
    tag = "PASS" if within else "FAIL"
    ACCEPTANCE_LINES[str(number)] = f"criterion {number} [{tag}] {title}: {info['detail']} ({elapsed:.2f} s{bound})"
    assert within, f"took {elapsed:.2f} s, limit {limit} s"


def test_criterion_1_h4_verification(tmp_path, capsys):
    with criterion(1, "H4 verify --kind hopf", 1.0) as info:
        path = tmp_path / "h4.json"
        assert main(["corpus", "h4", "--out", str(path)]) == 0
        code = main(["verify", "--kind", "hopf", str(path)])
        doc = json.loads(capsys.readouterr().out)
        checks = doc["reports"][0]["checks"]
        assert code == 0 and doc["pass"]
        assert doc["reports"][0]["title"].startswith("hopf")
        assert all(c["n_failed"] == 0 and c["residuals"] == [] for c in checks)
        names = {c["axiom"] for c in checks}
        for required in ("Hom-associativity", "Hom-coassociativity", "Delta multiplicative", "S(h1)h2=eps(h)1", "S anti-multiplicative", "Delta S = (S(x)S) flip Delta"):
            assert required in names
        info["detail"] = f"{len(checks)} checks, all residuals exactly zero over Q"


def test_criterion_2_crossed_golden_table():
    with criterion(2, "crossed-product 8x8 table", 1.0) as info:
        H, A, act = h4(), kaa(), action_h4()
        counts = []
        for t in (0, 1, 2):
            cp = build_crossed_product(H, A, act, sigma_t(t))
            reference = reference_crossed_table(t)
            flagged = known_table_discrepancies(t)
            assert crossed_table_discrepancies(cp, reference) == flagged
            for i, j in product(range(8), repeat=2):
                if (i, j) not in flagged:
                    assert np.array_equal(cp.mul[i, j], reference[i, j])
            counts.append(len(flagged))
        info["detail"] = f"matches the reference table except the documented entries {counts} for t = 0, 1, 2"


def test_criterion_2_oracle_at_flagged_entries():
    # formula values at the flagged entries come from the loop oracle, not the library
    H, A, act = h4(), kaa(), action_h4()
    for t in (0, 1, 2):
        cp = build_crossed_product(H, A, act, sigma_t(t))
        for r, c in known_table_discrepancies(t):
            want = crossed_product_entry(H.mul, H.comul, H.alpha, A.mul, A.alpha, act, sigma_t(t), r // 4, r % 4, c // 4, c % 4)
            assert np.array_equal(frac(cp.mul[r, c]).reshape(2, 4), want)
            assert not np.array_equal(frac(reference_crossed_table(t)[r, c]).reshape(2, 4), want)


def test_criterion_3_condition_equivalence():
    with criterion(3, "crossed-product conditions vs carrier", 30.0) as info:
        H, A, act = h4(GF5), kaa(GF5), action_h4(GF5)
        for t in (0, 1, 2):
            assert crossed_conditions(H, A, act, sigma_t(t, GF5)).ok
        tally = {(True, True): 0, (False, False): 0, (True, False): 0, (False, True): 0}
        for t, idx, delta in product((0, 1, 2), product(range(4), range(4), range(2)), range(1, 5)):
            s = sigma_t(t, GF5)
            s[idx] = s[idx] + GF5(delta)
            cond = crossed_conditions(H, A, act, s).ok
            carrier = carrier_report(build_crossed_product(H, A, act, s, override=True)).ok
            tally[(cond, carrier)] += 1
        total = sum(tally.values())
        assert total >= 100
        assert tally[(False, True)] == 0 and tally[(True, False)] == 0
        info["detail"] = (
            f"{total} perturbations over GF(5): {tally[(False, False)]} break a condition and the carrier, "
            f"{tally[(True, True)]} keep both"
        )


def test_criterion_4_cleft_roundtrip():
    with criterion(4, "cleft round trip", 5.0) as info:
        for t in (0, 1, 2):
            cp = build_crossed_product(h4(), kaa(), action_h4(), sigma_t(t))
            cd, rep = gamma_from_crossed(cp)
            B, H = cp.algebra, cp.H
            unit = conv_unit(H, B)
            assert np.array_equal(convolve(cd.gamma, cd.gamma_inv, H, B), unit)
            assert np.array_equal(convolve(cd.gamma_inv, cd.gamma, H, B), unit)
            M = crossed_comodule(cp)
            ex = extract_crossed_data(M, cd.gamma, cd.gamma_inv)
            for name in ("Phi Psi = id", "Psi Phi = id", "Phi multiplicative", "Phi(1#1)=1"):
                assert ex.report[name].passed and ex.report[name].n_failed == 0
            assert ex.report.ok
            assert coinvariants(M).dim == 2
        info["detail"] = "gamma*lambda = lambda*gamma = eta eps; Phi, Psi inverse algebra maps; coinvariants of dim 2, t = 0, 1, 2"


def test_criterion_5_biproduct():
    with criterion(5, "biproduct over k", 1.0) as info:
        F = QQ
        H = h4(F)
        k = ground_bialgebra_data(F)
        act = F.zeros((4, 1, 1))
        act[:, 0, 0] = H.counit
        s = sigma_t(0, F, dim_a=1)
        rho = trivial_coaction(H, k)
        rep = check_biproduct_conditions(k, H, act, s, rho)
        assert rep.names() == BIPRODUCT_CONDITIONS and rep.ok
        bi, brep = assemble_bialgebra(k, H, act, s, rho)
        hopf, hrep = build_biproduct_antipode(bi, k, H, s, rho, H.antipode, F.eye(1))
        assert brep.ok and hrep.ok and verify("hopf", hopf).ok
        assert np.array_equal(bi.mul, H.mul)
        info["detail"] = "A1..A9 pass, assembled Hom-Hopf algebra verifies, multiplication equals H4's"


def test_criterion_6_lazy_calculus():
    with criterion(6, "lazy cocycle calculus", 5.0) as info:
        H = h4(QQ)
        for t in (0, 1, 2):
            s = sigma_t_form(t)
            assert check_left_cocycle(H, s).ok and check_lazy(H, s).ok
        evaluated = 0
        for t in (1, 2):
            s = sigma_t_form(t)
            rep = verify_cocycle_antipode_identities(H, s)
            assert rep.ok and rep.names() == COCYCLE_ANTIPODE_IDENTITIES
            evaluated += len(rep.names())
            srep = check_S1_S2(H, s)
            assert srep.ok
            for name in ("S1(h1).h2 = eps(h)1", "h1.S1(h2) = eps(h)1", "S2(h2).h1 = eps(h)1", "h2.S2(h1) = eps(h)1",
                         "S1 anti-multiplicative", "S2 anti-multiplicative"):
                assert srep[name].n_failed == 0
        info["detail"] = f"sigma_t lazy left cocycles; {evaluated} antipode identities and the S1/S2 suite exact for t = 1, 2"


def test_criterion_7_cohomology():
    with criterion(7, "lazy cohomology of H4 over GF(3)", 600.0) as info:
        H = h4(GF3)
        c = lazy_cohomology(H)
        cert = c.certificate
        assert cert["exhaustive"] and cert["candidates_examined"] == 3 ** cert["free_parameters"]
        identity = c.class_of(trivial_form(H))
        members = {form_key(m) for m in c.classes[identity]}
        gammas = sample_lazy_functionals(H, 50, seed=0)
        assert len(gammas) == 50
        for g in gammas:
            assert form_key(coboundary_D1(H, g)) in members
        assert centrality_report(H, c.coboundaries, c.cocycles).ok
        info["detail"] = (
            f"{cert['candidates_examined']} candidates, {len(c.cocycles)} lazy cocycles, "
            f"{len(c.coboundaries)} coboundary, {len(c.classes)} classes; 50 sampled D1(gamma) in the identity class"
        )


def _dual_checks(F):
    H = h4(F)
    s = sigma_t_form(1, F)
    si = form_inverse(H, s)
    M = yd_module_h4_sigma1(F)
    assert check_yd_module(deformed_bicomodule(H, s), M).ok
    for variant in ("S1", "S2"):
        assert check_yd_module(deformed_bicomodule(H, si), build_dual_yd(H, s, M, variant)).ok
    s0 = trivial_form(H)
    k = character_module(H, H.counit, H.unit, F.one)
    for variant in ("S1", "S2"):
        assert check_yd_module(deformed_bicomodule(H, s0), build_dual_yd(H, s0, k, variant)).ok


def test_criterion_8_substitute_duals():
    start = time.perf_counter()
    for F in (QQ, GF5):
        _dual_checks(F)
    assert time.perf_counter() - start < 5.0


@pytest.mark.xfail(raises=Unattainable, strict=True, reason="no one-dimensional YD module over H4(sigma_1) in characteristic != 2")
def test_criterion_8_yd_duals():
    with criterion(8, "YD duals of a 1-dim module over H4(sigma_1)", 5.0) as info:
        H = h4(GF5)
        found, tried = one_dimensional_yd_modules(deformed_bicomodule(H, sigma_t_form(1, GF5)))
        if not found:
            info["detail"] = (
                f"no 1-dim YD module exists ({tried} candidates over GF(5), none pass); "
                "both dual variants verified on a 2-dim module instead, and the trivial-sigma dual passes"
            )
            _dual_checks(QQ)
            raise Unattainable(info["detail"])
        for M in found:
            for variant in ("S1", "S2"):
                si = form_inverse(H, sigma_t_form(1, GF5))
                assert check_yd_module(deformed_bicomodule(H, si), build_dual_yd(H, sigma_t_form(1, GF5), M, variant)).ok


def _cli_cases(tmp_path):
    """Every verb with inputs that exercise it; files are written once up front."""
    F = QQ
    H = h4(F)
    k = ground_bialgebra_data(F)
    act_k = F.zeros((4, 1, 1))
    act_k[:, 0, 0] = H.counit
    f = {}

    def corpus_file(key, *argv):
        path = tmp_path / f"{key}.json"
        assert main(["corpus", *argv, "--out", str(path)]) == 0
        f[key] = str(path)

    corpus_file("h4", "h4")
    corpus_file("kaa", "kaa")
    corpus_file("kaac", "kaa", "--coalgebra")
    corpus_file("act", "action_h4")
    corpus_file("s1", "sigma_t", "--t", "1")
    corpus_file("f1", "sigma_t", "--t", "1", "--dim-a", "1")
    corpus_file("f0", "sigma_t", "--t", "0", "--dim-a", "1")
    corpus_file("yd", "yd_h4")
    corpus_file("cp", "crossed_h4")
    for key, arr, role in (
        ("k", None, None),
        ("actk", act_k, "action"),
        ("rhok", trivial_coaction(H, k), "coaction"),
        ("sk", sigma_t(0, F, dim_a=1), "cocycle"),
        ("rhokaa", trivial_coaction(H, kaa()), "coaction"),
    ):
        path = tmp_path / f"{key}.json"
        io.write(io.structure_to_doc(k) if arr is None else io.tensor_to_doc(arr, F, role), path)
        f[key] = str(path)
    return [
        ["corpus", "h4"], ["corpus", "kaa"], ["corpus", "sigma_t", "--t", "2"], ["corpus", "action_h4"],
        ["corpus", "crossed_h4", "--t", "2"], ["corpus", "yd_h4", "--field", "gf:5"],
        ["verify", "--kind", "hopf", f["h4"]],
        ["verify", "--kind", "algebra", f["cp"]],
        ["construct", "crossed", "--hopf", f["h4"], "--base", f["kaa"], "--action", f["act"], "--cocycle", f["s1"]],
        ["construct", "smash", "--hopf", f["h4"], "--base", f["kaa"], "--action", f["act"]],
        ["construct", "smash-coproduct", "--hopf", f["h4"], "--base", f["kaac"], "--coaction", f["rhokaa"]],
        ["construct", "biproduct", "--hopf", f["h4"], "--base", f["k"], "--action", f["actk"], "--coaction", f["rhok"], "--cocycle", f["sk"]],
        ["construct", "deform", "--hopf", f["h4"], "--form", f["f1"]],
        ["construct", "bltimes", "--hopf", f["h4"], "--base", f["kaa"], "--algebra", f["h4"], "--action", f["act"]],
        ["construct", "dual-yd", "--hopf", f["h4"], "--form", f["f1"], "--module", f["yd"]],
        ["construct", "diagonal", "--hopf", f["h4"], "--form", f["f0"]],
        ["check", "cocycle", "--hopf", f["h4"], "--base", f["kaa"], "--action", f["act"], "--cocycle", f["s1"]],
        ["check", "lazy", "--hopf", f["h4"], "--form", f["f1"]],
        ["check", "biproduct-conditions", "--hopf", f["h4"], "--base", f["k"], "--action", f["actk"], "--coaction", f["rhok"], "--cocycle", f["sk"]],
        ["check", "yd", "--hopf", f["h4"], "--form", f["f1"], "--module", f["yd"]],
        ["check", "lemma25", "--hopf", f["h4"], "--base", f["kaa"], "--action", f["act"], "--cocycle", f["s1"]],
        ["check", "lemma46", "--hopf", f["h4"], "--form", f["f1"]],
        ["check", "sigma-antipode", "--hopf", f["h4"], "--base", f["kaa"], "--cocycle", f["s1"]],
        ["search", "lazy", "--field", "gf:3"],
        ["cohomology", "lazy", "--field", "gf:3"],
        ["report", "table", f["cp"]],
        ["report", "table", f["cp"], "--format", "csv"],
    ]


def test_criterion_9_determinism(tmp_path):
    with criterion(9, "CLI determinism", None) as info:
        cases = _cli_cases(tmp_path)
        verbs = set()
        for argv in cases:
            outputs = []
            for run in (1, 2):
                out = tmp_path / f"out{run}.json"
                full = argv + (["--out", str(out)] if argv[0] in ("corpus", "construct") else [])
                res = subprocess.run([sys.executable, "-m", "homkit.cli", *full], capture_output=True)
                assert res.returncode == 0, (argv, res.stderr.decode())
                outputs.append((res.stdout, out.read_bytes() if out.exists() else b""))
            assert outputs[0] == outputs[1], argv
            verbs.add(argv[0])
        assert verbs == {"corpus", "verify", "construct", "check", "search", "cohomology", "report"}
        info["detail"] = f"{len(cases)} invocations across all {len(verbs)} verbs byte-identical on repeat"
