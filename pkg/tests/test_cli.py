import json
import subprocess
import sys

import numpy as np
import pytest

from homkit import io
from homkit.cli import main, worker_count
from homkit.corpus import h4
from homkit.exactlin import QQ


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    specs = {
        "h4": ["corpus", "h4"],
        "kaa": ["corpus", "kaa"],
        "kaac": ["corpus", "kaa", "--coalgebra"],
        "act": ["corpus", "action_h4"],
        "actneg": ["corpus", "action_h4", "--g-on-a", "-1"],
        "s1": ["corpus", "sigma_t", "--t", "1"],
        "f1": ["corpus", "sigma_t", "--t", "1", "--dim-a", "1"],
        "yd": ["corpus", "yd_h4"],
    }
    for key, argv in specs.items():
        p = tmp_path / f"{key}.json"
        assert run(argv + ["--out", p], capsys)[0] == 0
        paths[key] = p
    return paths


def test_corpus_roundtrip(files):
    H = io.structure_from_doc(io.load(files["h4"]))
    ref = h4()
    for name in ("mul", "comul", "unit", "counit", "alpha", "antipode"):
        assert np.array_equal(getattr(H, name), getattr(ref, name))
    assert io.dumps(io.structure_to_doc(H)) == files["h4"].read_text()


def test_verify_hopf(files, capsys):
    code, out, err = run(["verify", "--kind", "hopf", files["h4"]], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["kind"] == "run_report"
    assert doc["inputs"] == {str(files["h4"]): io.digest(files["h4"])}
    assert "PASS" in err


def test_verify_failure_exit_1(files, capsys, tmp_path):
    doc = io.load(files["kaa"])
    doc["mul"][0][1][1] = "0"  # 1a = 0 breaks the unit law
    bad = tmp_path / "bad.json"
    bad.write_text(io.dumps(doc))
    code, out, _ = run(["verify", "--kind", "algebra", bad], capsys)
    assert code == 1 and json.loads(out)["pass"] is False


def test_construct_and_report_table(files, capsys, tmp_path):
    out_path = tmp_path / "cp.json"
    code, out, _ = run(
        ["construct", "crossed", "--hopf", files["h4"], "--base", files["kaa"], "--action", files["act"], "--cocycle", files["s1"], "--out", out_path],
        capsys,
    )
    assert code == 0 and json.loads(out)["pass"]
    code, md, _ = run(["report", "table", out_path], capsys)
    assert code == 0 and md.count("\n") == 10 and md.startswith("| | 1#1 |")
    code, csv_text, _ = run(["report", "table", out_path, "--format", "csv"], capsys)
    assert code == 0 and csv_text.splitlines()[0] == ",1#1,1#g,1#x,1#y,a#1,a#g,a#x,a#y"


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "lazy", "--hopf", "{h4}", "--form", "{f1}"],
        ["check", "cocycle", "--hopf", "{h4}", "--form", "{f1}"],
        ["check", "cocycle", "--hopf", "{h4}", "--base", "{kaa}", "--action", "{act}", "--cocycle", "{s1}"],
        ["check", "lemma25", "--hopf", "{h4}", "--base", "{kaa}", "--action", "{act}", "--cocycle", "{s1}"],
        ["check", "lemma46", "--hopf", "{h4}", "--form", "{f1}"],
        ["check", "yd", "--hopf", "{h4}", "--form", "{f1}", "--module", "{yd}"],
        ["check", "sigma-antipode", "--hopf", "{h4}", "--base", "{kaa}", "--cocycle", "{s1}"],
        ["construct", "deform", "--hopf", "{h4}", "--form", "{f1}"],
        ["construct", "smash", "--hopf", "{h4}", "--base", "{kaa}", "--action", "{act}"],
        ["construct", "dual-yd", "--hopf", "{h4}", "--form", "{f1}", "--module", "{yd}", "--variant", "S2"],
        ["construct", "bltimes", "--hopf", "{h4}", "--base", "{kaa}", "--algebra", "{h4}", "--action", "{act}"],
        ["construct", "smash-coproduct", "--hopf", "{h4}", "--base", "{kaac}", "--coaction", "{h4}"],
    ],
)
def test_passing_verbs(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    if argv[:2] == ["construct", "smash-coproduct"]:
        # trivial coaction a -> 1 (x) a as a tensor file
        from homkit.biproduct import trivial_coaction
        from homkit.corpus import kaa_coalgebra_data

        p = files["h4"].parent / "triv.json"
        io.write(io.tensor_to_doc(trivial_coaction(h4(), kaa_coalgebra_data()), QQ, "coaction"), p)
        argv[-1] = str(p)
    code, out, err = run(argv, capsys)
    assert code == 0, err
    assert json.loads(out)["pass"]


def test_biproduct_conditions_exit_codes(files, capsys):
    from homkit.corpus import coaction_g

    p = files["h4"].parent / "cog.json"
    io.write(io.tensor_to_doc(coaction_g(), QQ, "coaction"), p)
    base = ["check", "biproduct-conditions", "--hopf", files["h4"], "--base", files["kaac"], "--coaction", p]
    assert run(base + ["--action", files["actneg"]], capsys)[0] == 0
    assert run(base + ["--action", files["act"]], capsys)[0] == 1


def test_construct_refusal_reports(files, capsys, tmp_path):
    doc = io.load(files["s1"])
    doc["data"][2][2][0] = "5"
    bad = tmp_path / "bad_s.json"
    bad.write_text(io.dumps(doc))
    argv = ["construct", "crossed", "--hopf", files["h4"], "--base", files["kaa"], "--action", files["act"], "--cocycle", bad]
    code, out, _ = run(argv, capsys)
    assert code == 1 and json.loads(out)["pass"] is False
    code, _, _ = run(argv + ["--override"], capsys)
    assert code == 1  # built, but the carrier fails Hom-associativity


@pytest.mark.parametrize(
    "argv",
    [
        ["corpus", "nope"],
        ["corpus", "h4", "--field", "gf:4"],
        ["verify", "--kind", "hopf", "/nonexistent.json"],
        ["search", "lazy", "--field", "Q"],
        ["cohomology", "lazy", "--field", "gf:3", "--dim-limit", "2"],
        ["search", "lazy", "--field", "gf:5", "--bound", "10"],
        ["nosuchverb"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_schema_errors_exit_2(files, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "--kind", "hopf", bad], capsys)[0] == 2
    doc = io.load(files["h4"])
    doc["schema"] = "other"
    bad.write_text(io.dumps(doc))
    assert run(["verify", "--kind", "hopf", bad], capsys)[0] == 2
    doc = io.load(files["act"])
    doc["data"] = doc["data"][:2]
    doc["shape"] = [2, 2, 2]
    bad.write_text(io.dumps(doc))
    argv = ["check", "cocycle", "--hopf", files["h4"], "--base", files["kaa"], "--action", bad, "--cocycle", files["s1"]]
    assert run(argv, capsys)[0] == 2


def test_cohomology_output(capsys):
    code, out, _ = run(["cohomology", "lazy", "--field", "gf:3"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["certificate"]["classes"] == 3 and doc["class_sizes"] == [1, 1, 1]
    assert len(doc["group_table"]) == 3


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("HOMKIT_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("HOMKIT_THREADS", "zero")
    assert run(["corpus", "h4"], capsys)[0] == 2
    monkeypatch.setenv("HOMKIT_THREADS", "0")
    assert run(["corpus", "h4"], capsys)[0] == 2


def test_search_independent_of_thread_count(monkeypatch, capsys):
    outs = []
    for n in ("1", "4"):
        monkeypatch.setenv("HOMKIT_THREADS", n)
        code, out, _ = run(["search", "lazy", "--field", "gf:5"], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "h4.json"
    res = subprocess.run([sys.executable, "-m", "homkit.cli", "corpus", "h4", "--out", str(out)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(out.read_text())["kind"] == "hopf"
