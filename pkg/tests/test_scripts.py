import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize(
    "name, argv, expect",
    [
        ("crossed_table.py", ["--t", "1"], "9 entries marked *"),
        ("crossed_table.py", ["--t", "0", "--field", "gf:5"], "2 entries marked *"),
        ("lazy_cohomology.py", ["--primes", "3"], "3\t81\t3\t1\t1\t3\tTrue"),
        ("perturbation_sweep.py", ["--p", "3", "--ts", "0"], '"agree": true'),
    ],
)
def test_script_runs(name, argv, expect, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    assert expect in capsys.readouterr().out
