import json
import re
import shlex
from pathlib import Path

import numpy as np
import pytest

from betaens.cli import main

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def commands():
    text = (FIXTURES / "README.md").read_text()
    return [shlex.split(ln) for ln in text.splitlines() if re.match(r"^betaens\s", ln)]


def test_every_fixture_has_one_command():
    targets = sorted(Path(c[c.index("--out") + 1]).name for c in commands())
    assert targets == sorted(p.name for p in FIXTURES.glob("*.json"))
    assert len(targets) == len(set(targets)) == 4


@pytest.mark.parametrize("argv", commands(), ids=lambda c: Path(c[c.index("--out") + 1]).stem)
def test_fixture_regenerates(argv, tmp_path):
    i = argv.index("--out")
    committed = json.loads((ROOT / argv[i + 1]).read_text())
    out = tmp_path / "regen.json"
    assert main(argv[1:i + 1] + [str(out)] + argv[i + 2:]) == 0
    fresh = json.loads(out.read_text())
    assert fresh["grid"] == committed["grid"] and fresh["methods"] == committed["methods"]
    for name, ref in committed["curves"].items():
        ref = np.array(ref)
        got = np.array(fresh["curves"][name])
        assert np.max(np.abs(got - ref)) <= 1e-9 * np.max(np.abs(ref)), name
    assert fresh["metrics"]["peak_count"] == committed["metrics"]["peak_count"]
