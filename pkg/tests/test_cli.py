import json
import subprocess
import sys

import pytest

from cannibal.checks import REGISTRY, Config, run_checks
from cannibal.cli import main
from cannibal.errors import InvalidConfig, UnknownCheckId

FAST = ["curve.points", "curve.order48", "final.binomial", "pairing.det"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_ids():
    assert sorted(REGISTRY) == [
        "binom.functional",
        "cannibal.prop41",
        "curve.gl2",
        "curve.order48",
        "curve.points",
        "fgl.height",
        "final.binomial",
        "pairing.det",
        "q0.leading",
        "qexp.phi",
        "stab.beaudry",
        "stab.i-homomorphism",
        "stab.omega",
    ]


def test_order48_check(capsys):
    code, out, _ = run(capsys, "--check", "curve.order48")
    assert code == 0
    assert "|G| = 48" in out


def test_unknown_check_is_usage_error(capsys):
    code, _, err = run(capsys, "--check", "no.such")
    assert code == 2
    assert "no.such" in err
    with pytest.raises(UnknownCheckId):
        run_checks(["no.such"])


def test_bad_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "--precision-2adic", "many")
    assert code == 2
    code, _, _ = run(capsys, "--series-cap", "2")
    assert code == 2


def test_config_validation():
    with pytest.raises(InvalidConfig):
        Config(M=0)


def test_json_report_schema(capsys):
    args = ["--format", "json"] + [a for c in FAST for a in ("--check", c)]
    code, out, _ = run(capsys, *args)
    assert code == 0
    data = json.loads(out)
    assert [r["check_id"] for r in data] == sorted(FAST)
    for r in data:
        assert set(r) == {"check_id", "description", "params", "status", "details"}
        assert r["status"] == "pass"
        assert r["params"] == {"N": 12, "M": 8, "cap": 10, "Q": 6, "Dx": 9, "seed": 0}


def test_report_is_deterministic(capsys):
    args = ["--format", "json", "--check", "binom.functional", "--check", "curve.points"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_parallel_matches_serial():
    cfg = Config(N=10, M=5, cap=6)
    ids = ["curve.points", "stab.omega", "binom.functional", "pairing.det"]
    assert run_checks(ids, cfg, jobs=1) == run_checks(ids, cfg, jobs=3)


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample\nprecision-2adic = 10\nu1-order=5\nseries-cap=6\ncheck = stab.omega, curve.points\nformat=json\n")
    code, out, _ = run(capsys, "--config", str(cfg), "--u1-order", "4")
    assert code == 0
    data = json.loads(out)
    assert [r["check_id"] for r in data] == ["curve.points", "stab.omega"]
    assert data[0]["params"]["N"] == 10 and data[0]["params"]["M"] == 4


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "--check", "curve.points", "--output", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "curve.points" in text and "1/1 passed" in text


def test_failing_check_gives_exit_one(monkeypatch, capsys):
    from cannibal import checks

    monkeypatch.setitem(checks.REGISTRY, "zz.fail", checks.Check("zz.fail", "always fails", lambda cfg: (False, "forced")))
    code, out, _ = run(capsys, "--check", "zz.fail")
    assert code == 1
    assert "forced" in out


def test_list(capsys):
    code, out, _ = run(capsys, "--list")
    assert code == 0 and "stab.i-homomorphism" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cannibal", "--check", "curve.gl2"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    assert "curve.gl2" in proc.stdout
