import json
import subprocess
import sys

import pytest

from sawitness.cli import run

MORDELL_BUILD = ["witness", "build", "--curve", "0,3", "--gen", "1,2", "--puncture", "inf"]
CONG_BUILD = ["witness", "build", "--curve", "-36,0", "--gen", "-3,9",
              "--puncture", "inf", "0,0", "6,0", "-6,0"]


def test_count(capsys):
    assert run(["count", "--curve", "0,3", "--prime", "5"]) == 0
    assert capsys.readouterr().out.strip() == "6"
    assert run(["count", "--curve", "-36,0", "--prime", "5"]) == 0
    assert capsys.readouterr().out.strip() == "8"


def test_count_rejects_bad_or_composite_prime(capsys):
    assert run(["count", "--curve", "0,3", "--prime", "3"]) == 2
    assert run(["count", "--curve", "0,3", "--prime", "9"]) == 2


def test_analyze(capsys):
    assert run(["analyze", "--curve", "-36,0", "--point", "0,0"]) == 0
    out = capsys.readouterr().out
    assert "discriminant: 2985984" in out
    assert "bad primes: 2,3" in out
    assert "real components: 2" in out
    assert "torsion order: 2" in out
    assert run(["analyze", "--curve", "0,3", "--point", "1,2"]) == 0
    assert "torsion order: Infinite" in capsys.readouterr().out
    assert run(["analyze", "--curve", "0,3", "--point", "1,3"]) == 2


def test_integral(capsys):
    argv = ["integral", "--curve", "-36,0", "--puncture", "inf", "0,0", "6,0", "-6,0",
            "--T", "2,3", "--bounds", "12,10000"]
    assert run(argv) == 0
    lines = capsys.readouterr().out.split()
    for text in ["-3/1,9/1", "-2/1,-8/1", "12/1,36/1", "18/1,-72/1"]:
        assert text in lines
    assert "0/1,0/1" not in lines


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--curve", "0,0", "--prime", "5"],
        ["count", "--curve", "0", "--prime", "5"],
        ["count", "--curve", "0,3"],
        ["analyze", "--curve", "x,3"],
        ["witness", "build", "--curve", "0,3", "--gen", "1,2", "--puncture", "inf"],
        MORDELL_BUILD + ["--samples", "0", "-o", "x"],
        MORDELL_BUILD + ["--S", "4", "-o", "x"],
        ["witness", "build", "--curve", "0,3", "--gen", "1,2", "--puncture", "1,2", "-o", "x"],
        ["witness", "build", "--curve", "-36,0", "--gen", "0,0", "--puncture", "inf", "-o", "x"],
        ["integral", "--curve", "0,3", "--T", "2,x"],
        ["frobnicate"],
    ],
)
def test_invalid_input_exits_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(argv) == 2


def test_build_and_verify(tmp_path, capsys):
    out = tmp_path / "mordell.cert"
    assert run(MORDELL_BUILD + ["-o", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "v0 = 5" in printed and "a = 7" in printed
    doc = json.loads(out.read_text())
    assert doc["progression"]["v0"] == "5" and doc["progression"]["a"] == "7"
    assert run(["witness", "verify", str(out)]) == 0
    assert "ACCEPT" in capsys.readouterr().out


def test_verify_tampered_exits_1(tmp_path, capsys):
    out = tmp_path / "mordell.cert"
    assert run(MORDELL_BUILD + ["-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    doc["progression"]["a"] = "11"
    tampered = tmp_path / "mordell-tampered.cert"
    tampered.write_text(json.dumps(doc))
    capsys.readouterr()
    assert run(["witness", "verify", str(tampered)]) == 1
    assert "WRONG_A" in capsys.readouterr().out


def test_verify_malformed_or_missing_exits_2(tmp_path):
    bad = tmp_path / "bad.cert"
    bad.write_text("{}")
    assert run(["witness", "verify", str(bad)]) == 2
    assert run(["witness", "verify", str(tmp_path / "missing.cert")]) == 2


def test_builds_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.cert", tmp_path / "b.cert"
    assert run(CONG_BUILD + ["-o", str(a)]) == 0
    assert run(CONG_BUILD + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(["witness", "verify", str(a)]) == 0


def test_defaults_are_echoed(tmp_path):
    out = tmp_path / "mordell.cert"
    run(MORDELL_BUILD + ["-o", str(out)])
    doc = json.loads(out.read_text())
    assert len(doc["progression"]["samples"]) == 6
    assert doc["checks"]["scan_bound"] == "500"
    assert doc["checks"]["e_max"] == "6"
    assert (doc["search"]["max_denominator"], doc["search"]["max_numerator_abs"]) == ("12", "10000")


def test_threads_env(tmp_path, monkeypatch):
    out = tmp_path / "c.cert"
    serial = tmp_path / "s.cert"
    assert run(CONG_BUILD + ["-o", str(serial)]) == 0
    monkeypatch.setenv("SA_WITNESS_THREADS", "2")
    assert run(CONG_BUILD + ["-o", str(out)]) == 0
    assert out.read_bytes() == serial.read_bytes()
    monkeypatch.setenv("SA_WITNESS_THREADS", "zero")
    assert run(CONG_BUILD + ["-o", str(out)]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "mordell.cert"
    proc = subprocess.run(
        [sys.executable, "-m", "sawitness", *MORDELL_BUILD, "-o", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "sawitness", "witness", "verify", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "ACCEPT" in proc.stdout
