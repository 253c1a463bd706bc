import json
import subprocess
import sys

import pytest

from regspec.cli import run
from regspec.graph import complete_graph, petersen_graph


@pytest.fixture
def files(tmp_path):
    k4 = tmp_path / "k4.txt"
    k4.write_text(complete_graph(4).to_text())
    pet = tmp_path / "pet.txt"
    pet.write_text(petersen_graph().to_text())
    return tmp_path, k4, pet


def _read(out, name):
    return json.loads((out / f"{name}.json").read_text())


def test_census_and_manifest(files, capsys):
    tmp, k4, _ = files
    out = tmp / "o"
    assert run(["census", "--in", str(k4), "--r", "4", "--out", str(out), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"C": {"3": 4, "4": 3}}
    man = _read(out, "manifest")
    assert man["command"] == "census"
    assert set(man["outputs"]) == {"census.json"}
    assert {"params", "seed", "version", "wall_clock_seconds"} <= set(man)


def test_cnbw_spectra_switch(files):
    tmp, k4, pet = files
    out = tmp / "o"
    assert run(["cnbw", "--in", str(pet), "--kmax", "5", "--check-divisor-sum", "--out", str(out)]) == 0
    res = _read(out, "cnbw")
    assert res["CNBW"]["5"] == 120 and res["agree"]
    assert run(["spectra", "--in", str(k4), "--f", "gamma3", "--m", "3", "--out", str(out), "--csv"]) == 0
    res = _read(out, "spectra")
    assert res["functional"] == pytest.approx(8.4853, abs=1e-4)
    assert res["gamma_identity_max_deviation"] < 1e-10
    assert (out / "spectra.csv").exists()
    assert run(["switch", "--in", str(k4), "--alpha", "0,1,2", "--r", "3", "--list", "--out", str(out)]) == 0
    assert _read(out, "switch")["moves"] == []


def test_sample_and_limit(tmp_path):
    out = tmp_path / "o"
    assert run(["sample", "--n", "20", "--d", "3", "--count", "3", "--seed", "5", "--out", str(out)]) == 0
    res = _read(out, "sample")
    assert len(res["files"]) == 3 and (out / res["files"][0]).exists()
    assert set(_read(out, "manifest")["outputs"]) == {"sample.json", *res["files"]}
    assert run(["limit", "--mode", "growing-d", "--n", "2000", "--d", "10", "--f", "phi3", "--m", "3", "--out", str(out)]) == 0
    assert _read(out, "limit")["variance"] == 6


def test_exit_codes(files, capsys):
    tmp, k4, _ = files
    out = str(tmp / "o")
    assert run(["census", "--in", str(tmp / "missing.txt"), "--r", "4", "--out", out]) == 2
    assert run(["census", "--bogus"]) == 2
    assert run(["switch", "--in", str(k4), "--alpha", "0,x", "--r", "3", "--out", out]) == 2
    bad = tmp / "bad.txt"
    bad.write_text("4 3\n0 1\n")
    assert run(["census", "--in", str(bad), "--r", "3", "--out", out]) == 2
    assert run(["metagraph-check", "--n", "10", "--out", out]) == 3


@pytest.mark.parametrize("threads", [1, 4, 8])
def test_thread_count_does_not_change_bytes(tmp_path, threads):
    ref = tmp_path / "ref"
    assert run(["verify-poisson", "--n", "60", "--r", "4", "--samples", "120", "--seed", "9", "--threads", "1", "--out", str(ref)]) == 0
    out = tmp_path / f"t{threads}"
    args = ["verify-poisson", "--n", "60", "--r", "4", "--samples", "120", "--seed", "9", "--threads", str(threads)]
    assert run(args + ["--out", str(out)]) == 0
    assert (out / "verify-poisson.json").read_bytes() == (ref / "verify-poisson.json").read_bytes()


def test_console_script_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "regspec.cli", "--version"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "regspec" in proc.stdout
