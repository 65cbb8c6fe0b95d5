"""CLI surfaces, exit codes, report files and the GB cache."""

import json
import subprocess
import sys

import pytest

from reglab import cache as gbcache
from reglab.cli import main
from reglab.poly import parse_polynomial
from reglab.rings import ring


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "reglab.cli", *args],
        capture_output=True,
        text=True,
        **kw,
    )


def test_reg_command(capsys):
    assert main(["reg", "--mono", "x^3,y^3", "--ring", "x,y", "--char", "2"]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_gb_command_json(capsys):
    rc = main(["gb", "--ring", "x,y", "--char", "0", "--gens", "x^2+y^2,x*y", "--json"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert sorted(data["basis"]) == ["x*y", "x^2 + y^2", "y^3"]


def test_nf_and_initial(capsys):
    assert main(["nf", "--ring", "x,y", "--poly", "x^3*y", "--gens", "x^3,y^3"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["initial", "--ring", "x,y", "--char", "0",
                 "--gens", "x^2+y^2,x*y"]) == 0
    assert "y^3" in capsys.readouterr().out


def test_np_delta_socle(capsys):
    assert main(["np", "--ring", "x,y", "--mono", "x^3,y^3", "--hrep"]) == 0
    out = capsys.readouterr().out
    assert "delta: 3" in out and ">= 3" in out
    assert main(["delta", "--family", "mprimary-counter", "--N", "4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["delta_per_n"] == ["5", "5", "5", "5"]
    assert data["limit_region_delta"] == "3"
    assert main(["socle", "--ring", "x,y", "--gens", "x^2,y^2",
                 "--witness", "x*y"]) == 0
    assert "reg >= 3" in capsys.readouterr().out


def test_usage_exit_code():
    proc = run_cli(["reg"])  # missing --mono
    assert proc.returncode == 2
    proc = run_cli(["nosuchcommand"])
    assert proc.returncode == 2


def test_budget_exit_code():
    proc = run_cli(
        ["gb", "--gens", "x^24,y^24,x*y*a-(x^2+y^2)*b", "--budget-steps", "2"]
    )
    assert proc.returncode == 3
    assert "budget" in proc.stderr


def test_assertion_failure_exit_code(capsys):
    # a failing socle witness exits 1
    assert main(["socle", "--ring", "x,y", "--gens", "x^2,y^2",
                 "--witness", "x"]) == 1
    capsys.readouterr()


def test_paper_verify_and_reports(tmp_path, capsys):
    rc = main([
        "paper", "verify", "--thm", "gb2powers", "--n", "8", "--json",
        "--out", str(tmp_path), "--cache-dir", str(tmp_path / "cache"),
    ])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["preset"] == "gb2powers"
    assert all(a["verdict"] == "pass" for a in data["assertions"])
    assert {"version", "params", "assertions", "artifacts", "content_hash",
            "timings"} <= set(data)
    assert (tmp_path / "gb2powers.json").is_file()
    assert (tmp_path / "gb2powers.tsv").is_file()


def test_family_report_files(tmp_path, capsys):
    rc = main([
        "family", "report", "--family", "mprimary-counter", "--N", "4",
        "--out", str(tmp_path), "--json",
    ])
    assert rc == 0
    capsys.readouterr()
    for suffix in (".json", ".tsv", ".txt", ".png"):
        assert (tmp_path / f"family-report{suffix}").is_file(), suffix
    tsv = (tmp_path / "family-report.tsv").read_text().splitlines()
    assert tsv[0].split("\t")[:4] == ["n", "reg", "d", "mu"]
    assert len(tsv) == 5


def test_family_check_and_stabilize(capsys):
    assert main(["family", "check-graded", "--family", "mprimary-counter",
                 "--N", "4"]) == 0
    capsys.readouterr()
    assert main(["family", "stabilize", "--family", "mprimary-counter",
                 "--N", "6"]) == 0
    assert "no stabilization" in capsys.readouterr().out


def test_cache_roundtrip(tmp_path, capsys):
    R = ring("x,y", char=0)
    gens = [parse_polynomial(R, "x^2+y^2"), parse_polynomial(R, "x*y")]
    basis, hit = gbcache.buchberger_cached(gens, directory=str(tmp_path))
    assert not hit and len(basis) == 3
    basis2, hit2 = gbcache.buchberger_cached(gens, directory=str(tmp_path))
    assert hit2 and basis2 == basis
    assert main(["cache", "ls", "--cache-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "size=3" in out
    assert main(["cache", "clear", "--cache-dir", str(tmp_path)]) == 0
    assert "cleared 1" in capsys.readouterr().out
    assert gbcache.entries(str(tmp_path)) == []


def test_intersect_colon_cli(capsys):
    assert main(["intersect", "--ring", "x,y", "--gens-a", "x^3",
                 "--gens-b", "y^3"]) == 0
    assert capsys.readouterr().out.strip() == "x^3*y^3"
    assert main(["colon", "--ring", "x,y", "--gens", "x^2,x*y", "--by", "x"]) == 0
    out = capsys.readouterr().out.split()
    assert sorted(out) == ["x", "y"]


def test_reg_bracket_cli(capsys):
    assert main(["reg-bracket", "--ring", "x,y,a,b",
                 "--mono", "x^24,y^24,x^8*y^8*a^8,x^17*y*b^8", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["lower"] <= data["upper"]
