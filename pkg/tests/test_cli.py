import csv
import json
import subprocess
import sys

import pytest

from conjalg import conjugacy
from conjalg.cli import main, parse_operand, parse_range

from .conftest import S1


@pytest.fixture(autouse=True)
def restore_cap():
    saved = conjugacy.DEFAULT_CAP
    yield
    conjugacy.set_cap(saved)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestMult:
    def test_transposition_square(self, capsys):
        code, out, _ = run(capsys, "mult", "--family", "s1", "(1 2)", "(1 2)")
        assert code == 0
        assert out.splitlines() == ["2 * B[e@2]", "4 * B[(1 2 3)@3]", "1 * B[(1 2)(3 4)@4]"]

    def test_unit(self, capsys):
        _, out, _ = run(capsys, "mult", "--family", "s1", "e@0", "(1 2 3)")
        assert out.strip() == "1 * B[(1 2 3)@3]"

    def test_json(self, capsys):
        _, out, _ = run(capsys, "mult", "--json", "(1 2)", "(1 2)")
        obj = json.loads(out)
        assert [t["coeff"] for t in obj["terms"]] == [2, 4, 1]
        assert obj["family"] == {"kind": "product", "m": 1}

    def test_pair_matches_verify(self, capsys):
        code, out, _ = run(capsys, "mult", "--family", "s2", "--json", "(1 2)|e", "(1 2)|e")
        assert code == 0 and json.loads(out)["terms"]
        code, out, _ = run(capsys, "verify", "--family", "s2", "(1 2)|e", "(1 2)|e", "--range", "2..4")
        assert code == 0 and "FAIL" not in out

    def test_linear_combination(self, capsys):
        _, out, _ = run(capsys, "mult", "2*(1 2) + e@1", "e@0")
        assert out.splitlines() == ["1 * B[e@1]", "2 * B[(1 2)@2]"]

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "prod.txt"
        code, out, _ = run(capsys, "mult", "--out", str(target), "(1 2)", "e@1")
        assert code == 0 and out == ""
        assert target.read_text() == "2 * B[(1 2)@2]\n1 * B[(2 3)@3]\n"


class TestGradedCommands:
    def test_bullet(self, capsys):
        _, out, _ = run(capsys, "bullet", "--family", "s1", "(1 2)", "(1 2)")
        assert out.strip() == "1 * B[(1 2)(3 4)@4]"

    def test_bracket_zero(self, capsys):
        _, out, _ = run(capsys, "bracket", "--family", "s1", "(1 2 3)", "(1 2 3)")
        assert out.strip() == "0"

    def test_involution_and_degree(self, capsys):
        _, out, _ = run(capsys, "involution", "--family", "s2", "(1 2 3)|e")
        assert out.strip() == "1 * B[(1 2 3)|e@3]"
        _, out, _ = run(capsys, "degree", "(1 2)(3 4) + e@1")
        assert out.strip() == "4"


class TestClasses:
    def test_three(self, capsys):
        code, out, _ = run(capsys, "classes", "--family", "s1", "--n", "3")
        assert code == 0 and len(out.splitlines()) == 3
        assert sum(int(line.split("\t")[2]) for line in out.splitlines()) == 6

    def test_json(self, capsys):
        _, out, _ = run(capsys, "classes", "--family", "s2", "--n", "2", "--json")
        assert len(json.loads(out)) == 4


class TestTable:
    def test_small(self, capsys, tmp_path):
        out = tmp_path / "t.csv"
        code, _, _ = run(capsys, "table", "--family", "s1", "--n-max", "1", "--out", str(out))
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        e1 = [r for r in rows if r["g"] == "1:1" and r["h"] == "1:1"]
        assert {(r["r"], r["coeff"]) for r in e1} == {("1:1", "1"), ("2:1 2", "1")}
        manifest = json.loads((tmp_path / "t.csv.manifest.json").read_text())
        assert manifest["family"] == "s1" and manifest["n_max"] == 1

    def test_transposition_rows(self, capsys, tmp_path):
        out = tmp_path / "t.csv"
        run(capsys, "table", "--n-max", "2", "--out", str(out))
        rows = [r for r in csv.DictReader(out.open()) if r["g"] == r["h"] == "2:2 1"]
        assert sorted(int(r["coeff"]) for r in rows) == [1, 2, 4]
        assert out.read_text().splitlines()[0] == "family,g,h,r,coeff"

    def test_requires_out(self, capsys):
        code, _, err = run(capsys, "table", "--n-max", "1")
        assert code == 2 and "--out" in err

    def test_cache_and_force(self, capsys, tmp_path):
        out = tmp_path / "t.csv"
        run(capsys, "table", "--n-max", "1", "--out", str(out))
        first = out.read_bytes()
        out.write_text("tampered\n")
        _, msg, _ = run(capsys, "table", "--n-max", "1", "--out", str(out))
        assert "reusing" in msg and out.read_text() == "tampered\n"
        run(capsys, "table", "--n-max", "1", "--out", str(out), "--force")
        assert out.read_bytes() == first
        # a different request ignores the cache
        run(capsys, "table", "--n-max", "1", "--format", "json", "--out", str(out))
        assert json.loads(out.read_text())[0]["family"] == "s1"

    def test_guard(self, capsys, tmp_path):
        code, _, err = run(capsys, "table", "--n-max", "6", "--out", str(tmp_path / "x"))
        assert code == 3 and "resource guard" in err


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "e@1", "e@1", "--range", "1..5")
        assert code == 0 and out.count("pass") == 5

    def test_json(self, capsys):
        _, out, _ = run(capsys, "verify", "(1 2)", "(1 2)", "--range", "2..5", "--json")
        obj = json.loads(out)
        assert [c["N"] for c in obj["checks"]] == [2, 3, 4, 5]
        assert all(c["pass"] for c in obj["checks"])

    def test_guard(self, capsys):
        code, _, err = run(capsys, "verify", "e@1", "e@1", "--range", "8")
        assert code == 3 and "guard" in err

    def test_failure_exit_status(self, capsys, monkeypatch):
        from conjalg import oracle

        real = oracle.star
        monkeypatch.setattr(oracle, "star", lambda u, v, workers=1: 2 * real(u, v))
        code, out, _ = run(capsys, "verify", "e@1", "e@1", "--range", "1..2")
        assert code == 1 and "FAIL" in out


class TestSurface:
    def test_sphere(self, capsys):
        code, out, _ = run(capsys, "surface", "analyze", "e|e")
        assert code == 0
        assert "1 component(s); V=3 E=3 F=2 chi=2" in out and "genus=0" in out

    def test_dot(self, capsys):
        _, out, _ = run(capsys, "surface", "export", "--format", "dot", "e|e")
        assert out.count("--") == 3 and out.count("shape=") == 2

    def test_single_component(self, capsys):
        _, out, _ = run(capsys, "surface", "analyze", "--json", "(1 2)|(1 2)")
        assert len(json.loads(out)["components"]) == 1

    def test_wrong_family(self, capsys):
        code, _, _ = run(capsys, "surface", "--family", "s1", "analyze", "(1 2)")
        assert code == 2


class TestDiagnose:
    def test_ambient_scalars(self, capsys):
        code, out, _ = run(capsys, "diagnose", "remark1", "--n", "4", "--json")
        rows = json.loads(out)
        assert code == 0 and rows and all(r["matches"] for r in rows)

    def test_span_index(self, capsys):
        _, out, _ = run(capsys, "diagnose", "remark2", "--n", "2", "--json")
        assert json.loads(out)["index"] == 2


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ["mult", "(1 2", "e"],
        ["mult", "--family", "s9x", "e", "e"],
        ["mult", "(1 2)(2 3)", "e"],
        ["degree", "0*e@1"],
        ["surface", "export", "--format", "svg", "e|e"],
    ])
    def test_usage_errors(self, capsys, argv):
        try:
            code = main(argv)
        except SystemExit as exc:  # rejected by argparse itself
            code = exc.code
        assert code == 2

    def test_cap(self, capsys):
        code, _, err = run(capsys, "mult", "--max-n", "4", "(1 2 3)", "(1 2)")
        assert code == 3 and "max-n" in err


def test_parse_helpers():
    assert parse_range("0..6") == range(0, 7)
    assert parse_range("3") == range(3, 4)
    u = parse_operand(S1, "2*(1 2) + e@1 + (2 1)")
    assert sorted(a for _, a in u.items()) == [1, 3]


class TestDeterminism:
    def _cli(self, *argv):
        return subprocess.run(
            [sys.executable, "-m", "conjalg", *argv], capture_output=True, check=True
        ).stdout

    def test_mult_json_bytes(self):
        argv = ("mult", "--family", "s2", "--json", "(1 2 3)|(1 2)", "(1 2)|(1 2)")
        first = self._cli(*argv)
        assert self._cli(*argv) == first
        assert self._cli(*argv, "--parallel", "4") == first

    def test_table_bytes(self, tmp_path):
        outs = []
        for i, extra in enumerate(([], [], ["--parallel", "4"])):
            path = tmp_path / f"t{i}.csv"
            self._cli("table", "--family", "s2", "--n-max", "2", "--out", str(path), *extra)
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] == outs[2]
