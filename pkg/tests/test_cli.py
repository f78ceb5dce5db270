import json
import subprocess
import sys

import pytest

from concomp.cli import dumps_json, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCoeffs:
    def test_ce(self, capsys):
        code, out, _ = run(["coeffs", "--family", "ce", "--limit", "5"], capsys)
        assert code == 0
        assert out == "n,value\n0,1\n1,0\n2,2\n3,2\n4,4\n5,4\n"

    def test_co1_mod2(self, capsys):
        _, out, _ = run(["coeffs", "--family", "co1", "--limit", "5", "--mod", "2"], capsys)
        assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["1", "1", "0", "1", "0", "0"]

    def test_single_row(self, capsys):
        _, out, _ = run(["coeffs", "--family", "ce", "--limit", "0"], capsys)
        assert out == "n,value\n0,1\n"

    def test_big_integers_in_full(self, capsys):
        _, out, _ = run(["coeffs", "--family", "co2", "--limit", "3000", "--format", "json"], capsys)
        values = json.loads(out)["values"]
        assert values[-1] > 2**63
        assert "e+" not in out

    def test_capacity_error(self, capsys):
        code, _, err = run(["coeffs", "--family", "ce", "--limit", "20000"], capsys)
        assert code == 2 and "capacity" in err

    def test_raised_cap(self, capsys):
        code, _, _ = run(["coeffs", "--family", "ce", "--limit", "50", "--exact-max", "40"], capsys)
        assert code == 2
        code, _, _ = run(["coeffs", "--family", "ce", "--limit", "50", "--exact-max", "50"], capsys)
        assert code == 0

    def test_bad_family(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["coeffs", "--family", "xx", "--limit", "3"])
        assert exc.value.code == 2


class TestEnumerate:
    @pytest.mark.parametrize(
        "family, n, lines",
        [
            ("ce", 2, ["1,1", "1,0,0,1", "count=2"]),
            ("co2", 1, ["1", "1,0,0", "count=2"]),
            ("co1", 0, ["0", "count=1"]),
        ],
    )
    def test_examples(self, capsys, family, n, lines):
        code, out, _ = run(["enumerate", "--family", family, "--n", str(n)], capsys)
        assert code == 0
        assert out.splitlines() == lines

    def test_cap(self, capsys):
        code, _, _ = run(["enumerate", "--family", "ce", "--n", "61"], capsys)
        assert code == 2


class TestHistogram:
    @pytest.mark.parametrize(
        "args, rows",
        [
            (["ce", "4", "6"], ["0,3", "1,1", "2,2", "3,0"]),
            (["co1", "2", "6"], ["0,3", "1,3"]),
            (["ce", "2", "1"], ["0,0", "1,1"]),
        ],
    )
    def test_examples(self, capsys, args, rows):
        family, mod, limit = args
        code, out, _ = run(["histogram", "--family", family, "--mod", mod, "--limit", limit], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "r,count"
        assert lines[1:] == rows


class TestVerify:
    def test_cong(self, capsys):
        code, out, _ = run(["verify", "--check", "cong", "--family", "ce", "--m-max", "20"], capsys)
        assert code == 0 and out.startswith("PASS")

    def test_theorem1(self, capsys):
        argv = ["verify", "--check", "theorem1", "--part", "i", "--limit", "100000", "--epsilon", "0.1"]
        code, out, _ = run(argv, capsys)
        assert code == 0
        assert "lhs" in out and "rhs" in out

    def test_co1_mod2(self, capsys):
        code, out, _ = run(["verify", "--check", "co1-mod2", "--limit", "100000"], capsys)
        assert code == 0 and out.startswith("PASS")

    def test_failure_exit_code(self, capsys):
        argv = ["verify", "--check", "theorem2", "--family", "co2", "--mod", "3", "--m-max", "1", "--window", "ce"]
        code, out, _ = run(argv, capsys)
        assert code == 1 and out.startswith("FAIL")

    def test_unknown_check(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--check", "nope"])
        assert exc.value.code == 2

    def test_theorem1_needs_part(self, capsys):
        assert run(["verify", "--check", "theorem1"], capsys)[0] == 2

    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "gap.json"
        code, _, _ = run(["verify", "--check", "gap", "--j-max", "10", "--output", str(path)], capsys)
        assert code == 0
        report = json.loads(path.read_text())
        assert report["passed"] is True
        assert set(report) >= {"check_name", "passed", "parameters", "witnesses", "summary_metrics"}
        # 3^(2^9 - 1) is printed in full
        assert report["witnesses"][-1]["observed"] == 3 ** (2**9 - 1)


class TestOutput:
    def test_deterministic_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            run(["histogram", "--family", "co2", "--mod", "7", "--limit", "5000", "-o", str(path)], capsys)
        assert a.read_bytes() == b.read_bytes()
        data = a.read_bytes()
        assert b"\r" not in data and data.endswith(b"\n")

    def test_output_dir_override(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CONCOMP_OUT", str(tmp_path))
        run(["coeffs", "--family", "co1", "--limit", "3", "-o", "t.csv"], capsys)
        assert (tmp_path / "t.csv").read_text() == "n,value\n0,1\n1,1\n2,2\n3,3\n"

    def test_no_scientific_notation(self):
        text = dumps_json({"tiny": 1e-12, "huge": 1e22, "values": [0.5, 10**30]})
        assert "e" not in text.replace("values", "").replace("tiny", "").replace("huge", "")
        assert json.loads(text)["values"][1] == 10**30

    def test_conjecture_always_exits_zero(self, capsys):
        code, out, err = run(["conjecture", "--family", "co2", "--mod", "5", "--limit", "10000"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "r,count,predicted"
        assert len(out.splitlines()) == 6
        assert "conjecture" in err

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "concomp", "coeffs", "--family", "co2", "--limit", "5"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[-1] == "5,10"
