import json
import subprocess
import sys
from fractions import Fraction

import pytest

from aconst import cache, searches
from aconst.cli import main, parse_rational
from aconst.report import VerificationReport


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "cache"))
    return tmp_path


class TestRationalParsing:
    def test_accepts(self):
        assert parse_rational("7/3") == Fraction(7, 3)
        assert parse_rational("-2") == Fraction(-2)
        assert parse_rational("+1/2") == Fraction(1, 2)

    @pytest.mark.parametrize("bad", ["1//2", "1/2/3", "1.5", "a/b", "2/-3", ""])
    def test_rejects(self, bad):
        with pytest.raises(Exception):
            parse_rational(bad)

    def test_malformed_x_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "dobinski", "--x", "1//2"])
        assert exc.value.code == 2


class TestVerifyCommands:
    def test_dobinski_passes(self, capsys):
        code = main(
            ["verify", "dobinski", "--r", "1", "--nmax", "4", "--pmin", "5", "--pmax", "60"]
        )
        assert code == 0
        assert "all" in capsys.readouterr().out

    def test_euler_mascheroni_minus_one(self, capsys):
        code = main(
            ["verify", "euler", "--which", "mascheroni", "--x=-1", "--pmax", "101"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "Wilson" in out

    @pytest.mark.parametrize("which", ["interlude", "kluyver", "eisenstein", "logadd"])
    def test_euler_variants(self, which, capsys):
        code = main(
            ["verify", "euler", "--which", which, "--x", "0", "--m", "2", "--k", "3",
             "--pmax", "60"]
        )
        assert code == 0

    def test_json_report_deterministic(self, tmp_path, capsys):
        paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
        for path in paths:
            code = main(
                ["verify", "dobinski", "--nmax", "3", "--pmax", "40",
                 "--json", str(path), "--no-timestamp"]
            )
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        report = VerificationReport.from_jsonl(paths[0].read_text())
        assert report.passed
        assert report.theorem == "dobinski"

    def test_json_report_with_timestamp(self, tmp_path, capsys):
        path = tmp_path / "t.jsonl"
        main(["verify", "dobinski", "--nmax", "2", "--pmax", "30", "--json", str(path)])
        report = VerificationReport.from_jsonl(path.read_text())
        assert report.timestamp


class TestSearch:
    def test_wilson_small(self, capsys):
        code = main(["search", "--target", "wilson", "--pmin", "5", "--pmax", "120"])
        assert code == 0
        out = capsys.readouterr().out.split()
        assert out == ["5", "13"]

    def test_e_zero_includes_five(self, capsys):
        code = main(["search", "--target", "eA-zero", "--pmin", "5", "--pmax", "50"])
        assert code == 0
        assert "5" in capsys.readouterr().out.split()

    def test_empty_window(self, capsys):
        code = main(["search", "--target", "wilson", "--pmin", "24", "--pmax", "28"])
        assert code == 0
        assert capsys.readouterr().out.strip() == ""

    def test_unknown_target_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["search", "--target", "nope", "--pmax", "50"])
        assert exc.value.code == 2


class TestSeq:
    def test_bell_bfile_format(self, capsys, tmp_path):
        out_path = tmp_path / "b.txt"
        code = main(["seq", "--name", "bell", "--nmax", "7", "--bfile", str(out_path)])
        assert code == 0
        expected = "0 1\n1 1\n2 2\n3 5\n4 15\n5 52\n6 203\n7 877\n"
        assert capsys.readouterr().out == expected
        assert out_path.read_text() == expected

    def test_g_values(self, capsys):
        main(["seq", "--name", "g", "--nmax", "7"])
        values = [line.split()[1] for line in capsys.readouterr().out.splitlines()]
        assert values == ["0", "1", "1", "3", "9", "31", "121", "523"]

    def test_gregory_rationals(self, capsys):
        main(["seq", "--name", "gregory", "--nmax", "4"])
        values = [line.split()[1] for line in capsys.readouterr().out.splitlines()]
        assert values == ["1", "1/2", "-1/12", "1/24", "-19/720"]

    def test_b2j_rows(self, capsys):
        main(["seq", "--name", "b2j", "--nmax", "8", "--j", "1"])
        values = [int(line.split()[1]) for line in capsys.readouterr().out.splitlines()]
        assert values == [0, 1, 0, 1, 2, 4, 10, 29, 90]

    def test_unknown_name_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["seq", "--name", "fib", "--nmax", "5"])
        assert exc.value.code == 2


class TestGammaCommand:
    def test_kluyver_prints_error_estimate(self, capsys):
        code = main(
            ["gamma", "--method", "kluyver", "--m", "1", "--x", "0", "--terms", "500"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "approx" in out and "gamma_ref" in out

    def test_bla101_coarse(self, capsys):
        code = main(
            ["gamma", "--method", "bla101", "--k", "1", "--x", "0", "--terms", "100"]
        )
        assert code == 0
        assert "approx = 0.57" in capsys.readouterr().out

    def test_domain_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["gamma", "--method", "mascheroni", "--x=-2", "--terms", "100"])
        assert exc.value.code == 2


class TestCache:
    def test_append_dedupes(self):
        _, records = searches.search_zero_primes("wilson", [5, 7, 11, 13])
        assert cache.append_records(records) == 4
        assert cache.append_records(records) == 0
        assert len(cache.load_records("wilson_q")) == 4

    def test_rerun_is_byte_identical(self, capsys):
        main(["search", "--target", "wilson", "--pmin", "5", "--pmax", "60"])
        path = cache.cache_dir() / "wilson_q.jsonl"
        first = path.read_bytes()
        main(["search", "--target", "wilson", "--pmin", "5", "--pmax", "60"])
        assert path.read_bytes() == first

    def test_cache_verify_clean(self, capsys):
        main(["search", "--target", "eA-zero", "--pmin", "5", "--pmax", "80"])
        code = main(["cache", "verify", "--sample", "10", "--seed", "1"])
        assert code == 0
        assert "checked" in capsys.readouterr().out

    def test_cache_verify_detects_corruption(self, capsys):
        main(["search", "--target", "wilson", "--pmin", "5", "--pmax", "60"])
        path = cache.cache_dir() / "wilson_q.jsonl"
        lines = path.read_text().splitlines()
        rec = json.loads(lines[0])
        rec["residue"] = (rec["residue"] + 1) % rec["prime"]
        lines[0] = json.dumps(rec, sort_keys=True)
        path.write_text("\n".join(lines) + "\n")
        code = main(["cache", "verify", "--sample", "50", "--seed", "3"])
        assert code == 1
        assert "MISMATCH" in capsys.readouterr().out


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "aconst.cli", "seq", "--name", "bell", "--nmax", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "0 1\n1 1\n2 2\n3 5\n"

    def test_help_exits_0(self):
        proc = subprocess.run(
            [sys.executable, "-m", "aconst.cli", "--help"], capture_output=True
        )
        assert proc.returncode == 0


class TestFailurePath:
    def test_failing_congruence_exits_1(self, capsys, monkeypatch):
        import aconst.cli as cli_mod
        from aconst.report import CheckRecord, VerificationReport

        def fake_verify(r, n_max, x, window, threads=1):
            rep = VerificationReport("dobinski", {}, 5, 7, 2)
            rep.checks.append(CheckRecord(5, "n=1", 1, 2, False))
            return rep

        monkeypatch.setattr(cli_mod.dobinski, "verify_dobinski", fake_verify)
        code = main(["verify", "dobinski", "--pmax", "10"])
        assert code == 1
        out = capsys.readouterr().out
        assert "FAILED" in out and "lhs=1 rhs=2" in out
