"""Tests for the command-line interface, b-file parsing, and report formats."""

import json

import pytest

from doldkit import cli, dynsys
from doldkit.cli import parse_bfile, render_json, run
from doldkit.errors import MalformedLineError, NonMonotoneIndexError


def lucas_bfile(length):
    lines = ["# Lucas numbers"]
    a, b = 2, 1
    for n in range(1, length + 1):
        a, b = b, a + b
        lines.append(f"{n} {a}")
    return "\n".join(lines) + "\n"


class TestBFileParsing:
    def test_basic(self):
        bf = parse_bfile("1 1\n2 3\n3 4")
        assert bf.window == (1, 3, 4)
        assert bf.notices == ()

    def test_comment_and_index_zero_dropped(self):
        bf = parse_bfile("# comment\n0 2\n1 1\n2 3")
        assert bf.window == (1, 3)
        assert any("index < 1" in note for note in bf.notices)

    def test_non_monotone_rejected(self):
        with pytest.raises(NonMonotoneIndexError) as err:
            parse_bfile("1 1\n1 2")
        assert err.value.lineno == 2

    def test_malformed_line(self):
        with pytest.raises(MalformedLineError) as err:
            parse_bfile("1 1\n2 x")
        assert err.value.lineno == 2

    def test_three_field_line_rejected(self):
        with pytest.raises(MalformedLineError):
            parse_bfile("1 1 1")

    def test_gap_truncates_with_notice(self):
        bf = parse_bfile("1 5\n2 7\n4 9")
        assert bf.window == (5, 7)
        assert any("gap" in note for note in bf.notices)

    def test_no_index_one_rejected(self):
        with pytest.raises(MalformedLineError):
            parse_bfile("2 1\n3 2")

    def test_blank_lines_ignored(self):
        assert parse_bfile("\n1 4\n\n2 5\n").window == (4, 5)


class TestCheckCommand:
    def test_england_smith_realizable_fails(self):
        report, code = run(
            ["check", "--criterion", "realizable", "--seq", "4,8,316,2320,16564,116920"]
        )
        assert code == 1
        assert report["verdict"] == "fails"
        assert report["witness_index"] == "6"
        assert report["witness_value"] == "58300/3"

    def test_lucas_dold_holds(self):
        report, code = run(["check", "--criterion", "dold", "--seq", "1,3,4,7,11,18"])
        assert code == 0
        assert report["verdict"] == "holds"

    def test_psi_defaults_to_mobius(self):
        report, code = run(["check", "--criterion", "psi", "--seq", "1,3,4,7,11,18"])
        assert code == 0
        assert report["outputs"]["psi"] == "mobius (default)"

    def test_qdold_constant_window(self):
        report, code = run(["check", "--criterion", "qdold", "--seq", "1,1,1,1"])
        assert code == 0

    def test_prime_power_criterion(self):
        report, code = run(["check", "--criterion", "prime-power", "--seq", "1,2,3,4"])
        assert code == 1
        assert report["witness_index"] == "2"

    def test_window_truncation_flag(self):
        report, code = run(["check", "--criterion", "dold", "--seq", "1,3,4,7,11,19", "--N", "5"])
        assert code == 0
        assert report["outputs"]["window"] == "5"
        assert report["command"].endswith("--N 5")


class TestTransformCommand:
    def test_orbit_transform(self):
        report, code = run(["transform", "--op", "B", "--seq", "4,8,316,2320,16564,116920"])
        assert code == 0
        assert report["outputs"]["values"] == ["4", "2", "104", "578", "3312", "58300/3"]

    def test_inverse_accepts_fractions(self):
        report, code = run(["transform", "--op", "invB", "--seq", "1,1,1,1,2,2"])
        assert code == 0
        assert report["outputs"]["values"] == ["1", "3", "4", "7", "11", "18"]

    def test_generating_sequence(self):
        report, code = run(["transform", "--op", "C", "--seq", "1,3,4,7,11"])
        assert report["outputs"]["values"] == ["1", "1", "0", "0", "0"]


class TestRealizeCommand:
    def test_lucas(self):
        report, code = run(["realize", "--seq", "1,3,4,7,11,18"])
        assert code == 0
        table = [int(x) for x in report["outputs"]["table"]]
        T = dynsys.FiniteMap(table)
        assert [dynsys.count_fixed(T, n) for n in range(1, 7)] == [1, 3, 4, 7, 11, 18]

    def test_fibonacci_fails(self):
        report, code = run(["realize", "--seq", "1,1,2"])
        assert code == 1
        assert report["witness_index"] == "3"
        assert report["witness_value"] == "1/3"


class TestZetaCommand:
    def test_from_fix_with_fit(self):
        window = ",".join(str(7**n - 3**n) for n in range(1, 9))
        report, code = run(["zeta", "--from", "fix", "--fit", "1", "--seq", window])
        assert code == 0
        assert report["outputs"]["fit"]["numerator"] == ["1", "-3"]
        assert report["outputs"]["fit"]["denominator"] == ["1", "-7"]

    def test_from_orbits(self):
        report, code = run(["zeta", "--from", "orbits", "--seq", "2,0,0,0"])
        assert code == 0
        assert report["outputs"]["coefficients"] == ["1", "2", "3", "4", "5"]

    def test_fit_none_reported(self):
        # a window with no low-order rational fit reports fit: none
        report, code = run(["zeta", "--from", "fix", "--fit", "2", "--seq", "1,2,6,25,120,720,5040"])
        assert code == 0
        assert report["outputs"]["fit"] == "none"


class TestHankelCommand:
    def test_golden_window(self):
        report, code = run(["hankel", "--bound", "4", "--seq", "1,3,2,4,5,7,6,8,9"])
        assert code == 1
        assert report["outputs"]["determinants"]["4"] == "-256"
        assert report["witness_value"] == "-256"

    def test_vanishing_window(self):
        report, code = run(["hankel", "--bound", "1", "--width", "1", "--seq", "1,1,1,1,1"])
        assert code == 0
        assert report["outputs"]["determinants"] == {"1": "0", "2": "0"}

    def test_too_short_is_usage_error(self):
        report, code = run(["hankel", "--bound", "4", "--seq", "1,2,3"])
        assert code == 2


class TestFailureCommand:
    def test_fib_power_two(self):
        report, code = run(["failure", "--gen", "fib-power-2", "--N", "60"])
        assert code == 0
        assert report["outputs"]["lcm"] == "5"

    def test_stirling_generator(self):
        report, code = run(["failure", "--gen", "stirling2-4", "--N", "40"])
        assert report["outputs"]["lcm"] == "6"

    def test_unknown_generator(self):
        report, code = run(["failure", "--gen", "nonsense", "--N", "10"])
        assert code == 2

    def test_missing_window_size(self):
        report, code = run(["failure", "--gen", "lucas"])
        assert code == 2


class TestTraceCommand:
    def test_matrix_file(self, tmp_path):
        path = tmp_path / "fib.mat"
        path.write_text("2\n1 1\n1 0\n")
        report, code = run(["trace", "--matrix", str(path), "--N", "6"])
        assert code == 0
        assert report["outputs"]["values"] == ["1", "3", "4", "7", "11", "18"]

    def test_bad_matrix_file(self, tmp_path):
        path = tmp_path / "bad.mat"
        path.write_text("2\n1 1\n")
        report, code = run(["trace", "--matrix", str(path), "--N", "4"])
        assert code == 2


class TestTimechangeCommand:
    def test_monomial(self):
        window = ",".join(str(n) for n in range(1, 17))
        report, code = run(["timechange", "--h", "monomial:2", "--seq", window, "--N", "4"])
        assert code == 0
        assert report["outputs"]["values"] == ["1", "4", "9", "16"]

    def test_prime_stretch_defaults_to_usable_length(self):
        window = ",".join(str(v) for v in [0, 0, 0, 0, 0, 6, 0, 0, 0, 0, 0, 6])  # reg_6
        report, code = run(["timechange", "--h", "gp:2", "--seq", window])
        assert code == 0
        # images 1,4,3,8,5,12,7 stay within the 12-entry horizon, h(8)=16 does not
        assert report["outputs"]["length"] == "7"
        assert report["outputs"]["values"][2] == "0"  # reg_6 at g_2(3) = 3
        assert report["outputs"]["values"][5] == "6"  # reg_6 at g_2(6) = 12

    def test_horizon_overflow_is_usage_error(self):
        report, code = run(["timechange", "--h", "monomial:3", "--seq", "1,2,3", "--N", "3"])
        assert code == 2

    def test_bad_spec(self):
        report, code = run(["timechange", "--h", "cubic:2", "--seq", "1,2,3"])
        assert code == 2


class TestClassifyCommand:
    def test_lucas_bfile(self, tmp_path):
        path = tmp_path / "b000032.txt"
        path.write_text(lucas_bfile(32))
        report, code = run(["classify", str(path)])
        assert code == 0
        out = report["outputs"]
        assert out["dold"]["verdict"] == "holds"
        assert out["realizable"]["verdict"] == "holds"
        assert out["periodic"]["verdict"] == "not periodic within bound"
        assert out["hankel"]["verdict"] == "holds"
        assert int(out["zeta_fit"]["degree"]) <= 2
        assert out["failure"]["lcm"] == "1"

    def test_periodic_window_classified(self, tmp_path):
        path = tmp_path / "reg.txt"
        lines = [f"{n} {v}" for n, v in enumerate([0, 2, 0, 2, 0, 2, 0, 2], start=1)]
        path.write_text("\n".join(lines))
        report, code = run(["classify", str(path)])
        assert code == 0
        assert report["outputs"]["periodic"]["verdict"] == "periodic"
        assert report["outputs"]["periodic"]["coefficients"] == {"2": "1"}

    def test_classify_report_round_trips_as_json(self, tmp_path):
        path = tmp_path / "b000032.txt"
        path.write_text(lucas_bfile(24))
        report, _ = run(["classify", str(path)])
        text = render_json(report)
        assert render_json(json.loads(text)) == text

    def test_negative_entries_skip_failure_section(self, tmp_path):
        path = tmp_path / "neg.txt"
        lines = [f"{n} {v}" for n, v in enumerate([1, -1, 1, -1, 1, -1], start=1)]
        path.write_text("\n".join(lines))
        report, code = run(["classify", str(path)])
        assert code == 0
        assert report["outputs"]["failure"]["verdict"] == "skipped"


class TestReportPlumbing:
    def test_schema_keys(self):
        report, _ = run(["check", "--criterion", "dold", "--seq", "1,1"])
        assert tuple(sorted(report)) == tuple(sorted(cli.REPORT_FIELDS))

    def test_json_round_trip_is_byte_identical(self):
        report, _ = run(["check", "--criterion", "realizable", "--seq", "1,1,2,3,5,8"])
        text = render_json(report)
        assert render_json(json.loads(text)) == text

    def test_reports_are_deterministic(self):
        argv = ["check", "--criterion", "dold", "--seq", "1,3,4,7,11,18"]
        first, _ = run(argv)
        second, _ = run(argv)
        assert render_json(first) == render_json(second)

    def test_seed_is_echoed(self):
        report, _ = run(["--seed", "7", "check", "--criterion", "dold", "--seq", "1,1"])
        assert report["outputs"]["seed"] == "7"

    def test_numbers_are_strings_in_json(self):
        report, _ = run(["transform", "--op", "B", "--seq", "1,3,4,7,11,18"])
        payload = json.loads(render_json(report))
        assert all(isinstance(v, str) for v in payload["outputs"]["values"])

    def test_bad_integer_is_usage_error(self):
        report, code = run(["check", "--criterion", "dold", "--seq", "1,foo"])
        assert code == 2
        assert report["verdict"] == "error"

    def test_exit_codes_follow_verdicts(self):
        _, holds = run(["check", "--criterion", "dold", "--seq", "1,3,4,7"])
        _, fails = run(["check", "--criterion", "dold", "--seq", "1,2"])
        assert (holds, fails) == (0, 1)

    def test_main_prints_text(self, capsys):
        code = cli.main(["check", "--criterion", "dold", "--seq", "1,3,4,7,11,18"])
        captured = capsys.readouterr()
        assert code == 0
        assert "HOLDS" in captured.out

    def test_main_prints_json(self, capsys):
        code = cli.main(["--format", "json", "check", "--criterion", "dold", "--seq", "1,2"])
        captured = capsys.readouterr()
        assert code == 1
        payload = json.loads(captured.out)
        assert payload["verdict"] == "fails"
