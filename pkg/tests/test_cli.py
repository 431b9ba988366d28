"""End-to-end command line behavior: outputs, diagnostics and exit codes."""

import json
import subprocess
import sys

import pytest
from conftest import DATA_DIR

from hitsrank.cli import (
    EXIT_DEGENERATE,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    main,
)

MINI = str(DATA_DIR / "mini_league_matches.csv")
LEAGUE = str(DATA_DIR / "epl_2010_11_adjacency.csv")
OFFICIAL = str(DATA_DIR / "epl_2010_11_official_points.csv")


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRankCommand:
    def test_both_tables_by_default(self, capsys):
        code, out, err = run(
            capsys, "rank", "--input", MINI, "--input-kind", "matches"
        )
        assert code == EXIT_OK
        assert out.startswith("# authority\n")
        assert "\n# hub\n" in out
        assert err == ""

    def test_authority_only_text(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--which", "authority",
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].split() == ["rank", "team", "score"]
        assert lines[1].split() == ["1", "A", "0.737"]
        assert lines[2].split() == ["2", "D", "0.591"]
        assert lines[3].split() == ["3", "B", "0.328"]
        assert lines[4].split() == ["4", "C", "0.000"]

    def test_hub_best_team_first(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--which", "hub",
            "--format", "csv",
        )
        assert code == EXIT_OK
        assert out.splitlines()[1].startswith("1,D,")

    def test_hub_raw_descending(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--which", "hub",
            "--hub-order", "raw-desc", "--format", "csv",
        )
        assert code == EXIT_OK
        assert out.splitlines()[1].startswith("1,B,")

    def test_matrix_input_league_authority_leader(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", LEAGUE, "--input-kind", "matrix",
            "--which", "authority", "--format", "csv",
        )
        assert code == EXIT_OK
        assert out.splitlines()[1].startswith("1,Manchester City,0.34")

    def test_matrix_input_league_hub_leader(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", LEAGUE, "--input-kind", "matrix",
            "--which", "hub", "--format", "csv",
        )
        assert code == EXIT_OK
        assert out.splitlines()[1] == "1,Manchester United,0.008"

    def test_json_both_holds_two_tables(self, capsys):
        code, out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--format", "json",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert set(doc) == {"authority", "hub"}
        assert doc["authority"]["kind"] == "authority"
        assert doc["hub"]["ordering"] == "asc_score"
        # full precision in json regardless of --decimals
        assert doc["authority"]["rows"][0]["score"] == pytest.approx(
            0.7369762290994177, abs=1e-15
        )

    def test_decimals_affect_text_not_json(self, capsys):
        _, text_out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches",
            "--which", "authority", "--decimals", "1",
        )
        assert "0.7\n" in text_out or " 0.7" in text_out
        _, json_out, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches",
            "--which", "authority", "--format", "json", "--decimals", "1",
        )
        doc = json.loads(json_out)
        assert doc["rows"][0]["score"] != 0.7

    def test_custom_weights_change_scores(self, capsys, tmp_path):
        # wins and draws must be weighted differently for the flag to bite
        f = tmp_path / "mixed.csv"
        f.write_text("home,away,outcome\nA,B,H\nB,C,D\nC,A,D\n")
        _, out_default, _ = run(
            capsys,
            "rank", "--input", str(f), "--input-kind", "matches", "--which", "authority",
            "--format", "csv", "--decimals", "6",
        )
        _, out_flat, _ = run(
            capsys,
            "rank", "--input", str(f), "--input-kind", "matches", "--which", "authority",
            "--format", "csv", "--decimals", "6", "--win-weight", "1",
        )
        assert out_default != out_flat

    def test_verbose_reports_solver_diagnostics(self, capsys):
        code, out, err = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--verbose",
        )
        assert code == EXIT_OK
        assert "iterations:" in err
        assert "eigenvalue:" in err
        assert "converged: True" in err
        _, quiet_out, quiet_err = run(
            capsys, "rank", "--input", MINI, "--input-kind", "matches"
        )
        assert quiet_err == ""
        assert out == quiet_out

    def test_deterministic_output(self, capsys):
        args = ("rank", "--input", LEAGUE, "--input-kind", "matrix", "--format", "json")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_unconverged_warns_but_succeeds(self, capsys):
        code, out, err = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--max-iters", "1",
        )
        assert code == EXIT_OK
        assert "did not converge" in err
        assert out != ""

    def test_strict_convergence_fails(self, capsys):
        code, out, err = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches",
            "--max-iters", "1", "--strict-convergence",
        )
        assert code == EXIT_NO_CONVERGENCE
        assert out == ""
        assert "did not converge" in err

    def test_degenerate_graph_exit_code(self, capsys, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("home,away,outcome\n")
        code, out, err = run(
            capsys, "rank", "--input", str(empty), "--input-kind", "matches"
        )
        assert code == EXIT_DEGENERATE
        assert out == ""
        assert "error:" in err

    def test_parse_error_exit_code_names_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("home,away,outcome\nX,X,D\n")
        code, out, err = run(
            capsys, "rank", "--input", str(bad), "--input-kind", "matches"
        )
        assert code == EXIT_PARSE
        assert out == ""
        assert str(bad) in err
        assert "line 2" in err

    def test_missing_file_exit_code(self, capsys, tmp_path):
        code, out, err = run(
            capsys,
            "rank", "--input", str(tmp_path / "nope.csv"), "--input-kind", "matches",
        )
        assert code == EXIT_USAGE
        assert out == ""
        assert "not found" in err

    def test_directory_input_rejected(self, capsys, tmp_path):
        code, out, err = run(
            capsys, "rank", "--input", str(tmp_path), "--input-kind", "matches"
        )
        assert code == EXIT_USAGE
        assert out == ""

    def test_usage_errors(self, capsys):
        code, _, _ = run(capsys, "rank", "--input-kind", "matches")
        assert code == EXIT_USAGE
        code, _, _ = run(capsys, "rank", "--input", MINI)
        assert code == EXIT_USAGE
        code, _, _ = run(capsys, "rank", "--input", MINI, "--input-kind", "nonsense")
        assert code == EXIT_USAGE
        code, _, _ = run(
            capsys, "rank", "--input", MINI, "--input-kind", "matches", "--tol", "-1"
        )
        assert code == EXIT_USAGE
        code, _, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--decimals", "-2",
        )
        assert code == EXIT_USAGE
        code, _, _ = run(capsys, "no-such-command")
        assert code == EXIT_USAGE


class TestPointsCommand:
    def test_mini_league_csv(self, capsys):
        code, out, _ = run(capsys, "points", "--input", MINI, "--format", "csv")
        assert code == EXIT_OK
        assert out == "rank,team,score\n1,A,6\n1,D,6\n3,B,3\n3,C,3\n"

    def test_text_has_tie_note(self, capsys):
        code, out, _ = run(capsys, "points", "--input", MINI)
        assert code == EXIT_OK
        assert out.splitlines()[-1].startswith("# ties share the smaller rank")

    def test_custom_win_points(self, capsys, tmp_path):
        f = tmp_path / "one.csv"
        f.write_text("home,away,outcome\nA,B,H\n")
        code, out, _ = run(
            capsys, "points", "--input", str(f), "--win-weight", "2", "--format", "csv"
        )
        assert code == EXIT_OK
        assert out.splitlines()[1] == "1,A,2"


class TestMatrixCommand:
    def test_mini_league_bytes(self, capsys):
        code, out, _ = run(capsys, "matrix", "--input", MINI)
        assert code == EXIT_OK
        assert out == (
            "A,B,C,D\n"
            "A,0,0,0,3\n"
            "B,3,0,0,3\n"
            "C,3,3,0,0\n"
            "D,0,0,3,0\n"
        )

    def test_sort_teams(self, capsys, tmp_path):
        f = tmp_path / "rev.csv"
        f.write_text("home,away,outcome\nZeta,Alpha,H\n")
        _, unsorted_out, _ = run(capsys, "matrix", "--input", str(f))
        assert unsorted_out.splitlines()[0] == "Zeta,Alpha"
        _, sorted_out, _ = run(capsys, "matrix", "--input", str(f), "--sort-teams")
        assert sorted_out.splitlines()[0] == "Alpha,Zeta"

    def test_repeated_fixture_accumulates(self, capsys, tmp_path):
        f = tmp_path / "two.csv"
        f.write_text("home,away,outcome\nX,Y,H\nY,X,A\n")
        _, out, _ = run(capsys, "matrix", "--input", str(f))
        assert out == "X,Y\nX,0,0\nY,6,0\n"

    def test_no_matches_gives_header_only(self, capsys, tmp_path):
        f = tmp_path / "none.csv"
        f.write_text("home,away,outcome\n")
        code, out, _ = run(capsys, "matrix", "--input", str(f))
        assert code == EXIT_OK
        assert out == "\n"

    def test_round_trip_through_rank(self, capsys, tmp_path):
        _, matrix_out, _ = run(capsys, "matrix", "--input", MINI)
        saved = tmp_path / "m.csv"
        saved.write_text(matrix_out)
        _, from_matrix, _ = run(
            capsys,
            "rank", "--input", str(saved), "--input-kind", "matrix", "--format", "json",
        )
        _, from_matches, _ = run(
            capsys,
            "rank", "--input", MINI, "--input-kind", "matches", "--format", "json",
        )
        assert from_matrix == from_matches


class TestCompareCommand:
    def test_identical_tables(self, capsys, tmp_path):
        _, table, _ = run(capsys, "points", "--input", MINI, "--format", "csv")
        f = tmp_path / "t.csv"
        f.write_text(table)
        code, out, _ = run(capsys, "compare", str(f), str(f))
        assert code == EXIT_OK
        assert "kendall tau-b: 1.000" in out

    def test_official_against_authority(self, capsys, tmp_path):
        _, authority_csv, _ = run(
            capsys,
            "rank", "--input", LEAGUE, "--input-kind", "matrix",
            "--which", "authority", "--format", "csv",
        )
        f = tmp_path / "authority.csv"
        f.write_text(authority_csv)
        code, out, _ = run(capsys, "compare", OFFICIAL, str(f))
        assert code == EXIT_OK
        lines = out.splitlines()
        by_team = {}
        for line in lines[1:]:
            parts = line.split()
            if not parts or parts[0].startswith("kendall"):
                continue
            by_team[" ".join(parts[:-3])] = parts[-1]
        assert by_team["Manchester United"] == "+2"
        assert by_team["Arsenal"] == "0"
        assert by_team["Manchester City"] == "-2"

    def test_compare_json(self, capsys, tmp_path):
        _, table, _ = run(capsys, "points", "--input", MINI, "--format", "csv")
        f = tmp_path / "t.csv"
        f.write_text(table)
        code, out, _ = run(capsys, "compare", str(f), str(f), "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["kendall_tau_b"] == pytest.approx(1.0)
        assert all(row["displacement"] == 0 for row in doc["rows"])

    def test_team_set_mismatch(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        a.write_text("rank,team,score\n1,A,2\n2,B,1\n")
        b.write_text("rank,team,score\n1,A,2\n2,C,1\n")
        code, out, err = run(capsys, "compare", str(a), str(b))
        assert code == EXIT_USAGE
        assert out == ""
        assert "team sets differ" in err

    def test_malformed_table_names_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("rank,team,score\n1,A,1\n2,B,9\n3,C,2\n")
        good = tmp_path / "good.csv"
        good.write_text("rank,team,score\n1,A,2\n2,B,1\n3,C,0\n")
        code, out, err = run(capsys, "compare", str(bad), str(good))
        assert code == EXIT_PARSE
        assert str(bad) in err


class TestEntryPoints:
    def test_module_invocation_matches_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hitsrank", "points", "--input", MINI,
             "--format", "csv"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == EXIT_OK
        assert proc.stdout == "rank,team,score\n1,A,6\n1,D,6\n3,B,3\n3,C,3\n"
