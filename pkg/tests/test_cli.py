import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from votelab.cli import main

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_process(*argv, env=None):
    full_env = dict(os.environ, **(env or {}))
    proc = subprocess.run(
        [sys.executable, "-m", "votelab", *argv], capture_output=True, text=True, env=full_env
    )
    return proc.returncode, proc.stdout, proc.stderr


def fixture(name):
    return str(CORPUS / f"{name}.ballots")


def test_tally_plurality():
    assert run("tally", fixture("ex21-drinks"), "--rule", "plurality") == (0, "milk\n")


def test_tally_lpr_trace():
    code, out = run("tally", fixture("ex21-drinks"), "--rule", "lpr", "--trace")
    assert code == 0
    assert out.splitlines()[0] == "wine"
    assert "beer=6" in out


def test_tally_empty_winner_exit():
    assert run("tally", fixture("thm31-paradox"), "--rule", "condorcet-amend") == (2, "NO WINNER\n")


def test_tally_agenda_and_dictator():
    assert run("tally", fixture("claim24-seqpairs"), "--rule", "seq-pairs", "--agenda", "b,c,a") == (0, "a b\n")
    assert run("tally", fixture("claim25-dictator"), "--rule", "dictator", "--dictator", "3") == (0, "c\n")


def test_tally_json():
    code, out = run("tally", fixture("thm31-paradox"), "--rule", "condorcet", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["winners"] == ["d"]
    assert doc["sd_tainted"] == ["d"]
    assert doc["rounds"]


@pytest.mark.parametrize(
    "argv",
    [
        ["tally", fixture("claim24-seqpairs"), "--rule", "seq-pairs"],
        ["tally", fixture("claim25-dictator"), "--rule", "dictator"],
        ["tally", fixture("claim25-dictator"), "--rule", "dictator", "--dictator", "9"],
        ["tally", fixture("claim24-seqpairs"), "--rule", "seq-pairs", "--agenda", "a,b"],
        ["tally", "missing.ballots", "--rule", "borda"],
        ["tally", fixture("ex21-drinks"), "--rule", "approval"],
        ["check", "--rule", "lpr", "--criterion", "non-sd", "--alts", "2", "--voters", "2"],
        ["check", "--rule", "lpr", "--criterion", "aaw", "--alts", "6", "--voters", "6"],
        ["sd", fixture("ex21-drinks"), "--winners", "gin"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    code, out = run(*argv)
    assert code == 1
    assert out == ""
    assert capsys.readouterr().err


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.ballots"
    bad.write_text("alternatives: a b\n1: a > q\n")
    assert run("tally", str(bad), "--rule", "borda")[0] == 1
    assert ":2:8: unknown-alternative:" in capsys.readouterr().err


def test_sd():
    assert run("sd", fixture("ex21-drinks")) == (0, "milk\n")
    assert run("sd", fixture("ex21-drinks"), "--winners", "wine") == (0, "")
    assert run("sd", fixture("claim24-seqpairs"), "--winners", "a,b") == (0, "a\n")


def test_check_pass_and_violation():
    assert run("check", "--rule", "lpr", "--criterion", "non-sd", "--alts", "3", "--voters", "4") == (
        0,
        "PASS (bounds: m=3, n<=4, profiles=1554)\n",
    )
    code, out = run("check", "--rule", "borda", "--criterion", "non-sd", "--alts", "3", "--voters", "4")
    assert code == 3
    assert out.startswith("VIOLATED (bounds: m=3, n<=4, profiles=")
    assert "witness: m3n2#5" in out


def test_check_seed_and_json():
    code, out = run(
        "check", "--rule", "lpr", "--criterion", "mono", "--alts", "3", "--voters", "5", "--min-voters", "5",
        "--seed", fixture("prop29-mono-before"), "--json",
    )
    doc = json.loads(out)
    assert code == 3
    assert doc["status"] == "violated"
    assert doc["witness"]["source"].endswith("prop29-mono-before.ballots")
    assert doc["witness"]["other_winners"] == ["b"]


def test_search_runs_all_rules():
    code, out = run("search", "--criterion", "aaw", "--alts", "3", "--voters", "3")
    lines = out.splitlines()
    assert code == 3
    assert len(lines) == 11
    assert lines[5].startswith("condorcet") and "no via" in lines[5]
    assert lines[6].split() == ["lpr", "yes"]


def test_corpus_command(tmp_path):
    code, out = run("corpus", "--export", str(tmp_path))
    assert code == 0
    assert "17/17 fixtures pass" in out
    assert len(list(tmp_path.glob("*.ballots"))) == 17
    doc = json.loads(run("corpus", "--json")[1])
    assert doc["ok"] and len(doc["discrepancies"]) == 1


def test_table_json():
    code, out = run("table", "--alts", "3", "--voters", "2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["bounds"] == {"m": 3, "n_min": 1, "n_max": 2}
    assert any(d["rule"] == "lpr" and d["criterion"] == "mono" for d in doc["paper_diff"])


def test_module_entry_point_and_bad_thread_env():
    assert run_process("tally", fixture("ex21-drinks"), "--rule", "lpr")[:2] == (0, "wine\n")
    code, _, err = run_process(
        "check", "--rule", "lu", "--criterion", "aaw", "--alts", "3", "--voters", "2", env={"VOTELAB_THREADS": "0"}
    )
    assert code == 1 and "VOTELAB_THREADS" in err


def test_check_output_same_for_any_thread_count():
    argv = ["check", "--rule", "lpr", "--criterion", "iia", "--alts", "3", "--voters", "5"]
    one = run_process(*argv, env={"VOTELAB_THREADS": "1"})
    eight = run_process(*argv, env={"VOTELAB_THREADS": "8"})
    assert one == eight
    assert one[0] == 3
