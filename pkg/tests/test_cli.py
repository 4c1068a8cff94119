import json

import pytest

from regretlab.cli import EXIT_LIMIT, EXIT_OK, EXIT_USAGE, main
from regretlab.core import dump_game
from regretlab.generators import make_pd


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_travelers_dilemma(capsys):
    code, out, _ = run(
        capsys, "solve", "--gen", "travelers-dilemma", "--p", "2", "--concept", "rm-pure"
    )
    assert code == EXIT_OK
    assert 'fixed point: [["97"], ["97"]]' in out


def test_solve_json_output_is_schema_stable(capsys):
    args = ("solve", "--gen", "staircase", "--n", "3", "--format", "json")
    code, out1, _ = run(capsys, *args)
    assert code == EXIT_OK
    doc = json.loads(out1)
    assert doc["operator"] == "RM"
    assert doc["fixed_point"] == [["a1"], ["a1"]]
    assert [r["space"] for r in doc["rounds"]][0] == [["a1", "a2", "a3"], ["a1", "a2", "a3"]]
    code, out2, _ = run(capsys, *args)
    assert out1 == out2  # byte-identical across runs


def test_solve_from_game_file(tmp_path, capsys):
    path = tmp_path / "pd.json"
    path.write_text(dump_game(make_pd(1, 3, 4)), encoding="utf-8")
    code, out, _ = run(capsys, "solve", "--game", str(path), "--concept", "wd")
    assert code == EXIT_OK
    assert '[["d"], ["d"]]' in out


def test_solve_nash_concept(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "hawk_dove", "--a", "2", "--b", "3", "--c", "4", "--concept", "nash")
    assert code == EXIT_OK
    assert "(h, d)" in out and "(d, h)" in out


def test_compare_table(capsys):
    code, out, _ = run(capsys, "compare", "--gen", "sd_vs_rm")
    assert code == EXIT_OK
    assert "RM" in out and "{b} x {x}" in out
    assert "WD" in out and "SD" in out and "Nash" in out


def test_regret_tables(capsys):
    code, out, _ = run(capsys, "regret", "--gen", "coordination", "--k", "3")
    assert code == EXIT_OK
    assert "player 0: min regret 1" in out
    code, out, _ = run(capsys, "regret", "--gen", "coordination", "--k", "3", "--mixed")
    assert code == EXIT_OK
    assert "3/4" in out


def test_usage_errors_exit_one(capsys):
    code, _, err = run(capsys, "solve", "--gen", "nope")
    assert code == EXIT_USAGE
    assert "error" in err
    code, _, _ = run(capsys, "solve")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "nonsense")
    assert code == EXIT_USAGE


def test_cap_exceeded_exits_two(capsys):
    code, _, err = run(
        capsys,
        "solve", "--gen", "travelers-dilemma", "--p", "2", "--concept", "rm-mixed",
    )
    assert code == EXIT_LIMIT
    assert "cap" in err


def test_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("REGRETLAB_CAP", "1")
    code, _, err = run(capsys, "solve", "--gen", "rps", "--concept", "rm-mixed")
    assert code == EXIT_LIMIT
    monkeypatch.setenv("REGRETLAB_CAP", "8")
    code, out, _ = run(capsys, "solve", "--gen", "rps", "--concept", "rm-mixed")
    assert code == EXIT_OK
    assert "1/3" in out


def test_solve_with_oracle_flag(capsys):
    code, _, _ = run(
        capsys, "solve", "--gen", "bargaining", "--concept", "rm-pure", "--oracle"
    )
    assert code == EXIT_OK


def test_bayes_auction(capsys):
    code, out, _ = run(
        capsys, "bayes", "--auction", "first-price", "--valuations", "2,4;2,4", "--max-bid", "4"
    )
    assert code == EXIT_OK
    assert '"2": ["1"]' in out and '"4": ["2"]' in out


def test_bayes_probe(capsys):
    code, out, _ = run(capsys, "bayes", "--probe-r", "1/2", "--v-max", "30")
    assert code == EXIT_OK
    assert "below golden threshold: True" in out


def test_reproduce_single_claim_and_two_phase(tmp_path, capsys):
    store = tmp_path / "derived.json"
    code, out, _ = run(
        capsys, "reproduce", "--claim", "bertrand-pure", "--store", str(store)
    )
    assert code == EXIT_OK
    assert "[PASS" in out
    code, out, _ = run(
        capsys, "reproduce", "--claim", "rm-oracle", "--check", "--store", str(store)
    )
    assert code != EXIT_OK  # checking before recording fails
    code, out, _ = run(
        capsys, "reproduce", "--claim", "rm-oracle", "--record", "--store", str(store)
    )
    assert code == EXIT_OK and store.exists()
    code, out, _ = run(
        capsys, "reproduce", "--claim", "rm-oracle", "--check", "--store", str(store)
    )
    assert code == EXIT_OK
    assert "[PASS" in out


def test_reproduce_reported_claims_do_not_fail(capsys):
    code, out, _ = run(capsys, "reproduce", "--claim", "td-p50-pure")
    assert code == EXIT_OK
    assert "[REPORTED" in out
