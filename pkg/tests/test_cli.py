import json

import pytest

from credalbudget.cli import main
from credalbudget.instances import builtin_instances


@pytest.fixture(scope="module")
def problem_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("problems")
    for name, inst in builtin_instances().items():
        (out / f"{name}.json").write_text(json.dumps(inst.problem))
    return out


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_examples_all_match(capsys):
    code, out, _ = run_cli(capsys, "examples")
    assert code == 0
    assert out.count(": ok") == 4


def test_examples_dump_and_only(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "examples", "--only", "sixacts", "--dump", str(tmp_path))
    assert code == 0
    assert (tmp_path / "sixacts.json").exists()
    assert "sixacts: ok" in out


def test_examples_unknown_name(capsys):
    code, _, err = run_cli(capsys, "examples", "--only", "nope")
    assert code == 1
    assert "instance" in err


def test_examples_mismatch_fails(capsys, monkeypatch):
    import credalbudget.cli as cli_mod

    broken = builtin_instances()
    broken["intro"].expected["maximality"] = ["a1"]
    monkeypatch.setattr(cli_mod, "builtin_instances", lambda: broken)
    code, out, _ = run_cli(capsys, "examples", "--only", "intro")
    assert code == 1
    assert "MISMATCH" in out


def test_bad_experiment_flags_exit_one(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "experiment", "--protocol", "consistency", "--trials", "2",
        "--out-dir", str(tmp_path), "--acts", "4", "--target-dm", "9",
    )
    assert code == 1
    assert "target_dm" in err


def test_solve_table_rendering(capsys, problem_dir):
    code, out, _ = run_cli(
        capsys, "solve", "--problem", str(problem_dir / "sixacts.json"),
        "--k", "2", "--criterion", "maximin",
    )
    assert code == 0
    assert out.strip() == "{a3, a6}  value -0.7"


def test_solve_full_budget_prints_inf(capsys, tmp_path):
    problem = {
        "states": ["w1", "w2"],
        "acts": [
            {"name": "x", "payoffs": [1, 0]},
            {"name": "y", "payoffs": [0, 1]},
            {"name": "z", "payoffs": [1, 1]},
        ],
        "credal": {"vertices": [[0.5, 0.5]]},
    }
    path = tmp_path / "three.json"
    path.write_text(json.dumps(problem))
    code, out, _ = run_cli(capsys, "solve", "--problem", str(path), "--k", "5",
                           "--criterion", "minimax")
    assert code == 0
    assert out.strip() == "{x, y, z}  value -inf"


def test_decide_returns_maximality_when_negative(capsys, problem_dir):
    code, out, _ = run_cli(
        capsys, "decide", "--problem", str(problem_dir / "intro.json"),
        "--k", "4", "--criterion", "minimax",
    )
    assert code == 0
    assert out.strip() == "{a1, a2, a3, a4}"


def test_maximality_formats(capsys, problem_dir):
    code, out, _ = run_cli(capsys, "maximality", "--problem", str(problem_dir / "intro.json"))
    assert (code, out.strip()) == (0, "{a1, a2, a3, a4}")
    code, out, _ = run_cli(
        capsys, "maximality", "--problem", str(problem_dir / "intro.json"), "--format", "json"
    )
    assert code == 0
    assert json.loads(out) == {"maximality": ["a1", "a2", "a3", "a4"]}


def test_oracle_reports_ties(capsys, problem_dir):
    code, out, _ = run_cli(
        capsys, "oracle", "--problem", str(problem_dir / "intro.json"),
        "--k", "3", "--criterion", "minimax",
    )
    assert code == 0
    assert out.strip() == "{a1, a2, a3}  value 1  ties 2"


def test_solve_json_format(capsys, problem_dir):
    code, out, _ = run_cli(
        capsys, "solve", "--problem", str(problem_dir / "sixacts.json"),
        "--k", "3", "--criterion", "maximin", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["subset"] == ["a1", "a3", "a6"]
    assert data["value"] == -1.0
    assert data["tie_count"] == 1


def test_matrix_csv_round_trip(capsys, problem_dir, tmp_path):
    code, out, _ = run_cli(
        capsys, "matrix", "--problem", str(problem_dir / "sixacts.json"), "--format", "csv"
    )
    assert code == 0
    csv_path = tmp_path / "matrix.csv"
    csv_path.write_text(out)
    for criterion in ("minimax", "maximin"):
        for k in (1, 2, 3):
            code, from_csv, _ = run_cli(
                capsys, "solve", "--problem", str(csv_path),
                "--k", str(k), "--criterion", criterion,
            )
            assert code == 0
            code, from_json, _ = run_cli(
                capsys, "solve", "--problem", str(problem_dir / "sixacts.json"),
                "--k", str(k), "--criterion", criterion,
            )
            assert from_csv == from_json


def test_matrix_json_matches_precomputed_input(capsys, problem_dir, tmp_path):
    code, out, _ = run_cli(
        capsys, "matrix", "--problem", str(problem_dir / "intro.json"), "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    path = tmp_path / "pre.json"
    path.write_text(json.dumps({"acts": data["acts"], "matrix": data["matrix"]}))
    code, out, _ = run_cli(capsys, "solve", "--problem", str(path), "--k", "2",
                           "--criterion", "minimax")
    assert code == 0
    assert out.strip() == "{a1, a2}  value 1.4"


def test_graph_output(capsys, problem_dir, tmp_path):
    code, out, _ = run_cli(
        capsys, "graph", "--problem", str(problem_dir / "sixacts.json"), "--alpha", "-1.0"
    )
    assert code == 0
    assert '"a3" -> "a2";' in out
    target = tmp_path / "graph.dot"
    code, out, _ = run_cli(
        capsys, "graph", "--problem", str(problem_dir / "sixacts.json"),
        "--alpha", "-0.7", "--output", str(target),
    )
    assert code == 0
    assert '"a6" -> "a1";' in target.read_text()


def test_seeded_solve(capsys, problem_dir):
    code, out, _ = run_cli(
        capsys, "solve", "--problem", str(problem_dir / "intro.json"),
        "--k", "3", "--criterion", "minimax", "--tie-break", "seeded", "--seed", "1",
    )
    assert code == 0
    assert "value 1" in out


def test_exit_code_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": ["w1"], "acts": []}')
    code, _, err = run_cli(capsys, "maximality", "--problem", str(bad))
    assert code == 1
    assert "acts" in err

    missing = tmp_path / "missing.json"
    code, _, err = run_cli(capsys, "maximality", "--problem", str(missing))
    assert code == 1

    notjson = tmp_path / "notjson.json"
    notjson.write_text("{{{")
    code, _, err = run_cli(capsys, "maximality", "--problem", str(notjson))
    assert code == 1
    assert "JSON" in err


def test_exit_code_infeasible(capsys, tmp_path):
    infeasible = tmp_path / "infeasible.json"
    infeasible.write_text(json.dumps({
        "states": ["w1", "w2"],
        "acts": [{"name": "a1", "payoffs": [1, 2]}],
        "credal": {"constraints": [{"coeffs": [1, 0], "relation": ">=", "rhs": 1.5}]},
    }))
    code, _, err = run_cli(capsys, "maximality", "--problem", str(infeasible))
    assert code == 2
    assert "credal" in err


def test_exit_code_guard(capsys, tmp_path):
    n = 40
    pre = tmp_path / "big.json"
    pre.write_text(json.dumps({"matrix": [[0.0] * n for _ in range(n)]}))
    code, _, err = run_cli(capsys, "oracle", "--problem", str(pre), "--k", "20",
                           "--criterion", "minimax")
    assert code == 3
    assert "guard" in err


def test_bad_k_rejected(capsys, problem_dir):
    code, _, err = run_cli(
        capsys, "solve", "--problem", str(problem_dir / "intro.json"),
        "--k", "0", "--criterion", "minimax",
    )
    assert code == 1
    assert "k" in err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--k", "2"])  # --problem missing
    assert info.value.code == 1


def test_experiment_smoke(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "experiment", "--protocol", "negativity", "--trials", "2",
        "--seed", "3", "--out-dir", str(tmp_path),
        "--acts", "8", "--states", "3", "--vertices", "4",
        "--dm-sizes", "2,3", "--offsets", "0,1",
    )
    assert code == 0
    assert (tmp_path / "negativity_trials.csv").exists()
    assert (tmp_path / "negativity_aggregate.csv").exists()
    assert "maximin_negative_pct" in out

    code, out, _ = run_cli(
        capsys, "experiment", "--protocol", "consistency", "--trials", "2",
        "--seed", "3", "--out-dir", str(tmp_path),
        "--acts", "8", "--states", "3", "--vertices", "4", "--target-dm", "3",
        "--k-min", "2", "--k-max", "3",
    )
    assert code == 0
    assert (tmp_path / "consistency_trials.csv").exists()
    assert "exact_minimax" in out
