import json

import pytest

import markov_cli


def run(capsys, *argv):
    code = markov_cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_index_3_5(capsys):
    code, out, _ = run(capsys, "index", "3/5")
    assert code == 0
    data = json.loads(out)
    assert data["command"] == "index"
    assert data["inputs"] == {"index": "3/5"}
    result = data["result"]
    assert result["markov"] == "433"
    assert result["cf"] == [2, 2, 2, 1, 1, 2, 2, 2]
    assert result["gcd"] == 1
    assert result["replaceable_count"] == 7


def test_index_big_value_is_a_string(capsys):
    code, out, _ = run(capsys, "index", "16/23")
    assert code == 0
    markov = json.loads(out)["result"]["markov"]
    assert markov == "426776599819081"
    assert int(markov) == 426776599819081


@pytest.mark.parametrize("argv", [
    ["index", "5/3"],
    ["index", "three/five"],
    ["snake", "3/5", "--format", "png"],
    ["tree", "--kind", "stern"],
    ["verify", "everything"],
    [],
])
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "index", "4/7")
    _, second, _ = run(capsys, "index", "4/7")
    assert first == second
    assert list(json.loads(first)) == ["command", "inputs", "result"]


def test_snake_json(capsys):
    code, out, _ = run(capsys, "snake", "3/5", "--format", "json")
    assert code == 0
    result = json.loads(out)["result"]
    assert len(result["tiles"]) == 13
    assert sum(t["shaded"] for t in result["tiles"]) == 6


def test_snake_ascii(capsys):
    code, out, _ = run(capsys, "snake", "1/2")
    assert code == 0
    assert out.splitlines()[-1].endswith("#o#")


def test_snake_svg_to_file(capsys, tmp_path):
    path = tmp_path / "snake.svg"
    code, out, _ = run(capsys, "--out", str(path), "snake", "3/5", "--format", "svg")
    assert code == 0
    assert out == ""
    svg = path.read_text()
    assert svg.count('<rect class="tile shaded"') == 6
    run(capsys, "--out", str(path), "snake", "3/5", "--format", "svg")
    assert path.read_text() == svg


def test_tree_markov(capsys):
    code, out, _ = run(capsys, "tree", "--kind", "markov", "--depth", "1")
    assert code == 0
    root = json.loads(out)["result"]
    assert root["triple"] == ["1", "5", "2"]
    assert root["left"]["triple"] == ["1", "13", "5"]
    assert root["right"]["triple"] == ["5", "29", "2"]
    assert "left" not in root["left"]


def test_tree_farey(capsys):
    code, out, _ = run(capsys, "tree", "--kind", "farey", "--depth", "1")
    assert code == 0
    root = json.loads(out)["result"]
    assert root["left"]["triple"] == ["0/1", "1/3", "1/2"]
    assert root["right"]["triple"] == ["1/2", "2/3", "1/1"]


def test_tree_root_only(capsys):
    _, out, _ = run(capsys, "tree", "--depth", "0")
    assert json.loads(out)["result"] == {"path": "", "triple": ["1", "5", "2"]}


def test_tree_depth_over_configured_max(capsys, tmp_path):
    code, _, _ = run(capsys, "tree", "--depth", "13")
    assert code == 2
    config = tmp_path / "small.yaml"
    config.write_text("tree:\n  max_depth: 1\n")
    code, _, _ = run(capsys, "--config", str(config), "tree", "--depth", "2")
    assert code == 2


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--trials", "200", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["inputs"] == {"check": "identities", "seed": 7, "trials": 200}
    assert data["result"]["passed"] is True
    assert [r["name"] for r in data["result"]["reports"]] == [
        "basic_identities", "replacement_difference", "replacement_telescoping",
        "replacement_positivity", "mixed_replacements",
    ]


def test_verify_ordering_with_csv(capsys, tmp_path):
    csv_path = tmp_path / "ordering.csv"
    code, out, _ = run(capsys, "verify", "ordering", "--max-q", "23", "--jobs", "1", "--csv", str(csv_path))
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "p,q,markov"
    assert "16,23,426776599819081" in lines
    assert "15,23,187611224490881" in lines


def test_verify_ordering_decomposed_noncoprime(capsys):
    code, out, _ = run(capsys, "verify", "ordering", "--max-q", "10", "--jobs", "1",
                       "--include-noncoprime", "--decompose")
    assert code == 0
    report = json.loads(out)["result"]["reports"][0]
    assert report["metadata"]["include_noncoprime"] is True


def test_verify_conjectures(capsys):
    code, out, _ = run(capsys, "verify", "conjectures", "--max-q", "12", "--max-i", "5", "--jobs", "1")
    assert code == 0
    assert json.loads(out)["inputs"] == {"check": "conjectures", "max_q": 12, "max_i": 5}


def test_verify_matchings(capsys):
    code, out, _ = run(capsys, "verify", "matchings", "--max-sum", "12")
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True


def test_verify_matchings_over_limit(capsys):
    code, _, _ = run(capsys, "verify", "matchings", "--max-sum", "12", "--tile-limit", "10")
    assert code == 2


def test_counterexample_exits_one(capsys, monkeypatch):
    def failing(*args, **kwargs):
        report = markov_cli.verify.CheckReport("matchings")
        report.check("matchings_equal_numerator", {"index": "1/2"}, 4, 5)
        return report

    monkeypatch.setattr(markov_cli.verify, "cross_check_matchings", failing)
    code, out, _ = run(capsys, "verify", "matchings")
    assert code == 1
    failures = json.loads(out)["result"]["reports"][0]["failures"]
    assert failures == [{"identity": "matchings_equal_numerator", "inputs": {"index": "1/2"},
                         "lhs": "4", "relation": "==", "rhs": "5"}]


def test_unwritable_csv_is_a_usage_error(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "ordering", "--max-q", "5", "--jobs", "1",
                       "--csv", str(tmp_path / "missing" / "table.csv"))
    assert code == 2
    assert out == ""


def test_malformed_config_is_a_usage_error(capsys, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("tree: [1,\n")
    code, out, _ = run(capsys, "--config", str(config), "index", "3/5")
    assert code == 2
    assert out == ""


def test_mistyped_config_value_is_a_usage_error(capsys, tmp_path):
    config = tmp_path / "typed.yaml"
    config.write_text("tree:\n  max_depth: deep\n")
    code, _, _ = run(capsys, "--config", str(config), "tree", "--depth", "1")
    assert code == 2


@pytest.mark.parametrize("check", ["identities", "matchings"])
def test_csv_rejected_outside_sweeps(capsys, tmp_path, check):
    csv_path = tmp_path / "table.csv"
    code, out, _ = run(capsys, "verify", check, "--trials", "5", "--max-sum", "5", "--csv", str(csv_path))
    assert code == 2
    assert out == ""
    assert not csv_path.exists()
