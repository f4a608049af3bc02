import json
import subprocess
import sys

import jsonschema
import pytest

from cgtkit.atlas import atlas_dir
from cgtkit.cli import main
from cgtkit.schemas import load_schema

COMMANDS = [
    ["numth", "phi", "--m", "10", "--q", "2"],
    ["numth", "zsig", "--max-m", "20", "--max-q", "32"],
    ["numth", "lemma-r", "--q", "4", "--d", "2"],
    ["numth", "ppart", "--n", "660", "--p", "11"],
    ["numth", "prime-power", "--q", "81"],
    ["table1", "enumerate", "--line", "3", "--bound", "8"],
    ["group", "order", "--file", "M12"],
    ["group", "stab", "--file", "M12", "--point", "1"],
    ["group", "orbit", "--file", "PSL2:q=11", "--point", "3"],
    ["group", "normalizer", "--file", "S4", "--gen", "(1,2,3)"],
    ["group", "centralizer", "--file", "A5", "--elem", "(1,2,3,4,5)"],
    ["group", "intersect", "--file", "A4", "--gen", "(1,2,3,4)"],
    ["graph", "analyze", "--group", "A4", "--h", "(1,2,3)", "--x", "(1,2)(3,4)"],
    ["graph", "build", "--group", "A4", "--h", "(1,2,3)", "--x", "(1,2)(3,4)", "--r", "3"],
    ["search", "remark", "--h-file", "F21", "--r", "7"],
    ["claims", "run", "PSL2_11_CAYLEY"],
    ["claims", "list"],
    ["atlas", "verify", "M11", "M12"],
]


F21_RECORD = "name F21\ndegree 7\norder 21\ngen (1,2,3,4,5,6,7)\ngen (2,3,5)(4,7,6)\n"
Z5_RECORD = "name Z5\ndegree 5\norder 5\ngen (1,2,3,4,5)\n"


@pytest.fixture(autouse=True)
def records(tmp_path_factory, monkeypatch):
    """Stored records plus two small ones, in a private atlas directory."""
    d = tmp_path_factory.mktemp("atlas")
    for src in atlas_dir().glob("*.grp"):
        (d / src.name).write_text(src.read_text())
    (d / "F21.grp").write_text(F21_RECORD)
    (d / "Z5.grp").write_text(Z5_RECORD)
    monkeypatch.setenv("CGTKIT_ATLAS_DIR", str(d))
    return d


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_text(text: str):
    """Read the indented text report back into nested dicts and lists."""
    lines = [ln for ln in text.splitlines() if ln.strip()]

    def block(i, depth):
        pad = "  " * depth
        if lines[i].startswith(pad + "-"):
            out = []
            while i < len(lines) and lines[i].startswith(pad + "-"):
                rest = lines[i][len(pad) + 1 :]
                if rest:
                    out.append(rest[1:])
                    i += 1
                else:
                    val, i = block(i + 1, depth + 1)
                    out.append(val)
            return out, i
        out = {}
        while i < len(lines) and lines[i].startswith(pad) and not lines[i].startswith(pad + " "):
            body = lines[i][len(pad) :]
            if body.endswith(":") and ": " not in body:
                val, i = block(i + 1, depth + 1)
                out[body[:-1]] = val
            else:
                key, val = body.split(": ", 1)
                out[key] = {"[]": [], "{}": {}}.get(val, val)
                i += 1
        return out, i

    return block(0, 0)[0]


def _normalise(value):
    if isinstance(value, dict):
        return {str(k): _normalise(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalise(v) for v in value]
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_reports_validate_and_match_text(argv, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("envelope"))
    assert data["schema_version"] == 1 and data["command"] == " ".join(argv[:2])
    code, text, _ = run(argv + ["--format", "text"], capsys)
    assert code == 0
    assert _normalise(parse_text(text)) == _normalise(data)


def test_search_result_validates_against_search_schema(capsys):
    code, out, _ = run(COMMANDS[14] + ["--format", "json"], capsys)
    jsonschema.validate(json.loads(out)["result"], load_schema("search"))


def test_claim_report_validates(capsys):
    code, out, _ = run(["claims", "run", "K12_FROM_M12", "--format", "json"], capsys)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["passed"]
    for report in result["claims"]:
        jsonschema.validate(report, load_schema("claim"))
        assert report["passed"]


def test_graph_json_round_trips_through_props(tmp_path, capsys):
    out_file = tmp_path / "g.json"
    code, out, _ = run(["graph", "build", "--group", "A4", "--h", "(1,2,3)", "--x", "(1,2)(3,4)",
                        "--format", "json", "--output", str(out_file)], capsys)
    assert code == 0 and out == ""
    graph = json.loads(out_file.read_text())["result"]["graph"]
    jsonschema.validate(graph, load_schema("graph"))
    gfile = tmp_path / "graph.json"
    gfile.write_text(json.dumps(graph))
    code, out, _ = run(["graph", "props", "--graph-file", str(gfile), "--format", "json"], capsys)
    props = json.loads(out)["result"]["props"]
    assert props["complete"] and props["valency"] == 3


def test_zsig_table_lists_exactly_the_exceptions(capsys):
    code, out, _ = run(["numth", "zsig", "--format", "json"], capsys)
    got = json.loads(out)["result"]["exceptions"]
    assert sorted((e["m"], e["q"]) for e in got) == [(2, 3), (2, 7), (2, 31), (6, 2)]


def test_group_order_of_record_file(records, capsys):
    code, out, _ = run(["group", "order", "--file", str(records / "M12.grp"), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["result"]["order"] == "95040"


def _subprocess(args):
    return subprocess.run([sys.executable, "-m", "cgtkit", *args], capture_output=True, check=False)



def test_reruns_are_byte_identical():
    args = ["search", "remark", "--h-file", "Z5", "--r", "5", "--mode", "randomized",
            "--samples", "40", "--seed", "5", "--format", "json"]
    first, second = _subprocess(args), _subprocess(args)
    assert first.returncode == 0 and first.stdout == second.stdout


@pytest.mark.parametrize("argv", [COMMANDS[14], ["claims", "run", "ALT7_R7"]])
def test_worker_count_does_not_change_output(argv, capsys):
    outs = []
    for workers in ("1", "4"):
        code, out, _ = run(argv + ["--format", "json", "--workers", workers], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_randomized_reports_embed_seed_and_budget(capsys):
    code, out, _ = run(["search", "remark", "--h-file", "Z5", "--r", "5", "--mode", "randomized",
                        "--samples", "0", "--seed", "9", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["seed"] == 9
    assert data["result"]["task"]["seed"] == 9
    assert data["result"]["status"] == "not found (budget 0 samples, seed 9)"


def test_usage_errors_exit_2(capsys):
    assert main(["numth", "phi", "--m", "3"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["numth", "lemma-r", "--q", "4"]) == 2
    assert main(["group", "order", "--file", "NoSuchGroup"]) == 2
    assert "UnknownName" in capsys.readouterr().err
    assert main(["numth", "prime-power", "--q", "12"]) == 2
    assert "InvalidParams" in capsys.readouterr().err


def test_budget_exhaustion_exits_3(capsys):
    code, out, err = run(["group", "normalizer", "--file", "S12", "--gen", "(1,2,3,4,5)(6,7,8)", "--budget", "2",
                          "--format", "json"], capsys)
    assert code == 3
    assert "BudgetExceeded" in err
    assert json.loads(out)["error"]["type"].endswith("BudgetExceeded")


def test_failed_verification_exits_1(tmp_path, monkeypatch, capsys):
    text = (atlas_dir() / "M11.grp").read_text().replace("order 7920", "order 7921")
    (tmp_path / "M11.grp").write_text(text)
    monkeypatch.setenv("CGTKIT_ATLAS_DIR", str(tmp_path))
    code, out, _ = run(["atlas", "verify", "M11", "--format", "json"], capsys)
    assert code == 1


def test_version_flag(capsys):
    assert main(["--version"]) == 0
