import json
import subprocess
import sys

import pytest

from dot_parser import parse_dot
from structctl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_golden_synthesis(capsys):
    code, out, _ = run(capsys, "synthesize", "ieee14", "--roots", "8,10",
                       "--subgraphs", "ieee14_paper.subgraphs")
    assert code == 0
    data = json.loads(out)
    assert data["final_roots"] == [1, 8, 10, 14]
    assert data["verification"]["passed"]


def test_check_single_root_on_ieee14(capsys):
    code, out, _ = run(capsys, "check", "ieee14", "--roots", "8")
    assert code == 0 and json.loads(out)["controllable"] is True


def test_check_negative_exit(capsys):
    code, out, _ = run(capsys, "check", "toy5", "--roots", "5")
    data = json.loads(out)
    assert code == 1 and not data["controllable"] and 1 in data["inaccessible"]


def test_verify_final_roots(capsys):
    code, out, _ = run(capsys, "verify", "ieee14", "--roots", "1,8,10,14")
    assert code == 0 and json.loads(out)["edges_tested"] == 33


def test_verify_negative(capsys):
    code, out, _ = run(capsys, "verify", "toy5", "--roots", "1,5", "--format", "text")
    assert code == 1 and "FAIL" in out and "breaks on (1, 2)" in out


def test_verify_root_edges_flag(capsys):
    code, out, _ = run(capsys, "verify", "ieee14", "--roots", "1,8,10,14", "--include-root-edges")
    assert json.loads(out)["edges_tested"] == 40


def test_verify_max_k(capsys):
    _, out, _ = run(capsys, "verify", "ieee14", "--roots", "1,8,10,14", "--max-k", "3")
    assert json.loads(out)["edge_controllability_index"] == "2"


def test_critical_and_inputs(capsys):
    code, out, _ = run(capsys, "critical", "toy5", "--roots", "1,5")
    assert code == 0
    assert [c["edge"] for c in json.loads(out)["critical_edges"]] == [[1, 2], [3, 4], [5, 3]]
    code, out, _ = run(capsys, "inputs", "toy5")
    assert code == 0 and json.loads(out)["roots"] == [1, 5]


def test_critical_on_uncontrollable_pair(capsys):
    code, _, err = run(capsys, "critical", "toy5", "--roots", "5")
    assert code == 1 and "not controllable" in err


def test_export_with_report(capsys, tmp_path):
    report = tmp_path / "report.json"
    dot = tmp_path / "out.dot"
    _, out, _ = run(capsys, "synthesize", "ieee14", "--roots", "8,10", "--subgraphs", "ieee14_paper")
    report.write_text(out)
    code, _, _ = run(capsys, "export", "ieee14", "--dot", str(dot), "--report", str(report))
    assert code == 0
    g = parse_dot(dot.read_text())
    assert sorted(int(n) for n, a in g.nodes.items() if a.get("root") == "true") == [1, 8, 10, 14]
    assert sum(a.get("critical") == "true" for _, _, a in g.edges) == 10


def test_export_to_stdout(capsys):
    code, out, _ = run(capsys, "export", "toy5", "--roots", "1,5")
    assert code == 0 and len(parse_dot(out).edges) == 6


def test_figures_written(capsys, tmp_path):
    fig = tmp_path / "g.png"
    code, _, _ = run(capsys, "synthesize", "ieee14", "--roots", "8,10",
                     "--subgraphs", "ieee14_paper", "--figure", str(fig))
    assert code == 0 and fig.stat().st_size > 0
    fig2 = tmp_path / "c.pdf"
    run(capsys, "critical", "toy5", "--roots", "1,5", "--figure", str(fig2))
    assert fig2.read_bytes().startswith(b"%PDF")


def test_timings_only_on_request(capsys):
    _, out, _ = run(capsys, "synthesize", "toy5", "--timings")
    assert "timings" in json.loads(out)


@pytest.mark.parametrize("argv", [
    ["check", "ieee14", "--roots", "x"],
    ["check", "ieee14", "--roots", "99"],
    ["check", "nosuchfile", "--roots", "1"],
    ["synthesize", "ieee14", "--roots", "8,10", "--subgraphs", "nosuch"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.topo"
    bad.write_text("3\ndirected\n1 7\n")
    code, _, err = run(capsys, "check", str(bad), "--roots", "1")
    assert code == 2 and ":3:" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "ieee14"])
    assert exc.value.code == 2


def test_outputs_deterministic(capsys):
    argv = ["synthesize", "toy5", "--seed", "3"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "structctl", "check", "ieee14", "--roots", "8",
                           "--format", "text"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "structurally controllable" in proc.stdout
