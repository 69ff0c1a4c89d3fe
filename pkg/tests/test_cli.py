import io
import json
import subprocess
import sys

import pytest

from canontree import cli
from canontree.fixtures import load_fixture
from canontree.graph import Graph, parse_graph


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def path4(tmp_path):
    f = tmp_path / "p4.txt"
    f.write_text(Graph.path(4).to_edge_list())
    return str(f)


@pytest.fixture
def example4(tmp_path):
    _, c = load_fixture("example4")
    f = tmp_path / "ex4.txt"
    f.write_text(c.graph.to_edge_list())
    return str(f)


class TestDecompose:
    def test_path(self, path4):
        code, text = run(["decompose", "--input", path4, "--k", "2"])
        assert code == cli.EXIT_OK
        data = json.loads(text)
        assert sorted(n["part"] for n in data["decomposition"]["nodes"]) == [[0, 1], [1, 2], [2, 3]]
        assert len(data["separations"]) == 4

    def test_output_is_byte_identical(self, example4):
        argv = ["decompose", "--input", example4, "--k", "4", "--check", "canonical,bounds,thm31,thm34"]
        first = run(argv)
        assert first == run(argv)
        assert first[0] == cli.EXIT_OK
        checks = json.loads(first[1])["checks"]
        assert all(rep["ok"] for rep in checks.values())

    def test_example4_star(self, example4):
        code, text = run(["decompose", "--input", example4, "--k", "4", "--seps", "tight", "--strategy", "loc"])
        nodes = json.loads(text)["decomposition"]["nodes"]
        assert code == 0 and len(nodes) == 4

    def test_dot_and_text(self, path4):
        code, dot = run(["decompose", "--input", path4, "--k", "2", "--format", "dot"])
        assert code == 0 and dot.startswith("graph decomposition {") and dot.count(" -- ") == 2
        code, text = run(["decompose", "--input", path4, "--k", "2", "--format", "text"])
        assert code == 0 and text.startswith("k=2 strategy=ext profiles=3 |N|=4 parts=3")

    def test_stdin(self, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(Graph.path(3).to_edge_list()))
        code, text = run(["decompose", "--input", "-", "--k", "2"])
        assert code == 0 and len(json.loads(text)["decomposition"]["nodes"]) == 2

    def test_failed_check(self, path4, monkeypatch):
        monkeypatch.setattr(cli, "is_canonical", lambda chosen, autos: False)
        code, _ = run(["decompose", "--input", path4, "--k", "2", "--check", "canonical"])
        assert code == cli.EXIT_CHECK

    def test_infeasible(self, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("3 0\n")
        code, _ = run(["decompose", "--input", str(f), "--k", "2", "--profiles", "all"])
        assert code == cli.EXIT_INFEASIBLE


class TestInputErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["decompose", "--input", "PATH", "--k", "0"],
            ["decompose", "--input", "PATH", "--k", "2", "--check", "bogus"],
            ["decompose", "--input", "/nonexistent/file", "--k", "2"],
            ["decompose", "--input", "PATH", "--k", "9"],
            ["decompose", "--input", "PATH", "--k", "2", "--max-n", "3"],
            ["decompose", "--input", "PATH"],
            ["frobnicate"],
            ["verify", "--max-n", "9"],
        ],
    )
    def test_exit_1(self, argv, path4):
        argv = [path4 if a == "PATH" else a for a in argv]
        code, _ = run(argv)
        assert code == cli.EXIT_INPUT

    def test_malformed_graph(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("3 1\n0 7\n")
        code, _ = run(["decompose", "--input", str(f), "--k", "2"])
        assert code == cli.EXIT_INPUT
        assert "line 2" in capsys.readouterr().err


class TestBlocks:
    def test_example4_centre_flags(self, example4):
        code, text = run(["blocks", "--input", example4, "--k", "4", "--well-separated", "--condition7"])
        rows = {tuple(r["block"]): r for r in json.loads(text)["blocks"]}
        centre = rows[(0, 1, 2, 3, 4, 5)]
        assert code == 0
        assert centre["well_separated"] is False and centre["condition7"] is True
        assert len(centre["witness"]) == 2

    def test_text(self, path4):
        code, text = run(["blocks", "--input", path4, "--k", "2", "--format", "text"])
        assert code == 0 and text.splitlines() == ["[0, 1]", "[1, 2]", "[2, 3]"]


class TestGenerators:
    @pytest.mark.parametrize(
        "argv, n",
        [
            (["gen-cycle-cliques", "--n", "3", "--m", "5"], 12),
            (["gen-path-cliques", "--n", "2"], 11),
            (["gen-example4"], 15),
            (["gen-glued-k5", "--t", "3"], 13),
            (["gen-example3", "--pairs", "2"], 9),
            (["gen-random", "--n", "7", "--seed", "3"], 7),
        ],
    )
    def test_round_trip(self, argv, n):
        code, text = run(argv)
        assert code == 0
        assert parse_graph(text, strict=True).n == n
        assert run(argv)[1] == text

    def test_bad_int_list(self):
        assert run(["gen-example4", "--attach", "3,x"])[0] == cli.EXIT_INPUT


def test_verify_small_suite(capsys):
    code, text = run(["verify", "--suite", "oracles", "--max-n", "4"])
    assert code == 0
    assert json.loads(text)["results"][0]["status"] == "pass"
    assert "criterion 13" in capsys.readouterr().err


def test_module_entry_point(path4):
    proc = subprocess.run(
        [sys.executable, "-m", "canontree", "decompose", "--input", path4, "--k", "2", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("k=2")
