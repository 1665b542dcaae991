"""Command-line interface: subcommands, output shapes, exit codes."""

import pytest

import besmin as bm
from besmin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_fixture(capsys):
    code, out, _ = run(capsys, "check", "--fixture", "paper-application")
    assert code == 0
    assert "equations: 9" in out
    assert "size: 26" in out
    assert "alternation hierarchy: 2" in out
    assert "closed: yes" in out


def test_check_empty_file(tmp_path, capsys):
    path = tmp_path / "empty.bes"
    path.write_text("")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0
    assert "empty system" in out


def test_check_parse_error_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.bes"
    path.write_text("mu X = ;")
    code, _, err = run(capsys, "check", str(path))
    assert code == 1
    assert "error:" in err


def test_check_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/input.bes")
    assert code == 1
    assert err


def test_no_input_exit_1(capsys):
    code, _, err = run(capsys, "check")
    assert code == 1
    assert "no input" in err


def test_solve_fixture_both_methods(capsys):
    for method in ("oracle", "gauss"):
        code, out, _ = run(
            capsys, "solve", "--fixture", "paper-application", "--method", method
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 9
        assert all(line.endswith("= true") for line in lines)


def test_solve_order_sensitivity(tmp_path, capsys):
    a = tmp_path / "a.bes"
    a.write_text("mu X = Y; nu Y = X;")
    b = tmp_path / "b.bes"
    b.write_text("nu Y = X; mu X = Y;")
    code, out, _ = run(capsys, "solve", str(a))
    assert code == 0 and out == "X = false\nY = false\n"
    code, out, _ = run(capsys, "solve", str(b))
    assert code == 0 and out == "Y = true\nX = true\n"


def test_solve_open_system_exit_2(tmp_path, capsys):
    path = tmp_path / "open.bes"
    path.write_text("mu X = Y;")
    code, _, err = run(capsys, "solve", str(path))
    assert code == 2
    assert "open" in err


def test_graph_sgraph_output(capsys):
    code, out, _ = run(capsys, "graph", "--fixture", "example-structure-graph")
    assert code == 0
    graph = bm.parse_graph(out)
    assert len(graph.nodes) == 5
    assert len(graph.edges) == 9


def test_graph_dot_output(capsys):
    code, out, _ = run(
        capsys, "graph", "--fixture", "mutex", "--out", "dot"
    )
    assert code == 0
    assert out.startswith("digraph sgraph {")


def test_graph_normalise(capsys):
    code, out, _ = run(
        capsys, "graph", "--fixture", "example-structure-graph", "--normalise"
    )
    assert code == 0
    graph = bm.parse_graph(out)
    assert all(d.ranks for d in graph.deco.values())
    conj = next(u for u in graph.deco if graph.label(u) == "X && Y")
    assert graph.deco[conj].ranks == frozenset({2})


def test_graph_formula_flag(capsys):
    code, out, _ = run(
        capsys,
        "graph",
        "--fixture",
        "example-structure-graph",
        "--formula",
        "Z || W",
    )
    assert code == 0
    graph = bm.parse_graph(out)
    assert graph.label(graph.init) == "Z || W"


def test_graph_srf_flag_on_non_srf_exit_2(capsys):
    code, _, err = run(
        capsys, "graph", "--fixture", "example-structure-graph", "--srf"
    )
    assert code == 2
    assert "standard recursive form" in err


def test_minimize_graph(capsys):
    code, out, _ = run(
        capsys, "minimize", "--fixture", "paper-application", "--emit", "graph"
    )
    assert code == 0
    assert len(bm.parse_graph(out).nodes) == 7


def test_minimize_bes_with_legend(capsys):
    code, out, _ = run(
        capsys, "minimize", "--fixture", "paper-application", "--emit", "bes"
    )
    assert code == 0
    bes_text, _, legend = out.partition("---\n")
    es = bm.parse_bes(bes_text)
    assert len(es.equations) == 5
    assert bm.size(es) == 14
    assert "equations: 5" in legend
    assert sum("<=" in line for line in legend.splitlines()) == 5


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "paper-application")
    assert code == 0
    assert "PASS: 9 variables verified" in out
    for name in ("mutex", "example-structure-graph"):
        code, out, _ = run(capsys, "verify", "--fixture", name)
        assert code == 0
        assert out.startswith("PASS")


def test_verify_empty_system_exit_2(tmp_path, capsys):
    path = tmp_path / "empty.bes"
    path.write_text("")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2


def test_deterministic_output(capsys):
    first = run(capsys, "graph", "--fixture", "mutex")
    second = run(capsys, "graph", "--fixture", "mutex")
    assert first == second


def test_console_script_installed():
    import shutil

    assert shutil.which("besmin") is not None
