import pytest
from cbcore.graph import format_graph, read_graph
from dalkit.cli import ExitCode, main
from dalkit.documents import parse_coloring_document, parse_label_map
from dalkit.generators import cycle_graph, diamond_cycle, hairy_cycle, heawood_graph, path_graph


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("DALKIT_CONFIG", str(tmp_path / "no-dalkitrc"))
    monkeypatch.delenv("DALKIT_NODE_BUDGET", raising=False)


def _graph_file(tmp_path, graph, name="g.txt"):
    path = tmp_path / name
    path.write_text(format_graph(graph))
    return str(path)


def test_dal_finite(tmp_path, capsys):
    assert main(["dal", _graph_file(tmp_path, cycle_graph(4))]) == ExitCode.SUCCESS
    out = capsys.readouterr().out
    assert out.startswith("outcome: finite\nk: 2\n")


def test_dal_infinite(tmp_path, capsys):
    assert main(["dal", _graph_file(tmp_path, cycle_graph(5))]) == ExitCode.INFINITE
    assert "certificate: odd-cycle-component 0,1,2,3,4" in capsys.readouterr().out


def test_dal_up_to_k_max(tmp_path, capsys):
    assert main(["dal", _graph_file(tmp_path, cycle_graph(4)), "--k-max", "1"]) == ExitCode.NEGATIVE
    assert capsys.readouterr().out == "outcome: no-coloring-up-to\nk_max: 1\n"


def test_dal_pretty(tmp_path, capsys):
    assert main(["dal", _graph_file(tmp_path, cycle_graph(8)), "--pretty"]) == ExitCode.SUCCESS
    assert capsys.readouterr().out.startswith("dal = 2\n")


def test_malformed_graph(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n1 1\n")
    assert main(["dal", str(path)]) == ExitCode.ERROR
    assert "line 3" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["dal", str(tmp_path / "absent.txt")]) == ExitCode.ERROR


def test_verify(tmp_path, capsys):
    graph = _graph_file(tmp_path, path_graph(2))
    coloring = tmp_path / "k2.col"
    coloring.write_text("k: 1\nproper: false\nedges:\n0 1 1\n")
    assert main(["verify", graph, str(coloring)]) == ExitCode.NEGATIVE
    assert capsys.readouterr().out == "proper: false\nviolation: 0 1 (1)\n"


def test_verify_detects_a_stale_flag(tmp_path):
    graph = _graph_file(tmp_path, path_graph(2))
    coloring = tmp_path / "k2.col"
    coloring.write_text("k: 1\nproper: true\nedges:\n0 1 1\n")
    assert main(["verify", graph, str(coloring)]) == ExitCode.ERROR


def test_color_tree_then_verify(tmp_path, capsys):
    graph = _graph_file(tmp_path, path_graph(5))
    out = str(tmp_path / "p5.col")
    assert main(["color", graph, "--method", "tree", "-o", out]) == ExitCode.SUCCESS
    with open(out) as f:
        document = parse_coloring_document(f.read())
    assert document.method == "tree"
    assert document.proper
    assert main(["verify", graph, out]) == ExitCode.SUCCESS
    assert capsys.readouterr().out == "proper: true\n"


def test_color_cubic_certificate(tmp_path, capsys):
    assert main(["color", _graph_file(tmp_path, diamond_cycle(1)), "--method", "cubic"]) == ExitCode.INFINITE
    out = capsys.readouterr().out
    assert out.startswith("proper: false\nmethod: cubic\n")
    assert "refusal: certificate odd-cycle-of-diamonds-component 0,1,2,3 1" in out


def test_color_cubic(tmp_path, capsys):
    assert main(["color", _graph_file(tmp_path, diamond_cycle(2)), "--method", "cubic"]) == ExitCode.SUCCESS
    assert "proper: true" in capsys.readouterr().out


def test_color_cactus_hypothesis(tmp_path, capsys):
    graph = _graph_file(tmp_path, hairy_cycle(3, [1, 1, 1]))
    assert main(["color", graph, "--method", "cactus", "--colors", "2"]) == ExitCode.ERROR
    assert "refusal: hypothesis no-3-uniform-odd-cycle" in capsys.readouterr().out
    assert main(["color", graph, "--method", "cactus"]) == ExitCode.SUCCESS


def test_color_bipartite2_not_found(tmp_path, capsys):
    assert main(["color", _graph_file(tmp_path, heawood_graph()), "--method", "bipartite2"]) == ExitCode.NEGATIVE
    assert "refusal: hypothesis not-found" in capsys.readouterr().out


def test_color_exact(tmp_path, capsys):
    assert main(["color", _graph_file(tmp_path, cycle_graph(6)), "--method", "exact"]) == ExitCode.SUCCESS
    assert capsys.readouterr().out.startswith("k: 3\nmethod: exact\nproper: true\n")


def test_reduce_and_decode(tmp_path, capsys):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n")
    graph, labels, coloring = (str(tmp_path / name) for name in ("g.txt", "g.labels", "g.col"))
    code = main(["reduce-cnf", str(cnf), "-o", graph, "--labels", labels, "--assignment", "1 -2 3",
                 "--coloring-out", coloring, "--check"])
    assert code == ExitCode.SUCCESS
    assert capsys.readouterr().out.startswith("satisfiable: true\nassignment: ")
    assert read_graph(graph).vertex_count == 3 * 74 + 16
    assert "C1.t1" in parse_label_map((tmp_path / "g.labels").read_text())

    assert main(["decode", str(cnf), graph, labels, coloring]) == ExitCode.SUCCESS
    assert capsys.readouterr().out == "assignment: 1 -2 3\n"


def test_reduce_with_unsatisfying_assignment(tmp_path):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n")
    code = main(["reduce-cnf", str(cnf), "-o", str(tmp_path / "g.txt"), "--assignment=-1 -2 -3",
                 "--coloring-out", str(tmp_path / "g.col")])
    assert code == ExitCode.NEGATIVE
    assert parse_coloring_document((tmp_path / "g.col").read_text()).color_count == 3


def test_reduce_unsatisfiable_formula(tmp_path, capsys):
    cnf = tmp_path / "phi.cnf"
    clauses = [" ".join(str(s * v) for s, v in zip(signs, (1, 2, 3))) + " 0"
               for signs in [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]]
    cnf.write_text("p cnf 3 8\n" + "\n".join(clauses) + "\n")
    assert main(["reduce-cnf", str(cnf), "-o", str(tmp_path / "g.txt"), "--check"]) == ExitCode.NEGATIVE
    assert capsys.readouterr().out == "satisfiable: false\n"


def test_check_builtin_config(capsys):
    assert main(["check-config", "--builtin", "2-diamonds"]) == ExitCode.SUCCESS
    assert capsys.readouterr().out == "2-diamonds: reducible (18 potential pairs, 0 failures)\n"


@pytest.mark.slow
def test_check_sparse_is_negative(capsys):
    assert main(["check-config", "--builtin", "sparse"]) == ExitCode.NEGATIVE
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "sparse: NOT reducible (324 potential pairs, 324 failures)"


def test_check_config_needs_a_source():
    assert main(["check-config"]) == ExitCode.ERROR


def test_bad_settings_are_an_error(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("DALKIT_NODE_BUDGET", "lots")
    assert main(["dal", _graph_file(tmp_path, cycle_graph(4))]) == ExitCode.ERROR
    assert "DALKIT_NODE_BUDGET" in capsys.readouterr().err


def test_hypergraph_command(tmp_path, capsys):
    fano = tmp_path / "fano.hg"
    fano.write_text("7 3 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n")
    incidence = str(tmp_path / "heawood.txt")
    assert main(["hypergraph", str(fano), "--incidence-out", incidence]) == ExitCode.NEGATIVE
    assert capsys.readouterr().out == "2-colorable: false\n"
    assert read_graph(incidence).is_regular(3)

    edge = tmp_path / "edge.hg"
    edge.write_text("3 3 1\n0 1 2\n")
    coloring = str(tmp_path / "star.col")
    assert main(["hypergraph", str(edge), "--coloring-out", coloring]) == ExitCode.SUCCESS
    assert capsys.readouterr().out == "2-colorable: true\ncolors: 1 1 2\n"
    with open(coloring) as f:
        assert parse_coloring_document(f.read()).proper


@pytest.mark.parametrize("argv", [[], ["color", "g.txt"], ["color", "g.txt", "--method", "greedy"],
                                  ["gen", "moebius"]])
def test_usage_errors_exit_with_error_code(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == ExitCode.ERROR


def test_bad_settings_file(tmp_path, monkeypatch, capsys):
    rc = tmp_path / "dalkitrc"
    rc.write_text("[solver]\njobs = many\n")
    monkeypatch.setenv("DALKIT_CONFIG", str(rc))
    assert main(["dal", _graph_file(tmp_path, cycle_graph(4))]) == ExitCode.ERROR
    assert "jobs" in capsys.readouterr().err


def test_gen(tmp_path):
    out = str(tmp_path / "c6.txt")
    assert main(["gen", "cycle", "6", "-o", out]) == ExitCode.SUCCESS
    assert read_graph(out) == cycle_graph(6)


def test_gen_is_reproducible(tmp_path, capsys):
    assert main(["gen", "tree", "20", "--seed", "3"]) == ExitCode.SUCCESS
    first = capsys.readouterr().out
    assert main(["gen", "tree", "20", "--seed", "3"]) == ExitCode.SUCCESS
    assert capsys.readouterr().out == first
    assert first.startswith("# tree 20 seed=3\n20 19\n")


def test_gen_gadget_labels(tmp_path):
    graph, labels = str(tmp_path / "v.txt"), str(tmp_path / "v.labels")
    assert main(["gen", "variable-gadget", "1", "-o", graph, "--labels", labels]) == ExitCode.SUCCESS
    names = parse_label_map((tmp_path / "v.labels").read_text())
    assert read_graph(graph).degree(names["v1"]) == 3
    assert main(["gen", "cycle", "5", "--labels", labels]) == ExitCode.ERROR


def test_gen_bad_parameters():
    assert main(["gen", "cycle"]) == ExitCode.ERROR
    assert main(["gen", "cycle", "x"]) == ExitCode.ERROR
    assert main(["gen", "heawood", "3"]) == ExitCode.ERROR


def test_gen_hairy_cycle(capsys):
    assert main(["gen", "hairy-cycle", "1", "0", "2"]) == ExitCode.SUCCESS
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "6 6"
