import pytest

from modules.cli import EXIT_GUARD, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, Report, run
from modules.graph_parser import format_graph, parse_graph, parse_graph_blocks
from modules.imset import parse_imset
from modules.standard import standard_imset_ug
from modules.triangulate import cg_minimal_triangulations


def body(out, name):
    """Lines of one '# --- name ---' block."""
    lines, inside = [], False
    for line in out.splitlines():
        if line.startswith("# --- "):
            inside = line == f"# --- {name} ---"
            continue
        if inside:
            lines.append(line)
    return "\n".join(lines) + "\n"


def test_report_rendering():
    report = Report().fact("count", 2).block("graph", "vertex a\n")
    assert report.render("text") == "# count: 2\n# --- graph ---\nvertex a\n"
    assert report.render("kv") == "count=2\ngraph=vertex a\n"


def test_standard_imset(cycle_triangle_file, capsys):
    assert run(["standard-imset", "--graph", cycle_triangle_file], environ={}) == EXIT_OK
    out = capsys.readouterr().out
    assert "# variant: cg" in out
    assert "# degree: 4" in out
    u = parse_imset(body(out, "imset"))
    assert u.coefficient(["a", "b", "c", "d", "e"]) == 1


def test_decompose_rejects_chain_graph(cg_file, capsys):
    assert run(["--output", "kv", "decompose", "--graph", cg_file], environ={}) == EXIT_USAGE
    assert "undirected" in capsys.readouterr().err


def test_decompose(cycle_triangle_file, capsys):
    assert run(["--output", "kv", "decompose", "--graph", cycle_triangle_file], environ={}) == EXIT_OK
    out = capsys.readouterr().out
    assert "components={a,b,c,d} {c,d,e}" in out
    assert "separators={c,d}:1" in out


def test_triangulate(cycle_triangle_file, cg_file, capsys):
    assert run(["triangulate", "--graph", cycle_triangle_file, "--count"], environ={}) == EXIT_OK
    assert "# count: 2" in capsys.readouterr().out
    assert run(["triangulate", "--graph", cg_file, "--all"], environ={}) == EXIT_OK
    out = capsys.readouterr().out
    assert "# --- triangulation 2 ---" in out
    assert "edge a -> d" in out


def test_triangulation_stream_parses_back(cg_file, capsys):
    assert run(["triangulate", "--graph", cg_file, "--all"], environ={}) == EXIT_OK
    blocks = parse_graph_blocks(capsys.readouterr().out)
    expected = cg_minimal_triangulations(parse_graph(cg_file))
    assert [name for name, _ in blocks] == ["triangulation 1", "triangulation 2"]
    assert [format_graph(h) for _, h in blocks] == [format_graph(h) for h in expected]


def kv_pairs(out):
    return [tuple(line.split("=", 1)) for line in out.splitlines()]


def test_text_and_kv_outputs_agree(cycle_triangle_file, capsys):
    assert run(["standard-imset", "--graph", cycle_triangle_file], environ={}) == EXIT_OK
    text = capsys.readouterr().out
    assert run(["--output", "kv", "standard-imset", "--graph", cycle_triangle_file], environ={}) == EXIT_OK
    kv = kv_pairs(capsys.readouterr().out)
    facts = dict(
        line[2:].split(": ", 1) for line in text.splitlines()
        if line.startswith("# ") and not line.startswith("# --- ")
    )
    assert facts == {k: v for k, v in kv if k != "imset"}
    assert facts["degree"] == "4"
    u = parse_imset(text)
    assert u == standard_imset_ug(parse_graph(cycle_triangle_file))
    assert parse_imset("\n".join(v for k, v in kv if k == "imset")) == u


def test_ci_test_exit_codes(cg_file, capsys):
    assert run(["ci-test", "--graph", cg_file, "--triplet", "a|b", "--oracle"], environ={}) == EXIT_OK
    assert "# independent: True" in capsys.readouterr().out
    assert run(["ci-test", "--graph", cg_file, "--triplet", "a|b|c"], environ={}) == EXIT_NEGATIVE


def test_equiv(cg_file, cycle_triangle_file, tmp_path, capsys):
    other = tmp_path / "other.txt"
    other.write_text("vertex a\nvertex b\nvertex c\nvertex d\nedge a -> c\nedge b -> d\nedge d -- c\n")
    assert run(["equiv", "--graph", cg_file, "--graph", str(other)], environ={}) == EXIT_OK
    assert "# verdict: equivalent" in capsys.readouterr().out
    assert run(["equiv", "--graph", cg_file, "--graph", cycle_triangle_file, "--method", "frydenberg"], environ={}) == EXIT_USAGE
    assert run(["equiv", "--graph", cg_file], environ={}) == EXIT_USAGE


def test_merge_and_largest(cg_file, tmp_path, capsys):
    assert run(["merge", "--graph", cg_file, "--upper", "a", "--lower", "c,d"], environ={}) == EXIT_NEGATIVE
    assert "# failed_condition: parents" in capsys.readouterr().out
    dag = tmp_path / "dag.txt"
    dag.write_text("vertex a\nvertex b\nvertex c\nedge a -> b\nedge b -> c\n")
    assert run(["largest", "--graph", str(dag)], environ={}) == EXIT_OK
    out = capsys.readouterr().out
    assert "# merges: 2" in out
    assert "edge a -- b" in out and "edge b -- c" in out


def test_imset_commands(cg_file, tmp_path, capsys):
    assert run(["imset", "semi", "--graph", cg_file, "--triplet", "a,b|d|c"], environ={}) == EXIT_OK
    text = body(capsys.readouterr().out, "imset")
    path = tmp_path / "u.txt"
    path.write_text(text)
    assert run(["imset", "show", "--file", str(path), "--degree"], environ={}) == EXIT_OK
    assert "# degree: 2" in capsys.readouterr().out
    path.write_text("1 {a}\n-1 {b}\n")
    assert run(["imset", "show", "--file", str(path), "--degree"], environ={}) == EXIT_NEGATIVE


def test_model(cg_file, capsys):
    assert run(["model", "--graph", cg_file, "--elementary"], environ={}) == EXIT_OK
    out = capsys.readouterr().out
    assert "# class: CG-proper" in out
    assert "a|b|" in body(out, "model").splitlines()


def test_guard_and_input_errors(cycle_triangle_file, tmp_path, capsys):
    assert run(["--max-universe", "3", "decompose", "--graph", cycle_triangle_file], environ={}) == EXIT_GUARD
    assert "guard exceeded" in capsys.readouterr().err
    bad = tmp_path / "bad.txt"
    bad.write_text("vertex a\nedge a -- b\n")
    assert run(["decompose", "--graph", str(bad)], environ={}) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err
    assert run(["decompose", "--graph", str(tmp_path / "missing.txt")], environ={}) == EXIT_USAGE
    assert run(["no-such-command"], environ={}) == EXIT_USAGE
    assert run(["decompose", "--graph", cycle_triangle_file], environ={"IMSETMIND_MAX_UNIVERSE": "x"}) == EXIT_USAGE


@pytest.mark.parametrize("kind", ["ug", "cg"])
def test_crosscheck(kind, capsys):
    assert run(["crosscheck", "--kind", kind, "--vertices", "4", "--samples", "3", "--seed", "5"], environ={}) == EXIT_OK
    assert "# mismatches: 0" in capsys.readouterr().out
