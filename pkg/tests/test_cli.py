"""Command line battery: every subcommand runs in-process via main(argv)."""

import pytest

from conftest import G6A_EDGES
from ddvop.cli import SOLVE_STATS_HEADER, main
from ddvop.graph import Instance, parse_instance, render_instance
from ddvop.harness import BENCH_HEADER
from ddvop.order import parse_solution


@pytest.fixture
def g6a_file(tmp_path):
    inst = Instance.build(6, 2, G6A_EDGES, name="g6a")
    path = tmp_path / "g6a.dvop"
    path.write_text(render_instance(inst))
    return str(path)


@pytest.fixture
def p5_k2_file(tmp_path):
    inst = Instance.build(5, 2, [(i, i + 1) for i in range(4)], name="p5")
    path = tmp_path / "p5.dvop"
    path.write_text(render_instance(inst))
    return str(path)


@pytest.mark.parametrize("method", ["oracle", "dfs", "naive", "witness"])
def test_solve_methods(method, g6a_file, capsys):
    assert main(["solve", g6a_file, "--method", method]) == 0
    out, err = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"
    status, order, pattern = parse_solution(out)
    assert status == "OPTIMAL" and order is not None
    assert err.splitlines()[0] == SOLVE_STATS_HEADER
    assert err.splitlines()[1].startswith(f"{method},OPTIMAL,2,")


def test_solve_min_nodes(g6a_file, capsys):
    assert main(["solve", g6a_file, "--objective", "nodes"]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"


def test_solve_flags(g6a_file, capsys):
    argv = [
        "solve", g6a_file, "--method", "witness",
        "--pre-break", "23", "--no-presolve",
    ]
    assert main(argv) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"
    assert main(["solve", g6a_file, "--method", "naive", "--nogood"]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"


def test_solve_output_file(g6a_file, tmp_path, capsys):
    dest = tmp_path / "sol.txt"
    assert main(["solve", g6a_file, "-o", str(dest)]) == 0
    out, err = capsys.readouterr()
    # With -o the stats CSV moves to stdout and stderr stays clean.
    assert out.splitlines()[0] == SOLVE_STATS_HEADER
    assert err == ""
    assert dest.read_text().splitlines()[0] == "s OPTIMAL 2 12"


def test_solve_global_flag_positions(g6a_file, capsys):
    # --time-limit is accepted before the subcommand too.
    assert main(["--time-limit", "30", "solve", g6a_file]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"


def test_solve_infeasible(p5_k2_file, capsys):
    assert main(["solve", p5_k2_file]) == 0
    out, _ = capsys.readouterr()
    assert out == "s INFEASIBLE - -\n"


def test_solve_stdin(g6a_file, capsys, monkeypatch):
    import io

    text = open(g6a_file).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["solve", "-"]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "s OPTIMAL 2 12"


def test_pareto(g6a_file, capsys):
    assert main(["pareto", g6a_file]) == 0
    out, err = capsys.readouterr()
    assert out.splitlines() == [
        "nodes,doubles,dominated",
        "12,2,0",
        "14,2,1",
        "16,2,1",
        "20,3,1",
        "24,3,1",
    ]
    assert err == ""


def test_pareto_infeasible(p5_k2_file, capsys):
    assert main(["pareto", p5_k2_file]) == 0
    out, err = capsys.readouterr()
    assert out == "nodes,doubles,dominated\n"
    assert "infeasible" in err


def test_presolve(g6a_file, capsys):
    assert main(["presolve", g6a_file]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines() == [
        "fix y[0]=0",
        "fix y[1]=0",
        "fix y[2]=1",
        "cut y[3]+y[4]+y[5]>=1",
    ]


def test_presolve_no_head(g6a_file, capsys):
    assert main(["presolve", g6a_file, "--no-head"]) == 0
    out, _ = capsys.readouterr()
    assert "cut" not in out


def test_gen_random_round_trip(tmp_path, capsys):
    dest = tmp_path / "r.dvop"
    argv = ["gen", "random", "--n", "10", "--density", "0.4", "--k", "3",
            "--seed", "5", "-o", str(dest)]
    assert main(argv) == 0
    first = dest.read_text()
    inst = parse_instance(first)
    assert inst.n == 10 and inst.K == 3
    assert main(argv) == 0
    assert dest.read_text() == first
    assert main(["gen", "random", "--n", "10", "--density", "0.4",
                 "--k", "3", "--seed", "5"]) == 0
    out, _ = capsys.readouterr()
    assert out == first


def test_gen_synthetic(tmp_path, capsys):
    argv = ["gen", "synthetic", "--k", "3", "--doubles", "2", "--noise", "0.1",
            "--n", "10", "--seed", "7"]
    assert main(argv) == 0
    first, _ = capsys.readouterr()
    inst = parse_instance(first)
    assert inst.n == 10 and inst.K == 3
    assert main(argv) == 0
    again, _ = capsys.readouterr()
    assert again == first


def test_gen_seed_before_subcommand(capsys):
    argv_pre = ["--seed", "5", "gen", "random", "--n", "8",
                "--density", "0.5", "--k", "2"]
    argv_post = ["gen", "random", "--n", "8", "--density", "0.5",
                 "--k", "2", "--seed", "5"]
    assert main(argv_pre) == 0
    pre, _ = capsys.readouterr()
    assert main(argv_post) == 0
    post, _ = capsys.readouterr()
    assert pre == post


def test_export(g6a_file, tmp_path, capsys):
    dest = tmp_path / "g6a.lp"
    assert main(["export", g6a_file, "--model", "ip", "-o", str(dest)]) == 0
    out, err = capsys.readouterr()
    assert out.startswith("model,section,family,count,table_count")
    assert err == ""
    text = dest.read_text()
    assert "Minimize" in text and "Binaries" in text


def test_export_warning(p5_k2_file, capsys):
    assert main(["export", p5_k2_file, "--model", "cycles"]) == 0
    out, err = capsys.readouterr()
    assert "infeasible" in out
    assert err.startswith("warning:")


def test_bench_and_profile(g6a_file, p5_k2_file, tmp_path, capsys):
    dest = tmp_path / "bench.csv"
    argv = ["bench", g6a_file, p5_k2_file, "--methods", "oracle,dfs",
            "--workers", "2", "-o", str(dest)]
    assert main(argv) == 0
    text = dest.read_text()
    lines = text.splitlines()
    assert lines[0] == ",".join(BENCH_HEADER)
    assert len(lines) == 5
    assert lines[1].startswith("g6a,6,")
    assert ",OPTIMAL,2," in lines[1]
    assert ",INFEASIBLE,," in lines[3]
    assert main(["profile", str(dest)]) == 0
    out, _ = capsys.readouterr()
    assert out.splitlines()[0] == "method,tau,fraction"
    assert any(line.startswith("oracle,") for line in out.splitlines()[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "/nonexistent/file.dvop"],
        ["solve", "{g6a}", "--method", "naive", "--objective", "nodes"],
        ["bench", "{g6a}", "--methods", ""],
        ["bench", "{g6a}", "--methods", "simplex"],
        ["gen", "random", "--n", "10", "--density", "0.0", "--k", "2"],
        ["gen", "synthetic", "--k", "2", "--doubles", "9", "--n", "8"],
    ],
)
def test_usage_errors_exit_2(argv, g6a_file, capsys):
    argv = [a.format(g6a=g6a_file) if "{g6a}" in a else a for a in argv]
    assert main(argv) == 2
    _, err = capsys.readouterr()
    assert err.startswith("error:")


def test_malformed_instance_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.dvop"
    bad.write_text("p dvop 4 1 2\ne 0 1\ne 2 3\n")
    assert main(["solve", str(bad)]) == 2
    _, err = capsys.readouterr()
    assert err.startswith("error:")
