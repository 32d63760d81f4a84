import numpy as np
import pytest

from minmapcc import load_edge_list
from minmapcc.cli import main


@pytest.fixture()
def path_file(tmp_path):
    out = tmp_path / "p.el"
    assert main(["gen", "--type", "path", "--n", "1000",
                 "--output", str(out)]) == 0
    return out


class TestGen:
    def test_writes_loadable_edge_list(self, path_file):
        g = load_edge_list(str(path_file))
        assert (g.n, g.m) == (1000, 999)

    def test_er_and_forest(self, tmp_path):
        er = tmp_path / "er.el"
        assert main(["gen", "--type", "erdos_renyi", "--n", "50", "--p", "0.1",
                     "--seed", "3", "--output", str(er)]) == 0
        fo = tmp_path / "f.el"
        assert main(["gen", "--type", "forest", "--n", "40", "--trees", "4",
                     "--seed", "1", "--output", str(fo)]) == 0
        assert load_edge_list(str(fo)).m > 0

    def test_bad_params_exit_1(self, tmp_path):
        assert main(["gen", "--type", "erdos_renyi", "--n", "5", "--p", "7",
                     "--output", str(tmp_path / "x.el")]) == 1

    def test_unknown_type_exit_1(self, tmp_path):
        assert main(["gen", "--type", "torus", "--n", "4",
                     "--output", str(tmp_path / "x.el")]) == 1


class TestRun:
    def test_summary_line(self, path_file, capsys):
        assert main(["run", "--input", str(path_file), "--algo", "c2",
                     "--mode", "sync", "--threads", "1"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith(f"graph={path_file} algo=c2 sweeps=")
        assert "components=1" in out
        assert "time_ms=" in out

    def test_missing_input_exit_3(self, tmp_path):
        assert main(["run", "--input", str(tmp_path / "missing.el")]) == 3

    def test_parse_error_exit_1(self, tmp_path):
        bad = tmp_path / "bad.el"
        bad.write_text("0 x\n")
        assert main(["run", "--input", str(bad)]) == 1

    def test_emit_labels_in_original_ids(self, tmp_path, capsys):
        el = tmp_path / "sparse.el"
        el.write_text("5 9\n9 12\n")
        out = tmp_path / "labels.txt"
        assert main(["run", "--input", str(el), "--algo", "c1",
                     "--output", str(out), "--emit-labels"]) == 0
        assert out.read_text().splitlines() == ["5 5", "9 5", "12 5"]

    def test_emit_labels_requires_output(self, path_file):
        assert main(["run", "--input", str(path_file), "--emit-labels"]) == 1

    def test_every_algo_flag_runs(self, tmp_path, capsys):
        el = tmp_path / "g.el"
        assert main(["gen", "--type", "erdos_renyi", "--n", "30", "--p", "0.1",
                     "--seed", "2", "--output", str(el)]) == 0
        for algo in ("c1", "c2", "cm", "c11mm", "c1m1m", "csyn",
                     "fastsv", "unionfind", "bfs"):
            assert main(["run", "--input", str(el), "--algo", algo,
                         "--threads", "2"]) == 0, algo

    def test_csyn_async_is_usage_error(self, path_file):
        assert main(["run", "--input", str(path_file), "--algo", "csyn",
                     "--mode", "async"]) == 1

    def test_order_m_below_two_is_usage_error(self, path_file):
        assert main(["run", "--input", str(path_file), "--algo", "c2",
                     "--order-m", "1"]) == 1

    def test_mtx_format(self, tmp_path, capsys):
        mtx = tmp_path / "g.mtx"
        mtx.write_text("%%MatrixMarket matrix coordinate pattern general\n"
                       "3 3 2\n1 2\n2 3\n")
        assert main(["run", "--input", str(mtx)]) == 0
        assert "components=1" in capsys.readouterr().out


class TestVerify:
    def test_verify_matches(self, path_file):
        assert main(["verify", "--input", str(path_file), "--algo", "c1",
                     "--atomics", "off", "--threads", "4"]) == 0

    def test_verify_all_variants(self, tmp_path):
        el = tmp_path / "g.el"
        assert main(["gen", "--type", "erdos_renyi", "--n", "80", "--p", "0.05",
                     "--seed", "6", "--output", str(el)]) == 0
        for algo in ("c2", "cm", "csyn", "fastsv"):
            assert main(["verify", "--input", str(el), "--algo", algo]) == 0


class TestBench:
    def test_plan_to_csv(self, tmp_path, path_file, capsys):
        plan = tmp_path / "plan.txt"
        plan.write_text(
            f"{path_file},edgelist,contour,c2,sync,on,1\n"
            f"{path_file},edgelist,contour,c1,async,off,2\n"
            f"{path_file},edgelist,fastsv,-,sync,on,1\n"
        )
        out = tmp_path / "results.csv"
        assert main(["bench", "--plan", str(plan), "--output", str(out),
                     "--repeats", "1"]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 4
        assert lines[0].startswith("graph,n,m,algorithm,variant")
        checksums = {line.split(",")[-2] for line in lines[1:]}
        assert len(checksums) == 1

    def test_failing_suite_exit_2(self, tmp_path):
        plan = tmp_path / "plan.txt"
        plan.write_text("does_not_exist.el,edgelist,contour,c2,sync,on,1\n")
        out = tmp_path / "results.csv"
        assert main(["bench", "--plan", str(plan), "--output", str(out)]) == 2
        assert out.exists()

    def test_missing_plan_exit_3(self, tmp_path):
        assert main(["bench", "--plan", str(tmp_path / "nope.txt"),
                     "--output", str(tmp_path / "o.csv")]) == 3


class TestDefaults:
    def test_env_var_overrides_thread_default(self, monkeypatch):
        from minmapcc.cli import default_threads
        monkeypatch.setenv("MINMAPCC_THREADS", "3")
        assert default_threads() == 3
        monkeypatch.setenv("MINMAPCC_THREADS", "junk")
        assert default_threads() >= 1

    def test_format_inferred_from_extension(self, tmp_path, capsys):
        mtx = tmp_path / "auto.mtx"
        mtx.write_text("%%MatrixMarket matrix coordinate pattern general\n"
                       "2 2 1\n1 2\n")
        assert main(["run", "--input", str(mtx)]) == 0
        assert "components=1" in capsys.readouterr().out


class TestUsage:
    def test_no_subcommand(self):
        assert main([]) == 1

    def test_unknown_flag(self, path_file):
        assert main(["run", "--input", str(path_file), "--bogus"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "minmapcc" in capsys.readouterr().out
