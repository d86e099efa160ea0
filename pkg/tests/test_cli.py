import subprocess
import sys

import pytest

from contigsim.cli import main
from contigsim.simulator import RESULT_HEADER
from contigsim.workload import read_trace


def cli(capsys, *args):
    try:
        code = main(list(args))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def trace_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, _, _ = cli(capsys, "gen", "--n", "300", "--capacity", "256", "--size", "exp:16", "--seed", "7", "-o", str(path))
    assert code == 0
    return path


def test_gen(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = cli(capsys, "gen", "--n", "1000", "--capacity", "1024", "--size", "exp:32", "--dur", "exp:50",
                       "--seed", "7", "-o", str(path))
    assert code == 0 and out.strip() == str(path)
    lines = path.read_text().splitlines()
    assert len(lines) == 1003 and lines[:3] == ["capacity=1024", "seed=7", "id,size,duration"]


@pytest.mark.parametrize(
    "args",
    [
        ["gen", "--n", "10", "-o", "x.csv"],
        ["gen", "--n", "0", "--capacity", "64", "-o", "x.csv"],
        ["gen", "--n", "5", "--capacity", "64", "--size", "gauss:1", "-o", "x.csv"],
        ["bench", "--seed", "3-1"],
        [],
    ],
)
def test_usage_errors(args, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = cli(capsys, *args)
    assert code == 2


def test_env_seed_overrides(tmp_path, capsys, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("CONTIG_SIM_SEED", "5")
    assert cli(capsys, "gen", "--n", "20", "--capacity", "64", "--seed", "1", "-o", str(a))[0] == 0
    monkeypatch.delenv("CONTIG_SIM_SEED")
    assert cli(capsys, "gen", "--n", "20", "--capacity", "64", "--seed", "5", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes() and read_trace(a).seed == 5
    monkeypatch.setenv("CONTIG_SIM_SEED", "nope")
    assert cli(capsys, "gen", "--n", "20", "--capacity", "64", "-o", str(a))[0] == 2


def test_run_single_strategy(trace_file, capsys):
    code, out, _ = cli(capsys, "run", str(trace_file), "--strategy", "localshift:8")
    lines = out.splitlines()
    assert code == 0 and lines[0] == RESULT_HEADER and len(lines) == 2
    assert lines[1].startswith("localshift:8,256,300,7,-,-,")


def test_run_all(trace_file, capsys):
    code, out, _ = cli(capsys, "run", str(trace_file), "--strategy", "all")
    names = [line.split(",")[0] for line in out.splitlines()[1:]]
    assert code == 0 and names == ["firstfit", "bestfit", "alwayssorted", "delayedsort", "classsort", "localshift:8"]


def test_run_unknown_strategy(trace_file, capsys):
    code, _, err = cli(capsys, "run", str(trace_file), "--strategy", "worstfit")
    assert code == 2 and "firstfit" in err and "localshift:<radius>" in err


def test_run_missing_file(tmp_path, capsys):
    code, _, err = cli(capsys, "run", str(tmp_path / "nope.csv"))
    assert code == 1 and "nope.csv" in err


def test_run_bad_trace(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("capacity=8\nseed=0\nid,size,duration\n1,2\n")
    code, _, err = cli(capsys, "run", str(bad))
    assert code == 1 and "line 4" in err


def test_output_appends_with_single_header(trace_file, tmp_path, capsys):
    out = tmp_path / "results.csv"
    for _ in range(2):
        assert cli(capsys, "run", str(trace_file), "--strategy", "firstfit", "-o", str(out))[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == RESULT_HEADER and len(lines) == 3 and lines[1] == lines[2]


def test_emit_plot(trace_file, tmp_path, capsys):
    plot = tmp_path / "plot"
    code, _, err = cli(capsys, "run", str(trace_file), str(trace_file), "--strategy", "firstfit",
                       "--strategy", "localshift:8", "--emit-plot", str(plot))
    assert code == 0
    dat = (plot / "localshift-8.dat").read_text().splitlines()
    assert dat[0].startswith("#") and len(dat) == 3
    assert [line.split()[0] for line in dat[1:]] == ["1", "2"]
    for name in ("makespan.png", "moves.png", "moved_mass.png"):
        assert (plot / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "firstfit.dat" in err


def test_parallel_matches_serial(trace_file, capsys):
    serial = cli(capsys, "run", str(trace_file))[1]
    parallel = cli(capsys, "run", str(trace_file), "--parallel", "2")[1]
    assert serial == parallel


def test_bench(capsys):
    code, out, _ = cli(capsys, "bench", "--n", "100", "--capacity", "128", "--seed", "0-2", "--strategy", "firstfit",
                       "--strategy", "alwayssorted")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 6
    assert {r.split(",")[3] for r in rows} == {"0", "1", "2"}


SINGLE = "capacity=5\n1,2,0\n"


def test_defrag_and_sort_single_module(tmp_path, capsys):
    snap = tmp_path / "s.txt"
    snap.write_text(SINGLE)
    code, out, _ = cli(capsys, "defrag", str(snap), "--check")
    assert code == 0 and out.startswith("move,1,0,3,shift\nmove,1,3,0,shift\nreport,moves=2,")
    assert out.endswith("capacity=5\n1,2,0\n")
    code, out, _ = cli(capsys, "sort", str(snap), "--check")
    assert code == 0 and out.count("move,") == 3 and out.endswith("capacity=5\n1,2,3\n")


def test_empty_snapshot(tmp_path, capsys):
    snap = tmp_path / "s.txt"
    snap.write_text("capacity=8\n")
    for cmd in ("defrag", "sort"):
        code, out, _ = cli(capsys, cmd, str(snap), "--check")
        assert code == 0 and "report,moves=0" in out


def test_sort_refusal(tmp_path, capsys):
    snap = tmp_path / "s.txt"
    snap.write_text("capacity=7\n1,3,0\n2,3,4\n")
    code, out, err = cli(capsys, "sort", str(snap))
    assert code == 1 and "refused" in err and out == ""


def test_defrag_check_failure(tmp_path, capsys):
    snap = tmp_path / "s.txt"
    snap.write_text("capacity=8\n1,3,0\n2,3,4\n")
    code, out, err = cli(capsys, "defrag", str(snap), "--check")
    assert code == 1 and "connected=false" in out and "check failed" in err


def test_module_entry_point_and_stdin():
    proc = subprocess.run([sys.executable, "-m", "contigsim", "defrag", "-"], input="capacity=10\n1,3,4\n",
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "report,moves=2" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "contigsim", "run", "x.csv", "--strategy", "bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
