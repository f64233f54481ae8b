import subprocess
import sys

import pytest

from mixclock.cli import main
from mixclock.experiment import read_records
from mixclock.trace import read_trace, write_trace

from conftest import EXAMPLE_PAIRS
from mixclock import Trace


def run(argv):
    try:
        return main([str(a) for a in argv])
    except SystemExit as exc:
        return exc.code


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example.trace"
    write_trace(Trace.from_pairs(EXAMPLE_PAIRS, 5, 5), p)
    return p


def test_gen_round_trip_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.trace", tmp_path / "b.trace"
    flags = ["gen", "--scenario", "uniform", "--threads", 50, "--objects", 50,
             "--density", 0.05, "--seed", 7]
    assert run(flags + ["--out", a]) == 0
    assert run(flags + ["--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()
    t = read_trace(a)
    assert (t.n_threads, t.m_objects) == (50, 50)
    assert "seed=7" in capsys.readouterr().out


def test_gen_nonuniform(tmp_path):
    out = tmp_path / "n.trace"
    assert run(["gen", "--scenario", "nonuniform", "--threads", 20, "--objects", 20,
                "--density", 0.1, "--popular-fraction", 0.25, "--boost", 3, "--out", out]) == 0
    assert len(read_trace(out)) > 0


@pytest.mark.parametrize("extra", [["--density", "1.5"], ["--density", "0.1", "--boost", "2"]])
def test_gen_usage_errors(tmp_path, extra):
    argv = ["gen", "--threads", 3, "--objects", 3, "--out", tmp_path / "x"] + extra
    assert run(argv) == 2


def test_offline_example(example_file, tmp_path, capsys):
    out = tmp_path / "example.stamps"
    assert run(["offline", example_file, "--out", out]) == 0
    text = capsys.readouterr().out
    assert "components {t2, o2, o3}" in text
    assert "size 3" in text
    assert run(["check", out]) == 0


def test_offline_star(tmp_path, capsys):
    p = tmp_path / "star.trace"
    write_trace(Trace.from_pairs([(0, o) for o in range(5)]), p)
    assert run(["offline", p]) == 0
    assert "size 1" in capsys.readouterr().out
    assert p.with_suffix(".stamps").exists()


def test_online_naive_example(example_file, tmp_path, capsys):
    out = tmp_path / "on.stamps"
    assert run(["online", example_file, "--mechanism", "naive-threads", "--out", out]) == 0
    text = capsys.readouterr().out
    assert "size 4" in text
    assert out.with_suffix(".log").exists()
    assert run(["check", out]) == 0


def test_online_popularity_twice_identical(example_file, tmp_path):
    a, b = tmp_path / "a.stamps", tmp_path / "b.stamps"
    run(["online", example_file, "--mechanism", "popularity", "--out", a])
    run(["online", example_file, "--mechanism", "popularity", "--out", b])
    assert a.read_bytes() == b.read_bytes()
    assert a.with_suffix(".log").read_bytes() == b.with_suffix(".log").read_bytes()


def test_online_random_seeds_validate(tmp_path):
    trace = tmp_path / "g.trace"
    run(["gen", "--threads", 15, "--objects", 15, "--density", 0.2, "--seed", 2, "--out", trace])
    for seed in (1, 2):
        out = tmp_path / f"r{seed}.stamps"
        assert run(["online", trace, "--mechanism", "random", "--seed", seed, "--out", out]) == 0
        assert run(["check", out]) == 0


def test_online_unknown_mechanism(example_file):
    assert run(["online", example_file, "--mechanism", "greedy"]) == 2


def test_check_corrupted(tmp_path, capsys):
    p = tmp_path / "bad.stamps"
    p.write_text("components t:2 o:2 o:3\n2 1 | 1 0 0\n2 3 | 0 0 0\n3 3 | 2 0 1\n")
    assert run(["check", p]) == 1
    assert "0 1" in capsys.readouterr().out


def test_check_empty(tmp_path):
    p = tmp_path / "empty.stamps"
    p.write_text("components\n")
    assert run(["check", p]) == 0


def test_parse_errors_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.trace"
    p.write_text("threads 2 objects 2\n0 0\n5 1\n")
    assert run(["offline", p]) == 2
    assert "bad.trace:3" in capsys.readouterr().err
    s = tmp_path / "bad.stamps"
    s.write_text("components t:0\n0 0 | 1 1\n")
    assert run(["check", s]) == 2
    assert run(["offline", tmp_path / "missing.trace"]) == 2


def test_experiment_flags_and_config(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    flags = ["experiment", "--scenario", "uniform,nonuniform", "--threads", 10, "--objects", 10,
             "--density", "0.1,0.2", "--trials", 2, "--seed", 3]
    assert run(flags + ["--out", a]) == 0
    assert run(flags + ["--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.summary.csv").exists()
    recs = read_records(a.read_text())
    assert len(recs) == 2 * 2 * 2 * 5

    cfg = tmp_path / "exp.cfg"
    cfg.write_text("scenario = uniform,nonuniform\nthreads = 10\nobjects = 10\n"
                   "densities = 0.1,0.2\ntrials = 2\nseed = 3\n")
    c = tmp_path / "c.csv"
    assert run(["experiment", "--config", cfg, "--out", c]) == 0
    assert c.read_bytes() == a.read_bytes()


def test_experiment_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("trials = 0\n")
    assert run(["experiment", "--config", cfg, "--out", tmp_path / "x.csv"]) == 2
    assert run(["experiment", "--trials", 0, "--out", tmp_path / "x.csv"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.trace"
    proc = subprocess.run([sys.executable, "-m", "mixclock", "gen", "--threads", "4", "--objects",
                           "4", "--density", "0.5", "--out", str(out)], capture_output=True)
    assert proc.returncode == 0
    bad = subprocess.run([sys.executable, "-m", "mixclock", "gen", "--threads", "4", "--objects",
                          "4", "--density", "2", "--out", str(out)], capture_output=True)
    assert bad.returncode == 2
