import json
import subprocess
import sys

import numpy as np
import pytest

from farofangs import FeatureAllocation, faro_loss
from farofangs.cli import THREADS_ENV, main
from farofangs.formats import dumps_result, format_faz, mask_runtime, read_samples
from farofangs.synthetic import perturbed_samples, random_truth

from conftest import TWIN_LOSS, Z1, Z2


@pytest.fixture
def files(tmp_path):
    def write(name, mats):
        path = tmp_path / name
        path.write_text(format_faz(mats))
        return str(path)

    return write


@pytest.fixture
def suite_file(files):
    truth = random_truth(12, 3, seed=21)
    return files("suite.faz", list(perturbed_samples(truth, 40, 0.05, seed=21)))


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_loss_on_twin_pair(files, capsys):
    code, out, _ = run(["loss", files("z1.faz", [Z1]), files("z2.faz", [Z2]), "--a", "1"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"loss: {TWIN_LOSS!r}"
    assert lines[1] == "k_aligned: 4"
    pairs = [tuple(map(int, t.split("->"))) for t in lines[2].removeprefix("alignment: ").split()]
    assert sorted(j for _, j in pairs) == [0, 1, 2, 3]


def test_expected_loss(files, capsys):
    code, out, _ = run(["expected-loss", files("c.faz", [Z1]), files("s.faz", [Z1, Z2]), "--a", "1"], capsys)
    assert code == 0
    assert float(out) == pytest.approx(TWIN_LOSS / 2)


def test_estimate_identical_samples(files, capsys):
    code, out, _ = run(["estimate", files("s.faz", [Z1] * 5), "--n-init", "3", "--n-sweet", "2", "--n-iter", "50"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["expected_loss"] == 0.0
    assert FeatureAllocation(doc["estimate"]) == FeatureAllocation(Z1)
    assert doc["config"] == {"a": 1.0, "n_init": 3, "n_sweet": 2, "n_iter": 50, "seed": 0}
    assert set(doc["runtime"]) == {"wall_seconds", "threads"}


def test_estimate_writes_file(suite_file, tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code, out, _ = run(["estimate", suite_file, "--n-iter", "100", "--out", str(out_path), "--no-trace"], capsys)
    assert code == 0 and out == ""
    doc = json.loads(out_path.read_text())
    assert "trace" not in doc
    assert len(doc["baseline_losses"]) == 16


def test_threads_do_not_change_bytes(suite_file, tmp_path, capsys):
    docs = []
    for t in ("1", "8"):
        path = tmp_path / f"r{t}.json"
        assert run(["estimate", suite_file, "--seed", "5", "--n-iter", "200", "--threads", t, "--out", str(path)], capsys)[0] == 0
        docs.append(json.loads(path.read_text()))
    assert docs[0]["runtime"]["threads"] == 1 and docs[1]["runtime"]["threads"] == 8
    assert dumps_result(mask_runtime(docs[0])) == dumps_result(mask_runtime(docs[1]))


def test_threads_env_default(suite_file, monkeypatch, capsys):
    monkeypatch.setenv(THREADS_ENV, "3")
    code, out, _ = run(["estimate", suite_file, "--n-iter", "10"], capsys)
    assert code == 0 and json.loads(out)["runtime"]["threads"] == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    code, _, err = run(["estimate", suite_file, "--n-iter", "10"], capsys)
    assert code == 1 and THREADS_ENV in err


def test_draws_and_sifa(files, capsys):
    path = files("s.faz", [Z1, Z1, Z2])
    code, out, _ = run(["draws", path], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["index"] == 0 and doc["subcommand"] == "draws"
    assert doc["expected_loss"] == pytest.approx(TWIN_LOSS / 3)
    code, out, _ = run(["sifa", path, "--a", "0.5"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["config"] == {"a": 0.5}
    assert FeatureAllocation(doc["estimate"]) == FeatureAllocation(Z1)


def test_gen_synthetic(files, tmp_path, capsys):
    truth = files("t.faz", [Z1])
    out = tmp_path / "s.faz"
    argv = ["gen-synthetic", "--truth", truth, "--b", "7", "--flip-prob", "0.1", "--seed", "4", "--out", str(out)]
    assert run(argv, capsys)[0] == 0
    first = out.read_text()
    s = read_samples(out)
    assert len(s) == 7 and s.n == 6 and s.k_max == 3
    assert run(argv, capsys)[0] == 0
    assert out.read_text() == first
    assert run(argv + ["--max-extra", "2"], capsys)[0] == 0
    assert read_samples(out).k_max <= 5


def test_bench_output(capsys):
    code, out, _ = run(["bench", "--k", "3,4", "--reps", "3", "--n", "20"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:2] == ["K", "K!"]
    assert [line.split()[0] for line in lines[-2:]] == ["3", "4"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["loss"],
        ["loss", "nope.faz", "nope.faz"],
        ["estimate", "x.faz", "--bogus"],
        ["bench", "--k", "a,b"],
        ["bench", "--k", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1 and err


@pytest.mark.parametrize("a", ["0", "2", "-1", "2.5", "nan", "abc"])
def test_invalid_penalty_is_usage_error(a, files, capsys):
    path = files("z.faz", [Z1])
    code, _, err = run(["loss", path, path, "--a", a], capsys)
    assert code == 1 and "penalty" in err


def test_invalid_search_config_is_usage_error(suite_file, capsys):
    assert run(["estimate", suite_file, "--n-sweet", "20"], capsys)[0] == 1


def test_data_errors(files, tmp_path, capsys):
    bad = tmp_path / "bad.faz"
    bad.write_text("2 2\n1 0\n0 7\n")
    code, _, err = run(["sifa", str(bad)], capsys)
    assert code == 2 and "bad.faz:3:3" in err
    z = files("z.faz", [Z1])
    other = files("o.faz", [np.zeros((4, 1), np.uint8)])
    assert run(["loss", z, other], capsys)[0] == 2
    assert run(["loss", z, files("two.faz", [Z1, Z2])], capsys)[0] == 2
    assert run(["estimate", files("few.faz", [Z1] * 3)], capsys)[0] == 2


def test_csv_inputs(tmp_path, capsys):
    x = tmp_path / "x.csv"
    y = tmp_path / "y.csv"
    x.write_text("\n".join(",".join(map(str, r)) for r in Z1.tolist()))
    y.write_text("\n".join(",".join(map(str, r)) for r in Z2.tolist()))
    code, out, _ = run(["loss", str(x), str(y), "--csv"], capsys)
    assert code == 0 and out.startswith(f"loss: {faro_loss(Z1, Z2).loss!r}")


def test_module_entry_point(files):
    path = files("z.faz", [Z1])
    proc = subprocess.run(
        [sys.executable, "-m", "farofangs", "loss", path, path], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("loss: 0.0")
