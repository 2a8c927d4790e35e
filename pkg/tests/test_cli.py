import io
import json
from pathlib import Path

import pytest

from zpeff.cli import run

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["roots"], "roots.csv"),
        (["--format", "json", "roots"], "roots.json"),
        (["measure", "--dist", "0.5,0.5", "--a", "0.25"], "measure_half.csv"),
        (["curves", "--figure", "2", "--grid", "10"], "fig2_grid10.csv"),
        (["curves", "--figure", "5", "--grid", "10", "--format", "json"], "fig5_grid10.json"),
        (["maximize", "--values", "1,2,3", "--a", "0.25", "--mean", "1.7", "--quiet"], "maximize_3.csv"),
        (["stability", "--a", "0.3", "--sizes", "2,100", "--trials", "5", "--seed", "3"], "stability_small.csv"),
        (["fit", "--corpus", str(GOLDEN / "corpus.txt")], "fit_corpus.csv"),
        (["fit", "--samples", str(GOLDEN / "samples.txt")], "fit_samples.csv"),
    ],
)
def test_golden(argv, golden):
    code, out, _ = call(*argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_roots_values():
    code, out, _ = call("--format", "json", "roots")
    obj = json.loads(out)
    assert abs(obj["a_star"] - 0.194513) < 1e-5
    assert abs(obj["beta_star"] - 4.14105) < 1e-3
    assert abs(obj["gini_star"] - 0.137324) < 1e-3
    assert abs(obj["shannon_zero_beta"] - 3.591) < 1e-3


def test_curves_figure2_markers():
    code, out, _ = call("curves", "--figure", "2", "--grid", "400")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "a,beta,eta" and len(lines) == 401
    assert lines[1] == "0,inf,-inf"
    assert lines[-1].endswith(",inf")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bogus"], 2),
        ([], 2),
        (["roots", "--nope"], 2),
        (["curves", "--figure", "7"], 2),
        (["measure", "--a", "0.3"], 2),
        (["measure", "--dist", "0.5,x", "--a", "0.3"], 2),
        (["fit", "--window", "3-9", "--corpus", "x"], 2),
        (["--format", "xml", "roots"], 2),
        (["maximize", "--values", "1,2,3", "--a", "0.25"], 2),
        (["measure", "--dist", "0.5,0.6", "--a", "0.3"], 1),
        (["measure", "--dist", "0.5,0.5", "--a", "1.5"], 1),
        (["curves", "--figure", "2", "--grid", "5"], 1),
        (["stability", "--a", "0.3", "--trials", "0"], 1),
        (["stability", "--a", "1.2"], 1),
        (["maximize", "--values", "1,2,3", "--a", "0.25", "--mean", "9"], 1),
        (["maximize", "--values", "3,2,1", "--a", "0.25", "--mean", "2"], 1),
        (["fit", "--corpus", "/nonexistent/file.txt"], 1),
        (["roots", "--tol", "0"], 1),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    assert out == ""
    assert err


def test_measure_input_file_and_normalize(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text("2\n1\n1\n")
    code, _, err = call("measure", "--input", str(f), "--a", "0.3")
    assert code == 1 and "sum" in err
    code, out, _ = call("measure", "--input", str(f), "--a", "0.3", "--normalize", "--format", "json")
    assert code == 0 and json.loads(out)["states"] == 3


def test_fit_counts_and_dump(tmp_path):
    counts = tmp_path / "c.csv"
    counts.write_text("token,count\n" + "".join(f"w{r},{1000 // r}\n" for r in range(1, 61)))
    dump = tmp_path / "rank.csv"
    code, out, _ = call("--format", "json", "fit", "--counts", str(counts), "--window", "1:60",
                        "--dump", str(dump), "--quiet")
    assert code == 0
    obj = json.loads(out)
    assert abs(obj["alpha"] - 1.0) < 0.01 and obj["window_lo"] == 1
    assert dump.read_text().splitlines()[0] == "rank,token,frequency"


def test_maximize_values_file_json(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("\n".join(str(i) for i in range(1, 1001)))
    code, out, err = call("maximize", "--values", str(f), "--a", "0.25", "--mean", "10", "--format", "json")
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["fitted_exponent"] + 4) < 0.08
    assert abs(obj["ccdf_exponent"] - 3) < 0.15
    assert "residual" in err


def test_quiet_suppresses_info():
    _, _, err = call("maximize", "--values", "1,2,3", "--a", "0.25", "--mean", "1.7", "--quiet")
    assert err == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["roots"],
        ["curves", "--figure", "1", "--grid", "50"],
        ["curves", "--figure", "4", "--grid", "50", "--format", "json"],
        ["stability", "--a", "0.45", "--sizes", "2,1000", "--trials", "10", "--seed", "42"],
        ["measure", "--dist", "0.1,0.2,0.7", "--a", "0.4"],
    ],
)
def test_deterministic(argv):
    assert call(*argv)[1] == call(*argv)[1]


def test_global_flags_after_subcommand():
    base = ["stability", "--a", "0.3", "--sizes", "1000", "--trials", "5"]
    assert call(*base, "--format", "json")[1] == call("--format", "json", *base)[1]
    assert call("--seed", "1", *base)[1] == call(*base, "--seed", "1")[1]
