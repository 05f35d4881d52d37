import json
import math

import pytest

from hopfield_lift.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def matrix_file(tmp_path):
    p = tmp_path / "h.txt"
    p.write_text("2 2\n1 2\n3 4\n", encoding="utf-8")
    return str(p)


class TestBound:
    def test_positive_row(self, capsys):
        code, out, _ = run(["bound", "--alpha", "1", "--form", "positive", "--format", "csv"], capsys)
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "alpha,form,value,c3_star,gamma_hat,baseline,improvement"
        assert float(row.split(",")[2]) == pytest.approx(1.7832, abs=1e-4)

    def test_negative_row(self, capsys):
        _, out, _ = run(["bound", "--alpha", "1", "--form", "negative"], capsys)
        assert "0.320163" in out

    def test_json_round_trip(self, capsys):
        _, out, _ = run(["bound", "--alpha", "1", "--form", "both", "--format", "json"], capsys)
        data = json.loads(out)
        assert [e["form"] for e in data["bounds"]] == ["positive", "negative"]
        assert json.dumps(data, indent=2) + "\n" == out

    def test_grid_and_lists(self, capsys):
        _, out, _ = run(["bound", "--alpha", "0.5,1", "2", "--grid", "1:4:4", "--format", "csv"], capsys)
        assert len(out.strip().splitlines()) == 1 + 2 * 7

    @pytest.mark.parametrize("alpha", ["0", "-1", "abc", "inf"])
    def test_bad_alpha(self, capsys, alpha):
        code, _, err = run(["bound", "--alpha", alpha], capsys)
        assert code == 2
        assert "error" in err

    def test_missing_alpha(self, capsys):
        assert run(["bound"], capsys)[0] == 2


class TestExact:
    def test_matrix_file(self, capsys, matrix_file):
        _, out, _ = run(["exact", "--matrix", matrix_file, "--form", "both", "--format", "json"], capsys)
        res = json.loads(out)["results"]
        assert res[0]["value"] == pytest.approx(5.385165, abs=1e-6)
        assert res[0]["witness"] == "++"
        assert res[1]["value"] == pytest.approx(1.0)
        assert res[1]["witness"] == "+-"
        assert res[0]["states_visited"] == 2

    def test_single_column(self, capsys):
        from hopfield_lift.exact import sample_instance

        _, out, _ = run(["exact", "--n", "1", "--alpha", "3", "--seed", "7", "--format", "json"], capsys)
        col = sample_instance(3, 1, "gaussian", 7).matrix[:, 0]
        assert json.loads(out)["results"][0]["value"] == pytest.approx(math.sqrt(float(col @ col)))

    def test_capacity_exit(self, capsys):
        code, out, err = run(["exact", "--n", "31"], capsys)
        assert code == 3
        assert out == ""
        assert "2^30" in err

    def test_usage_errors(self, capsys, matrix_file):
        assert run(["exact"], capsys)[0] == 2
        assert run(["exact", "--matrix", matrix_file, "--n", "3"], capsys)[0] == 2
        assert run(["exact", "--matrix", "/nonexistent/file"], capsys)[0] == 2
        assert run(["exact", "--n", "3", "--format", "xml"], capsys)[0] == 2


class TestSearch:
    def test_search_not_above_exact(self, capsys):
        base = ["--n", "14", "--seed", "21", "--format", "json"]
        _, ex, _ = run(["exact", *base], capsys)
        _, se, _ = run(["search", *base, "--restarts", "16"], capsys)
        e = json.loads(ex)["results"][0]["value"]
        s = json.loads(se)["results"][0]["value"]
        assert s <= e * (1 + 1e-12)

    def test_bad_restarts(self, capsys):
        assert run(["search", "--n", "5", "--restarts", "0"], capsys)[0] == 2


class TestEnsemble:
    ARGS = ["ensemble", "--form", "negative", "--n", "12", "--trials", "5", "--seed", "1"]

    def test_csv_layout(self, capsys):
        _, out, _ = run([*self.ARGS, "--format", "csv"], capsys)
        lines = out.splitlines()
        assert lines[0] == "n,m,alpha,form,ensemble,method,trial,value,normalized,seed"
        assert len([ln for ln in lines if not ln.startswith("#")]) == 6
        footer = {ln[2:].split("=")[0] for ln in lines if ln.startswith("#")}
        assert footer == {"mean", "stddev", "stderr", "bound", "baseline", "violations"}

    def test_json_schema(self, capsys):
        _, out, _ = run([*self.ARGS, "--format", "json", "--ensemble", "bernoulli"], capsys)
        data = json.loads(out)
        assert set(data) == {"config", "trials", "statistics", "bound"}
        assert len(data["trials"]) == 5
        assert data["bound"]["caveats"] == ["bounds-proved-for-gaussian"]
        assert json.dumps(data, indent=2) + "\n" == out

    def test_table(self, capsys):
        code, out, _ = run([*self.ARGS, "--method", "bitflip", "--restarts", "4"], capsys)
        assert code == 0 and "violations" in out

    def test_capacity(self, capsys):
        assert run(["ensemble", "--n", "40", "--trials", "1"], capsys)[0] == 3

    def test_usage(self, capsys):
        assert run(["ensemble", "--trials", "1"], capsys)[0] == 2


def test_concentration(capsys):
    code, out, _ = run(["concentration", "--n-grid", "6,8", "--trials", "4", "--format", "json"], capsys)
    assert code == 0
    assert [r["n"] for r in json.loads(out)["rows"]] == [6, 8]


def test_smoke(capsys):
    code, out, _ = run(["smoke", "--samples", "20000", "--format", "json"], capsys)
    assert code == 0
    assert all(s["holds_3sigma"] for s in json.loads(out)["samples"])


def test_smoke_overflow_exit(capsys):
    assert run(["smoke", "--samples", "100", "--c3", "500", "--form", "positive"], capsys)[0] == 4


class TestConfig:
    def test_config_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# study\nform = negative\nn=10\ntrials = 3\nseed=5\nformat=csv\n", encoding="utf-8")
        _, a, _ = run(["--config", str(cfg), "ensemble"], capsys)
        _, b, _ = run(["ensemble", "--form", "negative", "--n", "10", "--trials", "3",
                       "--seed", "5", "--format", "csv"], capsys)
        assert a == b
        _, c, _ = run(["--config", str(cfg), "ensemble", "--trials", "2"], capsys)
        assert len([ln for ln in c.splitlines() if not ln.startswith("#")]) == 3

    def test_bound_alpha_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("alpha = 1,2\nform = positive\nformat = csv\n", encoding="utf-8")
        _, out, _ = run(["--config", str(cfg), "bound"], capsys)
        assert len(out.strip().splitlines()) == 3

    def test_unknown_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = red\n", encoding="utf-8")
        assert run(["--config", str(cfg), "bound", "--alpha", "1"], capsys)[0] == 2

    def test_malformed(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just words\n", encoding="utf-8")
        assert run(["--config", str(cfg), "bound", "--alpha", "1"], capsys)[0] == 2


COMMANDS = [
    ["bound", "--alpha", "0.5", "1", "--format", "json"],
    ["exact", "--n", "19", "--seed", "3", "--form", "both", "--format", "csv"],
    ["search", "--n", "30", "--seed", "3", "--restarts", "8", "--search-seed", "4"],
    ["ensemble", "--n", "16", "--trials", "3", "--seed", "2", "--format", "json"],
    ["smoke", "--samples", "5000", "--seed", "3", "--format", "csv"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_byte_identical_across_runs_and_threads(argv, capsys, monkeypatch):
    outputs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("HOPFIELD_THREADS", threads)
        code, out, _ = run(argv, capsys)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]
