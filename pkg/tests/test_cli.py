"""End-to-end tests for the command-line interface via main([...])."""

from __future__ import annotations

import json

import pytest

import costeval.cli as cli
from costeval.cli import main
from costeval.metrics import KINDS

COUNTS = ["--tp", "30", "--fn", "20", "--fp", "10", "--tn", "40"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMetricsCommand:
    def test_text_output_skips_unavailable_metrics(self, capsys):
        code, out, err = run(capsys, "metrics", *COUNTS)
        assert code == 0
        lines = [line for line in out.splitlines() if line]
        # without costs or a weight distribution only the plain metrics print
        assert len(lines) == 16
        values = dict(line.split() for line in lines)
        assert values["accuracy"] == "0.7"
        assert values["recall"] == "0.6"
        assert "wa" not in values
        assert "ewa" not in values

    def test_costs_unlock_the_cost_metrics(self, capsys):
        code, out, _ = run(capsys, "metrics", *COUNTS, "--cfn", "2", "--cfp", "1")
        assert code == 0
        values = dict(line.split() for line in out.splitlines() if line)
        assert len(values) == 23  # everything except ewa
        assert float(values["wa"]) == pytest.approx(2 / 3)
        assert float(values["c_score"]) == pytest.approx(1.0)

    def test_distribution_unlocks_ewa(self, capsys):
        code, out, _ = run(
            capsys, "metrics", *COUNTS, "--cfn", "2", "--cfp", "1",
            "--beta-alpha", "2", "--beta-beta", "2",
        )
        values = dict(line.split() for line in out.splitlines() if line)
        assert len(values) == len(KINDS) == 24
        assert float(values["ewa"]) == pytest.approx(0.7, abs=1e-9)

    def test_explicit_weight_unlocks_wa_only(self, capsys):
        code, out, _ = run(capsys, "metrics", *COUNTS, "--w", "0.5")
        values = dict(line.split() for line in out.splitlines() if line)
        assert float(values["wa"]) == pytest.approx(0.7)
        assert "msu" not in values

    def test_only_selection(self, capsys):
        code, out, _ = run(capsys, "metrics", *COUNTS, "--only", "precision,recall")
        assert code == 0
        values = dict(line.split() for line in out.splitlines() if line)
        assert set(values) == {"precision", "recall"}

    def test_only_without_context_is_an_error(self, capsys):
        code, _, err = run(capsys, "metrics", *COUNTS, "--only", "msu")
        assert code == 2
        assert "error:" in err

    def test_only_unknown_metric(self, capsys):
        code, _, err = run(capsys, "metrics", *COUNTS, "--only", "f1")
        assert code == 2
        assert "unknown metric" in err

    def test_json_round_trip_with_undefined(self, capsys):
        code, out, _ = run(
            capsys, "metrics", "--tp", "0", "--fn", "5", "--fp", "0", "--tn", "5",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["accuracy"] == pytest.approx(0.5)
        assert payload["precision"] is None

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "metrics", *COUNTS, "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "metric,value"
        assert "accuracy,0.7" in lines

    def test_negative_count_is_a_usage_error(self, capsys):
        code, _, err = run(capsys, "metrics", "--tp", "-1", "--fn", "0", "--fp", "0", "--tn", "5")
        assert code == 2
        assert "error:" in err


class TestWaCommand:
    def test_fixed_weight(self, capsys):
        code, out, _ = run(capsys, "wa", *COUNTS, "--w", "0.5")
        assert code == 0
        assert "w = 0.5" in out
        assert "wa = 0.7" in out

    def test_cost_route_reports_the_tcc_view(self, capsys):
        code, out, _ = run(
            capsys, "wa", *COUNTS, "--cfn", "2", "--cfp", "1", "--format", "json"
        )
        payload = json.loads(out)
        assert payload["w"] == pytest.approx(2 / 3)
        assert payload["wa"] == pytest.approx(2 / 3)
        assert payload["tcc"] == pytest.approx(50.0)
        assert payload["tcc_min"] == 0.0
        assert payload["tcc_max"] == pytest.approx(150.0)

    def test_target_ratio_adjustment(self, capsys):
        code, out, _ = run(
            capsys, "wa", *COUNTS, "--cfn", "2", "--cfp", "1",
            "--r-plus-target", "0.25", "--format", "json",
        )
        payload = json.loads(out)
        assert 0.0 < payload["w_target"] < 1.0
        assert payload["w_target"] != pytest.approx(payload["w"])
        assert 0.0 <= payload["wa_target"] <= 1.0

    def test_weight_and_costs_are_exclusive(self, capsys):
        code, _, err = run(capsys, "wa", *COUNTS, "--w", "0.5", "--cfn", "2", "--cfp", "1")
        assert code == 2
        assert "not both" in err

    def test_needs_some_route(self, capsys):
        code, _, err = run(capsys, "wa", *COUNTS)
        assert code == 2
        assert "--w" in err

    def test_target_needs_costs(self, capsys):
        code, _, err = run(capsys, "wa", *COUNTS, "--w", "0.5", "--r-plus-target", "0.2")
        assert code == 2


class TestEstimateWeightCommand:
    def test_cost_ratio_route(self, capsys):
        code, out, _ = run(capsys, "estimate-weight", "--v", "35")
        assert code == 0
        assert out.strip() == f"w = {35 / 36!r}"

    def test_ranking_route(self, capsys):
        code, out, _ = run(
            capsys, "estimate-weight", "--alpha", "0.6", "--p", "5", "--n", "95",
            "--format", "json",
        )
        payload = json.loads(out)
        assert payload["w_min"] == pytest.approx(57 / 62, abs=1e-12)
        assert payload["w_max"] == pytest.approx(38 / 41, abs=1e-12)
        assert payload["midpoint"] == pytest.approx((57 / 62 + 38 / 41) / 2)

    def test_routes_are_exclusive(self, capsys):
        code, _, err = run(capsys, "estimate-weight", "--v", "2", "--alpha", "0.6")
        assert code == 2
        assert "not both" in err

    def test_ranking_route_needs_all_flags(self, capsys):
        code, _, err = run(capsys, "estimate-weight", "--alpha", "0.6", "--p", "5")
        assert code == 2
        assert "all of" in err

    def test_inverted_bracket_is_a_domain_error(self, capsys):
        code, _, err = run(capsys, "estimate-weight", "--alpha", "0.75", "--p", "5", "--n", "95")
        assert code == 2
        assert "unsatisfiable" in err


@pytest.fixture()
def labeled_csv(tmp_path):
    path = tmp_path / "examples.csv"
    path.write_text(
        "customer,churned,w0\n"
        "a,yes,0.5\n"
        "b,no,0.5\n"
        "c,yes,0.5\n"
        "d,no,0.5\n"
    )
    return path


class TestReweightCommand:
    BASE = ["reweight", "--label-column", "churned", "--positive-label", "yes",
            "--r-plus-target", "0.25"]

    def test_weights_sum_to_one_and_hit_the_target(self, capsys, labeled_csv):
        code, out, err = run(capsys, *self.BASE, "--input", str(labeled_csv))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "id,weight"
        weights = {line.split(",")[0]: float(line.split(",")[1]) for line in lines[1:]}
        assert sum(weights.values()) == pytest.approx(1.0, abs=1e-12)
        # rows 0 and 2 are positive; their mass is the target ratio
        assert weights["0"] + weights["2"] == pytest.approx(0.25, abs=1e-12)
        assert "P=2 N=2" in err

    def test_id_and_weight_columns(self, capsys, labeled_csv):
        code, out, _ = run(
            capsys, *self.BASE, "--input", str(labeled_csv),
            "--id-column", "customer", "--weight-column", "w0",
        )
        assert code == 0
        ids = [line.split(",")[0] for line in out.splitlines()[1:]]
        assert ids == ["a", "b", "c", "d"]

    def test_cost_based_class_weights_report_target_weight(self, capsys, labeled_csv):
        code, _, err = run(
            capsys, *self.BASE, "--input", str(labeled_csv), "--cfn", "4", "--cfp", "1"
        )
        assert code == 0
        assert "w_target=" in err

    def test_out_file(self, capsys, labeled_csv, tmp_path):
        out_path = tmp_path / "weights.csv"
        code, out, _ = run(
            capsys, *self.BASE, "--input", str(labeled_csv), "--out", str(out_path)
        )
        assert code == 0
        assert out == ""
        assert out_path.read_text().startswith("id,weight\n")

    def test_missing_column(self, capsys, labeled_csv):
        code, _, err = run(
            capsys, "reweight", "--input", str(labeled_csv),
            "--label-column", "nope", "--positive-label", "yes",
            "--r-plus-target", "0.25",
        )
        assert code == 2
        assert "no column named" in err

    def test_bad_weight_cell(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("label,w0\nyes,0.5\nno,oops\n")
        code, _, err = run(
            capsys, "reweight", "--input", str(path), "--label-column", "label",
            "--positive-label", "yes", "--r-plus-target", "0.5",
            "--weight-column", "w0",
        )
        assert code == 2
        assert "bad weight" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, *self.BASE, "--input", "/nonexistent/file.csv")
        assert code == 2


HEATMAP_FLAGS = [
    "heatmap", "--n-tot", "20", "--n-samples", "2", "--grid", "0.3,0.7",
    "--metrics", "wa", "--seed", "99", "--kernel", "numpy",
    "--synthetic-revenues", "60,4.0,0.5",
]


class TestHeatmapCommand:
    def test_text_render(self, capsys):
        code, out, err = run(capsys, *HEATMAP_FLAGS)
        assert code == 0
        assert "seed=99 kernel=numpy" in err
        assert out.startswith("wa  (rows: r_C")
        # frozen small grid: 0.978 -> 10, 0.732 -> 7
        assert out.splitlines()[2].split() == ["0.3", "10", "7"]

    def test_out_directory(self, capsys, tmp_path):
        out_dir = tmp_path / "grids"
        code, out, err = run(capsys, *HEATMAP_FLAGS, "--out", str(out_dir))
        assert code == 0
        assert out == ""  # --out defaults the render to none
        assert sorted(p.name for p in out_dir.iterdir()) == ["wa.csv", "wa.json"]
        metadata = json.loads((out_dir / "wa.json").read_text())
        assert metadata["config"]["n_tot"] == 20
        assert metadata["revenues"]["source"] == "synthetic-lognormal"

    def test_flags_override_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n_tot = 30\nn_samples = 2\ngrid = 0.3, 0.7\nmetrics = wa\nseed = 99\n")
        out_dir = tmp_path / "grids"
        code, _, _ = run(
            capsys, "heatmap", "--config", str(cfg), "--n-tot", "20",
            "--kernel", "numpy", "--synthetic-revenues", "60",
            "--out", str(out_dir),
        )
        assert code == 0
        metadata = json.loads((out_dir / "wa.json").read_text())
        assert metadata["config"]["n_tot"] == 20

    def test_missing_revenue_source(self, capsys):
        code, _, err = run(
            capsys, "heatmap", "--n-tot", "20", "--n-samples", "2",
            "--grid", "0.3,0.7", "--metrics", "wa",
        )
        assert code == 2
        assert "revenue source" in err

    def test_bad_synthetic_spec(self, capsys):
        code, _, err = run(capsys, *HEATMAP_FLAGS[:-1], "1,2")
        assert code == 2
        assert "expects" in err

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n_total = 30\n")
        code, _, err = run(capsys, "heatmap", "--config", str(cfg))
        assert code == 2
        assert "unknown config keys" in err


class TestTopLevel:
    def test_missing_subcommand(self, capsys):
        assert main([]) == 2

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "costeval" in out

    def test_internal_errors_exit_one(self, capsys, monkeypatch):
        def boom(config):
            raise RuntimeError("kaput")

        monkeypatch.setattr(cli, "run_heatmap", boom)
        code, _, err = run(capsys, *HEATMAP_FLAGS)
        assert code == 1
        assert "internal error: RuntimeError: kaput" in err
