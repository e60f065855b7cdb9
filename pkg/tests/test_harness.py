import csv
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stereo_vqa.config.models import AppConfig
from stereo_vqa.distort.operations import awgn
from stereo_vqa.domain.errors import ManifestError, PreconditionError
from stereo_vqa.harness import runner
from stereo_vqa.harness.manifest import MANIFEST_COLUMNS, load_manifest
from stereo_vqa.harness.runner import correlate, run_manifest
from stereo_vqa.harness.statistics import logistic, logistic_fit, pearson, rmse, spearman
from synthetic import map_views, ramp_disparity, stereo_frame, write_stereo_files

LADDER_SIGMAS = (2.0, 5.0, 10.0, 20.0, 40.0)
LADDER_MOS = (4.6, 4.1, 3.3, 2.2, 1.1)


def manifest_row(entry_id, reference, distorted, mos="", size=64, frames=1):
    return {
        "id": entry_id,
        "ref_left": reference["left"].name,
        "ref_right": reference["right"].name,
        "ref_disp": reference["disp"].name,
        "dist_left": distorted["left"].name,
        "dist_right": distorted["right"].name,
        "dist_disp": distorted["disp"].name,
        "width": size,
        "height": size,
        "frames": frames,
        "mos": mos,
    }


def write_manifest(path, rows):
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=MANIFEST_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return path


@pytest.fixture()
def ladder_manifest(tmp_path, rng):
    clip = stereo_frame(rng, disparity=ramp_disparity())
    reference = write_stereo_files(tmp_path, [clip], "ref")
    rows = []
    for rung, (sigma, mos) in enumerate(zip(LADDER_SIGMAS, LADDER_MOS)):
        distorted = map_views(clip, lambda frame, seed: awgn(frame, sigma, seed), seed=100 + rung)
        files = write_stereo_files(tmp_path, [distorted], f"awgn{rung}")
        rows.append(manifest_row(f"awgn{rung}", reference, files, mos))
    return write_manifest(tmp_path / "manifest.csv", rows)


def test_spearman_perfect_order():
    assert spearman([0.1, 0.4, 0.5, 0.9], [1.0, 2.0, 2.5, 4.0]) == 1.0


def test_spearman_small_example():
    assert spearman([1, 2, 3], [3, 1, 2]) == pytest.approx(-0.5, abs=1e-15)


def test_spearman_constant_side_is_zero():
    assert spearman([1, 2, 3, 4], [2, 2, 2, 2]) == 0.0


def test_spearman_averages_tied_ranks():
    assert spearman([1, 2, 2, 3], [1, 2, 3, 4]) == pytest.approx(4.5 / np.sqrt(22.5))


@settings(deadline=None, max_examples=60)
@given(st.lists(st.integers(-1000, 1000), min_size=3, max_size=20, unique=True), st.randoms())
def test_spearman_ignores_increasing_transforms(values, random):
    mos = [random.uniform(0, 5) for _ in values]
    cubed = [float(value) ** 3 + 2.0 * value for value in values]
    assert spearman(cubed, mos) == spearman(values, mos)


def test_spearman_preconditions():
    with pytest.raises(PreconditionError):
        spearman([1, 2], [1, 2])
    with pytest.raises(PreconditionError):
        spearman([1, 2, 3], [1, 2])


def test_pearson():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson([1, 2, 3], [5, 5, 5]) == 0.0


def test_logistic_fit_recovers_noise_free_curve():
    objective = np.linspace(0.2, 0.95, 15)
    mos = logistic(objective, 1.0, 3.5, 6.0, 0.55)

    fit = logistic_fit(objective, mos)

    assert rmse(fit.fitted, mos) < 1e-6
    assert len(fit.fitted) == 15
    assert fit.evaluations > 0


def test_logistic_fit_does_not_hurt_linear_data():
    objective = np.linspace(0.0, 1.0, 8)
    mos = 1.0 + 3.0 * objective
    fit = logistic_fit(objective, mos)
    assert fit.pearson_r >= pearson(objective, mos) - 1e-3


def test_logistic_fit_reports_exhausted_budget():
    objective = np.linspace(0.2, 0.95, 15)
    mos = logistic(objective, 1.0, 3.5, 6.0, 0.55)
    fit = logistic_fit(objective, mos, max_evaluations=5)
    assert not fit.converged
    assert len(fit.params) == 4


def test_logistic_fit_needs_five_points():
    with pytest.raises(PreconditionError):
        logistic_fit([0.1, 0.2, 0.3, 0.4], [1, 2, 3, 4])


def test_manifest_resolves_relative_paths(tmp_path):
    path = write_manifest(
        tmp_path / "list.csv",
        [
            {
                "id": "a",
                "ref_left": "ref_l.yuv",
                "ref_right": "/data/ref_r.yuv",
                "ref_disp": "AUTO",
                "dist_left": "d_l.yuv",
                "dist_right": "d_r.yuv",
                "dist_disp": "maps/d_{:04d}.pgm",
                "width": 64,
                "height": 32,
                "frames": 3,
                "mos": "",
            }
        ],
    )
    manifest = load_manifest(path)
    entry = manifest.entries[0]
    assert entry.reference.left_path == tmp_path / "ref_l.yuv"
    assert str(entry.reference.right_path) == "/data/ref_r.yuv"
    assert entry.reference.disparity_mode == "estimate"
    assert entry.distorted.disparity_source == str(tmp_path / "maps/d_{:04d}.pgm")
    assert entry.mos is None
    assert not manifest.has_mos


def _rows(count, mos):
    files = {"left": Path("l.yuv"), "right": Path("r.yuv"), "disp": Path("auto")}
    return [manifest_row(f"e{index}", files, files, mos[index]) for index in range(count)]


def test_manifest_rejects_duplicate_ids(tmp_path):
    rows = _rows(2, ["", ""])
    rows[1]["id"] = "e0"
    with pytest.raises(ManifestError, match="Duplicate"):
        load_manifest(write_manifest(tmp_path / "m.csv", rows))


def test_manifest_needs_mos_everywhere_or_nowhere(tmp_path):
    with pytest.raises(ManifestError):
        load_manifest(write_manifest(tmp_path / "m.csv", _rows(2, ["3.5", ""])))


@pytest.mark.parametrize("field, value", [("mos", "5.5"), ("mos", "good"), ("width", "wide"), ("width", "63"), ("frames", "0")])
def test_manifest_rejects_bad_values(tmp_path, field, value):
    rows = _rows(1, ["3.0"])
    rows[0][field] = value
    with pytest.raises(ManifestError):
        load_manifest(write_manifest(tmp_path / "m.csv", rows))


def test_manifest_requires_header_columns(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("id,ref_left\nx,y\n", encoding="utf-8")
    with pytest.raises(ManifestError, match="missing columns"):
        load_manifest(path)


def test_missing_manifest(tmp_path):
    with pytest.raises(ManifestError):
        load_manifest(tmp_path / "absent.csv")


def test_single_entry_without_mos_has_no_correlation(tmp_path, textured_stereo):
    reference = write_stereo_files(tmp_path, [textured_stereo], "ref")
    manifest = load_manifest(write_manifest(tmp_path / "m.csv", [manifest_row("self", reference, reference)]))

    result = run_manifest(manifest, AppConfig(), out_dir=tmp_path / "out")

    assert result.report is None
    assert result.entries[0].score.mean_normalized == pytest.approx(1.0, abs=1e-9)
    assert (tmp_path / "out" / "scores.csv").exists()
    assert not (tmp_path / "out" / "fit_points.csv").exists()
    assert "correlation" not in json.loads((tmp_path / "out" / "report.json").read_text())


def test_ladder_ranks_perfectly(tmp_path, ladder_manifest):
    result = run_manifest(load_manifest(ladder_manifest), AppConfig(), out_dir=tmp_path / "out")

    scores = [entry.score.mean_normalized for entry in result.entries]
    assert all(later < earlier for earlier, later in zip(scores, scores[1:]))
    assert result.report.spearman_rho == 1.0
    assert result.report.logistic is not None
    assert len(result.report.points) == 5
    assert -1.0 <= result.report.baseline_spearman_rho <= 1.0

    with (tmp_path / "out" / "fit_points.csv").open(encoding="utf-8") as handle:
        points = list(csv.DictReader(handle))
    assert [row["id"] for row in points] == [f"awgn{rung}" for rung in range(5)]


def test_csv_rows_match_json_report(tmp_path, ladder_manifest):
    run_manifest(load_manifest(ladder_manifest), AppConfig(), out_dir=tmp_path / "out")

    report = json.loads((tmp_path / "out" / "report.json").read_text(encoding="utf-8"))
    with (tmp_path / "out" / "scores.csv").open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))

    assert len(rows) == len(report["entries"])
    for row, entry in zip(rows, report["entries"]):
        assert row["id"] == entry["id"]
        assert float(row["mean_normalized"]) == entry["mean_normalized"]
        assert float(row["mean_raw"]) == entry["mean_raw"]
        for name, value in entry["component_means"].items():
            assert float(row[name]) == value
        assert float(row["mos"]) == entry["mos"]


def test_batch_is_deterministic(tmp_path, ladder_manifest):
    manifest = load_manifest(ladder_manifest)
    run_manifest(manifest, AppConfig(), out_dir=tmp_path / "first")
    run_manifest(manifest, AppConfig().with_threads(1), out_dir=tmp_path / "second")
    assert (tmp_path / "first" / "scores.csv").read_bytes() == (tmp_path / "second" / "scores.csv").read_bytes()


def test_failed_entries_are_recorded_and_skipped(tmp_path, ladder_manifest):
    with ladder_manifest.open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    rows[2]["dist_left"] = "missing.yuv"
    manifest = load_manifest(write_manifest(tmp_path / "broken.csv", rows))

    result = run_manifest(manifest, AppConfig(), out_dir=tmp_path / "out")

    assert [entry.entry_id for entry in result.failures] == ["awgn2"]
    assert "missing.yuv" in result.failures[0].error
    assert len(result.report.points) == 4
    assert result.report.logistic is None
    assert result.report.spearman_rho == 1.0


def test_malformed_disparity_pattern_fails_only_its_row(tmp_path, ladder_manifest):
    with ladder_manifest.open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    rows[1]["dist_disp"] = "maps/{frame:04d}.pgm"
    manifest = load_manifest(write_manifest(tmp_path / "pattern.csv", rows))

    result = run_manifest(manifest, AppConfig(), out_dir=tmp_path / "out")

    assert [entry.entry_id for entry in result.failures] == ["awgn1"]
    assert "Bad disparity pattern" in result.failures[0].error
    assert len(result.report.points) == 4
    assert (tmp_path / "out" / "scores.csv").exists()


def test_unexpected_errors_are_recorded_per_entry(tmp_path, ladder_manifest, monkeypatch):
    real_score_specs = runner.score_specs

    def flaky(reference, distorted, config, **kwargs):
        if kwargs.get("label") == "awgn3":
            raise KeyError("index")
        return real_score_specs(reference, distorted, config, **kwargs)

    monkeypatch.setattr(runner, "score_specs", flaky)

    result = run_manifest(load_manifest(ladder_manifest), AppConfig(), out_dir=tmp_path / "out")

    assert [entry.entry_id for entry in result.failures] == ["awgn3"]
    assert "index" in result.failures[0].error
    assert result.report.spearman_rho == 1.0


def test_correlation_needs_three_scored_entries(tmp_path, ladder_manifest):
    result = run_manifest(load_manifest(ladder_manifest), AppConfig())
    assert correlate(result.entries[:2]) is None
    assert correlate(result.entries[:3]).logistic is None
