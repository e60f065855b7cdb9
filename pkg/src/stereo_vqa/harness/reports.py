from __future__ import annotations

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional

from stereo_vqa.config.models import HV3DConfig
from stereo_vqa.domain.models import BatchResult, CorrelationReport, EntryResult, FrameComponents, FrameScore, SequenceScore

COMPONENT_COLUMNS = tuple(FrameComponents.__dataclass_fields__)
SCORE_COLUMNS = ("id", "status", "mean_normalized", "mean_raw") + COMPONENT_COLUMNS + ("mos",)
FIT_COLUMNS = ("id", "objective", "mos", "fitted")


def _number(value: Optional[float]) -> str:
    # repr round-trips a float exactly, matching what json emits.
    return "" if value is None else repr(float(value))


def frame_to_dict(score: FrameScore) -> Dict[str, Any]:
    return {
        "index": score.index,
        "raw": score.raw,
        "max": score.max,
        "normalized": score.normalized,
        "components": score.components.as_dict(),
        "contributions": dict(score.contributions),
    }


def sequence_to_dict(score: SequenceScore) -> Dict[str, Any]:
    return {
        "mean_normalized": score.mean_normalized,
        "mean_raw": score.mean_raw,
        "component_means": score.component_means(),
        "per_frame": [frame_to_dict(frame) for frame in score.per_frame],
    }


def entry_to_dict(entry: EntryResult) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "id": entry.entry_id,
        "status": "ok" if entry.ok else "failed",
        "mos": entry.mos,
    }
    if entry.score is not None:
        payload.update(sequence_to_dict(entry.score))
    else:
        payload["error"] = entry.error
    return payload


def correlation_to_dict(report: CorrelationReport) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "spearman_rho": report.spearman_rho,
        "pearson_r_raw": report.pearson_r_raw,
        "baseline_2d_spearman_rho": report.baseline_spearman_rho,
        "pearson_r_after_fit": report.pearson_r_after_fit,
        "rmse_after_fit": report.rmse_after_fit,
        "points": [asdict(point) for point in report.points],
    }
    if report.logistic is not None:
        fit = report.logistic
        payload["logistic"] = {
            "a": fit.a,
            "b": fit.b,
            "c": fit.c,
            "d": fit.d,
            "converged": fit.converged,
            "evaluations": fit.evaluations,
        }
    return payload


def config_to_dict(config: HV3DConfig) -> Dict[str, Any]:
    return {
        "weights": {"w1": config.w1, "w2": config.w2, "w3": config.w3, "w4": config.w4},
        "beta": config.beta,
        "block": config.block,
        "window": config.variance_window,
        "geometry": asdict(config.geometry),
        "vif": asdict(config.vif),
        "matching": asdict(config.matching),
    }


def score_row(entry: EntryResult) -> List[str]:
    if entry.score is None:
        return [entry.entry_id, "failed", "", ""] + [""] * len(COMPONENT_COLUMNS) + [_number(entry.mos)]
    means = entry.score.component_means()
    return (
        [entry.entry_id, "ok", _number(entry.score.mean_normalized), _number(entry.score.mean_raw)]
        + [_number(means[name]) for name in COMPONENT_COLUMNS]
        + [_number(entry.mos)]
    )


def write_scores_csv(entries: List[EntryResult], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as file_handle:
        writer = csv.writer(file_handle, lineterminator="\n")
        writer.writerow(SCORE_COLUMNS)
        for entry in entries:
            writer.writerow(score_row(entry))


def write_fit_points(report: CorrelationReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as file_handle:
        writer = csv.writer(file_handle, lineterminator="\n")
        writer.writerow(FIT_COLUMNS)
        for point in report.points:
            writer.writerow([point.entry_id, _number(point.objective), _number(point.mos), _number(point.fitted)])


def write_json(payload: Dict[str, Any], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n", encoding="utf-8")


def write_batch_reports(result: BatchResult, config: HV3DConfig, out_dir: Path) -> List[Path]:
    scores_path = out_dir / "scores.csv"
    report_path = out_dir / "report.json"
    write_scores_csv(result.entries, scores_path)
    payload: Dict[str, Any] = {
        "config": config_to_dict(config),
        "entries": [entry_to_dict(entry) for entry in result.entries],
    }
    written = [scores_path, report_path]
    if result.report is not None:
        payload["correlation"] = correlation_to_dict(result.report)
        fit_path = out_dir / "fit_points.csv"
        write_fit_points(result.report, fit_path)
        written.append(fit_path)
    write_json(payload, report_path)
    return written


def write_sequence_reports(entry: EntryResult, config: HV3DConfig, out_dir: Path) -> List[Path]:
    return write_batch_reports(BatchResult(entries=[entry]), config, out_dir)
