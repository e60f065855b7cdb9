from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional

from stereo_vqa.config.models import AppConfig
from stereo_vqa.domain.models import BatchResult, CorrelationReport, EntryResult, FitPoint, Manifest, ManifestEntry, ScoringObserver
from stereo_vqa.harness.reports import write_batch_reports
from stereo_vqa.harness.statistics import MIN_FIT_POINTS, MIN_SPEARMAN_POINTS, logistic_fit, pearson, rmse, spearman
from stereo_vqa.scoring.pipeline import score_specs

logger = logging.getLogger(__name__)


def score_entry(entry: ManifestEntry, config: AppConfig, observer: Optional[ScoringObserver] = None) -> EntryResult:
    try:
        score = score_specs(entry.reference, entry.distorted, config, label=entry.entry_id)
    except Exception as exc:  # noqa: BLE001 - one bad row is recorded, the batch goes on.
        logger.warning("Entry %s failed: %s", entry.entry_id, exc)
        if observer:
            observer.on_entry_failed(entry.entry_id, str(exc))
        return EntryResult(entry_id=entry.entry_id, error=str(exc), mos=entry.mos)
    result = EntryResult(entry_id=entry.entry_id, score=score, mos=entry.mos)
    if observer:
        observer.on_entry(result)
    return result


def correlate(results: List[EntryResult]) -> Optional[CorrelationReport]:
    """Spearman on raw objective scores; logistic fit once enough entries survive."""
    scored = [result for result in results if result.ok and result.mos is not None]
    if len(scored) < MIN_SPEARMAN_POINTS:
        if scored:
            logger.warning("Only %d scored entries carry MOS; correlation needs %d.", len(scored), MIN_SPEARMAN_POINTS)
        return None

    objective = [result.score.mean_normalized for result in scored]
    baseline = [result.score.component_means()["baseline_2d"] for result in scored]
    mos = [float(result.mos) for result in scored]

    fit = logistic_fit(objective, mos) if len(scored) >= MIN_FIT_POINTS else None
    fitted = fit.fitted if fit else [None] * len(scored)
    points = [
        FitPoint(entry_id=result.entry_id, objective=value, mos=subjective, fitted=fitted_value)
        for result, value, subjective, fitted_value in zip(scored, objective, mos, fitted)
    ]
    return CorrelationReport(
        spearman_rho=spearman(objective, mos),
        pearson_r_raw=pearson(objective, mos),
        baseline_spearman_rho=spearman(baseline, mos),
        points=points,
        logistic=fit,
        rmse_after_fit=rmse(fit.fitted, mos) if fit else None,
    )


def run_manifest(
    manifest: Manifest,
    config: AppConfig,
    out_dir: Optional[Path] = None,
    observer: Optional[ScoringObserver] = None,
) -> BatchResult:
    """Score every entry (entries in parallel, frames serial) and reduce in manifest order."""
    entry_config = config.with_threads(1)
    workers = min(config.runtime.worker_count, max(1, len(manifest.entries)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda entry: score_entry(entry, entry_config, observer), manifest.entries))
    else:
        results = [score_entry(entry, entry_config, observer) for entry in manifest.entries]

    report = correlate(results) if manifest.has_mos else None
    batch = BatchResult(entries=results, report=report)
    if out_dir is not None:
        for path in write_batch_reports(batch, config.hv3d, out_dir):
            logger.info("Wrote %s", path)
    return batch
