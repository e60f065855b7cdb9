from stereo_vqa.harness.manifest import MANIFEST_COLUMNS, load_manifest, parse_manifest_rows
from stereo_vqa.harness.reports import write_batch_reports, write_sequence_reports
from stereo_vqa.harness.runner import correlate, run_manifest, score_entry
from stereo_vqa.harness.statistics import logistic, logistic_fit, pearson, rmse, spearman

__all__ = [
    "MANIFEST_COLUMNS",
    "correlate",
    "load_manifest",
    "logistic",
    "logistic_fit",
    "parse_manifest_rows",
    "pearson",
    "rmse",
    "run_manifest",
    "score_entry",
    "spearman",
    "write_batch_reports",
    "write_sequence_reports",
]
