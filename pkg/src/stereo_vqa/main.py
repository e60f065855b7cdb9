from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Optional

from stereo_vqa.config.loader import resolve_config
from stereo_vqa.config.models import AppConfig
from stereo_vqa.distort.operations import distort_sequence, parse_spec
from stereo_vqa.domain.errors import exit_code_for
from stereo_vqa.domain.models import EntryResult, SequenceSpec
from stereo_vqa.harness.manifest import load_manifest
from stereo_vqa.harness.reports import write_sequence_reports
from stereo_vqa.harness.runner import run_manifest
from stereo_vqa.media.pgm import write_pgm
from stereo_vqa.media.yuv import read_yuv_frames, write_yuv_sequence
from stereo_vqa.metrics.cyclopean import build_csf_mask
from stereo_vqa.metrics.disparity import estimate_disparity
from stereo_vqa.scoring.pipeline import score_specs
from stereo_vqa.services.log_setup import configure_logging
from stereo_vqa.services.presenter import ConsolePresenter, ConsoleScoringObserver

EXIT_OK = 0
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML settings or key=value override file")
    parser.add_argument("--threads", type=int, help="Worker cap (0 = all cores)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug logs")


def _add_geometry(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--width", type=int, required=True)
    parser.add_argument("--height", type=int, required=True)
    parser.add_argument("--frames", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stereo-vqa", description="Full-reference stereoscopic video quality (HV3D)")
    commands = parser.add_subparsers(dest="command", required=True)

    score = commands.add_parser("score", help="Score a distorted stereo sequence against its reference")
    score.add_argument("--ref-left", required=True)
    score.add_argument("--ref-right", required=True)
    score.add_argument("--dist-left", required=True)
    score.add_argument("--dist-right", required=True)
    score.add_argument("--ref-disp", default="auto", help="Directory or {index} pattern of PGM maps, or 'auto'")
    score.add_argument("--dist-disp", default="auto", help="Directory or {index} pattern of PGM maps, or 'auto'")
    score.add_argument("--out", help="Directory for report.json and scores.csv")
    _add_geometry(score)
    _add_common(score)

    distort = commands.add_parser("distort", help="Write a distorted copy of a YUV file")
    distort.add_argument("--in", dest="input", required=True)
    distort.add_argument("--out", required=True)
    distort.add_argument("--spec", required=True, help="kind:magnitude[:seed], e.g. awgn:10:42, blur:1.5, shift:-12")
    _add_geometry(distort)
    distort.add_argument("-v", "--verbose", action="count", default=0)

    estimate = commands.add_parser("estimate-disp", help="Estimate per-frame disparity maps by SAD block matching")
    estimate.add_argument("--left", required=True)
    estimate.add_argument("--right", required=True)
    estimate.add_argument("--out-dir", required=True)
    estimate.add_argument("--max-disp", type=int, help="Largest disparity searched, 1..128")
    _add_geometry(estimate)
    _add_common(estimate)

    batch = commands.add_parser("batch", help="Score a manifest and correlate with MOS")
    batch.add_argument("--manifest", required=True)
    batch.add_argument("--out", required=True)
    _add_common(batch)

    mask = commands.add_parser("mask-dump", help="Print the 4x4 CSF mask as CSV")
    mask.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def resolve_config_path(config_argument: Optional[str]) -> Optional[Path]:
    if not config_argument:
        return None
    config_path = Path(config_argument)
    if config_path.exists():
        return config_path
    package_root = Path(__file__).resolve().parents[2]
    candidate = package_root / config_argument
    if candidate.exists():
        return candidate
    return config_path


def _config(args: argparse.Namespace) -> AppConfig:
    config = resolve_config(resolve_config_path(getattr(args, "config", None)))
    return config.with_threads(getattr(args, "threads", None))


def cmd_score(args: argparse.Namespace) -> int:
    config = _config(args)
    reference = SequenceSpec(
        left_path=Path(args.ref_left),
        right_path=Path(args.ref_right),
        width=args.width,
        height=args.height,
        frame_count=args.frames,
        disparity_source=args.ref_disp,
    )
    distorted = SequenceSpec(
        left_path=Path(args.dist_left),
        right_path=Path(args.dist_right),
        width=args.width,
        height=args.height,
        frame_count=args.frames,
        disparity_source=args.dist_disp,
    )
    observer = ConsoleScoringObserver() if args.verbose else None
    label = Path(args.dist_left).stem
    score = score_specs(reference, distorted, config, observer=observer, label=label)
    if args.verbose:
        ConsolePresenter().present_sequence(label, score)
    if args.out:
        write_sequence_reports(EntryResult(entry_id=label, score=score), config.hv3d, Path(args.out))
    print(f"{score.mean_normalized:.6f}")
    return EXIT_OK


def cmd_distort(args: argparse.Namespace) -> int:
    spec = parse_spec(args.spec)
    frames = read_yuv_frames(Path(args.input), args.width, args.height, args.frames)
    write_yuv_sequence(distort_sequence(frames, spec), Path(args.out))
    return EXIT_OK


def cmd_estimate_disp(args: argparse.Namespace) -> int:
    config = _config(args)
    matching = config.hv3d.matching
    max_disp = args.max_disp if args.max_disp is not None else matching.max_disp
    left = read_yuv_frames(Path(args.left), args.width, args.height, args.frames)
    right = read_yuv_frames(Path(args.right), args.width, args.height, args.frames)
    out_dir = Path(args.out_dir)
    for index, (left_frame, right_frame) in enumerate(zip(left, right)):
        disparity = estimate_disparity(left_frame.y, right_frame.y, max_disp, matching.estimate_block)
        write_pgm(disparity, out_dir / f"{index:04d}.pgm")
    return EXIT_OK


def cmd_batch(args: argparse.Namespace) -> int:
    config = _config(args)
    manifest = load_manifest(Path(args.manifest))
    result = run_manifest(manifest, config, out_dir=Path(args.out), observer=ConsoleScoringObserver() if args.verbose else None)
    ConsolePresenter().present_batch(result)
    return EXIT_OK


def cmd_mask_dump(args: argparse.Namespace) -> int:
    for row in build_csf_mask().coefficients:
        print(",".join(repr(float(value)) for value in row))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "score": cmd_score,
    "distort": cmd_distort,
    "estimate-disp": cmd_estimate_disp,
    "batch": cmd_batch,
    "mask-dump": cmd_mask_dump,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except Exception as exc:  # noqa: BLE001 - CLI entry point should surface the real error.
        print(f"Fatal Error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    raise SystemExit(main())
