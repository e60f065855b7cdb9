from __future__ import annotations

from typing import Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from stereo_vqa.domain.models import BatchResult, EntryResult, FrameScore, SequenceScore


def _stderr_console() -> Console:
    return Console(stderr=True)


class ConsoleScoringObserver:
    """Prints scoring progress to standard error in real-time."""

    def __init__(self, console: Optional[Console] = None) -> None:
        self._console = console or _stderr_console()

    def on_sequence_start(self, label: str, frame_count: int) -> None:
        self._console.print(Panel.fit(f"[bold]Scoring:[/bold] {label} ({frame_count} frames)", border_style="cyan"))

    def on_frame(self, score: FrameScore) -> None:
        components = score.components
        self._console.print(
            f"[dim]frame {score.index:4d}  HV3D {score.normalized:.6f}  "
            f"cyclopean {components.cyclopean:.4f}  VIF(D) {components.vif_disparity:.4f}  "
            f"S {components.variance_term:.4f}[/dim]"
        )

    def on_entry(self, result: EntryResult) -> None:
        if result.score is not None:
            self._console.print(f"[green]✔[/green] {result.entry_id}: {result.score.mean_normalized:.6f}")

    def on_entry_failed(self, entry_id: str, reason: str) -> None:
        self._console.print(f"[red]✘[/red] {entry_id}: {reason}")


class ConsolePresenter:
    def __init__(self, console: Optional[Console] = None) -> None:
        self._console = console or _stderr_console()

    def present_sequence(self, label: str, score: SequenceScore) -> None:
        table = Table(title=f"HV3D components · {label}", show_lines=False)
        table.add_column("component")
        table.add_column("mean", justify="right")
        for name, value in score.component_means().items():
            table.add_row(name, f"{value:.6f}")
        table.add_row("[bold]normalized HV3D[/bold]", f"[bold]{score.mean_normalized:.6f}[/bold]")
        self._console.print(table)

    def present_batch(self, result: BatchResult) -> None:
        table = Table(title="Batch scores")
        table.add_column("id")
        table.add_column("HV3D", justify="right")
        table.add_column("2D baseline", justify="right")
        table.add_column("MOS", justify="right")
        for entry in result.entries:
            if entry.score is None:
                table.add_row(entry.entry_id, "[red]failed[/red]", "", _optional(entry.mos))
                continue
            baseline = entry.score.component_means()["baseline_2d"]
            table.add_row(entry.entry_id, f"{entry.score.mean_normalized:.6f}", f"{baseline:.6f}", _optional(entry.mos))
        self._console.print(table)

        report = result.report
        if report is None:
            return
        lines = [
            f"[bold]Spearman (HV3D):[/bold] {report.spearman_rho:.4f}",
            f"[bold]Spearman (2D baseline):[/bold] {report.baseline_spearman_rho:.4f}",
            f"[bold]Pearson (raw):[/bold] {report.pearson_r_raw:.4f}",
        ]
        if report.logistic is not None:
            status = "converged" if report.logistic.converged else "[yellow]not converged[/yellow]"
            lines.append(f"[bold]Pearson (logistic fit):[/bold] {report.logistic.pearson_r:.4f} ({status})")
            lines.append(f"[bold]RMSE (logistic fit):[/bold] {report.rmse_after_fit:.4f}")
        self._console.print(Panel.fit("\n".join(lines), border_style="magenta"))


def _optional(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.3f}"
