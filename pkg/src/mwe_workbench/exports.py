"""Analysis report exporters: flat tables, a JSON bundle, and an SVG histogram.

Outputs are deterministic byte for byte, so exported files diff cleanly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .analysis import AnalysisReport, ScoreHistogram


class UnwritableTargetError(OSError):
    """The output directory cannot be created or written."""


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def export_report(report: AnalysisReport, outdir: str | Path) -> list[Path]:
    """Write the full report bundle into ``outdir`` and return the paths."""
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        probe = outdir / ".write-probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as exc:
        raise UnwritableTargetError(f"cannot write to {outdir}: {exc}") from exc

    written: list[Path] = []

    def _write(name: str, text: str) -> None:
        path = outdir / name
        path.write_text(text, encoding="utf-8")
        written.append(path)

    _write(
        "report.json",
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n",
    )

    axes = [g.value for g in report.cube.axes]
    lines = ["\t".join([*axes, "count", "held_out_mean", "color_scalar", "member_ids"])]
    for point in report.cube.points:
        lines.append(
            "\t".join(
                [
                    *[str(k) for k in point.key],
                    str(point.count),
                    _fmt(point.held_out_mean),
                    _fmt(point.color_scalar),
                    ",".join(point.member_ids),
                ]
            )
        )
    _write("cube.tsv", "\n".join(lines) + "\n")

    lines = ["score\tcount"]
    for score, count in report.histogram.counts:
        lines.append(f"{score}\t{count}")
    _write("histogram.tsv", "\n".join(lines) + "\n")

    lines = ["criterion\tcount"]
    for code in report.criterion_sums.ranked:
        lines.append(f"{code}\t{report.criterion_sums.counts[code]}")
    _write("criterion_sums.tsv", "\n".join(lines) + "\n")

    lines = ["group\ttotal\tshare"]
    for group, total in sorted(report.group_totals.totals.items()):
        lines.append(f"{group}\t{total}\t{_fmt(report.group_totals.shares[group])}")
    _write("group_totals.tsv", "\n".join(lines) + "\n")

    _write("histogram.svg", histogram_svg(report.histogram))
    return written


# SVG layout constants.
_BAR_W = 36
_BAR_GAP = 10
_PLOT_H = 220
_MARGIN = 40


def histogram_svg(histogram: ScoreHistogram, title: str = "Records per total score") -> str:
    """A plain static SVG bar chart, one labeled bar per observed score."""
    scores = [s for s, _c in histogram.counts]
    counts = {s: c for s, c in histogram.counts}
    lo, hi = min(scores), max(scores)
    bars = list(range(lo, hi + 1))
    max_count = max(counts.values())
    width = _MARGIN * 2 + len(bars) * (_BAR_W + _BAR_GAP)
    height = _PLOT_H + 2 * _MARGIN

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width // 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN + _PLOT_H}" x2="{width - _MARGIN}" '
        f'y2="{_MARGIN + _PLOT_H}" stroke="#333" stroke-width="1"/>',
    ]
    for i, score in enumerate(bars):
        count = counts.get(score, 0)
        bar_h = 0 if max_count == 0 else round(_PLOT_H * count / max_count)
        x = _MARGIN + i * (_BAR_W + _BAR_GAP)
        y = _MARGIN + _PLOT_H - bar_h
        parts.append(
            f'<rect x="{x}" y="{y}" width="{_BAR_W}" height="{bar_h}" fill="#4878a8"/>'
        )
        parts.append(
            f'<text x="{x + _BAR_W // 2}" y="{_MARGIN + _PLOT_H + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{score}</text>'
        )
        if count:
            parts.append(
                f'<text x="{x + _BAR_W // 2}" y="{y - 4}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">{count}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
