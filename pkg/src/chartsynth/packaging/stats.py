"""Dataset statistics report.

Counts are kept exact; per-chart averages and token lengths are derived on
demand and only rounded when the report is rendered. The token counter is
injected because matching any proprietary tokenizer is out of scope; the
default counts whitespace-separated tokens and says so in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .manifest import DatasetManifest


def whitespace_tokens(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class StatsReport:
    split: str
    tokenizer_name: str
    total_charts: int
    majors_covered: int
    minors_covered: int
    minor_counts: dict[str, int] = field(default_factory=dict)
    overlay_count: int = 0
    multiplot_count: int = 0
    avg_width: float = 0.0
    avg_height: float = 0.0
    unique_questions: int = 0
    reco_count: int = 0
    reas_count: int = 0
    avg_reco_question_tokens: float = 0.0
    avg_reco_answer_tokens: float = 0.0
    avg_reas_question_tokens: float = 0.0
    avg_reas_answer_tokens: float = 0.0

    @property
    def reco_per_chart(self) -> float:
        return self.reco_count / self.total_charts if self.total_charts else 0.0

    @property
    def reas_per_chart(self) -> float:
        return self.reas_count / self.total_charts if self.total_charts else 0.0


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def compute_stats(manifest: DatasetManifest, tokenizer=whitespace_tokens, tokenizer_name: str = "whitespace") -> StatsReport:
    charts = manifest.charts
    qa = manifest.qa
    minor_counts: dict[str, int] = {}
    for chart in charts:
        minor_counts[chart.chart_type.minor] = minor_counts.get(chart.chart_type.minor, 0) + 1

    reco = [entry for entry in qa if entry.orientation == "recognition"]
    reas = [entry for entry in qa if entry.orientation == "reasoning"]

    return StatsReport(
        split=manifest.split,
        tokenizer_name=tokenizer_name,
        total_charts=len(charts),
        majors_covered=len({c.chart_type.major for c in charts}),
        minors_covered=len(minor_counts),
        minor_counts=dict(sorted(minor_counts.items())),
        overlay_count=sum(1 for c in charts if c.is_overlay),
        multiplot_count=sum(1 for c in charts if c.is_multiplot),
        avg_width=_mean(c.width for c in charts),
        avg_height=_mean(c.height for c in charts),
        unique_questions=len(qa),
        reco_count=len(reco),
        reas_count=len(reas),
        avg_reco_question_tokens=_mean(tokenizer(e.question) for e in reco),
        avg_reco_answer_tokens=_mean(tokenizer(e.answer) for e in reco),
        avg_reas_question_tokens=_mean(tokenizer(e.question) for e in reas),
        avg_reas_answer_tokens=_mean(tokenizer(e.answer) for e in reas),
    )


def render_stats_block(stats: StatsReport) -> str:
    """Human-readable block, two-decimal display, stable bytes."""
    lines = [
        f"Dataset statistics ({stats.split} split)",
        f"Total charts            {stats.total_charts}",
        f"  Chart types           {stats.majors_covered} / {stats.minors_covered}",
        f"  Overlay plots         {stats.overlay_count}",
        f"  Multiple plots        {stats.multiplot_count}",
        f"  Average size (px)     {stats.avg_width:.2f} x {stats.avg_height:.2f}",
        f"Unique questions        {stats.unique_questions}",
        f"  Reco. per chart       {stats.reco_per_chart:.2f}",
        f"  Reas. per chart       {stats.reas_per_chart:.2f}",
        f"Avg. Reco. Q. length    {stats.avg_reco_question_tokens:.2f}",
        f"Avg. Reco. A. length    {stats.avg_reco_answer_tokens:.2f}",
        f"Avg. Reas. Q. length    {stats.avg_reas_question_tokens:.2f}",
        f"Avg. Reas. A. length    {stats.avg_reas_answer_tokens:.2f}",
        f"Token counter           {stats.tokenizer_name} (approximate)",
    ]
    return "\n".join(lines) + "\n"
