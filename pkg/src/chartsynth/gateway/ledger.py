"""Cost accounting: price sheets, the usage ledger, and cent-exact reports.

All money values are ``Decimal`` USD. Each step is rounded half-up to whole
cents and the report total is the sum of the rounded steps; that is the only
rounding rule consistent with published per-step price tables where, e.g.,
an unrounded 9.375 must print as 9.38.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP

from .messages import Usage

CENT = Decimal("0.01")
TOKENS_PER_PRICE_UNIT = Decimal(1_000_000)

# Canonical report ordering for the steps the pipeline itself records.
KNOWN_STEP_ORDER = (
    "self-instruct",
    "evol-instruct",
    "self-repair",
    "reas-qa-gen",
    "reco-qa-gen",
    "chart-rating",
    "qa-rating",
    "eval-candidate",
    "eval-judge",
    "error-classify",
)


def _as_money(value) -> Decimal:
    return value if isinstance(value, Decimal) else Decimal(str(value))


@dataclass(frozen=True)
class PriceSheet:
    """USD per one million input/output tokens."""

    input_usd_per_million: Decimal
    output_usd_per_million: Decimal

    def __post_init__(self):
        object.__setattr__(self, "input_usd_per_million", _as_money(self.input_usd_per_million))
        object.__setattr__(self, "output_usd_per_million", _as_money(self.output_usd_per_million))
        if self.input_usd_per_million < 0 or self.output_usd_per_million < 0:
            raise ValueError("prices must be non-negative")


@dataclass
class LedgerEntry:
    calls: int = 0
    prompt_tokens: int = 0
    completion_tokens: int = 0


@dataclass
class CostLedger:
    """Per-step accumulator of calls and token usage.

    Mutations are funnelled through one lock so concurrent pipeline workers
    can share a single ledger.
    """

    price: PriceSheet
    entries: dict[str, LedgerEntry] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, step_label: str, usage: Usage) -> "CostLedger":
        with self._lock:
            entry = self.entries.setdefault(step_label, LedgerEntry())
            entry.calls += 1
            entry.prompt_tokens += usage.prompt_tokens
            entry.completion_tokens += usage.completion_tokens
        return self


def record_usage(ledger: CostLedger, step_label: str, usage: Usage) -> CostLedger:
    """Add one call's usage to the ledger entry for ``step_label``."""
    return ledger.record(step_label, usage)


def estimate_cost(avg_in: int, avg_out: int, times: int, price: PriceSheet) -> Decimal:
    """Projected USD cost of running a step ``times`` times, rounded to cents."""
    if avg_in < 0 or avg_out < 0 or times < 0:
        raise ValueError("token counts and times must be non-negative")
    raw = (
        Decimal(times)
        * (Decimal(avg_in) * price.input_usd_per_million + Decimal(avg_out) * price.output_usd_per_million)
        / TOKENS_PER_PRICE_UNIT
    )
    return raw.quantize(CENT, rounding=ROUND_HALF_UP)


def _entry_cost(entry: LedgerEntry, price: PriceSheet) -> Decimal:
    raw = (
        Decimal(entry.prompt_tokens) * price.input_usd_per_million
        + Decimal(entry.completion_tokens) * price.output_usd_per_million
    ) / TOKENS_PER_PRICE_UNIT
    return raw.quantize(CENT, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class CostReportRow:
    step: str
    calls: int
    prompt_tokens: int
    completion_tokens: int
    cost: Decimal


@dataclass(frozen=True)
class CostReport:
    rows: tuple[CostReportRow, ...]
    total: Decimal

    def cost_of(self, step: str) -> Decimal:
        for row in self.rows:
            if row.step == step:
                return row.cost
        raise KeyError(step)


def _step_sort_key(label: str):
    try:
        return (0, KNOWN_STEP_ORDER.index(label))
    except ValueError:
        return (1, label)


def report_cost(ledger: CostLedger) -> CostReport:
    """Per-step costs (rounded to cents) plus their sum."""
    rows = []
    for label in sorted(ledger.entries, key=_step_sort_key):
        entry = ledger.entries[label]
        rows.append(
            CostReportRow(
                step=label,
                calls=entry.calls,
                prompt_tokens=entry.prompt_tokens,
                completion_tokens=entry.completion_tokens,
                cost=_entry_cost(entry, ledger.price),
            )
        )
    total = sum((row.cost for row in rows), Decimal("0.00"))
    return CostReport(rows=tuple(rows), total=total)


def render_cost_report(report: CostReport) -> str:
    """Fixed-width text table; stable bytes for identical reports."""
    lines = [f"{'step':<16} {'calls':>7} {'prompt_tok':>12} {'completion_tok':>15} {'cost_usd':>10}"]
    for row in report.rows:
        lines.append(
            f"{row.step:<16} {row.calls:>7} {row.prompt_tokens:>12} "
            f"{row.completion_tokens:>15} {str(row.cost):>10}"
        )
    lines.append(f"{'total':<16} {'':>7} {'':>12} {'':>15} {str(report.total):>10}")
    return "\n".join(lines) + "\n"
