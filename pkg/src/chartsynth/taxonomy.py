"""Chart-type, topic, and evolution-direction registries plus target sampling.

Registries ship as line-oriented data files so the taxonomy can be extended
without code changes. The bundled reference registry is pinned to the exact
cardinalities the pipeline's statistics assume: 10 major chart categories,
32 minor categories, 38 topics, 4 evolution directions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

REFERENCE_COUNTS = {"majors": 10, "minors": 32, "topics": 38, "directions": 4}


@dataclass(frozen=True)
class ChartType:
    major: str
    minor: str


@dataclass(frozen=True)
class EvolutionDirection:
    id: int
    instruction_text: str


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        lines.append(line)
    return lines


def bundled_registry_path(name: str) -> Path:
    return Path(resources.files("chartsynth.assets.registries") / f"{name}.txt")


class TaxonomyRegistry:
    """Immutable after load; safe for concurrent reads."""

    def __init__(
        self,
        chart_types: list[ChartType],
        topics: list[str],
        directions: list[EvolutionDirection],
        enforce_reference_counts: bool = True,
    ):
        self.chart_types = tuple(chart_types)
        self.topics = tuple(topics)
        self.directions = tuple(directions)
        self._validate(enforce_reference_counts)
        self._minor_to_major = {ct.minor: ct.major for ct in self.chart_types}

    def _validate(self, enforce_reference_counts: bool) -> None:
        minors = [ct.minor for ct in self.chart_types]
        if len(set(minors)) != len(minors):
            raise ValueError("minor categories must be unique")
        lowered = [t.lower() for t in self.topics]
        if len(set(lowered)) != len(lowered):
            raise ValueError("topics must be unique (case-insensitive)")
        ids = sorted(d.id for d in self.directions)
        if ids != list(range(1, len(self.directions) + 1)):
            raise ValueError("direction ids must be 1..n without gaps")
        if enforce_reference_counts:
            counts = {
                "majors": len(self.majors()),
                "minors": len(self.chart_types),
                "topics": len(self.topics),
                "directions": len(self.directions),
            }
            if counts != REFERENCE_COUNTS:
                raise ValueError(f"registry cardinalities {counts} != reference {REFERENCE_COUNTS}")

    def majors(self) -> list[str]:
        seen: list[str] = []
        for ct in self.chart_types:
            if ct.major not in seen:
                seen.append(ct.major)
        return seen

    def minors_of(self, major: str) -> list[str]:
        return [ct.minor for ct in self.chart_types if ct.major == major]

    def major_of(self, minor: str) -> str:
        return self._minor_to_major[minor]

    def chart_type(self, minor: str) -> ChartType:
        return ChartType(major=self._minor_to_major[minor], minor=minor)

    def direction(self, direction_id: int) -> EvolutionDirection:
        for d in self.directions:
            if d.id == direction_id:
                return d
        raise KeyError(direction_id)


def load_registry(
    chart_types_path: str | Path | None = None,
    topics_path: str | Path | None = None,
    directions_path: str | Path | None = None,
    enforce_reference_counts: bool = True,
) -> TaxonomyRegistry:
    """Load a registry from data files; ``None`` paths use the bundled assets."""
    ct_path = Path(chart_types_path) if chart_types_path else bundled_registry_path("chart_types")
    tp_path = Path(topics_path) if topics_path else bundled_registry_path("topics")
    dr_path = Path(directions_path) if directions_path else bundled_registry_path("evolution_directions")

    chart_types = []
    for line in _data_lines(ct_path.read_text(encoding="utf-8")):
        major, _, minor = line.partition("\t")
        if not minor:
            raise ValueError(f"bad chart-type line (want 'major<TAB>minor'): {line!r}")
        chart_types.append(ChartType(major=major.strip(), minor=minor.strip()))

    topics = [line.strip() for line in _data_lines(tp_path.read_text(encoding="utf-8"))]

    directions = []
    for line in _data_lines(dr_path.read_text(encoding="utf-8")):
        ident, _, text = line.partition("\t")
        if not text:
            raise ValueError(f"bad direction line (want 'id<TAB>text'): {line!r}")
        directions.append(EvolutionDirection(id=int(ident), instruction_text=text.strip()))

    return TaxonomyRegistry(chart_types, topics, directions, enforce_reference_counts)


def list_chart_types(registry: TaxonomyRegistry) -> dict[str, list[str]]:
    return {major: registry.minors_of(major) for major in registry.majors()}


def list_topics(registry: TaxonomyRegistry) -> tuple[str, ...]:
    return registry.topics


def sample_generation_target(
    registry: TaxonomyRegistry, rng: random.Random
) -> tuple[ChartType, str, str]:
    """Uniform minor chart type plus two distinct topics, all rng-driven."""
    chart_type = rng.choice(registry.chart_types)
    topic1, topic2 = rng.sample(registry.topics, 2)
    return chart_type, topic1, topic2


def pick_evolution_direction(registry: TaxonomyRegistry, rng: random.Random) -> EvolutionDirection:
    return rng.choice(registry.directions)
