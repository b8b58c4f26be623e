"""Pipeline configuration: YAML schema, validation, effective-config dump.

The schema is strict: unknown keys are rejected with their dotted path, every
threshold is range-checked at load time, and the effective config (defaults
filled in) can be dumped so an operator sees exactly what a run will use.
Secrets never live here; API keys are named environment variables.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..errors import ConfigError

STAGES = (
    "seed-import",
    "synthesize",
    "evolve",
    "render-repair",
    "genqa",
    "validate-charts",
    "validate-qa",
    "package",
    "stats",
    "cost-report",
    "eval",
    "eval-errors",
    "kappa",
)

BACKEND_KINDS = ("scripted", "replay", "http")

DEFAULTS: dict = {
    "state_dir": "./state",
    "seed": 0,
    "split": "train",
    "prompts_dir": None,
    "seeds_dir": None,
    "registries": {"chart_types": None, "topics": None, "directions": None},
    "backends": {
        "synthesis": {"kind": "scripted", "model_id": "scripted-synth"},
        "ensemble": [
            {"kind": "scripted", "model_id": "rater-a"},
            {"kind": "scripted", "model_id": "rater-b"},
            {"kind": "scripted", "model_id": "rater-c"},
        ],
        "judge": {"kind": "scripted", "model_id": "judge"},
        "candidate": {"kind": "scripted", "model_id": "candidate"},
    },
    "thresholds": {
        "dedup": 0.7,
        "chart_score": 3.0,
        "negative_votes": 2,
        "repair_max_iters": 3,
    },
    "counts": {
        "self_instruct_steps": 20,
        "evol_instruct_steps": 10,
        "question_batches_recognition": 1,
        "question_batches_reasoning": 1,
        "qa_per_chart_cap": None,
    },
    "sampling": {
        "few_shot_k": 3,
        "few_shot_complexity": "all",
        "evolve_sources": ["self_instruct"],
        "dedup_scope": "chart",
    },
    "concurrency": {"workers": 4, "max_inflight": 4},
    "price_sheet": {"input_usd_per_million": 2.50, "output_usd_per_million": 10.00},
    "renderer": {
        "kind": "stub",
        "command": ["python3", "-m", "plot_harness"],
        "timeout_s": 60.0,
        "memory_mb": 1024,
        "dpi": 200,
        "stub_width": 640,
        "stub_height": 480,
    },
    "completion": {"temperature": 1.0, "max_tokens": 4096, "seed_param": None},
    "eval": {"dataset_dir": None, "max_items": None},
    "kappa": {"file_a": None, "file_b": None},
}

_BACKEND_KEYS = {
    "scripted": {"kind", "model_id", "failure_rate", "permanent_rate"},
    "replay": {"kind", "model_id", "fixtures_dir"},
    "http": {"kind", "model_id", "url", "model", "api_key_env", "timeout_s", "retry_attempts"},
}


@dataclass
class PipelineConfig:
    raw: dict = field(default_factory=dict)

    def __getitem__(self, key: str):
        return self.raw[key]

    def get(self, *path, default=None):
        node = self.raw
        for key in path:
            if not isinstance(node, dict) or key not in node:
                return default
            node = node[key]
        return node

    @property
    def state_dir(self) -> Path:
        return Path(self.raw["state_dir"])

    def effective_dump(self) -> str:
        return json.dumps(self.raw, indent=2, sort_keys=True)


# Subtrees whose shape depends on a discriminator (backend "kind"): the user
# value replaces the default wholesale and is validated separately.
_OPAQUE_PATHS = {
    "backends.synthesis",
    "backends.judge",
    "backends.candidate",
    "backends.ensemble",
}


def _merge_defaults(defaults, overrides, path: str):
    if overrides is None:
        return copy.deepcopy(defaults)
    if path in _OPAQUE_PATHS:
        return copy.deepcopy(overrides)
    if isinstance(defaults, dict):
        if not isinstance(overrides, dict):
            raise ConfigError(f"expected a mapping, got {type(overrides).__name__}", path)
        merged = {}
        for key, default_value in defaults.items():
            child = f"{path}.{key}" if path else key
            if key in overrides:
                merged[key] = _merge_defaults(default_value, overrides[key], child)
            else:
                merged[key] = copy.deepcopy(default_value)
        unknown = set(overrides) - set(defaults)
        if unknown:
            field_name = f"{path}.{sorted(unknown)[0]}" if path else sorted(unknown)[0]
            raise ConfigError("unknown configuration key", field_name)
        return merged
    return copy.deepcopy(overrides)


def _check_number(config, path, low=None, high=None, low_open=False, integer=False):
    node = config
    for key in path.split("."):
        node = node[key]
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ConfigError(f"expected a number, got {node!r}", path)
    if integer and not isinstance(node, int):
        raise ConfigError(f"expected an integer, got {node!r}", path)
    if low is not None and (node <= low if low_open else node < low):
        raise ConfigError(f"value {node} below allowed range", path)
    if high is not None and node > high:
        raise ConfigError(f"value {node} above allowed range", path)


def _check_backend(body, path: str) -> None:
    if not isinstance(body, dict):
        raise ConfigError("backend config must be a mapping", path)
    kind = body.get("kind")
    if kind not in BACKEND_KINDS:
        raise ConfigError(f"backend kind must be one of {BACKEND_KINDS}, got {kind!r}", f"{path}.kind")
    allowed = _BACKEND_KEYS[kind]
    unknown = set(body) - allowed
    if unknown:
        raise ConfigError("unknown backend key", f"{path}.{sorted(unknown)[0]}")
    if not body.get("model_id") and kind != "http":
        raise ConfigError("backend needs a model_id", f"{path}.model_id")
    if kind == "replay" and not body.get("fixtures_dir"):
        raise ConfigError("replay backend needs fixtures_dir", f"{path}.fixtures_dir")
    if kind == "http" and not body.get("url"):
        raise ConfigError("http backend needs url", f"{path}.url")
    if kind == "http" and not body.get("model"):
        raise ConfigError("http backend needs model", f"{path}.model")
    if kind == "scripted":
        for rate_key in ("failure_rate", "permanent_rate"):
            rate = body.get(rate_key, 0.0)
            if not isinstance(rate, (int, float)) or not 0.0 <= float(rate) <= 1.0:
                raise ConfigError("rate must be within [0, 1]", f"{path}.{rate_key}")


def validate_structure(raw: dict) -> PipelineConfig:
    """Merge onto defaults and range-check; raises ConfigError with the field path."""
    merged = _merge_defaults(DEFAULTS, raw, "")

    if merged["split"] not in ("train", "test"):
        raise ConfigError("split must be 'train' or 'test'", "split")

    _check_number(merged, "seed", low=0, integer=True)
    _check_number(merged, "thresholds.dedup", low=0, high=1, low_open=True)
    _check_number(merged, "thresholds.chart_score", low=1, high=5)
    _check_number(merged, "thresholds.negative_votes", low=1, integer=True)
    _check_number(merged, "thresholds.repair_max_iters", low=0, integer=True)
    _check_number(merged, "counts.self_instruct_steps", low=0, integer=True)
    _check_number(merged, "counts.evol_instruct_steps", low=0, integer=True)
    _check_number(merged, "counts.question_batches_recognition", low=0, integer=True)
    _check_number(merged, "counts.question_batches_reasoning", low=0, integer=True)
    _check_number(merged, "sampling.few_shot_k", low=1, integer=True)
    _check_number(merged, "concurrency.workers", low=1, integer=True)
    _check_number(merged, "concurrency.max_inflight", low=1, integer=True)
    _check_number(merged, "price_sheet.input_usd_per_million", low=0)
    _check_number(merged, "price_sheet.output_usd_per_million", low=0)
    _check_number(merged, "renderer.timeout_s", low=0, low_open=True)
    _check_number(merged, "renderer.memory_mb", low=1, integer=True)
    _check_number(merged, "renderer.dpi", low=1, integer=True)
    _check_number(merged, "renderer.stub_width", low=1, integer=True)
    _check_number(merged, "renderer.stub_height", low=1, integer=True)

    if merged["sampling"]["dedup_scope"] not in ("chart", "global"):
        raise ConfigError("dedup_scope must be 'chart' or 'global'", "sampling.dedup_scope")
    if merged["sampling"]["few_shot_complexity"] not in ("all", "easy"):
        raise ConfigError("few_shot_complexity must be 'all' or 'easy'", "sampling.few_shot_complexity")
    cap = merged["counts"]["qa_per_chart_cap"]
    if cap is not None and (isinstance(cap, bool) or not isinstance(cap, int) or cap < 1):
        raise ConfigError("qa_per_chart_cap must be null or a positive integer", "counts.qa_per_chart_cap")
    sources = merged["sampling"]["evolve_sources"]
    if not isinstance(sources, list) or not sources or not set(sources) <= {"seed", "self_instruct"}:
        raise ConfigError("evolve_sources must be a non-empty subset of [seed, self_instruct]", "sampling.evolve_sources")

    if merged["renderer"]["kind"] not in ("stub", "subprocess"):
        raise ConfigError("renderer kind must be 'stub' or 'subprocess'", "renderer.kind")
    if not isinstance(merged["renderer"]["command"], list) or not merged["renderer"]["command"]:
        raise ConfigError("renderer command must be a non-empty list", "renderer.command")

    _check_backend(merged["backends"]["synthesis"], "backends.synthesis")
    _check_backend(merged["backends"]["judge"], "backends.judge")
    _check_backend(merged["backends"]["candidate"], "backends.candidate")
    ensemble = merged["backends"]["ensemble"]
    if not isinstance(ensemble, list) or not ensemble:
        raise ConfigError("ensemble must be a non-empty list", "backends.ensemble")
    model_ids = []
    for index, member in enumerate(ensemble):
        _check_backend(member, f"backends.ensemble[{index}]")
        model_ids.append(member.get("model_id") or member.get("model"))
    if len(set(model_ids)) != len(model_ids):
        raise ConfigError("ensemble model_ids must be unique", "backends.ensemble")

    return PipelineConfig(raw=merged)


def validate_config(path: str | Path) -> PipelineConfig:
    """Load and validate a YAML config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"YAML parse error{where}: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("top-level config must be a mapping")
    return validate_structure(raw)
