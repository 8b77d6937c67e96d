"""Pipeline configuration: a YAML file mirroring one dataclass.

The file round-trips: load -> save -> load yields an equal config. Unknown
keys are rejected so typos fail fast. Path existence is checked separately
(``validate_paths``) right before a run, not at parse time, so configs can
be written before their inputs exist.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from typing import Any

import yaml

from .corpus import parse_timestamp
from .econometrics import DEFAULT_MODELS, BatteryConfig, ModelSpec, ModelTerm, PREDICTOR_COLUMNS
from .errors import ConfigError
from .textproc import BUNDLED_LANGUAGES

BETWEENNESS_MODES = ("exact", "sampled")
MESSAGE_FORMATS = ("jsonl", "csv")


@dataclass
class PipelineConfig:
    # inputs
    messages_path: str = ""
    messages_format: str = "jsonl"
    price_path: str = ""
    control_path: str = ""
    lexicon_path: str | None = None
    precomputed_sentiment_path: str | None = None
    stopwords_path: str | None = None
    dictionary_path: str | None = None
    language: str = "english"
    # horizon
    horizon_start: str = ""
    horizon_weeks: int = 94
    # text and graph construction
    focal_word: str = ""
    window_size: int = 7
    stemming: bool = False
    keep_digits: bool = False
    # centrality engine
    betweenness_mode: str = "exact"
    betweenness_samples: int = 256
    seed: int = 0
    # execution
    workers: int = 1
    export_graphs: bool = True
    output_dir: str = "out"
    # analysis battery
    correlation_lags: tuple[int, ...] = (0, 1, 2)
    granger_max_lag: int = 3
    granger_difference_dependent: bool = True
    granger_conditioning: tuple[str, ...] = ()
    models: tuple[ModelSpec, ...] = DEFAULT_MODELS

    def battery_config(self) -> BatteryConfig:
        return BatteryConfig(
            correlation_lags=self.correlation_lags,
            granger_max_lag=self.granger_max_lag,
            granger_difference_dependent=self.granger_difference_dependent,
            granger_conditioning=self.granger_conditioning,
            models=self.models,
        )


_REQUIRED = ("messages_path", "price_path", "control_path", "horizon_start", "focal_word")


def validate(config: PipelineConfig) -> None:
    """Structural checks; raises ConfigError on the first violation."""
    for name in _REQUIRED:
        if not getattr(config, name):
            raise ConfigError(f"config field {name!r} is required")
    if config.messages_format not in MESSAGE_FORMATS:
        raise ConfigError(
            f"messages_format must be one of {MESSAGE_FORMATS}, got {config.messages_format!r}"
        )
    try:
        parse_timestamp(config.horizon_start)
    except Exception as exc:
        raise ConfigError(f"horizon_start is not a valid RFC3339 instant: {exc}") from exc
    if config.horizon_weeks < 1:
        raise ConfigError(f"horizon_weeks must be >= 1, got {config.horizon_weeks}")
    if config.window_size < 1:
        raise ConfigError(f"window_size must be >= 1, got {config.window_size}")
    if config.betweenness_mode not in BETWEENNESS_MODES:
        raise ConfigError(
            f"betweenness_mode must be one of {BETWEENNESS_MODES}, got {config.betweenness_mode!r}"
        )
    if config.betweenness_samples < 1:
        raise ConfigError(f"betweenness_samples must be >= 1, got {config.betweenness_samples}")
    if config.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {config.workers}")
    if config.stopwords_path is None and config.language not in BUNDLED_LANGUAGES:
        raise ConfigError(
            f"language {config.language!r} has no bundled stopword list; set stopwords_path"
        )
    if config.lexicon_path and config.precomputed_sentiment_path:
        raise ConfigError("set lexicon_path or precomputed_sentiment_path, not both")
    if not config.lexicon_path and not config.precomputed_sentiment_path:
        raise ConfigError("one of lexicon_path or precomputed_sentiment_path is required")
    if any(k < 0 for k in config.correlation_lags):
        raise ConfigError(f"correlation_lags must be nonnegative, got {config.correlation_lags}")
    if config.granger_max_lag < 1:
        raise ConfigError(f"granger_max_lag must be >= 1, got {config.granger_max_lag}")
    known = set(PREDICTOR_COLUMNS)
    for column in config.granger_conditioning:
        if column not in known:
            raise ConfigError(f"granger_conditioning column {column!r} is not a predictor")
    if not config.models:
        raise ConfigError("at least one regression model must be configured")
    seen_models: set[str] = set()
    for spec in config.models:
        if spec.name in seen_models:
            raise ConfigError(f"duplicate model name {spec.name!r}")
        seen_models.add(spec.name)
        if not spec.terms:
            raise ConfigError(f"model {spec.name!r} has no terms")
        for term in spec.terms:
            if term.column not in known:
                raise ConfigError(f"model {spec.name!r} uses unknown column {term.column!r}")
            if term.lag < 0:
                raise ConfigError(f"model {spec.name!r} term {term.column!r} has negative lag")
    if not config.focal_word.strip():
        raise ConfigError("focal_word must be non-empty")


def validate_paths(config: PipelineConfig) -> None:
    """Input files must exist before a run starts."""
    paths = {
        "messages_path": config.messages_path,
        "price_path": config.price_path,
        "control_path": config.control_path,
    }
    for optional in (
        "lexicon_path",
        "precomputed_sentiment_path",
        "stopwords_path",
        "dictionary_path",
    ):
        value = getattr(config, optional)
        if value:
            paths[optional] = value
    for name, path in paths.items():
        if not os.path.isfile(path):
            raise ConfigError(f"{name}: no such file: {path}")


def to_dict(config: PipelineConfig) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for f in fields(config):
        value = getattr(config, f.name)
        if f.name == "models":
            out[f.name] = [
                {
                    "name": spec.name,
                    "terms": [{"column": t.column, "lag": t.lag} for t in spec.terms],
                }
                for spec in value
            ]
        elif isinstance(value, tuple):
            out[f.name] = list(value)
        else:
            out[f.name] = value
    return out


def from_dict(raw: dict[str, Any]) -> PipelineConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a mapping, got {type(raw).__name__}")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs: dict[str, Any] = {}
    for f in fields(PipelineConfig):
        if f.name not in raw:
            continue
        value = raw[f.name]
        if f.name == "models":
            kwargs[f.name] = _models_from(value)
        elif f.name in ("correlation_lags", "granger_conditioning"):
            if not isinstance(value, list):
                raise ConfigError(f"config key {f.name!r} must be a list")
            kwargs[f.name] = tuple(value)
        else:
            kwargs[f.name] = value
    try:
        return PipelineConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def _models_from(value: Any) -> tuple[ModelSpec, ...]:
    if not isinstance(value, list):
        raise ConfigError("config key 'models' must be a list")
    specs: list[ModelSpec] = []
    for entry in value:
        if not isinstance(entry, dict) or "name" not in entry or "terms" not in entry:
            raise ConfigError(f"each model needs 'name' and 'terms': {entry!r}")
        terms: list[ModelTerm] = []
        for term in entry["terms"]:
            if not isinstance(term, dict) or "column" not in term:
                raise ConfigError(f"model {entry['name']!r}: each term needs 'column'")
            terms.append(ModelTerm(column=term["column"], lag=int(term.get("lag", 0))))
        specs.append(ModelSpec(name=entry["name"], terms=tuple(terms)))
    return tuple(specs)


def load_config(path: str) -> PipelineConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = yaml.safe_load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if raw is None:
        raw = {}
    config = from_dict(raw)
    validate(config)
    return config


def save_config(config: PipelineConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        yaml.safe_dump(to_dict(config), handle, sort_keys=False)
