"""End-to-end runs: per-window feature extraction, panel assembly, the
analysis battery, and report/manifest emission.

Stage outputs land in ``config.output_dir``:

    features.csv            one row per week
    rejections.csv          unparseable input rows (line, reason)
    graphs/week_NNN_*.csv   edge lists (when export_graphs)
    graphs/week_NNN_*.json  graph summaries
    correlations.csv, granger.csv, regressions.csv, regression_models.csv
    summary.md              Markdown digest
    manifest.json           config hash, input checksums, tool version

Everything is deterministic for a fixed config: reruns are byte-identical.
Windows can be processed by a worker pool; results are assembled in window
order, so the worker count never changes the output.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import __version__
from .centrality import (
    approx_betweenness,
    betweenness_centrality,
    centralization,
    degree_centrality,
)
from .config import PipelineConfig, to_dict, validate, validate_paths
from .corpus import (
    Message,
    WindowedCorpus,
    load_market_series,
    load_messages,
    parse_timestamp,
    partition_weeks,
    write_rejections,
)
from .econometrics import (
    CORPUS_FEATURE_COLUMNS,
    build_panel,
    run_battery,
    write_correlations_csv,
    write_granger_csv,
    write_regression_models_csv,
    write_regression_terms_csv,
    write_summary_md,
)
from .errors import ConfigError, DataError, ForumcastError
from .graphs import (
    activity,
    activity_words,
    build_interaction_network,
    build_word_network,
)
from .semantics import (
    LexiconScorer,
    PrecomputedScorer,
    SentimentScorer,
    complexity,
    emotionality,
    load_lexicon,
    load_precomputed,
    score_message,
    window_sentiment,
)
from .textproc import (
    StopwordList,
    Vocabulary,
    build_vocabulary,
    filter_tokens,
    load_stopwords,
    load_wordlist,
    stem_tokens,
    tokenize,
)

logger = logging.getLogger(__name__)

FEATURE_CSV_COLUMNS = (
    "week",
    "activity",
    "activity_words",
    "group_degree",
    "group_betweenness",
    "focal_degree",
    "focal_betweenness",
    "focal_present",
    "sentiment",
    "emotionality",
    "complexity",
)


@dataclass(frozen=True)
class WindowFeatures:
    week: int
    activity: int
    activity_words: int
    group_degree: float | None
    group_betweenness: float | None
    focal_degree: float
    focal_betweenness: float
    focal_present: bool
    sentiment: float | None
    emotionality: float | None
    complexity: float | None


@dataclass(frozen=True)
class _WindowTask:
    """Everything one worker needs to process one window."""

    index: int
    messages: tuple[Message, ...]


@dataclass
class _SharedState:
    config: PipelineConfig
    author_by_id: Mapping[str, str]
    stop: StopwordList
    dictionary: frozenset[str] | None
    scorer: SentimentScorer
    vocab: Vocabulary
    focal_token: str


_worker_state: _SharedState | None = None


def _init_worker(state: _SharedState) -> None:
    global _worker_state
    _worker_state = state


def _tokenize_message(body: str, config: PipelineConfig, stop: StopwordList,
                      dictionary: frozenset[str] | None) -> list[str]:
    tokens = filter_tokens(tokenize(body, keep_digits=config.keep_digits), stop, dictionary)
    if config.stemming:
        tokens = stem_tokens(tokens, config.language)
    return tokens


def normalize_focal_word(config: PipelineConfig, stop: StopwordList,
                         dictionary: frozenset[str] | None) -> str:
    """The focal word goes through the corpus token filter; it must survive
    as exactly one token or the config is unusable."""
    tokens = _tokenize_message(config.focal_word, config, stop, dictionary)
    if len(tokens) != 1:
        raise ConfigError(
            f"focal_word {config.focal_word!r} normalizes to {len(tokens)} tokens"
            f" ({tokens!r}); it must survive filtering as exactly one token"
        )
    return tokens[0]


def _compute_window_features(
    task: _WindowTask, state: _SharedState
) -> tuple[WindowFeatures, dict[str, dict[str, int]]]:
    config = state.config
    index = task.index
    messages = task.messages
    try:
        streams = [
            _tokenize_message(m.body, config, state.stop, state.dictionary) for m in messages
        ]
        word_graph = build_word_network(streams, config.window_size)
        interaction, _tallies = build_interaction_network(messages, state.author_by_id)

        if interaction.n >= 3:
            group_degree = centralization(degree_centrality(interaction)).value
            group_betweenness = centralization(betweenness_centrality(interaction)).value
        else:
            group_degree = None
            group_betweenness = None

        focal = state.focal_token
        present = focal in set(word_graph.nodes)
        if present:
            focal_degree = degree_centrality(word_graph).normalized[focal]
            if config.betweenness_mode == "sampled" and word_graph.n > 1:
                samples = min(config.betweenness_samples, word_graph.n)
                betw = approx_betweenness(word_graph, samples, config.seed + index)
            else:
                betw = betweenness_centrality(word_graph)
            focal_betweenness = betw.normalized[focal]
        else:
            focal_degree = 0.0
            focal_betweenness = 0.0

        scores = [score_message(m, state.scorer) for m in messages]
        features = WindowFeatures(
            week=index,
            activity=activity(messages),
            activity_words=activity_words(word_graph),
            group_degree=group_degree,
            group_betweenness=group_betweenness,
            focal_degree=focal_degree,
            focal_betweenness=focal_betweenness,
            focal_present=present,
            sentiment=window_sentiment(scores),
            emotionality=emotionality(scores),
            complexity=complexity(streams, state.vocab),
        )
        exports = {}
        if config.export_graphs:
            exports = _export_graphs(config.output_dir, index, interaction, word_graph)
        return features, exports
    except ForumcastError as exc:
        raise type(exc)(f"window {index}: {exc}") from exc


def _compute_window_in_worker(task: _WindowTask):
    assert _worker_state is not None
    return _compute_window_features(task, _worker_state)


def _export_graphs(output_dir: str, index: int, interaction, word_graph) -> dict[str, dict[str, int]]:
    graphs_dir = os.path.join(output_dir, "graphs")
    os.makedirs(graphs_dir, exist_ok=True)
    stem = f"week_{index:03d}"
    interaction.write_edge_list(os.path.join(graphs_dir, f"{stem}_interaction_edges.csv"))
    interaction.write_summary(os.path.join(graphs_dir, f"{stem}_interaction_summary.json"))
    word_graph.write_edge_list(os.path.join(graphs_dir, f"{stem}_words_edges.csv"))
    word_graph.write_summary(os.path.join(graphs_dir, f"{stem}_words_summary.json"))
    return {"interaction": interaction.summary(), "words": word_graph.summary()}


def _load_shared_state(config: PipelineConfig) -> tuple[_SharedState, WindowedCorpus, list]:
    stop = load_stopwords(config.language, config.stopwords_path)
    dictionary = (
        frozenset(load_wordlist(config.dictionary_path)) if config.dictionary_path else None
    )
    scorer: SentimentScorer
    if config.precomputed_sentiment_path:
        scorer = PrecomputedScorer(load_precomputed(config.precomputed_sentiment_path))
    else:
        assert config.lexicon_path is not None
        scorer = LexiconScorer(load_lexicon(config.lexicon_path))

    messages, rejections = load_messages(config.messages_path, config.messages_format)
    corpus = partition_weeks(
        messages, parse_timestamp(config.horizon_start), config.horizon_weeks
    )
    if corpus.dropped:
        logger.info("%d messages fall outside the horizon", len(corpus.dropped))

    author_by_id = {m.id: m.author_id for m in messages}
    all_streams = (
        _tokenize_message(m.body, config, stop, dictionary)
        for window in corpus.messages_by_window
        for m in window
    )
    vocab = build_vocabulary(all_streams)
    focal_token = normalize_focal_word(config, stop, dictionary)
    state = _SharedState(
        config=config,
        author_by_id=author_by_id,
        stop=stop,
        dictionary=dictionary,
        scorer=scorer,
        vocab=vocab,
        focal_token=focal_token,
    )
    return state, corpus, rejections


def _fmt_cell(value: float | int | bool | None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "" if math.isnan(value) else repr(value)
    return str(value)


def write_features_csv(rows: Sequence[WindowFeatures], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(FEATURE_CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.week,
                    row.activity,
                    row.activity_words,
                    _fmt_cell(row.group_degree),
                    _fmt_cell(row.group_betweenness),
                    _fmt_cell(row.focal_degree),
                    _fmt_cell(row.focal_betweenness),
                    _fmt_cell(row.focal_present),
                    _fmt_cell(row.sentiment),
                    _fmt_cell(row.emotionality),
                    _fmt_cell(row.complexity),
                ]
            )


def read_features_csv(path: str) -> dict[str, list[float | None]]:
    """Feature table back into columns; empty cells become None."""
    try:
        handle = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read feature table {path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle)
        have = set(reader.fieldnames or ())
        needed = {"week", *CORPUS_FEATURE_COLUMNS}
        missing = sorted(needed - have)
        if missing:
            raise DataError(f"{path}: feature table lacks columns: {', '.join(missing)}")
        rows = list(reader)
    try:
        rows.sort(key=lambda r: int(r["week"]))
    except (TypeError, ValueError):
        raise DataError(f"{path}: non-integer week column") from None
    weeks = [int(r["week"]) for r in rows]
    if weeks != list(range(len(rows))):
        raise DataError(f"{path}: week column must cover 0..{len(rows) - 1} without gaps")
    columns: dict[str, list[float | None]] = {name: [] for name in CORPUS_FEATURE_COLUMNS}
    for r in rows:
        for name in CORPUS_FEATURE_COLUMNS:
            cell = (r[name] or "").strip()
            columns[name].append(float(cell) if cell else None)
    return columns


def run_features(config: PipelineConfig) -> list[WindowFeatures]:
    """Extract the weekly feature table and (optionally) export graphs."""
    validate(config)
    validate_paths(config)
    os.makedirs(config.output_dir, exist_ok=True)

    state, corpus, rejections = _load_shared_state(config)
    write_rejections(os.path.join(config.output_dir, "rejections.csv"), rejections)

    tasks = [
        _WindowTask(index=i, messages=tuple(corpus.messages_by_window[i]))
        for i in range(corpus.week_count)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(
            max_workers=config.workers, initializer=_init_worker, initargs=(state,)
        ) as pool:
            results = list(pool.map(_compute_window_in_worker, tasks, chunksize=4))
    else:
        results = [_compute_window_features(task, state) for task in tasks]

    rows = [features for features, _exports in results]
    write_features_csv(rows, os.path.join(config.output_dir, "features.csv"))
    return rows


def _sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_hash(config: PipelineConfig) -> str:
    canonical = json.dumps(to_dict(config), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_manifest(config: PipelineConfig, features_path: str, path: str) -> None:
    inputs = {features_path: _sha256_file(features_path)}
    for key in (
        "messages_path",
        "price_path",
        "control_path",
        "lexicon_path",
        "precomputed_sentiment_path",
        "stopwords_path",
        "dictionary_path",
    ):
        value = getattr(config, key)
        if value and os.path.isfile(value):
            inputs[value] = _sha256_file(value)
    manifest = {
        "tool": "forumcast",
        "version": __version__,
        "config_sha256": config_hash(config),
        "inputs": inputs,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


def run_analyze(config: PipelineConfig, features_path: str | None = None):
    """Panel assembly and the full battery from an existing feature table."""
    validate(config)
    os.makedirs(config.output_dir, exist_ok=True)
    if features_path is None:
        features_path = os.path.join(config.output_dir, "features.csv")
    columns = read_features_csv(features_path)
    horizon_start = parse_timestamp(config.horizon_start)
    price = load_market_series(config.price_path, "price", horizon_start)
    control = load_market_series(config.control_path, "control", horizon_start)
    panel = build_panel(columns, price, control)
    report = run_battery(panel, config.battery_config())

    out = config.output_dir
    write_correlations_csv(report, os.path.join(out, "correlations.csv"))
    write_granger_csv(report, os.path.join(out, "granger.csv"))
    write_regression_terms_csv(report, os.path.join(out, "regressions.csv"))
    write_regression_models_csv(report, os.path.join(out, "regression_models.csv"))
    write_summary_md(report, os.path.join(out, "summary.md"))
    write_manifest(config, features_path, os.path.join(out, "manifest.json"))
    return report


def run_all(config: PipelineConfig):
    """features then analyze; a failure mid-way leaves earlier outputs in
    place plus errors.json describing where it stopped."""
    stage = "features"
    try:
        run_features(config)
        stage = "analyze"
        return run_analyze(config)
    except ForumcastError as exc:
        os.makedirs(config.output_dir, exist_ok=True)
        error_path = os.path.join(config.output_dir, "errors.json")
        with open(error_path, "w", encoding="utf-8") as handle:
            json.dump(
                {"stage": stage, "type": type(exc).__name__, "error": str(exc)},
                handle,
                indent=2,
                sort_keys=True,
            )
            handle.write("\n")
        raise


def ingest_check(config: PipelineConfig) -> dict:
    """Parse inputs and report counts without computing features."""
    validate(config)
    validate_paths(config)
    messages, rejections = load_messages(config.messages_path, config.messages_format)
    corpus = partition_weeks(
        messages, parse_timestamp(config.horizon_start), config.horizon_weeks
    )
    nonempty = sum(1 for window in corpus.messages_by_window if window)
    return {
        "messages": len(messages),
        "rejected_rows": len(rejections),
        "weeks": corpus.week_count,
        "nonempty_weeks": nonempty,
        "outside_horizon": len(corpus.dropped),
        "rejection_reasons": sorted({r.reason for r in rejections}),
    }
