"""Sentiment, emotionality, and complexity measures.

Message sentiment lives in [0,1] with 0.5 neutral. The default backend
averages lexicon polarities over the message's tokens; a precomputed backend
accepts per-message scores from any external classifier. Weekly sentiment is
the mean of message scores, emotionality their population standard deviation,
and complexity the mean surprisal of the week's tokens against a reference
vocabulary.

Windows with nothing to score yield ``None`` (missing), never zero.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence

from .corpus import Message
from .errors import DataError, MissingScoreError
from .textproc import Vocabulary, token_surprisal, tokenize

LEXICON = "lexicon"
PRECOMPUTED = "precomputed"


@dataclass(frozen=True)
class SentimentScore:
    value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise DataError(f"sentiment score {self.value} outside [0, 1]")


@dataclass(frozen=True)
class WindowSemantics:
    """Weekly aggregates; None marks a window with nothing to score."""

    sentiment: float | None
    emotionality: float | None
    complexity: float | None


class SentimentScorer(Protocol):
    backend: str

    def score(self, msg: Message) -> SentimentScore: ...


class LexiconScorer:
    """Mean token polarity p, mapped into [0,1] via (p+1)/2."""

    backend = LEXICON

    def __init__(self, lexicon: Mapping[str, float]) -> None:
        for word, polarity in lexicon.items():
            if not -1.0 <= polarity <= 1.0:
                raise DataError(f"lexicon polarity for {word!r} outside [-1, 1]: {polarity}")
        self._lexicon = dict(lexicon)

    def score(self, msg: Message) -> SentimentScore:
        polarities = [
            self._lexicon[token] for token in tokenize(msg.body) if token in self._lexicon
        ]
        if not polarities:
            return SentimentScore(0.5)
        mean_polarity = sum(polarities) / len(polarities)
        return SentimentScore((mean_polarity + 1.0) / 2.0)


class PrecomputedScorer:
    """Looks up externally computed scores; total over the corpus it serves."""

    backend = PRECOMPUTED

    def __init__(self, scores: Mapping[str, float]) -> None:
        self._scores = dict(scores)

    def score(self, msg: Message) -> SentimentScore:
        if msg.id not in self._scores:
            raise MissingScoreError(f"no precomputed sentiment for message id {msg.id!r}")
        return SentimentScore(self._scores[msg.id])


def score_message(msg: Message, scorer: SentimentScorer) -> SentimentScore:
    return scorer.score(msg)


def window_sentiment(scores: Sequence[SentimentScore]) -> float | None:
    """Mean message score for the window; None when nothing was scored."""
    if not scores:
        return None
    return statistics.fmean(s.value for s in scores)


def emotionality(scores: Sequence[SentimentScore]) -> float | None:
    """Population standard deviation of the window's message scores."""
    if not scores:
        return None
    if len(scores) == 1:
        return 0.0
    return statistics.pstdev(s.value for s in scores)


def complexity(streams: Iterable[Sequence[str]], vocab: Vocabulary) -> float | None:
    """Mean -log2 relative corpus frequency of the window's tokens.

    Tokens unseen in the reference vocabulary score as count 1.
    """
    total = 0.0
    count = 0
    for stream in streams:
        for token in stream:
            total += token_surprisal(token, vocab)
            count += 1
    if count == 0:
        return None
    return total / count


def load_lexicon(path: str) -> dict[str, float]:
    """CSV word,polarity with polarity in [-1, 1]."""
    lexicon: dict[str, float] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(reader.fieldnames) != {"word", "polarity"}:
            raise DataError(f"{path}: expected header word,polarity, got {reader.fieldnames}")
        for row in reader:
            word = (row["word"] or "").strip().lower()
            if not word:
                raise DataError(f"{path} line {reader.line_num}: empty word")
            try:
                polarity = float(row["polarity"])
            except (TypeError, ValueError):
                raise DataError(
                    f"{path} line {reader.line_num}: bad polarity {row['polarity']!r}"
                ) from None
            if not -1.0 <= polarity <= 1.0:
                raise DataError(f"{path} line {reader.line_num}: polarity {polarity} outside [-1, 1]")
            if word in lexicon:
                raise DataError(f"{path} line {reader.line_num}: duplicate word {word!r}")
            lexicon[word] = polarity
    if not lexicon:
        raise DataError(f"{path}: empty lexicon")
    return lexicon


def load_precomputed(path: str) -> dict[str, float]:
    """CSV message_id,score with score in [0, 1]."""
    scores: dict[str, float] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(reader.fieldnames) != {"message_id", "score"}:
            raise DataError(f"{path}: expected header message_id,score, got {reader.fieldnames}")
        for row in reader:
            message_id = (row["message_id"] or "").strip()
            if not message_id:
                raise DataError(f"{path} line {reader.line_num}: empty message_id")
            try:
                value = float(row["score"])
            except (TypeError, ValueError):
                raise DataError(
                    f"{path} line {reader.line_num}: bad score {row['score']!r}"
                ) from None
            if not 0.0 <= value <= 1.0:
                raise DataError(f"{path} line {reader.line_num}: score {value} outside [0, 1]")
            if message_id in scores:
                raise DataError(f"{path} line {reader.line_num}: duplicate id {message_id!r}")
            scores[message_id] = value
    return scores
