from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import HealthCheck, settings

from forumcast.corpus import Message
from forumcast.graphs import DirectedWeightedGraph

settings.register_profile(
    "deterministic",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

EPOCH = datetime(2020, 1, 6, tzinfo=timezone.utc)


def make_message(
    msg_id: str,
    author: str,
    body: str = "hello dolly",
    parent: str | None = None,
    week: int = 0,
    offset_hours: int = 0,
) -> Message:
    return Message(
        id=msg_id,
        author_id=author,
        timestamp=EPOCH + timedelta(weeks=week, hours=offset_hours),
        body=body,
        parent_id=parent,
    )


def random_digraph(rng: random.Random, n: int, p: float) -> DirectedWeightedGraph:
    nodes = [f"v{i}" for i in range(n)]
    arcs = {}
    for a in nodes:
        for b in nodes:
            if a != b and rng.random() < p:
                arcs[(a, b)] = 1 + rng.randrange(3)
    return DirectedWeightedGraph(arcs, nodes=nodes)


def bidirectional_star(leaves: int) -> DirectedWeightedGraph:
    arcs = {}
    for i in range(1, leaves + 1):
        arcs[("hub", f"v{i}")] = 1
        arcs[(f"v{i}", "hub")] = 1
    return DirectedWeightedGraph(arcs)


def directed_cycle(n: int) -> DirectedWeightedGraph:
    return DirectedWeightedGraph({(f"v{i}", f"v{(i + 1) % n}"): 1 for i in range(n)})


def bidirectional_cycle(n: int) -> DirectedWeightedGraph:
    arcs = {}
    for i in range(n):
        arcs[(f"v{i}", f"v{(i + 1) % n}")] = 1
        arcs[(f"v{(i + 1) % n}", f"v{i}")] = 1
    return DirectedWeightedGraph(arcs)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(2024)
