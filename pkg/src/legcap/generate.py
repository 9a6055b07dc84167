"""Random plat fronts for property tests."""

from __future__ import annotations

import random
from typing import List, Optional

from .errors import GradingError, TopologyError
from .front_model import (
    CROSSING,
    LEFT_CUSP,
    RIGHT_CUSP,
    ChordSpec,
    Event,
    PlatFront,
    build_front,
)


def random_events(rng: random.Random, max_crossings: int = 10, max_strands: int = 6,
                  p_cusp: float = 0.25) -> List[Event]:
    """Random event list with at most ``max_crossings`` resolved crossings.

    Resolved crossings are front crossings plus right cusps.  The result may
    be a link or have nonzero rotation; callers filter.
    """
    events: List[Event] = []
    n = 0
    budget = max_crossings
    while True:
        pending = n // 2            # right cusps still needed
        if n == 0 and events:
            break
        moves = []
        if n < max_strands and budget - pending - 1 >= 1:
            moves += [LEFT_CUSP] * max(1, int(10 * p_cusp))
        if n >= 2 and budget > pending:
            moves += [CROSSING] * 10
        if n >= 2:
            moves += [RIGHT_CUSP] * max(1, int(10 * p_cusp))
        kind = rng.choice(moves)
        if kind == LEFT_CUSP:
            events.append(Event(LEFT_CUSP, rng.randint(1, n + 1)))
            n += 2
        elif kind == CROSSING:
            events.append(Event(CROSSING, rng.randint(1, n - 1)))
            budget -= 1
        else:
            events.append(Event(RIGHT_CUSP, rng.randint(1, n - 1)))
            n -= 2
            budget -= 1
    return events


def random_front(rng: random.Random, max_crossings: int = 10, max_strands: int = 6,
                 name: Optional[str] = None, tries: int = 10000,
                 min_crossings: int = 0) -> PlatFront:
    """A random valid knot front (one component, rotation number zero), no heights.

    ``min_crossings`` counts resolved crossings (front crossings plus right cusps).
    """
    for _ in range(tries):
        events = random_events(rng, max_crossings, max_strands)
        if sum(e.kind != LEFT_CUSP for e in events) < min_crossings:
            continue
        try:
            return build_front(name or "random", events, (), "combinatorial")
        except (TopologyError, GradingError):
            continue
    raise RuntimeError("no valid random front found")


def with_chord_ids(front: PlatFront, heights=None) -> PlatFront:
    """Attach ids ``x1, x2, ...`` (and optional heights) in event order."""
    n = len(front.chord_events())
    hs = list(heights) if heights is not None else [None] * n
    chords = [ChordSpec(id=f"x{i + 1}", height=hs[i]) for i in range(n)]
    return build_front(front.name, front.events, chords, "combinatorial")
