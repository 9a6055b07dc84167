"""Resolution of a plat front into a Lagrangian-projection diagram.

Left cusps become smooth births, front crossings stay crossings, and each
right cusp becomes a crossing followed by a small loop that dies at a smooth
tip.  The strand in slot k just left of any resolved crossing passes over
the one in slot k+1, so every crossing has the same quadrant signs: left and
right quadrants positive, top and bottom negative.

Coordinates: resolved events r = 0..R-1, regions (intervals) i = 0..R, region
i lying between event i-1 and event i.  A segment is (region, slot) and a gap
is (region, g) with g between slots g and g+1 (gap 0 above everything).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..front_model import CROSSING, LEFT_CUSP, PlatFront

BIRTH, CROSS, DEATH = "birth", "crossing", "death"

# half-edges of a crossing, listed counterclockwise from R_bot, interleaved
# with the quadrant that follows each of them counterclockwise
HALF_EDGES = ("R_bot", "R_top", "L_top", "L_bot")
QUADRANTS = ("right", "top", "left", "bottom")
# quadrant q lies counterclockwise after HALF_EDGES[q] and before HALF_EDGES[q+1]
POSITIVE = {"left", "right"}


@dataclass(frozen=True)
class ResolvedEvent:
    kind: str
    slot: int
    chord: Optional[str] = None


@dataclass(frozen=True)
class Vertex:
    chord: str
    event: int
    slot: int
    kind: str                    # "front-crossing" | "right-cusp"
    arcs: Tuple[int, int, int, int]     # arc ids on R_bot, R_top, L_top, L_bot
    faces: Tuple[Optional[int], ...]    # face ids on right, top, left, bottom (None = unbounded)

    @property
    def over_arcs(self) -> Tuple[int, int]:
        # slot k on the left runs to slot k+1 on the right
        return self.arcs[2], self.arcs[0]

    @property
    def under_arcs(self) -> Tuple[int, int]:
        return self.arcs[3], self.arcs[1]


@dataclass(frozen=True)
class ResolvedDiagram:
    name: str
    events: Tuple[ResolvedEvent, ...]
    counts: Tuple[int, ...]
    chord_ids: Tuple[str, ...]
    gradings: Tuple[int, ...]
    vertices: Tuple[Vertex, ...]
    arc_of: Dict[Tuple[int, int], int]
    n_arcs: int
    arc_ends: Tuple[Tuple[str, str], ...]       # (tail chord, head chord) in traversal order
    face_of: Dict[Tuple[int, int], Optional[int]]
    n_faces: int
    face_boundaries: Tuple[Tuple, ...]
    front: PlatFront

    def vertex(self, chord: str) -> Vertex:
        return self.vertices[self.chord_ids.index(chord)]

    def segment_faces(self, i: int, j: int):
        """(face above, face below) of segment (i, j)."""
        return self.face_of[(i, j - 1)], self.face_of[(i, j)]


def resolved_events(front: PlatFront, ids: Sequence[str]) -> List[ResolvedEvent]:
    out = []
    it = iter(ids)
    for ev in front.events:
        if ev.kind == LEFT_CUSP:
            out.append(ResolvedEvent(BIRTH, ev.slot))
        elif ev.kind == CROSSING:
            out.append(ResolvedEvent(CROSS, ev.slot, next(it)))
        else:
            out.append(ResolvedEvent(CROSS, ev.slot, next(it)))
            out.append(ResolvedEvent(DEATH, ev.slot))
    return out


def counts_of(events: Sequence[ResolvedEvent]) -> List[int]:
    n, out = 0, [0]
    for ev in events:
        n += 2 if ev.kind == BIRTH else -2 if ev.kind == DEATH else 0
        out.append(n)
    return out


def move(events: Sequence[ResolvedEvent], i: int, j: int, right: bool):
    """One step along the knot; returns (region, slot, right, crossing_event or None)."""
    if right:
        ev = events[i]
        k = ev.slot
        if ev.kind == CROSS:
            if j in (k, k + 1):
                return i + 1, 2 * k + 1 - j, True, i
            return i + 1, j, True, None
        if ev.kind == BIRTH:
            return i + 1, j + 2 if j >= k else j, True, None
        if j in (k, k + 1):
            return i, 2 * k + 1 - j, False, None
        return i + 1, j - 2 if j > k + 1 else j, True, None
    e = i - 1
    ev = events[e]
    k = ev.slot
    if ev.kind == CROSS:
        if j in (k, k + 1):
            return e, 2 * k + 1 - j, False, e
        return e, j, False, None
    if ev.kind == DEATH:
        return e, j + 2 if j >= k else j, False, None
    if j in (k, k + 1):
        return i, 2 * k + 1 - j, True, None
    return e, j - 2 if j > k + 1 else j, False, None


def shift_slot(ev: ResolvedEvent, j: int) -> int:
    """Slot to the right of ``ev`` of a strand not involved in it."""
    if ev.kind == BIRTH:
        return j + 2 if j >= ev.slot else j
    if ev.kind == DEATH:
        return j - 2 if j > ev.slot + 1 else j
    return j


class _UF:
    def __init__(self):
        self.p: Dict = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def _faces(events, counts):
    uf = _UF()
    OUT = (-1, -1)
    for i, n in enumerate(counts):
        uf.union((i, 0), OUT)
        uf.union((i, n), OUT)
        for g in range(n + 1):
            uf.find((i, g))
    for e, ev in enumerate(events):
        k, nl = ev.slot, counts[e]
        if ev.kind == CROSS:
            for g in range(nl + 1):
                if g != k:
                    uf.union((e, g), (e + 1, g))
        elif ev.kind == BIRTH:
            for g in range(nl + 1):
                if g < k - 1:
                    uf.union((e, g), (e + 1, g))
                elif g == k - 1:
                    uf.union((e, g), (e + 1, g))
                    uf.union((e, g), (e + 1, g + 2))
                else:
                    uf.union((e, g), (e + 1, g + 2))
        else:
            for g in range(nl + 1):
                if g < k - 1:
                    uf.union((e, g), (e + 1, g))
                elif g == k - 1:
                    uf.union((e, g), (e + 1, g))
                    uf.union((e, g + 2), (e + 1, g))
                elif g >= k + 2:
                    uf.union((e, g), (e + 1, g - 2))
    out = uf.find(OUT)
    face_of: Dict[Tuple[int, int], Optional[int]] = {}
    ids: Dict = {}
    for i, n in enumerate(counts):
        for g in range(n + 1):
            r = uf.find((i, g))
            if r == out:
                face_of[(i, g)] = None
            else:
                face_of[(i, g)] = ids.setdefault(r, len(ids))
    return face_of, len(ids)


def resolve(front: PlatFront) -> ResolvedDiagram:
    """Build the resolved diagram of a validated front."""
    nch = len(front.chord_events())
    ids = [c.id for c in front.chords] + [f"c{n + 1}" for n in range(len(front.chords), nch)]
    gradings = []
    for e in front.chord_events():
        ev = front.events[e]
        if ev.kind == CROSSING:
            mu = front.maslov[e]
            gradings.append(mu[ev.slot - 1] - mu[ev.slot])
        else:
            gradings.append(1)
    events = resolved_events(front, ids)
    counts = counts_of(events)

    # knot traversal: start on the upper branch of the first birth
    start = (1, events[0].slot, True)
    state = start
    arc = 0
    arc_of: Dict[Tuple[int, int], int] = {}
    passes: List[int] = []
    while True:
        i, j, right = state
        arc_of.setdefault((i, j), arc)
        ni, nj, nr, cx = move(events, i, j, right)
        if cx is not None:
            passes.append(cx)
            arc += 1
        state = (ni, nj, nr)
        if state == start:
            break
    n_arcs = arc
    for key, a in arc_of.items():
        if a == n_arcs:
            arc_of[key] = 0
    # arc a runs from crossing passes[a-1] to passes[a]
    arc_ends = tuple((events[passes[a - 1]].chord, events[passes[a]].chord) for a in range(n_arcs))

    face_of, n_faces = _faces(events, counts)

    vertices = []
    for e, ev in enumerate(events):
        if ev.kind != CROSS:
            continue
        k = ev.slot
        arcs = (arc_of[(e + 1, k + 1)], arc_of[(e + 1, k)], arc_of[(e, k)], arc_of[(e, k + 1)])
        faces = (face_of[(e + 1, k)], face_of[(e, k - 1)], face_of[(e, k)], face_of[(e, k + 1)])
        kind = "right-cusp" if e + 1 < len(events) and events[e + 1].kind == DEATH \
            and events[e + 1].slot == k else "front-crossing"
        vertices.append(Vertex(ev.chord, e, k, kind, arcs, faces))
    order = {c: n for n, c in enumerate(ids)}
    vertices.sort(key=lambda v: order[v.chord])

    diag = ResolvedDiagram(
        name=front.name, events=tuple(events), counts=tuple(counts), chord_ids=tuple(ids),
        gradings=tuple(gradings), vertices=tuple(vertices), arc_of=arc_of, n_arcs=n_arcs,
        arc_ends=arc_ends, face_of=face_of, n_faces=n_faces, face_boundaries=(), front=front)
    if n_faces != len(vertices) + 1 or n_arcs != 2 * len(vertices):
        raise AssertionError(f"Euler count fails: V={len(vertices)} E={n_arcs} F={n_faces}")
    from .oracle import trace_region
    bounds = []
    for f in range(n_faces):
        cycles = trace_region(diag, frozenset([f]))
        bounds.append(tuple(cycles[0]) if cycles else ())
    object.__setattr__(diag, "face_boundaries", tuple(bounds))
    return diag
