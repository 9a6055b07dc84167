"""Plat-position front diagrams: parsing, validation, chords, extendability.

Events are read left to right.  ``slot`` is the 1-based index, counted from
the top, of the upper of the two strands an event touches.  A left cusp at
slot k inserts two new strands at positions k and k+1; a right cusp at slot k
joins the strands at k and k+1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from decimal import Decimal
from numbers import Rational
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    GradingError,
    MissingGeometry,
    MissingHeight,
    NonPositiveHeight,
    NonPositiveScale,
    SchemaError,
    TopologyError,
)

SCHEMA = "legcap-front/1"

LEFT_CUSP = "left_cusp"
RIGHT_CUSP = "right_cusp"
CROSSING = "crossing"
EVENT_TYPES = (LEFT_CUSP, RIGHT_CUSP, CROSSING)

ASSERTIONS = (None, "up", "down", "both")


@dataclass(frozen=True)
class Event:
    kind: str
    slot: int


def LeftCusp(slot: int) -> Event:
    return Event(LEFT_CUSP, slot)


def RightCusp(slot: int) -> Event:
    return Event(RIGHT_CUSP, slot)


def Crossing(slot: int) -> Event:
    return Event(CROSSING, slot)


@dataclass(frozen=True)
class ChordGeometry:
    z_minus: Fraction
    z_plus: Fraction
    other_strand_z: Tuple[Fraction, ...] = ()
    x0: Optional[Fraction] = None

    @property
    def height(self) -> Fraction:
        return self.z_plus - self.z_minus


@dataclass(frozen=True)
class ChordSpec:
    """Per-chord input data, in event order."""
    id: str
    height: Optional[Fraction] = None
    geometry: Optional[ChordGeometry] = None
    assert_extendable: Optional[str] = None


@dataclass(frozen=True)
class ReebChord:
    id: str
    kind: str          # "front-crossing" | "right-cusp"
    grading: int
    height: Fraction
    event: int         # index into PlatFront.events
    slot: int


@dataclass(frozen=True)
class Extendability:
    down: bool
    up: bool

    @property
    def doubly(self) -> bool:
        return self.down or self.up


@dataclass(frozen=True)
class PlatFront:
    name: str
    mode: str
    events: Tuple[Event, ...]
    chords: Tuple[ChordSpec, ...]
    # Maslov potential on strand segments: maslov[i][j-1] is the potential of
    # the strand in slot j of the region just right of event i-1 (region 0 is
    # left of everything and empty).
    maslov: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def strand_counts(self) -> Tuple[int, ...]:
        return tuple(len(m) for m in self.maslov)

    def chord_events(self) -> List[int]:
        return [i for i, e in enumerate(self.events) if e.kind != LEFT_CUSP]


# -- numbers -----------------------------------------------------------------

def to_fraction(value, what: str = "value") -> Fraction:
    """Exact rational from a decimal/fraction string, int or Fraction.

    Floats are refused: they would silently import binary rounding.
    """
    if isinstance(value, bool):
        raise SchemaError(f"{what}: expected a number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{what}: not a decimal or fraction string: {value!r}") from None
    raise SchemaError(f"{what}: expected a decimal string, got {type(value).__name__}")


def fmt_fraction(q: Fraction) -> str:
    """Canonical text for a rational: integer, terminating decimal, or p/q."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    s = str(Decimal(q.numerator) / Decimal(q.denominator))
    if "E" in s or "e" in s:
        s = format(Decimal(q.numerator) / Decimal(q.denominator), f".{places}f")
    return s


# -- strand tracing ------------------------------------------------------------

def _strand_counts(events: Sequence[Event]) -> List[int]:
    n = 0
    counts = [0]
    for i, ev in enumerate(events):
        if ev.kind == LEFT_CUSP:
            if not 1 <= ev.slot <= n + 1:
                raise TopologyError(f"event {i}: left cusp slot {ev.slot} outside 1..{n + 1}")
            n += 2
        else:
            if n < 2 or not 1 <= ev.slot <= n - 1:
                raise TopologyError(
                    f"event {i}: {ev.kind} slot {ev.slot} needs strands {ev.slot},{ev.slot + 1} "
                    f"but only {n} present")
            if ev.kind == RIGHT_CUSP:
                n -= 2
        counts.append(n)
    if n != 0:
        raise TopologyError(f"strand count ends at {n}, expected 0")
    return counts


def step(events: Sequence[Event], i: int, j: int, right: bool):
    """Follow the knot from slot j of region i in one direction.

    Returns (region, slot, right, event, turned) where ``event`` is the index
    of the event passed and ``turned`` tells whether it was a cusp tip.
    """
    if right:
        e = i
        ev = events[e]
        k = ev.slot
        if ev.kind == CROSSING:
            if j == k:
                return e + 1, k + 1, True, e, False
            if j == k + 1:
                return e + 1, k, True, e, False
            return e + 1, j, True, e, False
        if ev.kind == LEFT_CUSP:
            return e + 1, j + 2 if j >= k else j, True, e, False
        if j == k:
            return i, k + 1, False, e, True
        if j == k + 1:
            return i, k, False, e, True
        return e + 1, j - 2 if j > k + 1 else j, True, e, False
    e = i - 1
    ev = events[e]
    k = ev.slot
    if ev.kind == CROSSING:
        if j == k:
            return e, k + 1, False, e, False
        if j == k + 1:
            return e, k, False, e, False
        return e, j, False, e, False
    if ev.kind == RIGHT_CUSP:
        return e, j + 2 if j >= k else j, False, e, False
    if j == k:
        return i, k + 1, True, e, True
    if j == k + 1:
        return i, k, True, e, True
    return e, j - 2 if j > k + 1 else j, False, e, False


def _trace(events: Sequence[Event], counts: Sequence[int]):
    """Walk the knot from the first left cusp along its upper branch.

    Returns the list of visited (region, slot) and the Maslov potential.
    """
    start = (1, events[0].slot, True)
    mu: Dict[Tuple[int, int], int] = {(1, events[0].slot): 0}
    seen = [(1, events[0].slot)]
    state = start
    cur = 0
    while True:
        i, j, right = state
        ni, nj, nright, e, turned = step(events, i, j, right)
        if turned:
            # upper branch has the larger potential
            upper = events[e].slot
            cur = cur - 1 if j == upper else cur + 1
        state = (ni, nj, nright)
        if state == start:
            if cur != 0:
                raise GradingError(
                    f"Maslov potential does not close up (rotation number {Fraction(cur, 2)})")
            break
        key = (ni, nj)
        if key in mu:
            if mu[key] != cur:
                raise GradingError(f"inconsistent Maslov potential on region {ni} slot {nj}")
        else:
            mu[key] = cur
            seen.append(key)
        if len(seen) > sum(counts) + 1:
            raise TopologyError("strand tracing did not close")
    return seen, mu


def _validate_topology(events: Sequence[Event]):
    if not events:
        raise TopologyError("empty event list: no component")
    counts = _strand_counts(events)
    if events[0].kind != LEFT_CUSP:
        raise TopologyError("first event must be a left cusp")
    seen, mu = _trace(events, counts)
    total = sum(counts)
    if len(set(seen)) != total:
        raise TopologyError(
            f"front has more than one component ({total - len(set(seen))} strand segments "
            "unreachable from the first cusp)")
    maslov = tuple(tuple(mu[(i, j)] for j in range(1, counts[i] + 1)) for i in range(len(counts)))
    return counts, maslov


def n_components(events: Sequence[Event]) -> int:
    """Number of closed components traced through the front."""
    counts = _strand_counts(events)
    unvisited = {(i, j) for i in range(len(counts)) for j in range(1, counts[i] + 1)}
    comps = 0
    while unvisited:
        i, j = min(unvisited)
        comps += 1
        state = (i, j, True)
        start = state
        while True:
            unvisited.discard((state[0], state[1]))
            ni, nj, nr, _, _ = step(events, *state)
            state = (ni, nj, nr)
            if state == start:
                break
    return comps


# -- construction ----------------------------------------------------------------

def build_front(name: str, events: Sequence[Event], chords: Sequence[ChordSpec] = (),
                mode: str = "combinatorial") -> PlatFront:
    """Validate and assemble a front."""
    events = tuple(events)
    if mode not in ("geometric", "combinatorial"):
        raise SchemaError(f"mode must be 'geometric' or 'combinatorial', got {mode!r}")
    _, maslov = _validate_topology(events)
    nchords = sum(1 for e in events if e.kind != LEFT_CUSP)
    chords = tuple(chords)
    if len(chords) > nchords:
        raise SchemaError(f"{len(chords)} chords given but the front has {nchords}")
    ids = [c.id for c in chords]
    if len(set(ids)) != len(ids):
        raise SchemaError("duplicate chord ids")
    for c in chords:
        if c.assert_extendable not in ASSERTIONS:
            raise SchemaError(f"chord {c.id}: bad assert_extendable {c.assert_extendable!r}")
        g = c.geometry
        if g is not None:
            if not g.z_minus < g.z_plus:
                raise SchemaError(f"chord {c.id}: z_minus must be below z_plus")
            if g.z_minus in g.other_strand_z or g.z_plus in g.other_strand_z:
                raise SchemaError(f"chord {c.id}: another strand passes through a chord endpoint")
            if c.height is not None and c.height != g.height:
                raise SchemaError(f"chord {c.id}: height {c.height} disagrees with z_plus - z_minus")
            if c.assert_extendable is not None:
                raise SchemaError(f"chord {c.id}: give either geometry or an extendability assertion")
        elif mode == "geometric":
            raise SchemaError(f"chord {c.id}: geometric mode needs z_minus and z_plus")
    return PlatFront(name=name, mode=mode, events=events, chords=chords, maslov=maslov)


def _parse_chord(obj, idx: int) -> ChordSpec:
    if not isinstance(obj, dict):
        raise SchemaError(f"chords[{idx}] must be an object")
    cid = obj.get("id")
    if not isinstance(cid, str) or not cid:
        raise SchemaError(f"chords[{idx}].id must be a non-empty string")
    known = {"id", "height", "z_minus", "z_plus", "other_strand_z", "assert_extendable", "x0"}
    extra = set(obj) - known
    if extra:
        raise SchemaError(f"chords[{idx}]: unknown fields {sorted(extra)}")
    h = obj.get("height")
    height = to_fraction(h, f"{cid}.height") if h is not None else None
    geom = None
    if "z_minus" in obj or "z_plus" in obj:
        if obj.get("z_minus") is None or obj.get("z_plus") is None:
            raise SchemaError(f"chord {cid}: z_minus and z_plus come together")
        others = obj.get("other_strand_z", [])
        if not isinstance(others, list):
            raise SchemaError(f"chord {cid}: other_strand_z must be a list")
        x0 = obj.get("x0")
        geom = ChordGeometry(
            z_minus=to_fraction(obj["z_minus"], f"{cid}.z_minus"),
            z_plus=to_fraction(obj["z_plus"], f"{cid}.z_plus"),
            other_strand_z=tuple(sorted(to_fraction(z, f"{cid}.other_strand_z") for z in others)),
            x0=to_fraction(x0, f"{cid}.x0") if x0 is not None else None,
        )
    elif "other_strand_z" in obj:
        raise SchemaError(f"chord {cid}: other_strand_z without z_minus/z_plus")
    return ChordSpec(id=cid, height=height, geometry=geom,
                     assert_extendable=obj.get("assert_extendable"))


def parse_front(text) -> PlatFront:
    """Parse a ``legcap-front/1`` document (str, bytes or already-loaded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"schema must be {SCHEMA!r}")
    name = doc.get("name")
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    mode = doc.get("mode", "combinatorial")
    evs = doc.get("events")
    if not isinstance(evs, list):
        raise SchemaError("events must be a list")
    events = []
    for i, ev in enumerate(evs):
        if not isinstance(ev, dict) or ev.get("type") not in EVENT_TYPES:
            raise SchemaError(f"events[{i}]: type must be one of {EVENT_TYPES}")
        slot = ev.get("slot")
        if not isinstance(slot, int) or isinstance(slot, bool):
            raise SchemaError(f"events[{i}]: slot must be an integer")
        events.append(Event(ev["type"], slot))
    chs = doc.get("chords", [])
    if not isinstance(chs, list):
        raise SchemaError("chords must be a list")
    chords = [_parse_chord(c, i) for i, c in enumerate(chs)]
    return build_front(name, events, chords, mode)


def front_to_doc(front: PlatFront) -> dict:
    """Inverse of :func:`parse_front` (canonical form)."""
    chords = []
    for c in front.chords:
        d: dict = {"id": c.id}
        if c.height is not None:
            d["height"] = fmt_fraction(c.height)
        if c.geometry is not None:
            g = c.geometry
            d["z_minus"] = fmt_fraction(g.z_minus)
            d["z_plus"] = fmt_fraction(g.z_plus)
            d["other_strand_z"] = [fmt_fraction(z) for z in g.other_strand_z]
            if g.x0 is not None:
                d["x0"] = fmt_fraction(g.x0)
        if c.assert_extendable is not None:
            d["assert_extendable"] = c.assert_extendable
        chords.append(d)
    return {
        "schema": SCHEMA,
        "name": front.name,
        "mode": front.mode,
        "events": [{"type": e.kind, "slot": e.slot} for e in front.events],
        "chords": chords,
    }


# -- chords ------------------------------------------------------------------------

def extract_chords(front: PlatFront) -> List[ReebChord]:
    """One chord per front crossing and right cusp, in event order."""
    out = []
    specs = front.chords
    for n, e in enumerate(front.chord_events()):
        ev = front.events[e]
        if n >= len(specs):
            raise MissingHeight(f"no chord data for the {n + 1}-th crossing/right cusp (event {e})")
        spec = specs[n]
        h = spec.height
        if spec.geometry is not None:
            h = spec.geometry.height
        if h is None:
            raise MissingHeight(f"chord {spec.id}: no height")
        if h <= 0:
            raise NonPositiveHeight(f"chord {spec.id}: height {h} is not positive")
        if ev.kind == RIGHT_CUSP:
            kind, grading = "right-cusp", 1
        else:
            mu = front.maslov[e]
            # upper-left strand has the lesser slope
            kind, grading = "front-crossing", mu[ev.slot - 1] - mu[ev.slot]
        out.append(ReebChord(id=spec.id, kind=kind, grading=grading, height=Fraction(h),
                             event=e, slot=ev.slot))
    return out


def is_doubly_extendable(chord: ReebChord, geom: Optional[ChordGeometry]) -> Extendability:
    if geom is None:
        raise MissingGeometry(f"chord {chord.id}: no z-landscape")
    h = chord.height
    down = not any(geom.z_minus - h <= z <= geom.z_plus for z in geom.other_strand_z)
    up = not any(geom.z_minus <= z <= geom.z_plus + h for z in geom.other_strand_z)
    return Extendability(down=down, up=up)


def chord_extendability(front: PlatFront, chord: ReebChord) -> Tuple[Extendability, str]:
    """Extendability with its source ("geometry" or "asserted")."""
    spec = next(c for c in front.chords if c.id == chord.id)
    if spec.geometry is not None:
        return is_doubly_extendable(chord, spec.geometry), "geometry"
    a = spec.assert_extendable
    if a is None:
        raise MissingGeometry(f"chord {chord.id}: no z-landscape and no extendability assertion")
    return Extendability(down=a in ("down", "both"), up=a in ("up", "both")), "asserted"


def _exact_scale(t) -> Fraction:
    if isinstance(t, bool):
        raise NonPositiveScale("scale must be a number")
    if isinstance(t, (Rational, Decimal)):
        q = Fraction(t)
    elif isinstance(t, float):
        q = Fraction(t)
    elif isinstance(t, str):
        q = to_fraction(t, "scale")
    else:
        raise NonPositiveScale(f"cannot use {t!r} as a scale")
    if q <= 0:
        raise NonPositiveScale(f"scale {t} is not positive")
    return q


def scale_heights(front: PlatFront, t) -> PlatFront:
    """Multiply every height and every z-value by ``t`` (floats are taken exactly)."""
    q = _exact_scale(t)
    chords = []
    for c in front.chords:
        g = c.geometry
        if g is not None:
            g = replace(g, z_minus=g.z_minus * q, z_plus=g.z_plus * q,
                        other_strand_z=tuple(z * q for z in g.other_strand_z))
        chords.append(replace(c, height=None if c.height is None else c.height * q, geometry=g))
    return replace(front, chords=tuple(chords))
