"""Fundamental class from a marked point, and the fundamental capacity."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import gf2
from .dga.algebra import Dga
from .errors import NoAugmentation, NotCocycle, NullClass, SchemaError, SizeLimit
from .front_model import fmt_fraction
from .linearize import (
    Augmentation,
    LinearizedComplex,
    degree0_ids,
    enumerate_augmentations,
    is_coboundary,
    linearized_complex,
)

CAPACITY_SCHEMA = "legcap-capacity/1"
ORACLE_MAX_DEG0 = 20


@dataclass(frozen=True)
class MarkedPoint:
    arc_id: int


def marked_point(dga: Dga, arc_id: int) -> MarkedPoint:
    n = dga.diagram.n_arcs
    if not 0 <= arc_id < n:
        raise SchemaError(f"arc {arc_id} does not exist (diagram has arcs 0..{n - 1})")
    return MarkedPoint(arc_id)


@dataclass(frozen=True)
class FundamentalCocycle:
    coefficients: int              # bit vector over the degree-1 basis
    marked_point: MarkedPoint
    augmentation: Augmentation
    complex: LinearizedComplex

    def support(self) -> List[str]:
        return self.complex.support(1, self.coefficients)


@dataclass(frozen=True)
class CapacityResult:
    value: Fraction
    witness: int                   # bit vector over the degree-1 basis
    witness_chord: str
    shift: int = 0                 # degree-0 cochain y with witness = x0 + delta(y)


def fundamental_cocycle(dga: Dga, aug: Augmentation, m: MarkedPoint,
                        cx: Optional[LinearizedComplex] = None) -> FundamentalCocycle:
    """Count disks through the marked arc whose negative corners are all augmented."""
    if cx is None:
        cx = linearized_complex(dga, aug)
    basis1 = cx.basis.get(1, ())
    if not basis1:
        raise NullClass("no degree-1 chords: the fundamental class cannot be nonzero")
    x = 0
    for j, a in enumerate(basis1):
        total = 0
        for disk in dga.disk_records.get(a, ()):
            if all(aug(b) for b in disk.negative_corners):
                total += disk.multiplicity(m.arc_id)
        if total % 2:
            x |= 1 << j
    if cx.delta(1, x):
        bad = cx.support(2, cx.delta(1, x))
        raise NotCocycle(f"marked arc {m.arc_id}: coboundary is nonzero on {', '.join(bad)}")
    if is_coboundary(cx, 1, x):
        raise NullClass(f"marked arc {m.arc_id}: cocycle {cx.support(1, x) or '0'} is exact")
    return FundamentalCocycle(x, m, aug, cx)


def _heights1(dga: Dga, cx: LinearizedComplex) -> List[Fraction]:
    return [dga.chord(a).height for a in cx.basis.get(1, ())]


def threshold_feasible(dga: Dga, x0: FundamentalCocycle, w: Fraction) -> Optional[int]:
    """A degree-0 cochain y such that x0 + delta(y) vanishes below height w, or None."""
    cx = x0.complex
    hs = _heights1(dga, cx)
    low = [i for i, h in enumerate(hs) if h < w]
    rows0 = cx.coboundary.get(0, ())
    n0 = len(rows0)
    # (delta y)_i = sum_j y_j rows0[j]_i
    cols = gf2.transpose(rows0, len(hs)) if n0 else [0] * len(hs)
    sub = [cols[i] for i in low]
    b = gf2.from_bits(n for n, i in enumerate(low) if x0.coefficients >> i & 1)
    if not sub:
        return 0
    return gf2.solve(sub, n0, b)


def _min_chord(dga: Dga, cx: LinearizedComplex, v: int) -> Tuple[Fraction, str]:
    best = None
    for a in cx.support(1, v):
        h = dga.chord(a).height
        if best is None or h < best[0]:
            best = (h, a)
    return best


def capacity(dga: Dga, aug: Augmentation, x0: FundamentalCocycle) -> CapacityResult:
    """Largest chord height w such that the class has a representative supported on heights >= w."""
    cx = x0.complex
    for w in sorted({c.height for c in dga.chords}, reverse=True):
        y = threshold_feasible(dga, x0, w)
        if y is None:
            continue
        rep = x0.coefficients ^ cx.delta(0, y)
        value, chord = _min_chord(dga, cx, rep)
        return CapacityResult(value=value, witness=rep, witness_chord=chord, shift=y)
    raise AssertionError("the lowest threshold is always feasible")


def capacity_oracle(dga: Dga, aug: Augmentation, x0: FundamentalCocycle,
                    max_deg0: int = ORACLE_MAX_DEG0) -> CapacityResult:
    """Literal maximum over all representatives of the minimal support height."""
    cx = x0.complex
    rows0 = cx.coboundary.get(0, ())
    if len(rows0) > max_deg0:
        raise SizeLimit(f"oracle limited to {max_deg0} degree-0 chords, got {len(rows0)}")
    best = None
    rep, y = x0.coefficients, 0
    # Gray-code walk over all y
    for step in range(1 << len(rows0)):
        if step:
            j = gf2.lowbit(step)
            rep ^= rows0[j]
            y ^= 1 << j
        if rep == 0:
            continue
        h, chord = _min_chord(dga, cx, rep)
        if best is None or h > best.value:
            best = CapacityResult(value=h, witness=rep, witness_chord=chord, shift=y)
    if best is None:
        raise NullClass("every representative vanishes")
    return best


@dataclass(frozen=True)
class SpectrumEntry:
    index: int
    augmentation: Augmentation
    cocycle: FundamentalCocycle
    result: CapacityResult


@dataclass(frozen=True)
class Spectrum:
    entries: Tuple[SpectrumEntry, ...]
    marked_point: MarkedPoint

    @property
    def c_min(self) -> Fraction:
        return min(e.result.value for e in self.entries)

    @property
    def c_max(self) -> Fraction:
        return max(e.result.value for e in self.entries)


def capacity_spectrum(dga: Dga, augs: Optional[Sequence[Augmentation]] = None,
                      arc_id: int = 0, max_deg0: int = 24) -> Spectrum:
    if augs is None:
        augs = enumerate_augmentations(dga, max_deg0)
    if not augs:
        raise NoAugmentation(f"{dga.name} admits no augmentation")
    m = marked_point(dga, arc_id)
    entries = []
    for n, aug in enumerate(augs):
        x0 = fundamental_cocycle(dga, aug, m)
        entries.append(SpectrumEntry(n, aug, x0, capacity(dga, aug, x0)))
    return Spectrum(tuple(entries), m)


def capacity_to_doc(dga: Dga, spec: Spectrum) -> dict:
    ids0 = degree0_ids(dga)
    rows = []
    for e in spec.entries:
        cx = e.cocycle.complex
        basis1 = cx.basis.get(1, ())
        rows.append({
            "index": e.index,
            "augmentation": list(e.augmentation.vector(ids0)),
            "capacity": fmt_fraction(e.result.value),
            "witness_chord": e.result.witness_chord,
            "witness": [e.result.witness >> j & 1 for j in range(len(basis1))],
            "fundamental_cocycle": [e.cocycle.coefficients >> j & 1 for j in range(len(basis1))],
        })
    first = spec.entries[0].cocycle.complex
    return {
        "schema": CAPACITY_SCHEMA,
        "name": dga.name,
        "marked_arc": spec.marked_point.arc_id,
        "degree0_chords": list(ids0),
        "degree1_chords": list(first.basis.get(1, ())),
        "augmentations": rows,
        "c_min": fmt_fraction(spec.c_min),
        "c_max": fmt_fraction(spec.c_max),
    }


def dump_capacity(dga: Dga, spec: Spectrum) -> str:
    return json.dumps(capacity_to_doc(dga, spec), sort_keys=True, indent=2) + "\n"
