"""The differential: assembly from disks, structural checks, JSON dump."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from ..errors import DegreeError, DSquaredError, FiltrationError
from ..front_model import ReebChord, extract_chords, fmt_fraction
from .diagram import ResolvedDiagram, resolve
from .model import Disk

Word = Tuple[str, ...]

DGA_SCHEMA = "legcap-dga/1"


def word_key(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class Dga:
    name: str
    chords: Tuple[ReebChord, ...]
    differential: Mapping[str, Tuple[Word, ...]]
    disk_records: Mapping[str, Tuple[Disk, ...]] = field(compare=False)
    diagram: Optional[ResolvedDiagram] = field(default=None, compare=False, repr=False)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(c.id for c in self.chords)

    def chord(self, cid: str) -> ReebChord:
        for c in self.chords:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def grading(self, cid: str) -> int:
        return self.chord(cid).grading

    def degree(self, d: int) -> Tuple[ReebChord, ...]:
        return tuple(c for c in self.chords if c.grading == d)


def mod2(words: Iterable[Word]) -> Tuple[Word, ...]:
    cnt = Counter(words)
    return tuple(sorted((w for w, n in cnt.items() if n % 2), key=word_key))


def apply_d(diff: Mapping[str, Sequence[Word]], word: Word) -> Counter:
    """Leibniz expansion of the differential on a word (counts, not reduced)."""
    out: Counter = Counter()
    for i, b in enumerate(word):
        for w in diff[b]:
            out[word[:i] + w + word[i + 1:]] += 1
    return out


def check_degrees(dga: Dga) -> None:
    g = {c.id: c.grading for c in dga.chords}
    for a, words in dga.differential.items():
        for w in words:
            if sum(g[b] for b in w) != g[a] - 1:
                raise DegreeError(
                    f"d{a} contains {' '.join(w) or '1'} of degree {sum(g[b] for b in w)}, "
                    f"expected {g[a] - 1}")


def check_d_squared(dga: Dga) -> None:
    for a, words in dga.differential.items():
        total: Counter = Counter()
        for w in words:
            total.update(apply_d(dga.differential, w))
        bad = sorted((w for w, n in total.items() if n % 2), key=word_key)
        if bad:
            raise DSquaredError(f"dd{a} = {' + '.join(' '.join(w) or '1' for w in bad)} != 0")


def check_filtration(dga: Dga) -> None:
    h = {c.id: c.height for c in dga.chords}
    for a, disks in dga.disk_records.items():
        for d in disks:
            s = sum((h[b] for b in d.negative_corners), Fraction(0))
            if not h[a] > s:
                raise FiltrationError(
                    f"action filtration fails for d{a} word {' '.join(d.negative_corners) or '1'}: "
                    f"h({a}) = {h[a]} <= {s}",
                    chord=a, word=d.negative_corners,
                    heights={b: h[b] for b in (a,) + d.negative_corners})


def differential(disks: Mapping[str, Sequence[Disk]], diag: ResolvedDiagram,
                 chords: Optional[Sequence[ReebChord]] = None, check: bool = True) -> Dga:
    """Assemble and verify the algebra from disk records.

    Checks run in the order degree, d^2, filtration.
    """
    if chords is None:
        chords = extract_chords(diag.front)
    chords = tuple(chords)
    diff = {c.id: mod2(d.negative_corners for d in disks.get(c.id, ())) for c in chords}
    recs = {c.id: tuple(disks.get(c.id, ())) for c in chords}
    dga = Dga(name=diag.name, chords=chords, differential=diff, disk_records=recs, diagram=diag)
    if check:
        check_degrees(dga)
        check_d_squared(dga)
        check_filtration(dga)
    return dga


def build_dga(front, check: bool = True) -> Dga:
    """Front -> resolved diagram -> disks -> verified algebra."""
    from .sweep import enumerate_disks
    diag = resolve(front)
    return differential(enumerate_disks(diag), diag, check=check)


def dga_to_doc(dga: Dga, with_disks: bool = False) -> dict:
    doc = {
        "schema": DGA_SCHEMA,
        "name": dga.name,
        "chords": [{"id": c.id, "kind": c.kind, "grading": c.grading,
                    "height": fmt_fraction(c.height)} for c in dga.chords],
        "differential": {a: [list(w) for w in ws] for a, ws in dga.differential.items()},
    }
    if with_disks:
        doc["disks"] = {
            a: [{"negative_corners": list(d.negative_corners),
                 "boundary_arcs": [[arc, m] for arc, m in d.boundary_arcs]} for d in ds]
            for a, ds in dga.disk_records.items()}
    return doc


def dump_dga(dga: Dga, with_disks: bool = False) -> str:
    return json.dumps(dga_to_doc(dga, with_disks), sort_keys=True, indent=2) + "\n"
