"""Disk records."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple


@dataclass(frozen=True)
class Disk:
    positive_corner: str
    negative_corners: Tuple[str, ...]
    boundary_arcs: Tuple[Tuple[int, int], ...]     # sorted (arc id, multiplicity)
    # full counterclockwise boundary starting at the positive corner; arc ids
    # and (chord, sign) corner tokens
    boundary: Tuple = ()

    def multiplicity(self, arc: int) -> int:
        for a, m in self.boundary_arcs:
            if a == arc:
                return m
        return 0

    def sort_key(self):
        return (self.negative_corners, self.boundary_arcs, repr(self.boundary))


def compress(tokens: Sequence) -> list:
    out: list = []
    for t in tokens:
        if out and isinstance(t, int) and out[-1] == t:
            continue
        out.append(t)
    return out


def make_disk(cycle: Sequence) -> Disk:
    """Canonical disk from a cyclic token list with exactly one positive corner."""
    toks = compress(cycle)
    if len(toks) > 1 and isinstance(toks[0], int) and toks[0] == toks[-1]:
        toks.pop()
    pos = [n for n, t in enumerate(toks) if isinstance(t, tuple) and t[1] == "+"]
    if len(pos) != 1:
        raise ValueError(f"expected one positive corner, got {len(pos)}")
    p = pos[0]
    toks = toks[p:] + toks[:p]
    neg = tuple(t[0] for t in toks if isinstance(t, tuple) and t[1] == "-")
    arcs = Counter(t for t in toks if isinstance(t, int))
    return Disk(positive_corner=toks[0][0], negative_corners=neg,
                boundary_arcs=tuple(sorted(arcs.items())), boundary=tuple(toks))
