"""Brute-force disk search over unions of bounded faces.

Test-side oracle: independent of the sweep in ``disks``.  A candidate is an
edge-connected set of bounded faces.  It is kept when its closure, with
pinched vertices pulled apart, is a disk whose corners are all convex and
exactly one of them is positive.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, FrozenSet, List, Tuple

from ..errors import SizeLimit
from .diagram import BIRTH, CROSS, DEATH, POSITIVE, QUADRANTS, ResolvedDiagram
from .model import Disk, make_disk

MAX_CROSSINGS = 12


def _unshift(ev, j: int) -> int:
    """Slot to the left of ``ev`` of a strand not involved in it."""
    k = ev.slot
    if ev.kind == BIRTH:
        return j - 2 if j >= k + 2 else j
    if ev.kind == DEATH:
        return j + 2 if j >= k else j
    return j


def _shift(ev, j: int) -> int:
    k = ev.slot
    if ev.kind == BIRTH:
        return j + 2 if j >= k else j
    if ev.kind == DEATH:
        return j - 2 if j > k + 1 else j
    return j


def _depart(e: int, k: int, h: int):
    # half-edges: 0 R_bot, 1 R_top, 2 L_top, 3 L_bot
    return ((e + 1, k + 1, True), (e + 1, k, True), (e, k, False), (e, k + 1, False))[h]


def trace_region(diag: ResolvedDiagram, S: FrozenSet[int]) -> List[List]:
    """Counterclockwise boundary cycles of the union of faces ``S``.

    Tokens are arc ids (consecutive repeats merged) and corner tuples
    ``(chord, "+"|"-")``; a reflex turn appears as ``(chord, "reflex")``.
    """
    inS = lambda f: f is not None and f in S
    events = diag.events
    start_states = []
    for i, n in enumerate(diag.counts):
        for j in range(1, n + 1):
            a, b = diag.segment_faces(i, j)
            if inS(a) != inS(b):
                start_states.append((i, j, inS(a)))
    seen = set()
    cycles = []
    for st in start_states:
        if (st[0], st[1]) in seen:
            continue
        toks: List = []
        state = st
        while True:
            i, j, right = state
            seen.add((i, j))
            a = diag.arc_of[(i, j)]
            if not toks or toks[-1] != a:
                toks.append(a)
            if right:
                ev = events[i]
                k = ev.slot
                if ev.kind == CROSS and j in (k, k + 1):
                    e, h = i, (2 if j == k else 3)
                elif ev.kind == DEATH and j in (k, k + 1):
                    state = (i, 2 * k + 1 - j, False)
                    e = None
                else:
                    state = (i + 1, _shift(ev, j), True)
                    e = None
            else:
                ev = events[i - 1]
                k = ev.slot
                if ev.kind == CROSS and j in (k, k + 1):
                    e, h = i - 1, (1 if j == k else 0)
                elif ev.kind == BIRTH and j in (k, k + 1):
                    state = (i, 2 * k + 1 - j, True)
                    e = None
                else:
                    state = (i - 1, _unshift(ev, j), False)
                    e = None
            if e is not None:
                v = diag.vertex(events[e].chord)
                passed = 0
                hh = h
                while True:
                    q = (hh - 1) % 4
                    if not inS(v.faces[q]):
                        break
                    passed += 1
                    hh = (hh - 1) % 4
                    if passed == 4:
                        raise AssertionError("boundary arrived at an interior vertex")
                if passed == 0:
                    raise AssertionError("boundary arrived with the region on the wrong side")
                if passed == 1:
                    q = (h - 1) % 4
                    toks.append((v.chord, "+" if QUADRANTS[q] in POSITIVE else "-"))
                elif passed == 3:
                    toks.append((v.chord, "reflex"))
                state = _depart(e, k, hh)
            if state == st:
                break
        if len(toks) > 1 and toks[0] == toks[-1] and isinstance(toks[0], int):
            toks.pop()
        cycles.append(toks)
    return cycles


def _runs(pattern: Tuple[bool, ...]) -> List[Tuple[int, int]]:
    """Cyclic runs of True in a 4-tuple as (start, length)."""
    if all(pattern):
        return [(0, 4)]
    first = pattern.index(False)
    out: List[Tuple[int, int]] = []
    for step in range(1, 5):
        q = (first + step) % 4
        if pattern[q]:
            if out and (out[-1][0] + out[-1][1]) % 4 == q:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((q, 1))
    return out


def brute_force_disk_oracle(diag: ResolvedDiagram, max_crossings: int = MAX_CROSSINGS) -> Dict[str, List[Disk]]:
    V = len(diag.vertices)
    if V > max_crossings:
        raise SizeLimit(f"oracle limited to {max_crossings} crossings, diagram has {V}")
    F = diag.n_faces
    adj = [0] * F
    arc_sides: Dict[int, set] = defaultdict(set)
    for (i, j), a in diag.arc_of.items():
        up, down = diag.segment_faces(i, j)
        arc_sides[a].update((up, down))
        if up is not None and down is not None and up != down:
            adj[up] |= 1 << down
            adj[down] |= 1 << up
    result: Dict[str, List[Disk]] = {c: [] for c in diag.chord_ids}
    for mask in range(1, 1 << F):
        # connectivity
        low = mask & -mask
        reach = low
        frontier = low
        while frontier:
            f = frontier.bit_length() - 1
            frontier &= ~(1 << f)
            new = adj[f] & mask & ~reach
            reach |= new
            frontier |= new
        if reach != mask:
            continue
        S = frozenset(f for f in range(F) if mask >> f & 1)
        ok = True
        vcount = 0
        positives = 0
        for v in diag.vertices:
            pat = tuple(f is not None and f in S for f in v.faces)
            if not any(pat):
                continue
            runs = _runs(pat)
            for s, length in runs:
                if length == 3:
                    ok = False
                if length == 1 and QUADRANTS[s] in POSITIVE:
                    positives += 1
            vcount += len(runs)
            if not ok:
                break
        if not ok or positives != 1:
            continue
        ecount = sum(1 for a in range(diag.n_arcs) if any(f is not None and f in S for f in arc_sides[a]))
        if vcount - ecount + len(S) != 1:
            continue
        cycles = trace_region(diag, S)
        if len(cycles) != 1:
            continue
        d = make_disk(cycles[0])
        result[d.positive_corner].append(d)
    for c in result:
        result[c].sort(key=Disk.sort_key)
    return result
