"""Left-to-right sweep enumerating embedded disks with one positive corner.

Between two events a partial disk is a set of *sheets*: intervals (top slot,
bottom slot) of the vertical line covered by the disk.  Its boundary so far
is a set of *pieces*, each a counterclockwise token run from the upper end of
one sheet to the lower end of some sheet.  Tokens are prepended at upper ends
and appended at lower ends.

Local moves, for an event on slots k, k+1:

crossing   an upper end at k+1 follows its strand to k or stays (negative
           corner in the bottom quadrant); a lower end at k follows to k+1
           or stays (negative corner in the top quadrant); ends at k (upper)
           and k+1 (lower) must follow.  A sheet (k, k+1) may close at the
           positive left quadrant; a sheet (k, k+1) may open at the positive
           right quadrant.
birth      a new sheet may open at the tip; a sheet containing the tip either
           passes over it or splits around it.
death      a sheet (k, k+1) closes at the tip; a sheet ending at k merges
           with one starting at k+1 below it.

Sheets of an embedded disk never overlap and never share a strand, so any
state violating that is dropped.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Dict, List, Optional, Tuple

from .diagram import BIRTH, CROSS, ResolvedDiagram
from .model import Disk, make_disk

# a sheet: (top, bottom, up piece id, low piece id)
Sheet = Tuple[int, int, int, int]


class _State:
    __slots__ = ("sheets", "pieces", "pos", "euler", "next_id")

    def __init__(self, sheets, pieces, pos, euler, next_id):
        self.sheets: List[Sheet] = sheets
        self.pieces: Dict[int, tuple] = pieces
        self.pos: Optional[str] = pos
        self.euler: int = euler      # convex minus concave critical points
        self.next_id: int = next_id

    def copy(self) -> "_State":
        return _State(list(self.sheets), dict(self.pieces), self.pos, self.euler, self.next_id)

    def new_piece(self, toks=()) -> int:
        pid = self.next_id
        self.next_id += 1
        self.pieces[pid] = tuple(toks)
        return pid


def _cat(a: tuple, b: tuple) -> tuple:
    if a and b and isinstance(a[-1], int) and a[-1] == b[0]:
        return a + b[1:]
    return a + b


def _join(st: _State, low: int, mid: tuple, up: int, closed: list, alias=None) -> None:
    """Glue the piece ending at ``low`` to the piece starting at ``up``.

    ``alias`` collects renamed piece ids when several joins happen at once.
    """
    if alias is not None:
        while low in alias:
            low = alias[low]
        while up in alias:
            up = alias[up]
    if low == up:
        closed.append(_cat(st.pieces.pop(low), mid))
        return
    st.pieces[low] = _cat(_cat(st.pieces[low], mid), st.pieces.pop(up))
    if alias is not None:
        alias[up] = low
    st.sheets = [(t, b, low if u == up else u, low if l == up else l) for t, b, u, l in st.sheets]


def _crossing(st: _State, k: int, chord: str, closed_out: list) -> List[Tuple[_State, list]]:
    corner = (chord, "-")
    per_sheet = []
    for t, b, u, l in st.sheets:
        if (t, b) == (k, k + 1):
            per_sheet.append([("end",)])
            continue
        tops = [(k + 1, False)] if t == k else [(k, False), (k + 1, True)] if t == k + 1 else [(t, False)]
        bots = [(k, False)] if b == k + 1 else [(k + 1, False), (k, True)] if b == k else [(b, False)]
        opts = [("keep", nt, ct, nb, cb) for (nt, ct), (nb, cb) in product(tops, bots) if nt < nb]
        per_sheet.append(opts)
    out = []
    for choice in product(*per_sheet):
        ends = sum(1 for c in choice if c[0] == "end")
        if ends and st.pos is not None:
            continue
        if ends > 1:
            continue
        for start in (False, True):
            if start and (st.pos is not None or ends):
                continue
            s = st.copy()
            closed: list = []
            new_sheets = []
            enders = []
            for (t, b, u, l), c in zip(st.sheets, choice):
                if c[0] == "end":
                    enders.append((u, l))
                    continue
                _, nt, ct, nb, cb = c
                if ct:
                    s.pieces[u] = (corner,) + s.pieces[u]
                if cb:
                    s.pieces[l] = s.pieces[l] + (corner,)
                new_sheets.append((nt, nb, u, l))
            s.sheets = new_sheets
            for u, l in enders:
                s.pos = chord
                s.euler += 1
                _join(s, l, ((chord, "+"),), u, closed)
            if start:
                s.pos = chord
                s.euler += 1
                pid = s.new_piece(((chord, "+"),))
                s.sheets.append((k, k + 1, pid, pid))
            out.append((s, closed))
    return out


def _birth(st: _State, k: int) -> List[Tuple[_State, list]]:
    per_sheet = []
    for t, b, u, l in st.sheets:
        if t <= k - 1 and b >= k:
            per_sheet.append([("over",), ("split",)])
        else:
            per_sheet.append([("shift",)])
    out = []
    for choice in product(*per_sheet):
        for start in (False, True):
            s = st.copy()
            sheets = []
            for (t, b, u, l), c in zip(st.sheets, choice):
                if c[0] == "shift":
                    sheets.append((t + 2 if t >= k else t, b + 2 if b >= k else b, u, l))
                elif c[0] == "over":
                    sheets.append((t, b + 2, u, l))
                else:
                    pid = s.new_piece()
                    s.euler -= 1
                    sheets.append((t, k, u, pid))
                    sheets.append((k + 1, b + 2, pid, l))
            if start:
                pid = s.new_piece()
                s.euler += 1
                sheets.append((k, k + 1, pid, pid))
            s.sheets = sheets
            out.append((s, []))
    return out


def _death(st: _State, k: int) -> List[Tuple[_State, list]]:
    keep, enders, above, below = [], [], [], []
    for sh in st.sheets:
        t, b, u, l = sh
        if (t, b) == (k, k + 1):
            enders.append(sh)
        elif b == k:
            above.append(sh)
        elif t == k + 1:
            below.append(sh)
        elif t in (k, k + 1) or b in (k, k + 1):
            return []
        else:
            keep.append((t - 2 if t >= k + 2 else t, b - 2 if b >= k + 2 else b, u, l))
    if len(above) != len(below):
        return []
    out = []
    for perm in permutations(below):
        s = st.copy()
        closed: list = []
        merged = [(a[0], p[1] - 2, a[2], p[3]) for a, p in zip(above, perm)]
        s.sheets = keep + merged
        alias: Dict[int, int] = {}
        for a, p in zip(above, perm):
            s.euler -= 1
            # the piece ending at a's lower end runs on round the tip into p's upper end
            _join(s, a[3], (), p[2], closed, alias)
        for t, b, u, l in enders:
            s.euler += 1
            _join(s, l, (), u, closed, alias)
        out.append((s, closed))
    return out


def _embedded(sheets: List[Sheet]) -> bool:
    spans = sorted((t, b) for t, b, _, _ in sheets)
    return all(b < t2 for (_, b), (t2, _) in zip(spans, spans[1:]))


def enumerate_disks(diag: ResolvedDiagram) -> Dict[str, List[Disk]]:
    """All disks with convex corners and one positive corner, per chord."""
    result: Dict[str, List[Disk]] = {c: [] for c in diag.chord_ids}
    states = [_State([], {}, None, 0, 0)]
    for e, ev in enumerate(diag.events):
        nxt = []
        for st in states:
            if ev.kind == CROSS:
                succ = _crossing(st, ev.slot, ev.chord, [])
            elif ev.kind == BIRTH:
                succ = _birth(st, ev.slot)
            else:
                succ = _death(st, ev.slot)
            for s, closed in succ:
                if closed:
                    if len(closed) == 1 and not s.sheets and s.pos is not None and s.euler == 2:
                        d = make_disk(closed[0])
                        result[d.positive_corner].append(d)
                    continue
                if not _embedded(s.sheets):
                    continue
                for t, b, u, l in s.sheets:
                    s.pieces[u] = _cat((diag.arc_of[(e + 1, t)],), s.pieces[u])
                    s.pieces[l] = _cat(s.pieces[l], (diag.arc_of[(e + 1, b)],))
                nxt.append(s)
        states = nxt
    for c in result:
        result[c].sort(key=Disk.sort_key)
    return result
