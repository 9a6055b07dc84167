"""Augmentations, linearized (co)chain complexes and their homology over F2."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import gf2
from .dga.algebra import Dga, Word
from .errors import AugmentationError, LinearizationError, SizeLimit

LCH_SCHEMA = "legcap-lch/1"
MAX_DEG0 = 24


@dataclass(frozen=True)
class Augmentation:
    """An F2-valued augmentation; ``values`` lists every chord of the algebra."""
    values: Mapping[str, int]

    def __call__(self, cid: str) -> int:
        return self.values[cid]

    def vector(self, ids: Sequence[str]) -> Tuple[int, ...]:
        return tuple(self.values[c] for c in ids)


def degree0_ids(dga: Dga) -> Tuple[str, ...]:
    return tuple(c.id for c in dga.chords if c.grading == 0)


def eval_word(values: Mapping[str, int], w: Word) -> int:
    for b in w:
        if not values[b]:
            return 0
    return 1


def augmentation_defect(dga: Dga, values: Mapping[str, int]) -> Optional[str]:
    """Why ``values`` fails to be an augmentation, or None."""
    for c in dga.chords:
        v = values.get(c.id)
        if v not in (0, 1):
            return f"no F2 value for {c.id}"
        if v and c.grading != 0:
            return f"{c.id} has degree {c.grading} but value 1"
    for a, words in dga.differential.items():
        if sum(eval_word(values, w) for w in words) % 2:
            return f"eps(d{a}) = 1"
    return None


def make_augmentation(dga: Dga, values: Mapping[str, int]) -> Augmentation:
    """Fill in zeros for unlisted chords and validate."""
    full = {c.id: int(values.get(c.id, 0)) for c in dga.chords}
    unknown = set(values) - set(full)
    if unknown:
        raise AugmentationError(f"unknown chords {sorted(unknown)}")
    why = augmentation_defect(dga, full)
    if why:
        raise AugmentationError(f"not an augmentation: {why}")
    return Augmentation(full)


def enumerate_augmentations(dga: Dga, max_deg0: int = MAX_DEG0) -> List[Augmentation]:
    """Every augmentation, in lexicographic order of the degree-0 value vector.

    Backtracking over degree-0 chords; a relation eps(da) = 0 is tested as
    soon as all chords in it are assigned.
    """
    ids = degree0_ids(dga)
    if len(ids) > max_deg0:
        raise SizeLimit(f"{len(ids)} degree-0 chords exceeds the cap of {max_deg0}")
    pos = {c: n for n, c in enumerate(ids)}
    # relations restricted to words made only of degree-0 chords
    relations = []
    for a, words in dga.differential.items():
        ws = [w for w in words if all(b in pos for b in w)]
        const = sum(1 for w in ws if not w) % 2
        monos = [frozenset(pos[b] for b in w) for w in ws if w]
        last = max((max(m) for m in monos), default=-1)
        relations.append((last, const, monos))
    by_last: Dict[int, list] = {}
    for last, const, monos in relations:
        if last < 0:
            if const:
                return []
            continue
        by_last.setdefault(last, []).append((const, monos))

    out: List[Augmentation] = []
    vals = [0] * len(ids)

    def ok(n: int) -> bool:
        for const, monos in by_last.get(n, ()):
            s = const
            for m in monos:
                if all(vals[i] for i in m):
                    s ^= 1
            if s:
                return False
        return True

    def rec(n: int) -> None:
        if n == len(ids):
            full = {c.id: 0 for c in dga.chords}
            full.update(zip(ids, vals))
            out.append(Augmentation(full))
            return
        for v in (0, 1):
            vals[n] = v
            if ok(n):
                rec(n + 1)
        vals[n] = 0

    rec(0)
    for aug in out:
        why = augmentation_defect(dga, aug.values)
        if why:
            raise AugmentationError(f"enumeration produced a non-augmentation: {why}")
    return out


# -- linearization -------------------------------------------------------------

@dataclass(frozen=True)
class LinearizedComplex:
    """Chain complex on the chords with the linearized differential.

    ``basis[d]`` lists the chords of degree d in canonical order.
    ``boundary[d]`` has one bit row per chord of degree d giving its image in
    degree d-1; ``coboundary[d]`` has one row per chord of degree d giving its
    image in degree d+1 (the transpose of ``boundary[d+1]``).
    """
    ids: Tuple[str, ...]
    basis: Mapping[int, Tuple[str, ...]]
    boundary: Mapping[int, Tuple[int, ...]]
    coboundary: Mapping[int, Tuple[int, ...]]
    augmentation: Augmentation

    @property
    def degrees(self) -> List[int]:
        return sorted(self.basis)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def index(self, cid: str) -> Tuple[int, int]:
        for d, b in self.basis.items():
            if cid in b:
                return d, b.index(cid)
        raise KeyError(cid)

    def vector(self, d: int, cids: Sequence[str]) -> int:
        b = self.basis.get(d, ())
        return gf2.from_bits(b.index(c) for c in cids)

    def support(self, d: int, v: int) -> List[str]:
        b = self.basis.get(d, ())
        return [b[j] for j in gf2.bits(v)]

    def d(self, deg: int, v: int) -> int:
        """Chain boundary of a degree-``deg`` vector."""
        out = 0
        rows = self.boundary.get(deg, ())
        for j in gf2.bits(v):
            out ^= rows[j]
        return out

    def delta(self, deg: int, v: int) -> int:
        """Cochain coboundary of a degree-``deg`` cochain."""
        out = 0
        rows = self.coboundary.get(deg, ())
        for j in gf2.bits(v):
            out ^= rows[j]
        return out


def linear_part(dga: Dga, aug: Augmentation) -> Dict[str, Dict[str, int]]:
    """Coefficient of each chord in the linearized differential of each chord."""
    out: Dict[str, Dict[str, int]] = {}
    for a, words in dga.differential.items():
        coef: Dict[str, int] = {}
        for w in words:
            for i, b in enumerate(w):
                if all(aug(c) for j, c in enumerate(w) if j != i):
                    coef[b] = coef.get(b, 0) ^ 1
        out[a] = {b: 1 for b, v in coef.items() if v}
    return out


def linearized_complex(dga: Dga, aug: Augmentation) -> LinearizedComplex:
    why = augmentation_defect(dga, aug.values)
    if why:
        raise AugmentationError(f"not an augmentation: {why}")
    basis: Dict[int, List[str]] = {}
    for c in dga.chords:
        basis.setdefault(c.grading, []).append(c.id)
    grading = {c.id: c.grading for c in dga.chords}
    lin = linear_part(dga, aug)
    boundary: Dict[int, Tuple[int, ...]] = {}
    for d, ids in basis.items():
        below = basis.get(d - 1, [])
        rows = []
        for a in ids:
            r = 0
            for b in lin[a]:
                if grading[b] != d - 1:
                    raise LinearizationError(f"d{a} has linear term {b} of the wrong degree")
                r |= 1 << below.index(b)
            rows.append(r)
        boundary[d] = tuple(rows)
    coboundary: Dict[int, Tuple[int, ...]] = {}
    for d, ids in basis.items():
        above = boundary.get(d + 1, ())
        coboundary[d] = tuple(gf2.transpose(above, len(ids))) if above else tuple(0 for _ in ids)
    cx = LinearizedComplex(
        ids=tuple(c.id for c in dga.chords),
        basis={d: tuple(v) for d, v in basis.items()},
        boundary=boundary, coboundary=coboundary, augmentation=aug)
    for d in cx.degrees:
        for j, r in enumerate(boundary[d]):
            if cx.d(d - 1, r):
                raise LinearizationError(
                    f"linearized differential does not square to zero at {basis[d][j]}")
    return cx


# -- homology --------------------------------------------------------------------

@dataclass(frozen=True)
class HomologySummary:
    betti: Mapping[int, int]                       # chain direction, LCH_d
    cobetti: Mapping[int, int]                     # cochain direction, LCH^d
    cycles: Mapping[int, Tuple[int, ...]]
    boundaries: Mapping[int, Tuple[int, ...]]
    cocycles: Mapping[int, Tuple[int, ...]]
    coboundaries: Mapping[int, Tuple[int, ...]]

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * b for d, b in self.betti.items())


def homology(cx: LinearizedComplex) -> HomologySummary:
    betti, cobetti = {}, {}
    cycles, bounds, cocycles, cobounds = {}, {}, {}, {}
    for d in cx.degrees:
        n = cx.dim(d)
        # d: C_d -> C_{d-1}; rows of boundary[d] are images of basis vectors
        z = gf2.kernel_basis(gf2.transpose(cx.boundary[d], cx.dim(d - 1)), n) \
            if cx.dim(d - 1) else [1 << j for j in range(n)]
        b = gf2.row_space_basis(cx.boundary.get(d + 1, ()))
        cz = gf2.kernel_basis(gf2.transpose(cx.coboundary[d], cx.dim(d + 1)), n) \
            if cx.dim(d + 1) else [1 << j for j in range(n)]
        cb = gf2.row_space_basis(cx.coboundary.get(d - 1, ()))
        cycles[d], bounds[d] = tuple(z), tuple(b)
        cocycles[d], cobounds[d] = tuple(cz), tuple(cb)
        betti[d] = len(z) - len(b)
        cobetti[d] = len(cz) - len(cb)
        if betti[d] < 0 or cobetti[d] < 0:
            raise LinearizationError(f"negative homology dimension in degree {d}")
    return HomologySummary(betti, cobetti, cycles, bounds, cocycles, cobounds)


def is_cocycle(cx: LinearizedComplex, deg: int, x: int) -> bool:
    return cx.delta(deg, x) == 0


def is_coboundary(cx: LinearizedComplex, deg: int, x: int) -> bool:
    """Whether x = delta(y) for some cochain y of degree deg-1."""
    rows = cx.coboundary.get(deg - 1, ())
    return gf2.in_span(list(rows), x)


def coboundary_preimage(cx: LinearizedComplex, deg: int, x: int) -> Optional[int]:
    """Some y of degree deg-1 with delta(y) = x, or None."""
    rows = cx.coboundary.get(deg - 1, ())
    if not rows:
        return 0 if x == 0 else None
    # delta(y) = sum of rows[j] for j in y, i.e. A y with A's columns = rows
    return gf2.solve(gf2.transpose(rows, cx.dim(deg)), len(rows), x)


# -- dump -------------------------------------------------------------------------

def lch_to_doc(dga: Dga, augs: Sequence[Augmentation],
               summaries: Sequence[HomologySummary]) -> dict:
    ids0 = degree0_ids(dga)
    rows = []
    for n, (aug, h) in enumerate(zip(augs, summaries)):
        rows.append({
            "index": n,
            "augmentation": list(aug.vector(ids0)),
            "betti": [[d, h.betti[d]] for d in sorted(h.betti)],
            "cobetti": [[d, h.cobetti[d]] for d in sorted(h.cobetti)],
        })
    return {"schema": LCH_SCHEMA, "name": dga.name, "degree0_chords": list(ids0),
            "augmentations": rows}


def dump_lch(dga: Dga, augs, summaries) -> str:
    return json.dumps(lch_to_doc(dga, augs, summaries), sort_keys=True, indent=2) + "\n"
