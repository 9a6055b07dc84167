"""Acceptance criteria 1-10.

Every test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line on the terminal (outside pytest's capture) and then asserts.
"""

import io
import itertools
import json
import subprocess
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from legcap.bounds import width_report
from legcap.capacity import (
    capacity_oracle,
    capacity_spectrum,
    fundamental_cocycle,
    marked_point,
    threshold_feasible,
)
from legcap.cli import run
from legcap.dga import brute_force_disk_oracle, resolve
from legcap.dga.algebra import build_dga, check_d_squared, check_degrees, check_filtration
from legcap.dga.sweep import enumerate_disks
from legcap.errors import FiltrationError, LegcapError
from legcap.front_model import extract_chords, scale_heights
from legcap.linearize import (
    augmentation_defect,
    degree0_ids,
    enumerate_augmentations,
    is_coboundary,
    linearized_complex,
)
from conftest import corpus_front, corpus_names, good_corpus_names, random_fronts, \
    realized_fronts, trefoil

RANDOM_SEED = 20240601


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
        assert ok, f"criterion {n}: {text}"
    return emit


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv) + ["--format", "json"], out, err)
    return code, (json.loads(out.getvalue()) if out.getvalue() else None), err.getvalue()


@pytest.fixture(scope="module")
def geometric_fronts():
    return realized_fronts(RANDOM_SEED, 200)


def test_criterion_1_unknot_width(verdict):
    bad = []
    for name, r in [("unknot-r1.json", Fraction(1)), ("unknot-r2.json", Fraction(2)),
                    ("unknot-r7_3.json", Fraction(7, 3))]:
        t = time.perf_counter()
        code, doc, err = cli_json("width", f"corpus/{name}")
        dt = time.perf_counter() - t
        exact = doc["width"].get("exact") if doc else None
        if code != 0 or exact is None or Fraction(exact) != 2 * r or dt >= 1:
            bad.append(f"{name}: exit {code}, exact {exact}, {dt:.3f}s")
    verdict(1, not bad, "width(U(r)) exact = 2r for r in {1, 2, 7/3}, each under 1 s"
            if not bad else "; ".join(bad))


def test_criterion_2_trefoil_width(verdict):
    bad = []
    t = time.perf_counter()
    code, doc, _ = cli_json("width", "corpus/trefoil.json")
    dt = time.perf_counter() - t
    if code != 0 or doc["width"].get("exact") != "2" or dt >= 5:
        bad.append(f"corpus trefoil: exit {code}, {doc and doc['width']}, {dt:.3f}s")
    for r in (Fraction(1, 2), Fraction(3), Fraction(7, 3)):
        t = time.perf_counter()
        rep = width_report(trefoil(r))
        dt = time.perf_counter() - t
        if rep.exact != 2 * r or dt >= 5:
            bad.append(f"T({r}): exact {rep.exact}, {dt:.3f}s")
    verdict(2, not bad, "width(T(r)) exact = 2r, under 5 s" if not bad else "; ".join(bad))


def test_criterion_3_capacity_spectrum(verdict):
    bad = []
    for name, r, n_aug in [("unknot.json", 1, 1), ("unknot-r2.json", 2, 1),
                           ("unknot-r7_3.json", Fraction(7, 3), 1), ("trefoil.json", 1, 5)]:
        dga = build_dga(corpus_front(name))
        ids = degree0_ids(dga)
        brute = 0
        for vals in itertools.product((0, 1), repeat=len(ids)):
            full = {c.id: 0 for c in dga.chords}
            full.update(zip(ids, vals))
            brute += augmentation_defect(dga, full) is None
        sp = capacity_spectrum(dga)
        if brute != n_aug or len(sp.entries) != n_aug:
            bad.append(f"{name}: {len(sp.entries)} augmentations, exhaustive count {brute}")
        for e in sp.entries:
            o = capacity_oracle(dga, e.augmentation, e.cocycle)
            if e.result.value != r or o.value != r:
                bad.append(f"{name} augmentation {e.index}: capacity {e.result.value}, "
                           f"oracle {o.value}, expected {r}")
    verdict(3, not bad, "capacity = r for the unknot and all 5 trefoil augmentations; "
            "algorithm = oracle" if not bad else "; ".join(bad))


def test_criterion_4_length_bound(verdict):
    code, doc, _ = cli_json("length", "corpus/unknot-r2.json", "corpus/unknot-r1.json")
    lb = doc["length_bounds"][0] if doc else {}
    with localcontext() as ctx:
        ctx.prec = 40
        true = Decimal(2).ln()
    value = lb.get("value", "nan")
    ok = (code == 0 and value == "0.693147180560" and lb.get("symbolic") == "ln(2)"
          and abs(Decimal(value) - true) <= Decimal("1e-12"))
    verdict(4, ok, f"length(U(2), U(1)) = {value} with symbolic form {lb.get('symbolic')}")


def test_criterion_5_dga_structure(verdict, geometric_fronts):
    t = time.perf_counter()
    failures = []
    for name in corpus_names():
        f = corpus_front(name)
        try:
            build_dga(f)
            if name == "bad-heights.json":
                failures.append("bad-heights.json: filtration violation not detected")
        except FiltrationError:
            if name != "bad-heights.json":
                failures.append(f"{name}: filtration fails")
        except LegcapError as exc:
            failures.append(f"{name}: {type(exc).__name__}: {exc}")
    for f in geometric_fronts:
        try:
            dga = build_dga(f, check=False)
            check_degrees(dga)
            check_d_squared(dga)
            check_filtration(dga)
        except LegcapError as exc:
            failures.append(f"{f.name}: {type(exc).__name__}: {exc}")
    dt = time.perf_counter() - t
    big = max(len(extract_chords(f)) for f in geometric_fronts)
    verdict(5, not failures and dt < 60,
            f"d^2 = 0, degrees and filtration on corpus + {len(geometric_fronts)} random fronts "
            f"(up to {big} crossings): {len(failures)} failures, {dt:.1f}s"
            + (f"; first: {failures[0]}" if failures else ""))


def test_criterion_6_disk_oracle(verdict):
    def same(diag):
        a, b = enumerate_disks(diag), brute_force_disk_oracle(diag)
        key = lambda d: d.sort_key()
        return all(sorted(a.get(c, ()), key=key) == sorted(b.get(c, ()), key=key)
                   for c in set(a) | set(b))

    mismatches = [n for n in corpus_names() if not same(resolve(corpus_front(n)))]
    fronts = random_fronts(RANDOM_SEED + 6, 100)
    mismatches += [f.name for f in fronts if not same(resolve(f))]
    verdict(6, not mismatches, f"sweep = brute-force oracle on corpus + {len(fronts)} random "
            f"fronts: {len(mismatches)} mismatches")


def test_criterion_7_fundamental_class(verdict):
    failures, count = [], 0
    for name in corpus_names():
        # the negative case has valid disks, only its heights are wrong
        dga = build_dga(corpus_front(name), check=(name != "bad-heights.json"))
        for k, aug in enumerate(enumerate_augmentations(dga)):
            cx = linearized_complex(dga, aug)
            ref = None
            for arc in range(dga.diagram.n_arcs):
                count += 1
                try:
                    x = fundamental_cocycle(dga, aug, marked_point(dga, arc), cx)
                except LegcapError as exc:
                    failures.append(f"{name} aug {k} arc {arc}: {exc}")
                    continue
                if x.coefficients == 0 or cx.delta(1, x.coefficients) != 0 \
                        or is_coboundary(cx, 1, x.coefficients):
                    failures.append(f"{name} aug {k} arc {arc}: not a nonzero class")
                if ref is None:
                    ref = x.coefficients
                elif ref != x.coefficients and not is_coboundary(cx, 1, ref ^ x.coefficients):
                    failures.append(f"{name} aug {k} arc {arc}: different class")
    verdict(7, not failures, f"{count} (knot, augmentation, marked arc) cases: nonzero cocycle, "
            f"all arcs cohomologous; {len(failures)} failures"
            + (f"; first: {failures[0]}" if failures else ""))


def test_criterion_8_capacity_properties(verdict, geometric_fronts):
    failures, count = [], 0
    fronts = [corpus_front(n) for n in good_corpus_names()] + geometric_fronts[:100]
    for f in fronts:
        dga = build_dga(f)
        augs = enumerate_augmentations(dga)
        if not augs:
            continue
        hs = sorted({c.height for c in dga.chords})
        sp = capacity_spectrum(dga)
        for e in sp.entries:
            count += 1
            res, x = e.result, e.cocycle
            if res.value not in hs or dga.chord(res.witness_chord).height != res.value:
                failures.append(f"{f.name}: capacity {res.value} is not a chord height")
            feas = [threshold_feasible(dga, x, w) is not None for w in hs]
            if feas != sorted(feas, reverse=True):
                failures.append(f"{f.name}: feasibility not monotone {feas}")
            if capacity_oracle(dga, e.augmentation, x).value != res.value:
                failures.append(f"{f.name}: capacity differs from oracle")
        for t in (Fraction(1, 2), Fraction(1), Fraction(3)):
            st = scale_heights(f, t)
            ds = build_dga(st)
            spt = capacity_spectrum(ds)
            for e, es in zip(sp.entries, spt.entries):
                if es.result.value != t * e.result.value:
                    failures.append(f"{f.name}: capacity does not scale by {t}")
    verdict(8, not failures, f"{count} capacity instances on {len(fronts)} fronts: chord height, "
            f"monotone thresholds, linear scaling for t in {{1/2, 1, 3}}, oracle agreement; "
            f"{len(failures)} failures" + (f"; first: {failures[0]}" if failures else ""))


def test_criterion_9_bound_order(verdict, geometric_fronts):
    failures, compared = [], 0
    fronts = [corpus_front(n) for n in good_corpus_names()] + geometric_fronts
    for f in fronts:
        try:
            rep = width_report(f)
        except LegcapError as exc:
            failures.append(f"{f.name}: {type(exc).__name__}: {exc}")
            continue
        if rep.lower is not None and rep.upper_min_aug is not None:
            compared += 1
            if not rep.lower <= rep.upper_min_aug <= rep.upper_max_aug:
                failures.append(f"{f.name}: {rep.lower} > {rep.upper_min_aug}")
            if (rep.exact is not None) != (rep.lower == rep.upper_min_aug):
                failures.append(f"{f.name}: exact flag inconsistent")
    gap = width_report(corpus_front("gap-example.json"))
    gap_ok = gap.lower is not None and gap.upper_min_aug is not None \
        and gap.lower < gap.upper_min_aug and gap.exact is None
    verdict(9, not failures and gap_ok,
            f"lower <= upper in {compared} reports, {len(failures)} violations; gap example "
            f"{gap.lower} < {gap.upper_min_aug}, exact {'absent' if gap.exact is None else 'set'}")


def test_criterion_10_determinism(verdict):
    cmd = [sys.executable, "-m", "legcap", "corpus-verify", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and a.stdout
    verdict(10, bool(ok), f"two corpus-verify runs: exit {a.returncode}/{b.returncode}, "
            f"{len(a.stdout)} bytes, {'identical' if a.stdout == b.stdout else 'different'}")
