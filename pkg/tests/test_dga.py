from dataclasses import replace

import pytest

from legcap.dga import brute_force_disk_oracle, resolve
from legcap.dga.algebra import (
    build_dga,
    check_d_squared,
    check_degrees,
    check_filtration,
    differential,
    dump_dga,
)
from legcap.dga.sweep import enumerate_disks
from legcap.errors import DegreeError, DSquaredError, FiltrationError
from conftest import corpus_front, good_corpus_names, random_fronts, trefoil, unknot


def sorted_disks(disks):
    return {c: sorted(ds, key=lambda d: d.sort_key()) for c, ds in disks.items()}


def test_unknot_has_two_disks_and_zero_differential():
    dga = build_dga(unknot(1))
    assert dga.differential == {"a": ()}
    assert len(dga.disk_records["a"]) == 2
    assert all(d.negative_corners == () for d in dga.disk_records["a"])


def test_trefoil_differential():
    dga = build_dga(trefoil())
    assert dga.differential["a1"] == ((), ("b1",), ("b3",), ("b1", "b2", "b3"))
    assert dga.differential["a2"] == ((), ("b1",), ("b3",), ("b3", "b2", "b1"))
    for b in ("b1", "b2", "b3"):
        assert dga.differential[b] == ()


def test_resolved_counts():
    diag = resolve(trefoil())
    assert len(diag.vertices) == 5
    assert diag.n_arcs == 2 * len(diag.vertices)
    assert diag.n_faces == len(diag.vertices) + 1


def test_filtration_violation_reported():
    with pytest.raises(FiltrationError) as info:
        build_dga(corpus_front("bad-heights.json"))
    err = info.value
    assert err.chord in ("a1", "a2")
    assert sum(err.heights[b] for b in err.word) >= err.heights[err.chord]


def test_checks_detect_corruption():
    dga = build_dga(trefoil())
    bad = dict(dga.differential)
    bad["b1"] = ((),)
    broken = replace(dga, differential=bad)
    with pytest.raises(DegreeError):
        check_degrees(broken)
    with pytest.raises(DSquaredError):
        check_d_squared(broken)


@pytest.mark.parametrize("name", good_corpus_names())
def test_corpus_sweep_equals_oracle(name):
    diag = resolve(corpus_front(name))
    assert sorted_disks(enumerate_disks(diag)) == sorted_disks(brute_force_disk_oracle(diag))


def test_random_sweep_equals_oracle():
    for f in random_fronts(11, 60):
        diag = resolve(f)
        assert sorted_disks(enumerate_disks(diag)) == \
            sorted_disks(brute_force_disk_oracle(diag)), f.events


def test_random_structure(realized):
    for f in realized:
        dga = build_dga(f, check=False)
        check_degrees(dga)
        check_d_squared(dga)
        check_filtration(dga)


def test_dump_is_canonical():
    a = dump_dga(build_dga(trefoil()))
    b = dump_dga(build_dga(trefoil()))
    assert a == b and a.endswith("\n")


def test_differential_without_checks_accepts_bad_heights():
    f = corpus_front("bad-heights.json")
    diag = resolve(f)
    dga = differential(enumerate_disks(diag), diag, check=False)
    assert dga.differential == build_dga(trefoil()).differential
