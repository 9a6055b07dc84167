from fractions import Fraction

import pytest

from legcap.capacity import (
    capacity,
    capacity_oracle,
    capacity_spectrum,
    dump_capacity,
    fundamental_cocycle,
    marked_point,
    threshold_feasible,
)
from legcap.dga.algebra import Dga, build_dga
from legcap.errors import NoAugmentation, NullClass, SchemaError
from legcap.front_model import ReebChord
from legcap.linearize import enumerate_augmentations, is_coboundary, linearized_complex
from conftest import trefoil, unknot


def all_cocycles(dga):
    for aug in enumerate_augmentations(dga):
        cx = linearized_complex(dga, aug)
        for arc in range(dga.diagram.n_arcs):
            yield aug, cx, fundamental_cocycle(dga, aug, marked_point(dga, arc), cx)


@pytest.mark.parametrize("r", [Fraction(1), Fraction(2), Fraction(7, 3), Fraction(1, 5)])
def test_unknot_capacity_is_r(r):
    sp = capacity_spectrum(build_dga(unknot(r)))
    assert len(sp.entries) == 1
    assert sp.c_min == sp.c_max == r


def test_trefoil_capacity_every_augmentation():
    dga = build_dga(trefoil(3))
    sp = capacity_spectrum(dga)
    assert len(sp.entries) == 5
    for e in sp.entries:
        assert e.result.value == 3
        assert capacity_oracle(dga, e.augmentation, e.cocycle).value == 3


def test_trefoil_cocycle_depends_on_arc_but_not_class():
    dga = build_dga(trefoil())
    supports = set()
    for aug, cx, x in all_cocycles(dga):
        assert x.coefficients and cx.delta(1, x.coefficients) == 0
        supports.add(tuple(x.support()))
        ref = fundamental_cocycle(dga, aug, marked_point(dga, 0), cx)
        diff = ref.coefficients ^ x.coefficients
        assert diff == 0 or is_coboundary(cx, 1, diff)
    assert supports == {("a1",), ("a2",)}


def test_threshold_monotone_and_capacity_is_height(realized):
    for f in [trefoil()] + realized:
        dga = build_dga(f)
        hs = sorted({c.height for c in dga.chords})
        for aug, cx, x in all_cocycles(dga):
            res = capacity(dga, aug, x)
            assert res.value in hs
            assert dga.chord(res.witness_chord).height == res.value
            assert res.witness == x.coefficients ^ cx.delta(0, res.shift)
            ok = [threshold_feasible(dga, x, w) is not None for w in hs]
            assert ok == sorted(ok, reverse=True)
            assert capacity_oracle(dga, aug, x).value == res.value


def test_marked_arc_out_of_range():
    dga = build_dga(unknot(1))
    with pytest.raises(SchemaError):
        marked_point(dga, dga.diagram.n_arcs)


def test_no_augmentation():
    a = ReebChord("a", "right-cusp", 1, Fraction(1), 1, 1)
    dga = Dga("acyclic", (a,), {"a": ((),)}, {"a": ()})
    with pytest.raises(NoAugmentation):
        capacity_spectrum(dga)


def test_null_class_without_degree_one_chords():
    dga = build_dga(unknot(1))
    (aug,) = enumerate_augmentations(dga)
    empty = Dga("x", (), {}, {}, dga.diagram)
    with pytest.raises(NullClass):
        fundamental_cocycle(empty, aug, marked_point(dga, 0), linearized_complex(empty, aug))


def test_dump_capacity():
    dga = build_dga(trefoil())
    text = dump_capacity(dga, capacity_spectrum(dga))
    assert '"c_min": "1"' in text and '"degree1_chords"' in text
