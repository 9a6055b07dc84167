from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from legcap.bounds import (
    Level,
    dump_report,
    fmt_real,
    length_from_ratio,
    length_lower_bound,
    length_to_doc,
    parse_level,
    width_at_level,
    width_report,
    width_to_doc,
)
from legcap.capacity import capacity_spectrum
from legcap.dga.algebra import build_dga
from legcap.errors import BoundOrderError, SchemaError, Unavailable
from legcap.front_model import ChordSpec, build_front, scale_heights
from conftest import corpus_front, trefoil, unknot


def exp_dec(q):
    with localcontext() as ctx:
        ctx.prec = 40
        return Decimal(q.numerator) / Decimal(q.denominator)


@pytest.mark.parametrize("r", [Fraction(1), Fraction(2), Fraction(7, 3)])
def test_unknot_width(r):
    rep = width_report(unknot(r))
    assert rep.lower == rep.upper_min_aug == rep.upper_max_aug == rep.exact == 2 * r
    assert rep.top_half == "infinite"


def test_trefoil_width_scales():
    for r in (Fraction(1), Fraction(5, 2)):
        assert width_report(trefoil(r)).exact == 2 * r


def test_gap_example():
    rep = width_report(corpus_front("gap-example.json"))
    assert rep.lower == 70 and rep.upper_min_aug == 98 and rep.exact is None
    assert rep.lower_chord != max(rep.chords, key=lambda e: e.height).id
    assert "exact" not in width_to_doc(rep)["width"]


def test_bound_order_violation_is_fatal():
    wrong = capacity_spectrum(build_dga(unknot(1)))
    with pytest.raises(BoundOrderError):
        width_report(unknot(2), spectrum=wrong)


def test_no_geometry_means_no_lower_bound():
    f = build_front("u", corpus_front("unknot.json").events, [ChordSpec("a", Fraction(1))])
    rep = width_report(f)
    assert rep.lower is None and rep.upper_min_aug == 2 and rep.exact is None
    assert width_to_doc(rep)["width"]["lower"] == "none"
    asserted = build_front("u", f.events, [ChordSpec("a", Fraction(1), assert_extendable="both")])
    assert width_report(asserted).exact == 2


def test_parse_level():
    assert parse_level("0") == Level()
    assert parse_level("-1") == Level(Fraction(-1))
    assert parse_level("1/2") == Level(Fraction(1, 2))
    assert parse_level("ln(2)") == Level(log_arg=Fraction(2))
    assert parse_level("ln 3/2") == Level(log_arg=Fraction(3, 2))
    assert parse_level("1 - ln(2)") == Level(Fraction(1), Fraction(1, 2))
    for bad in ("", "ln(0)", "ln(-1)", "x", "1 2"):
        with pytest.raises(SchemaError):
            parse_level(bad)


def test_levels():
    rep = width_report(unknot(3))
    assert width_at_level(rep, "0").exact == rep.exact
    assert width_at_level(rep, "ln(2)").at_level(rep.exact) == 12
    a = width_at_level(width_at_level(rep, "1/3"), "ln(5) - 1")
    b = width_at_level(rep, "ln(5) - 2/3")
    assert a.level == b.level
    assert width_to_doc(a) == width_to_doc(b)


def test_trefoil_at_minus_one_matches_scaling():
    r = Fraction(2)
    rep = width_at_level(width_report(trefoil(r)), "-1")
    with localcontext() as ctx:
        ctx.prec = 40
        expect = exp_dec(2 * r) * Decimal(-1).exp()
    assert rep.at_level(rep.exact) == expect
    doc = width_to_doc(rep)
    assert doc["width"]["exact"] == fmt_real(expect)
    assert doc["symbolic"]["exact"] == "4*exp(-1)"


@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(1), Fraction(3), Fraction(7, 5)])
def test_scaling_route_agrees_with_level_route(t):
    for f in (unknot(1), trefoil(1), corpus_front("gap-example.json")):
        scaled = width_report(scale_heights(f, t))
        lifted = width_at_level(width_report(f), Level(log_arg=t))
        for k in ("lower", "upper_min_aug", "upper_max_aug", "exact"):
            assert getattr(scaled, k) == lifted.at_level(getattr(lifted, k))


def test_length_unknots():
    lb = length_lower_bound(unknot(2), unknot(1))
    assert lb.symbolic == "ln(2)" and fmt_real(lb.value) == "0.693147180560"
    assert not lb.clamped
    for rm, rp in [(1, 1), (Fraction(7, 3), 2), (1, 3), (5, Fraction(1, 2))]:
        lb = length_lower_bound(unknot(rm), unknot(rp))
        ratio = Fraction(rm) / Fraction(rp)
        if ratio <= 1:
            assert lb.value == 0 and lb.clamped
        else:
            with localcontext() as ctx:
                ctx.prec = 40
                assert lb.value == exp_dec(ratio).ln()


def test_length_clamp_keeps_raw_value():
    lb = length_from_ratio(Fraction(1), Fraction(1))
    assert lb.value == 0 and lb.clamped
    assert any("clamped" in p for p in lb.provenance)
    assert lb.unclamped < 0


def test_length_needs_lower_bound():
    f = build_front("u", corpus_front("unknot.json").events, [ChordSpec("a", Fraction(1))])
    with pytest.raises(Unavailable):
        length_lower_bound(f, unknot(1))


def test_report_documents():
    doc = length_to_doc("a", "b", length_lower_bound(unknot(2), unknot(1)))
    text = dump_report(doc)
    assert text == dump_report(doc)
    assert doc["length_bounds"][0]["value"] == "0.693147180560"
    w = width_to_doc(width_report(trefoil()))
    assert w["schema"] == "legcap-report/1"
    assert w["width"] == {"lower": "2", "upper_min_aug": "2", "upper_max_aug": "2",
                          "top_half": "infinite", "exact": "2"}
    assert w["provenance"]
