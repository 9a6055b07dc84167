"""Width intervals, levels and cobordism-length bounds.

All decisions are taken on exact rationals.  Transcendental values (logs,
exponentials) are only produced when a report is rendered, with Decimal
arithmetic at 40 digits and shown to 12 significant digits.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .capacity import Spectrum, capacity_spectrum
from .dga.algebra import Dga, build_dga
from .errors import BoundOrderError, MissingGeometry, NoAugmentation, SchemaError, Unavailable
from .front_model import PlatFront, chord_extendability, extract_chords, fmt_fraction, to_fraction

REPORT_SCHEMA = "legcap-report/1"
DIGITS = 12

Real = Union[Fraction, Decimal]


# -- number rendering ----------------------------------------------------------

def _dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def fmt_real(x: Real, digits: int = DIGITS) -> str:
    """``digits`` significant digits, trailing zeros kept (0.693147180560)."""
    with localcontext() as ctx:
        ctx.prec = 40
        d = _dec(x) if isinstance(x, Fraction) else Decimal(x)
        if d == 0:
            return "0"
        for _ in range(2):
            q = d.quantize(Decimal(1).scaleb(d.adjusted() - digits + 1), rounding=ROUND_HALF_EVEN)
            if q.adjusted() == d.adjusted():
                break
            d = q
        if -6 <= q.adjusted() < digits:
            return format(q, "f")
        return format(q, "E")


def fmt_number(x: Real) -> str:
    return fmt_fraction(x) if isinstance(x, Fraction) else fmt_real(x)


# -- levels b = linear + ln(log_arg) ------------------------------------------------

@dataclass(frozen=True)
class Level:
    """A real number of the form ``linear + ln(log_arg)``, kept symbolic."""
    linear: Fraction = Fraction(0)
    log_arg: Fraction = Fraction(1)

    def __post_init__(self):
        if self.log_arg <= 0:
            raise SchemaError("ln argument must be positive")

    def __add__(self, other: "Level") -> "Level":
        return Level(self.linear + other.linear, self.log_arg * other.log_arg)

    @property
    def is_zero(self) -> bool:
        return self.linear == 0 and self.log_arg == 1

    def scale(self, x: Fraction) -> Real:
        """x * e^b, exact when the linear part vanishes."""
        c = x * self.log_arg
        if self.linear == 0:
            return c
        with localcontext() as ctx:
            ctx.prec = 40
            return _dec(c) * _dec(self.linear).exp()

    def symbolic_scale(self, x: Fraction) -> str:
        c = x * self.log_arg
        if self.linear == 0:
            return fmt_fraction(c)
        return f"{fmt_fraction(c)}*exp({fmt_fraction(self.linear)})"

    def value(self) -> Real:
        if self.log_arg == 1:
            return self.linear
        with localcontext() as ctx:
            ctx.prec = 40
            return _dec(self.linear) + _dec(self.log_arg).ln()

    def __str__(self) -> str:
        parts = []
        if self.linear != 0 or self.log_arg == 1:
            parts.append(fmt_fraction(self.linear))
        if self.log_arg != 1:
            parts.append(f"ln({fmt_fraction(self.log_arg)})")
        return " + ".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*(ln\s*\(\s*([^()]+?)\s*\)|ln\s+([0-9./]+)|([0-9./]+))\s*")


def parse_level(text: str) -> Level:
    """Parse sums like ``-1``, ``1/2``, ``ln(2)``, ``ln 3/2``, ``1 - ln(2)``."""
    s = text.strip()
    if not s:
        raise SchemaError("empty level")
    pos, lvl = 0, Level()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise SchemaError(f"cannot parse level {text!r}")
        if pos and not m.group(1):
            raise SchemaError(f"cannot parse level {text!r}")
        neg = m.group(1) == "-"
        if m.group(5) is not None:
            q = to_fraction(m.group(5), "level")
            lvl = lvl + Level(-q if neg else q)
        else:
            q = to_fraction(m.group(3) or m.group(4), "level")
            if q <= 0:
                raise SchemaError(f"ln of a nonpositive number in {text!r}")
            lvl = lvl + Level(log_arg=1 / q if neg else q)
        pos = m.end()
    return lvl


# -- width report --------------------------------------------------------------------

@dataclass(frozen=True)
class ChordExtension:
    id: str
    height: Fraction
    down: Optional[bool]
    up: Optional[bool]
    source: str                 # "geometry" | "asserted" | "unknown"

    @property
    def doubly(self) -> bool:
        return bool(self.down or self.up)


@dataclass(frozen=True)
class WidthReport:
    name: str
    lower: Optional[Fraction]
    lower_chord: Optional[str]
    upper_min_aug: Optional[Fraction]
    upper_max_aug: Optional[Fraction]
    exact: Optional[Fraction]
    longest: Fraction
    chords: Tuple[ChordExtension, ...]
    n_augmentations: int
    unavailable: Optional[str] = None
    provenance: Tuple[str, ...] = ()
    level: Level = field(default_factory=Level)
    top_half: str = "infinite"

    def at_level(self, x: Optional[Fraction]) -> Optional[Real]:
        return None if x is None else self.level.scale(x)


def width_report(front: PlatFront, dga: Optional[Dga] = None,
                 spectrum: Optional[Spectrum] = None, max_deg0: int = 24) -> WidthReport:
    if dga is None:
        dga = build_dga(front)
    chords = extract_chords(front)
    ext = []
    for c in chords:
        try:
            e, src = chord_extendability(front, c)
            ext.append(ChordExtension(c.id, c.height, e.down, e.up, src))
        except MissingGeometry:
            ext.append(ChordExtension(c.id, c.height, None, None, "unknown"))
    prov: List[str] = []
    good = [e for e in ext if e.doubly]
    lower = lower_chord = None
    if good:
        # tallest, first in event order on ties
        best = max(good, key=lambda e: e.height)
        lower, lower_chord = 2 * best.height, best.id
        prov.append(f"lower: twice the height of doubly extendable chord {best.id} "
                    f"({best.source}) [extendable-chord ball]")
    else:
        prov.append("lower: none (no chord is known to be doubly extendable)")
    unknown = [e.id for e in ext if e.source == "unknown"]
    if unknown:
        prov.append(f"extendability unknown (no geometry, no assertion): {', '.join(unknown)}")

    upper_min = upper_max = None
    unavailable = None
    n_aug = 0
    try:
        if spectrum is None:
            spectrum = capacity_spectrum(dga, max_deg0=max_deg0)
        n_aug = len(spectrum.entries)
        upper_min, upper_max = 2 * spectrum.c_min, 2 * spectrum.c_max
        prov.append("upper: twice the minimal fundamental capacity over all augmentations "
                    "(cylinder over the knot) [fundamental-capacity bound]")
        prov.append("upper_max_aug: twice the maximal fundamental capacity; valid for the bottom "
                    "half of any fundamental cobordism with this positive end, where the minimal "
                    "capacity over induced augmentations is only bracketed by these two numbers")
    except NoAugmentation as exc:
        unavailable = f"upper bound unavailable: {exc}"
        prov.append(unavailable)

    longest = max(c.height for c in chords)
    exact = None
    if lower is not None and upper_min is not None:
        if lower > upper_min:
            raise BoundOrderError(
                f"{front.name}: lower bound {fmt_fraction(lower)} exceeds upper bound "
                f"{fmt_fraction(upper_min)}; the chord data cannot come from a real Legendrian")
        if lower == upper_min:
            exact = lower
            if lower == 2 * longest:
                prov.append(f"exact: the longest chord {lower_chord} (height "
                            f"{fmt_fraction(longest)}) is doubly extendable and the knot is "
                            "augmented [longest-chord sharpness]")
            else:
                prov.append("exact: lower and upper bounds coincide")
    prov.append("preconditions checked: one component; "
                + (f"{n_aug} augmentation(s)" if n_aug else "no augmentation"))
    prov.append("preconditions assumed: horizontal displaceability (holds for every Legendrian "
                "in the 1-jet space of the line)")
    prov.append("top half: infinite width for every level [infinite top half]")
    prov.append("the lower bound also holds for any cobordism declared cylindrical over this "
                "knot near its negative end [collared transfer]")
    return WidthReport(
        name=front.name, lower=lower, lower_chord=lower_chord, upper_min_aug=upper_min,
        upper_max_aug=upper_max, exact=exact, longest=longest, chords=tuple(ext),
        n_augmentations=n_aug, unavailable=unavailable, provenance=tuple(prov))


def width_at_level(report: WidthReport, b: Union[Level, str]) -> WidthReport:
    """The same report for the cylinder below level ``report.level + b``."""
    if isinstance(b, str):
        b = parse_level(b)
    return replace(report, level=report.level + b)


def width_to_doc(report: WidthReport) -> dict:
    def num(x: Optional[Fraction], missing: str):
        v = report.at_level(x)
        return missing if v is None else fmt_number(v)

    width = {
        "lower": num(report.lower, "none"),
        "upper_min_aug": num(report.upper_min_aug, "unavailable"),
        "upper_max_aug": num(report.upper_max_aug, "unavailable"),
        "top_half": report.top_half,
    }
    if report.exact is not None:
        width["exact"] = num(report.exact, "none")
    doc = {
        "schema": REPORT_SCHEMA,
        "name": report.name,
        "level": {"b": str(report.level), "factor": fmt_number(report.level.scale(Fraction(1)))},
        "width": width,
        "chords": [{"id": e.id, "height": fmt_fraction(e.height),
                    "down": e.down, "up": e.up, "source": e.source} for e in report.chords],
        "augmentations": report.n_augmentations,
        "length_bounds": [],
        "provenance": list(report.provenance),
    }
    if report.level.linear != 0:
        doc["symbolic"] = {k: report.level.symbolic_scale(x) for k, x in
                           (("lower", report.lower), ("upper_min_aug", report.upper_min_aug),
                            ("upper_max_aug", report.upper_max_aug), ("exact", report.exact))
                           if x is not None}
    return doc


# -- length ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LengthBound:
    w_minus_lower: Fraction
    c_max_plus: Fraction
    ratio: Fraction
    value: Real                 # max(0, ln ratio)
    symbolic: str
    clamped: bool
    provenance: Tuple[str, ...] = ()

    @property
    def unclamped(self) -> Real:
        with localcontext() as ctx:
            ctx.prec = 40
            return _dec(self.ratio).ln()


def length_from_ratio(w_minus_lower: Fraction, c_max_plus: Fraction,
                      provenance: Sequence[str] = ()) -> LengthBound:
    ratio = Fraction(w_minus_lower) / (2 * Fraction(c_max_plus))
    prov = list(provenance)
    if ratio <= 1:
        value: Real = Fraction(0)
        sym = "0"
        clamped = True
        if ratio < 1:
            with localcontext() as ctx:
                ctx.prec = 40
                raw = _dec(ratio).ln()
            prov.append(f"clamped at 0: ln({fmt_fraction(ratio)}) = {fmt_real(raw)} is negative")
    else:
        with localcontext() as ctx:
            ctx.prec = 40
            value = _dec(ratio).ln()
        sym = f"ln({fmt_fraction(ratio)})"
        clamped = False
    return LengthBound(Fraction(w_minus_lower), Fraction(c_max_plus), ratio, value, sym,
                       clamped, tuple(prov))


def length_lower_bound(front_minus: PlatFront, front_plus: PlatFront,
                       max_deg0: int = 24) -> LengthBound:
    wr = width_report(front_minus, max_deg0=max_deg0)
    if wr.lower is None:
        raise Unavailable(f"{front_minus.name}: no doubly extendable chord, so the negative end "
                          "has no width lower bound")
    if wr.n_augmentations == 0:
        raise NoAugmentation(f"{front_minus.name}: negative end admits no augmentation")
    dplus = build_dga(front_plus)
    try:
        sp = capacity_spectrum(dplus, max_deg0=max_deg0)
    except NoAugmentation as exc:
        raise NoAugmentation(f"{front_plus.name}: positive end admits no augmentation ({exc})") \
            from None
    prov = [
        f"w_minus_lower = {fmt_fraction(wr.lower)} from chord {wr.lower_chord} of "
        f"{front_minus.name} [extendable-chord ball]",
        f"c_max_plus = {fmt_fraction(sp.c_max)} over {len(sp.entries)} augmentation(s) of "
        f"{front_plus.name} [maximal fundamental capacity]",
        "bounds the length of fundamental cobordisms only [width-ratio length bound]",
        "preconditions checked: both ends are knots (one component), negative end augmented, "
        "positive end augmented",
        "preconditions assumed: the cobordism is exact, orientable and Maslov zero; horizontal "
        "displaceability holds in the 1-jet space of the line",
    ]
    return length_from_ratio(wr.lower, sp.c_max, prov)


def length_to_doc(name_minus: str, name_plus: str, lb: LengthBound) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "name": f"{name_minus} -> {name_plus}",
        "length_bounds": [{
            "minus": name_minus,
            "plus": name_plus,
            "w_minus_lower": fmt_fraction(lb.w_minus_lower),
            "c_max_plus": fmt_fraction(lb.c_max_plus),
            "ratio": fmt_fraction(lb.ratio),
            "value": fmt_number(lb.value),
            "symbolic": lb.symbolic,
            "clamped": lb.clamped,
        }],
        "provenance": list(lb.provenance),
    }


def dump_report(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
