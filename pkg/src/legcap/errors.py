"""Exception hierarchy.

Every error raised on purpose by the library derives from ``LegcapError``.
The CLI maps the four families below onto exit codes.
"""

from __future__ import annotations


class LegcapError(Exception):
    """Base class."""


# -- input problems (exit 1) -------------------------------------------------

class InputError(LegcapError):
    pass


class SchemaError(InputError):
    pass


class TopologyError(InputError):
    pass


class GradingError(InputError):
    pass


class MissingHeight(InputError):
    pass


class NonPositiveHeight(InputError):
    pass


class NonPositiveScale(InputError):
    pass


class MissingGeometry(InputError):
    pass


# -- structural check failures (exit 2) --------------------------------------

class CheckError(LegcapError):
    pass


class DSquaredError(CheckError):
    pass


class DegreeError(CheckError):
    pass


class FiltrationError(CheckError):
    def __init__(self, msg: str, chord=None, word=(), heights=None):
        super().__init__(msg)
        self.chord = chord
        self.word = tuple(word)
        self.heights = heights


class LinearizationError(CheckError):
    pass


class AugmentationError(CheckError):
    pass


class NotCocycle(CheckError):
    pass


class NullClass(CheckError):
    pass


class BoundOrderError(CheckError):
    pass


class SizeLimit(CheckError):
    pass


# -- missing ingredients (exit 3) --------------------------------------------

class Unavailable(LegcapError):
    pass


class NoAugmentation(Unavailable):
    pass


# -- oracle disagreement (exit 4) ---------------------------------------------

class OracleMismatch(LegcapError):
    pass
