"""Exception hierarchy.

Three branches matter to callers: ParseError (the file bytes are wrong),
DataError (the data is structurally fine but semantically unusable for the
requested operation), and SelectionError (the user's pick/argument is bad).
The CLI maps SelectionError to exit code 1 and the other two to exit code 2;
the HTTP service maps all three to 422 with the class name in the body.
"""


class MxvError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MxvError):
    """A file could not be read in its declared format."""


class DataError(MxvError):
    """An operation cannot be applied to this data."""


class SelectionError(MxvError):
    """An atom pick or user-supplied index is invalid."""


# --- format detection / parsing ---

class UnknownFormat(ParseError):
    pass


class MalformedXYZ(ParseError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BadSymmetryExpr(ParseError):
    pass


class MissingCell(ParseError):
    pass


class MissingSites(ParseError):
    pass


class UnsupportedSymmetry(ParseError):
    pass


class MissingKeyword(ParseError):
    def __init__(self, name: str):
        super().__init__(f"required keyword not found: {name}")
        self.name = name


class FracWithoutCell(ParseError):
    pass


class CountMismatch(ParseError):
    pass


class MalformedFrame(ParseError):
    def __init__(self, frame_no: int, line_no: int, message: str):
        super().__init__(f"frame {frame_no}, line {line_no}: {message}")
        self.frame_no = frame_no
        self.line_no = line_no


class InconsistentFrames(ParseError):
    pass


class TruncatedData(ParseError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"expected {expected} values, got {got}")
        self.expected = expected
        self.got = got


class MultiOrbitalUnsupported(ParseError):
    pass


class BadHeader(ParseError):
    pass


class TruncatedBand(ParseError):
    pass


class BandCountMismatch(ParseError):
    pass


# --- model / geometry / meshing ---

class UnknownElement(DataError):
    pass


class DegenerateCell(DataError):
    pass


class SingularLattice(DataError):
    pass


class NeedsLattice(DataError):
    pass


class CellTooSmall(DataError):
    """A periodic cell edge is shorter than the largest bond cutoff."""


class DegenerateGeometry(DataError):
    pass


class EmptyGrid(DataError):
    pass


class SingularSteps(DataError):
    pass


class EmptyWindow(DataError):
    pass


# --- selections ---

class DuplicatePick(SelectionError):
    pass


class BadIndex(SelectionError):
    pass
