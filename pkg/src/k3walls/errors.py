"""Exception hierarchy shared by every module in the package."""


class K3WallsError(Exception):
    """Base class for all package errors."""


class DegreeError(K3WallsError):
    pass


class ZeroInputError(K3WallsError):
    pass


class DivisibilityError(K3WallsError):
    pass


class MalformedIsotrivialError(K3WallsError):
    pass


class InconsistentProfileError(K3WallsError):
    pass


class RangeError(K3WallsError, ValueError):
    pass


class ProfileError(K3WallsError, ValueError):
    pass


class GraphError(K3WallsError):
    pass


class ShapeError(K3WallsError):
    pass


class ParseError(K3WallsError):
    """Input document could not be parsed.

    ``field`` is a dotted path into the document (``"A.coeffs[3]"``) and
    ``line`` the 1-based source line when it is known.
    """

    code = "ParseError"

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        super().__init__(message)

    def diagnostic(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field {self.field}")
        loc = f" ({', '.join(where)})" if where else ""
        return f"{self.code}{loc}: {self}"


class DenominatorZero(ParseError):
    code = "DenominatorZero"
