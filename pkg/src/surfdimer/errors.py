"""Exception hierarchy shared by every module."""


class DimerError(Exception):
    """Base class for all package errors."""


# --- map construction -------------------------------------------------------
class InvalidMap(DimerError, ValueError):
    pass


class DanglingDart(InvalidMap):
    pass


class NotConnected(InvalidMap):
    pass


class BadInvolution(InvalidMap):
    pass


# --- chains and walks -------------------------------------------------------
class NotACycle(DimerError, ValueError):
    pass


class NotACocycle(DimerError, ValueError):
    pass


class NotSimple(DimerError, ValueError):
    pass


class NotClosed(DimerError, ValueError):
    pass


# --- orientations and forms -------------------------------------------------
class OddVertexCount(DimerError, ValueError):
    pass


class NotKasteleyn(DimerError, ValueError):
    pass


class DegenerateForm(DimerError, ValueError):
    pass


# --- matchings and partition functions --------------------------------------
class NotAMatching(DimerError, ValueError):
    pass


class NoMatchingExists(DimerError):
    """Raised when a class-resolved table is requested but no matching exists.

    ``total`` is still available and is always zero.
    """

    def __init__(self, message="graph admits no perfect matching"):
        super().__init__(message)
        from fractions import Fraction

        self.total = Fraction(0)


class EmptyPartition(DimerError, ZeroDivisionError):
    pass


ZeroPartition = EmptyPartition


class NonpositiveTemperature(DimerError, ValueError):
    pass


class NonpositiveWeight(DimerError, ValueError):
    pass


class IdentityViolated(DimerError, AssertionError):
    def __init__(self, name, lhs, rhs):
        super().__init__(f"{name}: {lhs} != {rhs}")
        self.name = name
        self.lhs = lhs
        self.rhs = rhs


# --- matrices ---------------------------------------------------------------
class OddSize(DimerError, ValueError):
    pass


class NotSkew(DimerError, ValueError):
    pass


class SingularMatrix(DimerError, ZeroDivisionError):
    pass


class SharedVertex(DimerError, ValueError):
    pass


# --- grassmann --------------------------------------------------------------
class MismatchedAlgebra(DimerError, ValueError):
    pass


class OddDimension(DimerError, ValueError):
    pass


class TooLarge(DimerError, ValueError):
    pass


# --- file format ------------------------------------------------------------
class SmgSyntaxError(DimerError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}" if line is not None else "input"
        if column is not None:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class ValidationError(SmgSyntaxError):
    pass
