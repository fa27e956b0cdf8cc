"""Exception types raised across the package."""


class LatticeForgeError(Exception):
    """Base class for all domain errors."""


class DuplicateLabel(LatticeForgeError):
    pass


class UnknownLabel(LatticeForgeError):
    pass


class CycleViolatesAntisymmetry(LatticeForgeError):
    """The generating pairs force x <= y <= x for distinct x, y."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        path = " -> ".join(str(c) for c in self.cycle)
        super().__init__(f"antisymmetry violated by cycle: {path}")


class SizeCapExceeded(LatticeForgeError):
    pass


class NotALattice(LatticeForgeError):
    """Some pair of elements has no least upper or greatest lower bound."""

    def __init__(self, message, pair=None, witnesses=()):
        self.pair = pair
        self.witnesses = tuple(witnesses)
        super().__init__(message)


class NotIntersectionClosed(LatticeForgeError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class MissingTop(LatticeForgeError):
    pass


class ConditionIIIViolated(LatticeForgeError):
    """Some element's upper segment has exactly two elements."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"upper segment of {witness!r} has exactly two elements")


class AllClassesSize2(LatticeForgeError):
    pass


class UnknownTheoremId(LatticeForgeError):
    pass


class ParseError(LatticeForgeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(LatticeForgeError):
    """A structural fact that must hold for every finite lattice failed.

    Raised by internal postcondition checks; if it ever fires on a valid
    input it indicates a bug, and the verification sweeps catch it and
    report the offending instance.
    """
