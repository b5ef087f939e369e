"""Exception hierarchy.

Each error class carries the CLI exit code it maps to.
"""

from __future__ import annotations


class LatticeError(Exception):
    exit_code = 1


class ParseError(LatticeError):
    exit_code = 2


class DuplicateName(LatticeError):
    exit_code = 2


class UnknownElement(LatticeError, KeyError):
    exit_code = 2

    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class CycleDetected(LatticeError):
    exit_code = 2

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("order relation has a cycle: " + " <= ".join(cycle + cycle[:1]))


class NotALattice(LatticeError):
    def __init__(self, pair: tuple[str, str], missing: str):
        self.pair = pair
        self.missing = missing
        super().__init__(f"{pair[0]} and {pair[1]} have no {missing}")


class NotMonotone(LatticeError):
    pass


class NotAnUpSet(LatticeError):
    pass


class NotIntersectionClosed(LatticeError):
    pass


class MissingFullSet(LatticeError):
    pass


class CutMismatch(LatticeError):
    pass


class CarrierMismatch(LatticeError):
    pass


class PreconditionFailed(LatticeError):
    pass


class CapExceeded(LatticeError):
    exit_code = 4

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class InternalDisagreement(LatticeError):
    """Two independent computations of the same fact disagreed.

    This is a counterexample certificate and should never be raised; every
    instance is counted in ``InternalDisagreement.raised``.
    """

    exit_code = 5
    raised = 0

    def __init__(self, message: str, **legs):
        InternalDisagreement.raised += 1
        self.legs = legs
        super().__init__(message)


class VerificationFailed(InternalDisagreement):
    pass
