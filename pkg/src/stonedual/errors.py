"""Exception types raised across the package."""


class StoneDualError(Exception):
    """Base class for all errors raised by stonedual."""


class InvalidOrder(StoneDualError, ValueError):
    """A relation fails the preorder or partial-order axioms."""


class NotALattice(StoneDualError, ValueError):
    def __init__(self, a, b, missing):
        self.pair = (a, b)
        self.missing = missing
        super().__init__(f"elements {a!r} and {b!r} have no {missing}")


class NotAHomomorphism(StoneDualError, ValueError):
    def __init__(self, a, b, operation):
        self.pair = (a, b)
        self.operation = operation
        super().__init__(f"map does not preserve {operation} of {a!r} and {b!r}")


class NotProper(StoneDualError, ValueError):
    """A lattice homomorphism pulls some prime ideal back to a non-prime."""


class NotStronglyContinuous(StoneDualError, ValueError):
    """A map between spaces is not strongly continuous."""


class BoundExceeded(StoneDualError, ValueError):
    """An input is larger than the exhaustive algorithms allow."""


class TopologyError(StoneDualError, ValueError):
    """A family of subsets is not a topology."""


class MissingEmpty(TopologyError):
    def __init__(self):
        super().__init__("open family does not contain the empty set")


class MissingFull(TopologyError):
    def __init__(self):
        super().__init__("open family does not contain the whole point set")


class NotClosedUnderUnion(TopologyError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"union of opens {u} and {v} is not open")


class NotClosedUnderIntersection(TopologyError):
    def __init__(self, u, v):
        self.pair = (u, v)
        super().__init__(f"intersection of opens {u} and {v} is not open")


class AxiomViolation(StoneDualError, ValueError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"ring axiom '{axiom}' fails at {witness}")


class NotAnIdeal(StoneDualError, ValueError):
    """A subset of a ring is not an ideal."""


class NotAnIdealOf(NotAnIdeal):
    """A ring is not (given as) an ideal of the proposed extension."""


class InvalidTemplate(StoneDualError, ValueError):
    """A block template is malformed."""


class _KeyLookup(StoneDualError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class UnknownPreset(_KeyLookup):
    pass


class HasInfiniteBlock(StoneDualError, ValueError):
    pass


class UnknownSuite(_KeyLookup):
    pass


class ParseError(StoneDualError, ValueError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ValidationError(StoneDualError, ValueError):
    """An object description parsed but describes an invalid structure."""
