"""Exception taxonomy shared across the toolkit.

Precondition violations (bad mathematical input) are distinguished from
schema problems (malformed files) so the command-line front end can map
them to distinct exit codes.
"""


class SummaError(Exception):
    """Base class for all toolkit-specific errors."""


class SchemaError(SummaError):
    """A problem file or payload does not match its documented schema."""


class PreconditionError(SummaError):
    """Input is well-formed but violates a mathematical precondition."""


class EllipticityViolation(PreconditionError):
    """Order-1 coefficients do not sum to zero.

    A coefficient table whose simple-pole residues do not cancel cannot
    represent an elliptic function: the residues of an elliptic function,
    summed over a fundamental domain, vanish.
    """


class DegreeViolation(PreconditionError):
    """Divisor multiplicities do not sum to zero.

    The divisor of a function has degree zero; zero/pole multiplicity data
    failing this cannot come from a function.
    """


class NotAdmissible(PreconditionError):
    """A residue table is not admissible for the formal ledger.

    The ledger requires every pole to sit at a strictly positive offset on
    a non-anchor orbit: no entries on the anchor orbit, no entries at or
    behind an orbit representative.
    """


class AnchorMove(PreconditionError):
    """Attempt to re-pin the anchor orbit.

    The anchor orbit's representative is the origin by convention and is
    never moved; only non-anchor representatives may be re-pinned.
    """


class UnsplitDenominator(PreconditionError):
    """A denominator does not factor into linear factors over Q.

    Partial-fraction construction is supported only for rational poles;
    inputs with irrational poles must arrive already decomposed.
    """
