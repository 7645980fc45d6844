"""Exception types shared across the toolkit."""


class QclineError(Exception):
    """Base class for every toolkit-specific error."""


class BadParams(QclineError):
    """Catalog parameters violate a documented constraint."""


class UnknownName(QclineError):
    """Requested catalog entry does not exist."""


class OutOfWindow(QclineError):
    """Evaluation requested outside a map's trusted window."""


class OutOfRange(QclineError):
    """Target value cannot be bracketed inside the attainable range."""


class NoConvergence(QclineError):
    """An iterative solver exhausted its budget.

    The best iterate seen so far, when meaningful, is attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class DegenerateStep(QclineError):
    """Quasisymmetry quotient requested with step <= 0 or a vanishing denominator."""


class DegeneratePair(QclineError):
    """Bilipschitz ratio requested for points nearly coincident in the metric."""


class EmptyWindow(QclineError):
    """A composition or pull-back produced an empty working window."""


class MissingDerivative(QclineError):
    """Operation needs a derivative the map does not carry."""


class NonpositiveDerivative(QclineError):
    """Sampled or composed data fails strict monotonicity."""


class QuadratureFailure(QclineError):
    """Adaptive refinement exhausted its depth with an unacceptable residual."""


class ZeroMass(QclineError):
    """A weight integrates to zero where a ratio needs it positive."""


class NoValidP(QclineError):
    """No exponent in the scanned grid satisfies the reverse Holder cap."""


class PoleInput(QclineError):
    """Cayley transform evaluated at its pole."""


class PoleProximity(QclineError):
    """Pull-back requested too close to the Cayley pole on the circle."""


class BoundaryBlowup(QclineError):
    """Extension evaluated too close to the boundary circle for the solver."""


class DegenerateJacobian(QclineError):
    """|F_z| below tolerance; dilatation undefined there."""


class NotQuasiconformal(QclineError):
    """Dilatation magnitude reached 1 within tolerance."""


class GridMismatch(QclineError):
    """Two dilatation fields do not share a grid."""


class WindowExceeded(QclineError):
    """Requested box leaves the density's populated window."""


class TailDivergence(QclineError):
    """Band masses near the boundary do not decay."""


class SchemaMismatch(QclineError):
    """Serialized artifact has unexpected columns or malformed rows."""


class ParseError(QclineError):
    """Config file is syntactically invalid."""


class ValidationError(QclineError):
    """Config semantically invalid (unknown key, bad type, bad range)."""
