"""Exception hierarchy."""


class LayercastError(Exception):
    """Base class for all errors raised by layercast."""


class InstanceError(LayercastError, ValueError):
    """An instance document or object is malformed."""


class DemandOutOfRange(InstanceError):
    pass


class DegenerateDenominator(LayercastError, ArithmeticError):
    """A positive dominant margin sits on a layer with fewer than two demanders."""


class PhaseNotApplicable(LayercastError):
    """A relay phase was requested on a state with no positive margin."""


class SchedulingError(LayercastError):
    """Internal invariant broken while building a plan. Always a bug."""


class ScaleLimitExceeded(LayercastError):
    """Integer scaling of rational rates produced too many unit rounds."""


class EnumerationLimitExceeded(LayercastError):
    pass


class PlanFormatError(LayercastError, ValueError):
    pass


class Infeasible(LayercastError):
    """Raised by :func:`layercast.scheduler.schedule` for rate vectors outside the region.

    The :class:`~layercast.capacity.FeasibilityReport` explaining the verdict is kept
    on ``report``.
    """

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report
