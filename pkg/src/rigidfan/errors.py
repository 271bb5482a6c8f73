"""Exception types raised across the package."""


class RigidFanError(Exception):
    """Base class for all package errors."""


class DegenerateInput(RigidFanError):
    """Point set does not span the ambient dimension."""


class ProjectionDegenerate(RigidFanError):
    """Two peripheral nodes coincide when projected along the central edge."""


class NoValidPartition(RigidFanError):
    """No pair of centers admits a valid two-fan construction."""


class NotFullDimensional(RigidFanError):
    """Configuration's affine span is lower dimensional than its ambient space."""


class StressSearchUnsupported(RigidFanError):
    """More than one independent selfstress; a PSD combination needs an SDP search.

    The partially filled report (classification ``"inconclusive"``) is kept
    on ``self.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TooManyFolds(RigidFanError):
    """Fan enumeration requested above the fold cap."""


class UnknownId(RigidFanError, KeyError):
    pass


class DuplicateId(RigidFanError, KeyError):
    pass
