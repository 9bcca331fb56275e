"""Exception hierarchy shared by every pushtrack module."""


class PushtrackError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class MalformedCode(PushtrackError):
    pass


class UnknownFaceLabel(PushtrackError):
    pass


class BadSurface(PushtrackError):
    pass


class UnknownCrossing(PushtrackError):
    pass


class NotFilling(PushtrackError):
    pass


class HypothesisViolated(PushtrackError):
    pass


class NotInReducedCone(PushtrackError):
    """The reduced vector does not extend to a nonnegative weight function."""


class InconsistentTrack(PushtrackError):
    """Switch equations are underdetermined; indicates a construction bug."""


class IndexOutOfRange(PushtrackError):
    pass


class NotPrimitive(PushtrackError):
    pass


class BadGenus(PushtrackError):
    pass


class BadParameters(PushtrackError):
    pass
