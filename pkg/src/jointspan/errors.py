"""Exception hierarchy shared by all jointspan modules."""


class JointSpanError(Exception):
    """Base class for every error raised by this package."""


class FormatError(JointSpanError):
    """Malformed treebank input.  ``position`` is a byte offset or a line number."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class UnbalancedParens(FormatError):
    pass


class EmptyNode(FormatError):
    pass


class LeafWithoutTag(FormatError):
    pass


class BadColumnCount(FormatError):
    pass


class NonContiguousIds(FormatError):
    pass


class HeadOutOfRange(FormatError):
    pass


class SelfLoop(FormatError):
    pass


class BadDirection(FormatError):
    pass


class EmptyPattern(FormatError):
    pass


class DuplicateLabel(FormatError):
    pass


class LengthMismatch(JointSpanError):
    pass


class AlignmentMismatch(JointSpanError):
    pass


class IntervalOutOfRange(JointSpanError):
    pass


class NotATree(JointSpanError):
    pass


class NotCompliant(JointSpanError):
    """Raised by :func:`jointspan.joint_span.build_joint`; carries the report."""

    def __init__(self, report):
        self.report = report
        spans = ", ".join(f"[{v.lo},{v.hi}]" for v in report.violations)
        super().__init__(
            f"pair is not compliant (well_formed={report.well_formed_tree}; "
            f"violations: {spans or 'none'})")


class NotBinarizable(JointSpanError):
    pass


class EmptyScoreSet(JointSpanError):
    pass


class NonFiniteScore(JointSpanError):
    pass


class UnknownLabel(JointSpanError):
    pass


class NTooLarge(JointSpanError):
    pass


class ConfigError(JointSpanError):
    pass
