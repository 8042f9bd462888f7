"""Exception hierarchy.

Every error carries a ``kind`` (the class name) so the command line can print
``error: <Kind>: <detail>`` without a lookup table.
"""


class MixSwitchError(Exception):
    @property
    def kind(self) -> str:
        return type(self).__name__


class LoopFound(MixSwitchError):
    pass


class ParallelElements(MixSwitchError):
    pass


class ColourOutOfRange(MixSwitchError):
    pass


class UnknownVertex(MixSwitchError):
    pass


class MngSyntaxError(MixSwitchError):
    """Malformed ``mng``/``grp``/witness text; message includes the line number."""

    @property
    def kind(self) -> str:
        return "SyntaxError"


class ParamMismatch(MixSwitchError):
    pass


class InvalidElement(MixSwitchError):
    pass


class OrderCapExceeded(MixSwitchError):
    pass


class NonAbelianGroup(MixSwitchError):
    pass


class VertexSetMismatch(MixSwitchError):
    pass


class IncompleteSelection(MixSwitchError):
    pass


class SearchSpaceTooLarge(MixSwitchError):
    pass


class WitnessRejected(MixSwitchError):
    pass


class Disagreement(MixSwitchError):
    """Two independent routes returned different verdicts."""
