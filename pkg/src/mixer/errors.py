"""Exception types raised across the package.

Two families matter to callers: :class:`DataError` (bad input, files,
shapes) and :class:`DegeneracyError` (a numerically degenerate situation
such as a constant LCG sequence or zero within-class scatter). The CLI maps
them to exit codes 2 and 3.
"""


class MixerError(ValueError):
    """Base class for every error raised by this package."""


class DataError(MixerError):
    pass


class DegeneracyError(MixerError):
    pass


class InvalidLengthError(DataError):
    pass


class InvalidPatchSideError(DataError):
    pass


class TooFewColumnsError(DataError):
    pass


class DimensionError(DataError):
    pass


class InvalidRegularizationError(DataError):
    pass


class InvalidInputError(DataError):
    pass


class InvalidFusionError(DataError):
    pass


class ImageFormatError(DataError):
    pass


class DatasetError(DataError):
    pass


class FeatureFileError(DataError):
    pass


class InsufficientClassDataError(DataError):
    def __init__(self, message, class_index=None):
        super().__init__(message)
        self.class_index = class_index


class DegenerateSequenceError(DegeneracyError):
    def __init__(self, length, omega=None):
        where = f" (embedding size omega={omega})" if omega is not None else ""
        super().__init__(
            f"LCG sequence of length L={length}{where} is constant; "
            "cannot standardize (zero sample variance)"
        )
        self.length = length
        self.omega = omega


class DegenerateScatterError(DegeneracyError):
    pass
