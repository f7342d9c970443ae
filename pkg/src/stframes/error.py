class StfError(Exception):
    exit_code = 1


class InvalidSpecError(StfError):
    exit_code = 2


class DimensionError(StfError):
    exit_code = 2


class NotOrthonormalError(StfError):
    exit_code = 2


class SearchLimitError(StfError):
    exit_code = 3


class StfIOError(StfError):
    exit_code = 1


class MatrixFormatError(StfError):
    exit_code = 1


class NotAFrameError(StfError):
    exit_code = 1


class ZeroColumnError(StfError):
    exit_code = 1


class ConstructionError(StfError):
    exit_code = 1


class VerificationError(StfError):
    exit_code = 4


class InexactMatrixError(StfError):
    exit_code = 5

    def __init__(self, operation: str):
        super().__init__(f'{operation} needs exact entries; the matrix was read from a float format')
