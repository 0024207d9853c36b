"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be certified at the requested precision.

    Carries ``certified_count`` when a continued-fraction expansion managed
    to certify a prefix before hitting the working-precision cap.
    """

    def __init__(self, message: str, certified_count: int | None = None):
        super().__init__(message)
        self.certified_count = certified_count
