class HistopolationError(Exception):
    pass


class ValidationError(HistopolationError, ValueError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, row: int | None = None) -> None:
        if row is not None:
            message = f"Row {row}: {message}"
        super().__init__(message)
        self.row = row


class UnsupportedConstructionError(HistopolationError, LookupError):
    def __init__(self, message: str, profile: str | None = None) -> None:
        if profile is not None:
            message = f'{message} [profile "{profile}"]'
        super().__init__(message)
        self.profile = profile


class NumericFailureError(HistopolationError, RuntimeError):
    def __init__(self, message: str, estimate: float | None = None) -> None:
        if estimate is not None:
            message = f"{message} (achieved error estimate {estimate:.3e})"
        super().__init__(message)
        self.estimate = estimate


class NotPositiveDefiniteError(NumericFailureError):
    def __init__(self, message: str, jitter: float = 0.0) -> None:
        super().__init__(f"{message} (jitter {jitter:.3e})")
        self.jitter = jitter
