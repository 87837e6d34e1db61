"""Exception types shared across the package."""


class LinefillError(Exception):
    pass


class InvalidInput(LinefillError):
    pass


class ShapeError(LinefillError):
    pass


class EmptyReference(LinefillError):
    pass


class NotFound(LinefillError):
    pass


class IoError(LinefillError):
    pass


class IntegrityError(LinefillError):
    pass


class VersionError(LinefillError):
    def __init__(self, expected, actual):
        super().__init__(f"version mismatch: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual
