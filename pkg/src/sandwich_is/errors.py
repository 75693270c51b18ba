"""Exception hierarchy shared by every module of the package."""


class SandwichError(Exception):
    """Base class for all errors raised by sandwich_is."""


class InvalidElement(SandwichError, ValueError):
    """A list of pairs does not describe a partial injection."""

    def __init__(self, message: str, coordinate: int):
        super().__init__(message)
        self.coordinate = coordinate


class DuplicateDomain(InvalidElement):
    def __init__(self, x: int):
        super().__init__(f"point {x} appears twice in the domain", x)


class DuplicateImage(InvalidElement):
    def __init__(self, y: int):
        super().__init__(f"point {y} appears twice in the image", y)


class OutOfRange(InvalidElement):
    def __init__(self, value: int, n: int):
        super().__init__(f"point {value} is outside 1..{n}", value)


class SizeMismatch(SandwichError, ValueError):
    pass


class ParseError(SandwichError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CapExceeded(SandwichError):
    """The requested structure is larger than the configured cap."""


class NotIdempotent(SandwichError, ValueError):
    pass


class Indecomposable(SandwichError, ValueError):
    pass


class NotAutomorphism(SandwichError, ValueError):
    pass


class CrossClassMove(SandwichError, ValueError):
    pass


class DegenerateContext(SandwichError, ValueError):
    """The operation needs a sandwich element of rank at least 1."""
