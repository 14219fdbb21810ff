"""Exception types shared across the toolkit."""


class SizeLimitError(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


class ParseError(ValueError):
    """Malformed textual input. ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
