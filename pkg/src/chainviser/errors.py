"""Exception types shared across the package."""


class ChainError(Exception):
    """Base class for all chainviser errors."""


class NegativeFee(ChainError):
    """Non-coinbase transaction pays out more than it takes in (corrupt data)."""


class OutOfRange(ChainError):
    """Block height above the tip (or otherwise outside the chain)."""


class EmptySeed(ChainError):
    """Address derivation needs a non-empty key seed."""


class ConfigInvalid(ChainError):
    """Generator configuration violates its own constraints."""


class InsufficientLiquidity(ChainError):
    """No wallet can fund even a minimal spend."""


class ParseError(ChainError):
    """Chain file line is not valid JSON or is structurally broken."""

    def __init__(self, line_no: int, detail: str):
        super().__init__(f"line {line_no}: {detail}")
        self.line_no = line_no
        self.detail = detail


class FormatViolation(ChainError):
    """Chain file line parsed but a field has the wrong type or format."""

    def __init__(self, line_no: int, detail: str):
        super().__init__(f"line {line_no}: {detail}")
        self.line_no = line_no
        self.detail = detail


class SinkFailure(ChainError):
    """Writing the chain file failed."""


class LinkageMismatch(ChainError):
    """Appended block does not extend the current tip."""


class DuplicateBlock(ChainError):
    """Block hash is already indexed."""


class StorageFailure(ChainError):
    """Store directory could not be read or written."""


class InvalidBlock(ChainError):
    """Block offered to the store fails content checks."""


class NotFound(ChainError):
    """Key is well formed but nothing on the chain matches it."""


class EmptyChain(ChainError):
    """Operation needs at least one block."""


class BadField(ChainError):
    """Unknown sort or filter field name."""


class BadPage(ChainError):
    """Paging parameters below 1."""


class NotInContext(ChainError):
    """Transaction being encoded is not part of the supplied context set."""
