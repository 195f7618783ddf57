"""chainviser: deterministic synthetic SLU chain, indexes, statistics,
and page payload service for the explorer UI."""

__version__ = "0.1.0"
