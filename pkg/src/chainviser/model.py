"""Ledger domain types and the arithmetic defined over them.

All SLU amounts are integer counts of 10**-8 SLU base units. Integer
arithmetic keeps conservation checks exact; Python ints cannot overflow.
Objects are treated as immutable after construction.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .errors import EmptySeed, NegativeFee, OutOfRange

COIN = 10**8  # base units per SLU

GENESIS_PREV_HASH = "0" * 64

_HASH_RE = re.compile(r"[0-9a-f]{64}")
_ADDR_RE = re.compile(r"S[0-9a-f]{35}")


def is_hash(value) -> bool:
    """True for a 64-character lowercase hex string (block or tx id)."""
    return isinstance(value, str) and _HASH_RE.fullmatch(value) is not None


def is_address(value) -> bool:
    """True for a 36-character address: 'S' plus 35 lowercase hex chars."""
    return isinstance(value, str) and _ADDR_RE.fullmatch(value) is not None


def slu(text) -> int:
    """Parse a decimal SLU quantity ("4.2105", "50", or an int of whole SLU)
    into base units, exactly.

    Floats are rejected: they cannot represent most decimal fractions and
    would defeat the integer-arithmetic guarantee.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"refusing inexact SLU literal {text!r}; pass a string")
    if isinstance(text, int):
        return text * COIN
    text = text.strip()
    negative = text.startswith("-")
    if negative:
        text = text[1:]
    whole, _, frac = text.partition(".")
    if len(frac) > 8:
        raise ValueError(f"more than 8 decimal digits in SLU literal {text!r}")
    units = int(whole or "0") * COIN + int((frac or "0").ljust(8, "0"))
    return -units if negative else units


def format_slu(units: int) -> str:
    """Render base units as a decimal SLU string with no trailing zeros."""
    sign = "-" if units < 0 else ""
    whole, frac = divmod(abs(units), COIN)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:08d}".rstrip("0")


@dataclass(slots=True)
class TxSlot:
    """One transaction input or output: an address and a positive amount."""

    address: str
    amount: int


@dataclass(slots=True)
class Transaction:
    txid: str
    inputs: list[TxSlot]  # empty exactly for coinbase
    outputs: list[TxSlot]
    size_bytes: int
    timestamp: int  # UTC seconds
    is_coinbase: bool

    def __post_init__(self):
        if bool(self.inputs) == self.is_coinbase:
            raise ValueError("inputs must be empty exactly when is_coinbase")
        if not self.outputs:
            raise ValueError("transaction needs at least one output")
        if self.size_bytes < 1:
            raise ValueError("size_bytes must be positive")

    def total_in(self) -> int:
        return sum(s.amount for s in self.inputs)

    def total_out(self) -> int:
        return sum(s.amount for s in self.outputs)


@dataclass(slots=True)
class Block:
    hash: str
    prev_hash: str
    height: int
    timestamp: int  # UTC seconds
    transactions: list[Transaction]  # first entry is the coinbase
    size_bytes: int
    subsidy: int

    def __post_init__(self):
        if self.height < 0:
            raise ValueError("height must be non-negative")
        if self.size_bytes < 1:
            raise ValueError("size_bytes must be positive")
        if not self.transactions:
            raise ValueError("block needs at least one transaction")
        if (self.height == 0) != (self.prev_hash == GENESIS_PREV_HASH):
            raise ValueError("all-zero prev_hash exactly at height 0")


@dataclass(slots=True)
class ChainSummary:
    block_count: int
    tx_count: int
    address_count: int
    tip_height: int  # -1 when the chain is empty
    tip_hash: str | None


def compute_tx_fee(tx: Transaction) -> int:
    """Fee in base units: inputs minus outputs; zero for coinbase."""
    if tx.is_coinbase:
        return 0
    fee = tx.total_in() - tx.total_out()
    if fee < 0:
        raise NegativeFee(f"tx {tx.txid}: outputs exceed inputs by {-fee}")
    return fee


def compute_block_reward(block: Block) -> int:
    """Subsidy plus the fees of every non-coinbase transaction in the block.

    Equals the coinbase output total on any chain this package generates.
    """
    fees = sum(compute_tx_fee(t) for t in block.transactions if not t.is_coinbase)
    return block.subsidy + fees


def confirmations(block_height: int, tip_height: int) -> int:
    """Number of blocks from block_height to the tip, inclusive.

    A block gains its first confirmation when it becomes the tip; each
    appended block adds one more.
    """
    if block_height < 0 or block_height > tip_height:
        raise OutOfRange(f"height {block_height} not in [0, {tip_height}]")
    return tip_height - block_height + 1


def canonical_hash(body: bytes) -> str:
    """Lowercase hex SHA-256 of a canonical serialization."""
    return hashlib.sha256(body).hexdigest()


def transaction_body(
    timestamp: int,
    inputs: list[TxSlot],
    outputs: list[TxSlot],
    size_bytes: int,
    is_coinbase: bool,
) -> bytes:
    """Canonical byte serialization of a transaction.

    "timestamp|addr:amt;...|addr:amt;...|size_bytes|flag" with amounts in
    base units and the coinbase flag as 1/0. Field order and the
    '|' ';' ':' separators are fixed; changing them changes every txid.
    """
    ins = ";".join(f"{s.address}:{s.amount}" for s in inputs)
    outs = ";".join(f"{s.address}:{s.amount}" for s in outputs)
    return f"{timestamp}|{ins}|{outs}|{size_bytes}|{1 if is_coinbase else 0}".encode()


def compute_txid(
    timestamp: int,
    inputs: list[TxSlot],
    outputs: list[TxSlot],
    size_bytes: int,
    is_coinbase: bool,
) -> str:
    return canonical_hash(
        transaction_body(timestamp, inputs, outputs, size_bytes, is_coinbase)
    )


def rehash_transaction(tx: Transaction) -> str:
    """Recompute the txid from the transaction body (round-trip check)."""
    return compute_txid(tx.timestamp, tx.inputs, tx.outputs, tx.size_bytes, tx.is_coinbase)


def block_body(
    height: int,
    prev_hash: str,
    timestamp: int,
    txids: list[str],
    size_bytes: int,
    subsidy: int,
) -> bytes:
    """Canonical byte serialization of a block header.

    "height|prev_hash|timestamp|txid,txid,...|size_bytes|subsidy" with the
    subsidy in base units.
    """
    ids = ",".join(txids)
    return f"{height}|{prev_hash}|{timestamp}|{ids}|{size_bytes}|{subsidy}".encode()


def compute_block_hash(
    height: int,
    prev_hash: str,
    timestamp: int,
    txids: list[str],
    size_bytes: int,
    subsidy: int,
) -> str:
    return canonical_hash(block_body(height, prev_hash, timestamp, txids, size_bytes, subsidy))


def rehash_block(block: Block) -> str:
    """Recompute the block hash from its header fields (round-trip check)."""
    return compute_block_hash(
        block.height,
        block.prev_hash,
        block.timestamp,
        [t.txid for t in block.transactions],
        block.size_bytes,
        block.subsidy,
    )


def derive_address(key_seed: bytes) -> str:
    """Deterministic address for a key seed: 'S' + first 35 hex chars of
    SHA-256(key_seed)."""
    if not key_seed:
        raise EmptySeed("key seed must be non-empty")
    return "S" + hashlib.sha256(key_seed).hexdigest()[:35]
