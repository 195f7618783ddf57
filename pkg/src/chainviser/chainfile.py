"""Chain file format plus streaming reader, writer, and validator.

A chain file is UTF-8 JSON Lines: one block object per LF-terminated
line, ascending by height, every amount an integer count of base units.
The format is the package's only public on-disk surface (extension
`.slu.jsonl`).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .errors import FormatViolation, ParseError, SinkFailure
from .model import (
    Block,
    Transaction,
    TxSlot,
    compute_tx_fee,
    is_address,
    is_hash,
    rehash_block,
    rehash_transaction,
)
from .errors import NegativeFee

CHAIN_FILE_SUFFIX = ".slu.jsonl"

DEFAULT_MAX_BLOCK_BYTES = 8 * 2**20

# Validator finding kinds, one per check.
CHECK_BLOCK_HASH = "block_hash"
CHECK_LINKAGE = "linkage"
CHECK_HEIGHT = "height"
CHECK_TIMESTAMP = "timestamp"
CHECK_SIZE = "size"
CHECK_COINBASE_FIRST = "coinbase_first"
CHECK_FEE = "fee"
CHECK_REWARD = "reward"
CHECK_TXID = "txid"

CHECK_KINDS = (
    CHECK_BLOCK_HASH,
    CHECK_LINKAGE,
    CHECK_HEIGHT,
    CHECK_TIMESTAMP,
    CHECK_SIZE,
    CHECK_COINBASE_FIRST,
    CHECK_FEE,
    CHECK_REWARD,
    CHECK_TXID,
)


def block_to_dict(block: Block) -> dict:
    return {
        "hash": block.hash,
        "prev_hash": block.prev_hash,
        "height": block.height,
        "timestamp": block.timestamp,
        "size_bytes": block.size_bytes,
        "subsidy": block.subsidy,
        "transactions": [
            {
                "txid": t.txid,
                "inputs": [{"address": s.address, "amount": s.amount} for s in t.inputs],
                "outputs": [{"address": s.address, "amount": s.amount} for s in t.outputs],
                "size_bytes": t.size_bytes,
                "timestamp": t.timestamp,
                "is_coinbase": t.is_coinbase,
            }
            for t in block.transactions
        ],
    }


def block_to_line(block: Block) -> str:
    return json.dumps(block_to_dict(block), separators=(",", ":"))


def write_chain(blocks: Iterable[Block], sink) -> int:
    """Write blocks to `sink` (path or binary file object); returns bytes
    written. write(read(x)) reproduces x byte for byte."""
    if hasattr(sink, "write"):
        return _write_to(blocks, sink)
    try:
        with open(sink, "wb") as handle:
            return _write_to(blocks, handle)
    except OSError as exc:
        raise SinkFailure(str(exc)) from exc


def _write_to(blocks: Iterable[Block], handle: IO[bytes]) -> int:
    written = 0
    try:
        for block in blocks:
            data = (block_to_line(block) + "\n").encode()
            handle.write(data)
            written += len(data)
    except OSError as exc:
        raise SinkFailure(str(exc)) from exc
    return written


def _parse_slots(raw, key: str, line_no: int, seen_addresses: set) -> list[TxSlot]:
    # hot path: ~5 slots per transaction, millions per chain file. Type
    # checks use `type(...) is` (bool must not pass as int) and address
    # format results are cached — wallet addresses repeat constantly.
    # intern() collapses the repeats to one string object apiece.
    if type(raw) is not list:
        raise FormatViolation(line_no, f"field {key!r} missing or not a list")
    slots = []
    for entry in raw:
        if type(entry) is not dict:
            raise FormatViolation(line_no, f"{key} entry is not an object")
        address = entry.get("address")
        if type(address) is not str:
            raise FormatViolation(line_no, f"{key} address missing or not a string")
        address = sys.intern(address)
        if address not in seen_addresses:
            if not is_address(address):
                raise FormatViolation(line_no, f"bad address {address!r}")
            seen_addresses.add(address)
        amount = entry.get("amount")
        if type(amount) is not int:
            raise FormatViolation(line_no, f"{key} amount missing or not an integer")
        if amount < 1:
            raise FormatViolation(line_no, f"non-positive amount {amount} in {key}")
        slots.append(TxSlot(address, amount))
    return slots


def _parse_block(obj: dict, line_no: int, seen_addresses: set) -> Block:
    block_hash = obj.get("hash")
    prev_hash = obj.get("prev_hash")
    if type(block_hash) is not str or type(prev_hash) is not str:
        raise FormatViolation(line_no, "block hashes missing or not strings")
    if not is_hash(block_hash) or not is_hash(prev_hash):
        raise FormatViolation(line_no, "block hashes must be 64 lowercase hex chars")
    height = obj.get("height")
    timestamp = obj.get("timestamp")
    size_bytes = obj.get("size_bytes")
    subsidy = obj.get("subsidy")
    for name, value in (
        ("height", height),
        ("timestamp", timestamp),
        ("size_bytes", size_bytes),
        ("subsidy", subsidy),
    ):
        if type(value) is not int:
            raise FormatViolation(line_no, f"field {name!r} missing or not an integer")
    if subsidy < 0:
        raise FormatViolation(line_no, f"negative subsidy {subsidy}")
    raw_txs = obj.get("transactions")
    if type(raw_txs) is not list or not raw_txs:
        raise FormatViolation(line_no, "transactions missing, not a list, or empty")
    transactions = []
    for raw in raw_txs:
        if type(raw) is not dict:
            raise FormatViolation(line_no, "transaction entry is not an object")
        txid = raw.get("txid")
        if type(txid) is not str or not is_hash(txid):
            raise FormatViolation(line_no, f"bad txid {txid!r}")
        is_coinbase = raw.get("is_coinbase")
        if type(is_coinbase) is not bool:
            raise FormatViolation(line_no, "is_coinbase missing or not a bool")
        tx_size = raw.get("size_bytes")
        tx_time = raw.get("timestamp")
        if type(tx_size) is not int or type(tx_time) is not int:
            raise FormatViolation(line_no, "tx size_bytes/timestamp missing or not integers")
        try:
            transactions.append(
                Transaction(
                    txid,
                    _parse_slots(raw.get("inputs"), "inputs", line_no, seen_addresses),
                    _parse_slots(raw.get("outputs"), "outputs", line_no, seen_addresses),
                    tx_size,
                    tx_time,
                    is_coinbase,
                )
            )
        except ValueError as exc:
            raise FormatViolation(line_no, str(exc)) from exc
    try:
        return Block(block_hash, prev_hash, height, timestamp, transactions, size_bytes, subsidy)
    except ValueError as exc:
        raise FormatViolation(line_no, str(exc)) from exc


def read_chain(source) -> Iterator[Block]:
    """Stream blocks from `source` (path or binary/text file object).

    Memory stays bounded by one block. Raises ParseError for broken
    JSON/structure and FormatViolation for bad field types or formats,
    both carrying the 1-based line number.
    """
    if hasattr(source, "read"):
        yield from _read_from(source)
    else:
        with open(source, "rb") as handle:
            yield from _read_from(handle)


def _read_from(handle) -> Iterator[Block]:
    seen_addresses: set = set()
    loads = json.loads
    for line_no, line in enumerate(handle, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8", errors="replace")
        if not line.strip():
            continue
        try:
            obj = loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(line_no, f"bad JSON: {exc.msg}") from exc
        if type(obj) is not dict:
            raise ParseError(line_no, "line is not a JSON object")
        yield _parse_block(obj, line_no, seen_addresses)


@dataclass
class ValidationReport:
    blocks_checked: int = 0
    errors: list[tuple[int, str, str]] = field(default_factory=list)  # (height, kind, detail)

    @property
    def ok(self) -> bool:
        return not self.errors

    def kinds(self) -> set[str]:
        return {kind for _, kind, _ in self.errors}


def validate_chain(
    blocks: Iterable[Block],
    max_block_bytes: int = DEFAULT_MAX_BLOCK_BYTES,
) -> ValidationReport:
    """Run the nine content checks over a block stream.

    Never halts on a finding; the full report comes back. Streaming:
    only the previous block's header fields are retained. The reward
    check is skipped for a block whose fees or coinbase placement
    already failed, so one broken field surfaces as one finding kind.
    """
    report = ValidationReport()
    prev_height = None
    prev_hash = None
    prev_timestamp = None

    for block in blocks:
        height = block.height
        flag = report.errors.append

        if rehash_block(block) != block.hash:
            flag((height, CHECK_BLOCK_HASH, "stored hash does not match header"))
        if prev_height is None:
            if height != 0:
                flag((height, CHECK_HEIGHT, f"chain starts at height {height}, not 0"))
        else:
            if height != prev_height + 1:
                flag((height, CHECK_HEIGHT, f"height {height} after {prev_height}"))
            if block.prev_hash != prev_hash:
                flag((height, CHECK_LINKAGE, "prev_hash does not match previous block"))
            if block.timestamp <= prev_timestamp:
                flag((height, CHECK_TIMESTAMP, f"timestamp {block.timestamp} not after {prev_timestamp}"))
        if block.size_bytes > max_block_bytes:
            flag((height, CHECK_SIZE, f"size {block.size_bytes} exceeds {max_block_bytes}"))

        coinbase_ok = block.transactions[0].is_coinbase and not any(
            t.is_coinbase for t in block.transactions[1:]
        )
        if not coinbase_ok:
            flag((height, CHECK_COINBASE_FIRST, "first tx must be the only coinbase"))

        fees = 0
        fees_ok = True
        for tx in block.transactions:
            if rehash_transaction(tx) != tx.txid:
                flag((height, CHECK_TXID, f"tx {tx.txid} does not match its body"))
            try:
                fees += compute_tx_fee(tx)
            except NegativeFee:
                fees_ok = False
                flag((height, CHECK_FEE, f"tx {tx.txid} outputs exceed inputs"))

        if coinbase_ok and fees_ok:
            expected = block.subsidy + fees
            paid = block.transactions[0].total_out()
            if paid != expected:
                flag((height, CHECK_REWARD, f"coinbase pays {paid}, reward is {expected}"))

        report.blocks_checked += 1
        prev_height = height
        prev_hash = block.hash
        prev_timestamp = block.timestamp

    return report
