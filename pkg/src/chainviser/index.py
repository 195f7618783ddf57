"""Queryable indexes over a validated chain: block, transaction, and
address lookups plus derived per-address ledgers.

Single writer, many readers. Everything is append-only; a snapshot pins
a tip height and every read through it filters to entries at or below
that height, so an in-flight append is never half-visible. The writer
publishes the new tip only after all per-block structures are in place.

Content validity is the upstream validator's job: append_block checks
linkage and duplicates (cheap) and trusts the rest, so ingestion does
not redo the hashing that validation already paid for.
"""

from __future__ import annotations

import gc
import json
import os
import shutil
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable, Iterator

from .chainfile import CHAIN_FILE_SUFFIX, read_chain
from .errors import DuplicateBlock, LinkageMismatch, NotFound, StorageFailure
from .model import (
    GENESIS_PREV_HASH,
    Block,
    ChainSummary,
    Transaction,
    confirmations,
)

ROLE_INPUT = 0
ROLE_OUTPUT = 1
ROLE_BOTH = 2
ROLE_NAMES = ("input", "output", "both")

STORE_CHAIN_NAME = "chain" + CHAIN_FILE_SUFFIX
STORE_META_NAME = "meta.json"

_height_key = itemgetter(0)


@dataclass(slots=True)
class TxRef:
    """One row of an address's participation history."""

    txid: str
    height: int
    timestamp: int
    role: str
    net_delta: int  # signed base units


@dataclass(slots=True)
class AddressRecord:
    address: str
    balance: int
    total_received: int
    total_sent: int
    tx_refs: list[TxRef]
    first_seen_height: int
    last_seen_height: int


class _AddrState:
    """Append-only per-address history.

    refs holds (height, tx_index, role_code, net_delta) ordered by
    (height, tx_index); cum_received/cum_sent hold running totals per
    ref so any prefix (= any snapshot) reads totals in O(log n).
    The writer appends to the three lists directly (hot path).
    """

    __slots__ = ("refs", "cum_received", "cum_sent")

    def __init__(self):
        self.refs: list[tuple[int, int, int, int]] = []
        self.cum_received: list[int] = []
        self.cum_sent: list[int] = []

    def visible_count(self, tip: int) -> int:
        return bisect_right(self.refs, tip, key=_height_key)


class IndexStore:
    def __init__(self):
        self._blocks: list[Block] = []
        self._timestamps: list[int] = []
        self._hash_to_height: dict[str, int] = {}
        self._tx_locator: dict[str, tuple[int, int]] = {}
        self._addresses: dict[str, _AddrState] = {}
        self._cum_tx: list[int] = []
        self._cum_addr: list[int] = []
        self._tip = -1

    @property
    def tip_height(self) -> int:
        return self._tip

    def append_block(self, block: Block) -> int:
        """Index one block atomically; returns the new tip height."""
        if block.hash in self._hash_to_height:
            raise DuplicateBlock(f"block {block.hash} already indexed")
        if self._tip < 0:
            if block.height != 0:
                raise LinkageMismatch(f"first block must have height 0, got {block.height}")
        else:
            tip_block = self._blocks[self._tip]
            if block.height != self._tip + 1:
                raise LinkageMismatch(f"expected height {self._tip + 1}, got {block.height}")
            if block.prev_hash != tip_block.hash:
                raise LinkageMismatch("prev_hash does not match the stored tip")
            if block.timestamp <= tip_block.timestamp:
                raise LinkageMismatch("timestamp does not advance past the stored tip")

        height = block.height
        new_addresses = 0
        addresses = self._addresses
        locator = self._tx_locator
        for tx_index, tx in enumerate(block.transactions):
            locator[tx.txid] = (height, tx_index)
            # per-address [sent, received] within this tx; inputs first
            # keeps the union insertion-ordered and stable
            touched: dict[str, list[int]] = {}
            for slot in tx.inputs:
                entry = touched.get(slot.address)
                if entry is None:
                    touched[slot.address] = [slot.amount, 0]
                else:
                    entry[0] += slot.amount
            for slot in tx.outputs:
                entry = touched.get(slot.address)
                if entry is None:
                    touched[slot.address] = [0, slot.amount]
                else:
                    entry[1] += slot.amount
            for address, (s, r) in touched.items():
                role = ROLE_BOTH if (r and s) else (ROLE_OUTPUT if r else ROLE_INPUT)
                state = addresses.get(address)
                if state is None:
                    state = addresses[address] = _AddrState()
                    new_addresses += 1
                state.refs.append((height, tx_index, role, r - s))
                cum_r = state.cum_received
                cum_r.append(cum_r[-1] + r if cum_r else r)
                cum_s = state.cum_sent
                cum_s.append(cum_s[-1] + s if cum_s else s)

        prev_tx = self._cum_tx[-1] if self._cum_tx else 0
        prev_addr = self._cum_addr[-1] if self._cum_addr else 0
        self._cum_tx.append(prev_tx + len(block.transactions))
        self._cum_addr.append(prev_addr + new_addresses)
        self._blocks.append(block)
        self._timestamps.append(block.timestamp)
        self._hash_to_height[block.hash] = height
        self._tip = height  # publish last: snapshots key off this
        return height

    def ingest(self, blocks: Iterable[Block]) -> int:
        # bulk path: the cycle collector rescans the ever-growing (and
        # cycle-free) index on every generation sweep, so pause it
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            for block in blocks:
                self.append_block(block)
        finally:
            if was_enabled:
                gc.enable()
        return self._tip

    def snapshot(self) -> "IndexSnapshot":
        return IndexSnapshot(self, self._tip)


class IndexSnapshot:
    """Read handle pinned to one tip height; cheap and thread-safe."""

    __slots__ = ("_store", "tip_height")

    def __init__(self, store: IndexStore, tip: int):
        self._store = store
        self.tip_height = tip

    @property
    def tip_hash(self) -> str | None:
        return self._store._blocks[self.tip_height].hash if self.tip_height >= 0 else None

    def _resolve_height(self, key) -> int:
        store = self._store
        if isinstance(key, int):
            if 0 <= key <= self.tip_height:
                return key
            raise NotFound(f"no block at height {key}")
        height = store._hash_to_height.get(key)
        if height is None or height > self.tip_height:
            raise NotFound(f"no block with hash {key}")
        return height

    def get_block(self, key) -> tuple[Block, int]:
        """Block by height or hash, with its confirmation count."""
        height = self._resolve_height(key)
        return self._store._blocks[height], confirmations(height, self.tip_height)

    def get_transaction(self, txid: str) -> tuple[Transaction, int, int]:
        """(transaction, containing height, confirmations) for a txid."""
        locator = self._store._tx_locator.get(txid)
        if locator is None or locator[0] > self.tip_height:
            raise NotFound(f"no transaction {txid}")
        height, tx_index = locator
        tx = self._store._blocks[height].transactions[tx_index]
        return tx, height, confirmations(height, self.tip_height)

    def _visible_state(self, address: str) -> tuple[_AddrState, int]:
        state = self._store._addresses.get(address)
        count = state.visible_count(self.tip_height) if state else 0
        if count == 0:
            raise NotFound(f"no activity for address {address}")
        return state, count

    def get_address(self, address: str) -> AddressRecord:
        """Full derived ledger for an address (balance, totals, history)."""
        state, count = self._visible_state(address)
        blocks = self._store._blocks
        refs = []
        for height, tx_index, role, delta in state.refs[:count]:
            tx = blocks[height].transactions[tx_index]
            refs.append(TxRef(tx.txid, height, tx.timestamp, ROLE_NAMES[role], delta))
        received = state.cum_received[count - 1]
        sent = state.cum_sent[count - 1]
        return AddressRecord(
            address=address,
            balance=received - sent,
            total_received=received,
            total_sent=sent,
            tx_refs=refs,
            first_seen_height=state.refs[0][0],
            last_seen_height=state.refs[count - 1][0],
        )

    def address_summary(self, address: str) -> tuple[int, int, int, int, int, int]:
        """(balance, received, sent, tx_count, first_seen, last_seen)
        without materializing the history."""
        state, count = self._visible_state(address)
        received = state.cum_received[count - 1]
        sent = state.cum_sent[count - 1]
        return (
            received - sent,
            received,
            sent,
            count,
            state.refs[0][0],
            state.refs[count - 1][0],
        )

    def address_refs_page(self, address: str, offset: int, limit: int) -> tuple[list[TxRef], int]:
        """Newest-first page of an address's history plus the total count."""
        state, count = self._visible_state(address)
        blocks = self._store._blocks
        rows = []
        start = count - 1 - offset
        for i in range(start, max(start - limit, -1), -1):
            height, tx_index, role, delta = state.refs[i]
            tx = blocks[height].transactions[tx_index]
            rows.append(TxRef(tx.txid, height, tx.timestamp, ROLE_NAMES[role], delta))
        return rows, count

    def address_events(self, address: str) -> list[tuple[int, int]]:
        """(timestamp, net_delta) per visible ref, in chain order."""
        state, count = self._visible_state(address)
        blocks = self._store._blocks
        return [
            (blocks[height].transactions[tx_index].timestamp, delta)
            for height, tx_index, _, delta in state.refs[:count]
        ]

    def iter_address_balances(self) -> Iterator[tuple[str, int]]:
        """(address, balance) for every address visible at this tip."""
        tip = self.tip_height
        for address in list(self._store._addresses):
            state = self._store._addresses[address]
            count = state.visible_count(tip)
            if count:
                yield address, state.cum_received[count - 1] - state.cum_sent[count - 1]

    def summary(self) -> ChainSummary:
        tip = self.tip_height
        if tip < 0:
            return ChainSummary(0, 0, 0, -1, None)
        store = self._store
        return ChainSummary(
            block_count=tip + 1,
            tx_count=store._cum_tx[tip],
            address_count=store._cum_addr[tip],
            tip_height=tip,
            tip_hash=store._blocks[tip].hash,
        )

    def blocks_range(self, start_height: int, end_height: int) -> Iterator[Block]:
        """Blocks with start_height <= height <= min(end, tip)."""
        end = min(end_height, self.tip_height)
        for height in range(max(start_height, 0), end + 1):
            yield self._store._blocks[height]

    def first_height_at_or_after(self, timestamp: int) -> int:
        """Lowest visible height whose timestamp is >= the argument."""
        bound = self.tip_height + 1
        return bisect_left(self._store._timestamps, timestamp, 0, bound)


def ingest_file(chain_path, store_dir=None) -> IndexStore:
    """Stream a chain file into a fresh store; optionally persist to a
    store directory (a copy of the chain plus a meta summary)."""
    store = IndexStore()
    store.ingest(read_chain(chain_path))
    if store_dir is not None:
        persist_store(store, chain_path, store_dir)
    return store


def persist_store(store: IndexStore, chain_path, store_dir) -> None:
    """Drop a store directory: the chain file copy plus meta.json.

    Indexes rebuild from the chain on open; the chain file itself is the
    only durable state worth keeping.
    """
    try:
        os.makedirs(store_dir, exist_ok=True)
        target = os.path.join(store_dir, STORE_CHAIN_NAME)
        if not (os.path.exists(target) and os.path.samefile(chain_path, target)):
            shutil.copyfile(chain_path, target)
        summary = store.snapshot().summary()
        meta = {
            "tip_height": summary.tip_height,
            "tip_hash": summary.tip_hash,
            "block_count": summary.block_count,
            "tx_count": summary.tx_count,
            "address_count": summary.address_count,
        }
        with open(os.path.join(store_dir, STORE_META_NAME), "w") as handle:
            json.dump(meta, handle, indent=2)
            handle.write("\n")
    except OSError as exc:
        raise StorageFailure(str(exc)) from exc


def open_store(store_dir) -> IndexStore:
    """Rebuild the in-memory index from a persisted store directory."""
    chain_path = os.path.join(store_dir, STORE_CHAIN_NAME)
    meta_path = os.path.join(store_dir, STORE_META_NAME)
    if not os.path.isfile(chain_path) or not os.path.isfile(meta_path):
        raise StorageFailure(f"{store_dir} is not a store directory")
    store = IndexStore()
    store.ingest(read_chain(chain_path))
    try:
        with open(meta_path) as handle:
            meta = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise StorageFailure(f"bad meta.json: {exc}") from exc
    if meta.get("tip_height") != store.tip_height:
        raise StorageFailure(
            f"store meta says tip {meta.get('tip_height')}, chain has {store.tip_height}"
        )
    return store


__all__ = [
    "AddressRecord",
    "IndexSnapshot",
    "IndexStore",
    "ROLE_NAMES",
    "STORE_CHAIN_NAME",
    "STORE_META_NAME",
    "TxRef",
    "ingest_file",
    "open_store",
    "persist_store",
]
