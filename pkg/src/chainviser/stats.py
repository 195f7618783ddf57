"""Derived statistics over an index snapshot: daily trends, per-block
distributions, ordered transaction views, flow aggregation for the
transaction diagram, and per-address trends.

Everything here is a pure function of a snapshot (or a transaction), so
calls can run concurrently. All amount math is integer base units.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Iterable

from .errors import BadField, EmptyChain, NotFound
from .index import IndexSnapshot
from .model import Transaction, compute_tx_fee
from .rng import SplitMix64

SORT_FIELDS = ("txhash", "in_addr", "out_addr", "tx_size", "tx_fee")
FILTER_FIELDS = ("addr_count", "tx_size", "tx_fee")
ORDERS = ("asc", "desc", "random")

HISTOGRAM_BINS = 10

_EPOCH = date(1970, 1, 1)
_DAY_SECS = 86400


def epoch_day(timestamp: int) -> int:
    return timestamp // _DAY_SECS


def day_to_iso(day: int) -> str:
    return (_EPOCH + timedelta(days=day)).isoformat()


@dataclass(slots=True)
class DailyPoint:
    date: str  # ISO calendar date, UTC
    block_count: int
    tx_count: int


@dataclass(slots=True)
class DailySeries:
    start_day: str
    points: list[DailyPoint]


@dataclass(slots=True)
class Histogram:
    """Equal-width histogram of one transaction field within a block.

    Normally 11 edges / 10 counts; a single degenerate bin when all
    values coincide; empty lists when there is nothing to summarize.
    Bin assignment is pure integer arithmetic: value v lands in
    (v - min) * bins // (max - min), clamped to the last bin for v = max.
    """

    field: str
    bin_edges: list[float]
    counts: list[int]
    min_value: int | None
    max_value: int | None


@dataclass(slots=True)
class TxSummary:
    """The five table columns of the block page, one row per transaction."""

    txid: str
    in_addr: int
    out_addr: int
    tx_size: int
    tx_fee: int


@dataclass(slots=True)
class SankeyData:
    """Per-side display sets for a transaction's flow diagram.

    Each side keeps its first six slots as visible circles (sorted by
    amount descending, ties by address, for presentation) and collapses
    any further slots into one merged entry carrying an exact count and
    sum, so side totals are preserved to the base unit.
    """

    shown_inputs: list[tuple[str, int]]
    merged_input: tuple[int, int] | None  # (slot count, amount total)
    shown_outputs: list[tuple[str, int]]
    merged_output: tuple[int, int] | None
    input_total: int
    output_total: int


@dataclass(slots=True)
class AddressDailyPoint:
    date: str
    balance: int  # end-of-day, base units
    tx_count: int


@dataclass(slots=True)
class AddressDailySeries:
    points: list[AddressDailyPoint] = field(default_factory=list)


def daily_trend(snapshot: IndexSnapshot, window_days: int = 90) -> DailySeries:
    """Blocks and transactions per UTC calendar day over the window
    ending at the tip's date, zero-filled for quiet days."""
    if window_days < 1:
        raise ValueError("window_days must be >= 1")
    if snapshot.tip_height < 0:
        raise EmptyChain("no blocks indexed")
    tip_block, _ = snapshot.get_block(snapshot.tip_height)
    last_day = epoch_day(tip_block.timestamp)
    first_day = last_day - window_days + 1

    blocks_per_day = [0] * window_days
    txs_per_day = [0] * window_days
    start_height = snapshot.first_height_at_or_after(first_day * _DAY_SECS)
    for block in snapshot.blocks_range(start_height, snapshot.tip_height):
        slot = epoch_day(block.timestamp) - first_day
        blocks_per_day[slot] += 1
        txs_per_day[slot] += len(block.transactions)

    points = [
        DailyPoint(day_to_iso(first_day + i), blocks_per_day[i], txs_per_day[i])
        for i in range(window_days)
    ]
    return DailySeries(day_to_iso(first_day), points)


def _histogram(name: str, values: list[int]) -> Histogram:
    if not values:
        return Histogram(name, [], [], None, None)
    lo = min(values)
    hi = max(values)
    if lo == hi:
        return Histogram(name, [float(lo), float(hi)], [len(values)], lo, hi)
    span = hi - lo
    counts = [0] * HISTOGRAM_BINS
    for v in values:
        slot = (v - lo) * HISTOGRAM_BINS // span
        counts[slot if slot < HISTOGRAM_BINS else HISTOGRAM_BINS - 1] += 1
    edges = [lo + span * i / HISTOGRAM_BINS for i in range(HISTOGRAM_BINS)] + [float(hi)]
    return Histogram(name, edges, counts, lo, hi)


def block_distributions(snapshot: IndexSnapshot, block_key) -> dict[str, Histogram]:
    """The three per-block histograms (address counts, sizes, fees) over
    its non-coinbase transactions. A coinbase-only block yields three
    empty histograms."""
    block, _ = snapshot.get_block(block_key)
    spends = [t for t in block.transactions if not t.is_coinbase]
    return {
        "addr_count": _histogram("addr_count", [len(t.inputs) + len(t.outputs) for t in spends]),
        "tx_size": _histogram("tx_size", [t.size_bytes for t in spends]),
        "tx_fee": _histogram("tx_fee", [compute_tx_fee(t) for t in spends]),
    }


def summarize(tx: Transaction) -> TxSummary:
    return TxSummary(tx.txid, len(tx.inputs), len(tx.outputs), tx.size_bytes, compute_tx_fee(tx))


def _filter_value(summary: TxSummary, field_name: str) -> int:
    if field_name == "addr_count":
        return summary.in_addr + summary.out_addr
    if field_name == "tx_size":
        return summary.tx_size
    if field_name == "tx_fee":
        return summary.tx_fee
    raise BadField(f"unknown filter field {field_name!r}")


def ordered_transactions(
    snapshot: IndexSnapshot,
    block_key,
    sort_field: str = "tx_fee",
    order: str = "desc",
    value_filter: tuple[str, int | None, int | None] | None = None,
    shuffle_seed: int = 0,
) -> tuple[list[TxSummary], int]:
    """Every non-coinbase transaction of a block, filtered on raw values
    and ordered; ties break by txid ascending. order="random" is a
    seeded shuffle of the filtered set so results stay reproducible.
    Returns (ordered rows, matching count)."""
    if sort_field not in SORT_FIELDS:
        raise BadField(f"unknown sort field {sort_field!r}")
    if order not in ORDERS:
        raise BadField(f"unknown order {order!r}")

    block, _ = snapshot.get_block(block_key)
    rows = [summarize(t) for t in block.transactions if not t.is_coinbase]

    if value_filter is not None:
        field_name, lo, hi = value_filter
        if field_name not in FILTER_FIELDS:
            raise BadField(f"unknown filter field {field_name!r}")
        if lo is not None and hi is not None and lo > hi:
            raise BadField("filter min exceeds max")
        rows = [
            r
            for r in rows
            if (lo is None or _filter_value(r, field_name) >= lo)
            and (hi is None or _filter_value(r, field_name) <= hi)
        ]

    if order == "random":
        rng = SplitMix64(shuffle_seed)
        rng.shuffle(rows)
    elif sort_field == "txhash":
        rows.sort(key=lambda r: r.txid, reverse=(order == "desc"))
    else:
        value = {
            "in_addr": lambda r: r.in_addr,
            "out_addr": lambda r: r.out_addr,
            "tx_size": lambda r: r.tx_size,
            "tx_fee": lambda r: r.tx_fee,
        }[sort_field]
        if order == "asc":
            rows.sort(key=lambda r: (value(r), r.txid))
        else:
            rows.sort(key=lambda r: (-value(r), r.txid))
    return rows, len(rows)


def top_transactions(
    snapshot: IndexSnapshot,
    block_key,
    sort_field: str = "tx_fee",
    order: str = "desc",
    k: int = 15,
    value_filter: tuple[str, int | None, int | None] | None = None,
    shuffle_seed: int = 0,
) -> tuple[list[TxSummary], int]:
    """First k rows of ordered_transactions plus the total match count."""
    rows, total = ordered_transactions(
        snapshot, block_key, sort_field, order, value_filter, shuffle_seed
    )
    return rows[:k], total


def _aggregate_side(slots) -> tuple[list[tuple[str, int]], tuple[int, int] | None, int]:
    total = sum(s.amount for s in slots)
    if len(slots) > 6:
        kept, rest = slots[:6], slots[6:]
        merged = (len(rest), sum(s.amount for s in rest))
    else:
        kept, merged = slots, None
    shown = sorted(((s.address, s.amount) for s in kept), key=lambda p: (-p[1], p[0]))
    return shown, merged, total


def sankey_aggregate(tx: Transaction) -> SankeyData:
    """Collapse a transaction's slots to the display sets of the flow
    diagram; see SankeyData. A coinbase simply has an empty input side."""
    shown_in, merged_in, total_in = _aggregate_side(tx.inputs)
    shown_out, merged_out, total_out = _aggregate_side(tx.outputs)
    return SankeyData(shown_in, merged_in, shown_out, merged_out, total_in, total_out)


def address_trends(snapshot: IndexSnapshot, address: str) -> AddressDailySeries:
    """30 consecutive UTC days ending at the tip's date: end-of-day
    balance (cumulative deltas up to that day) and transactions the
    address participated in that day."""
    if snapshot.tip_height < 0:
        raise NotFound(f"no activity for address {address}")
    events = snapshot.address_events(address)  # raises NotFound when unseen
    events.sort(key=lambda e: e[0])
    stamps = [ts for ts, _ in events]
    running = 0
    cumulative = []
    for _, delta in events:
        running += delta
        cumulative.append(running)
    per_day = Counter(epoch_day(ts) for ts in stamps)

    tip_block, _ = snapshot.get_block(snapshot.tip_height)
    last_day = epoch_day(tip_block.timestamp)
    points = []
    for day in range(last_day - 29, last_day + 1):
        cut = bisect_right(stamps, (day + 1) * _DAY_SECS - 1)
        balance = cumulative[cut - 1] if cut else 0
        points.append(AddressDailyPoint(day_to_iso(day), balance, per_day.get(day, 0)))
    return AddressDailySeries(points)


def chain_tx_totals(blocks: Iterable) -> tuple[int, int]:
    """(total coinbase payout, total fees) over a block stream."""
    coinbase_total = 0
    fee_total = 0
    for block in blocks:
        for tx in block.transactions:
            if tx.is_coinbase:
                coinbase_total += tx.total_out()
            else:
                fee_total += compute_tx_fee(tx)
    return coinbase_total, fee_total
