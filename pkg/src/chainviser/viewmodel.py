"""Assembles the four page payloads, including every visual-encoding
parameter, so the UI renders magnitudes without re-deriving any math.

Fractions and levels are computed here; mapping them to pixels and
colors is the client's job. All payload dataclasses flatten to JSON via
dataclasses.asdict with stable field order.
"""

from __future__ import annotations

import math
import statistics
from bisect import bisect_left
from dataclasses import dataclass

from .chainfile import DEFAULT_MAX_BLOCK_BYTES
from .errors import BadPage, EmptyChain, NotInContext
from .index import IndexSnapshot, TxRef
from .model import Block, Transaction, compute_block_reward, compute_tx_fee, format_slu
from .stats import (
    AddressDailySeries,
    DailySeries,
    Histogram,
    SankeyData,
    address_trends,
    block_distributions,
    daily_trend,
    ordered_transactions,
    sankey_aggregate,
)

RING_FILL_CAP = 20  # slot count at which a coin ring reads as full
GLYPH_STRIP_LIMIT = 15
CHAIN_WINDOW_BLOCKS = 6
CONFIRMATION_SATURATION = 6
GAP_WEIGHT_MIN = 0.25
GAP_WEIGHT_MAX = 2.0
FEE_LEVELS = 5


@dataclass(slots=True)
class Band:
    label: str
    value: int
    display: str
    fill_fraction: float


@dataclass(slots=True)
class BlockGlyph:
    height: int
    confirmations: int
    intensity_level: int  # min(confirmations, 6)
    timestamp: int
    hash: str
    prev_hash: str
    bands: list[Band]
    gap_weight_to_next: float | None  # None for the newest shown block


@dataclass(slots=True)
class CoinGlyph:
    txid: str
    left_ring_fill: float  # input count / cap
    right_ring_fill: float  # output count / cap
    eye_radius_fraction: float  # size rank within the block
    body_intensity_level: int  # fee quintile within the block, 1..5


@dataclass(slots=True)
class SankeyNode:
    address: str | None  # None on the merged node
    amount: int
    amount_slu: str
    radius_fraction: float  # sqrt(amount / largest shown amount on this side)
    width_fraction: float  # amount / side total
    merged: bool
    merged_count: int | None


@dataclass(slots=True)
class CoinSankeyView:
    inputs: list[SankeyNode]
    outputs: list[SankeyNode]
    input_total: int
    input_total_slu: str
    output_total: int
    output_total_slu: str
    center: CoinGlyph


@dataclass(slots=True)
class Paging:
    page: int
    per_page: int
    total_rows: int
    total_pages: int


@dataclass(slots=True)
class ChainPage:
    summary: dict
    glyphs: list[BlockGlyph]  # oldest to newest, at most six
    trend: DailySeries


@dataclass(slots=True)
class BlockPage:
    essential: dict
    tx_count: int  # the block-square badge, coinbase included
    glyphs: list[CoinGlyph]  # first 15 rows of the current ordering
    ellipsis: bool  # more matches exist beyond the strip
    histograms: dict[str, Histogram]
    rows: list[dict]
    paging: Paging
    sort_field: str
    order: str


@dataclass(slots=True)
class TxPage:
    essential: dict
    sankey: CoinSankeyView
    input_rows: list[dict]
    input_paging: Paging
    output_rows: list[dict]
    output_paging: Paging


@dataclass(slots=True)
class AddressPage:
    essential: dict
    trends: AddressDailySeries
    rows: list[dict]
    paging: Paging


def _paging(page: int, per_page: int, total: int) -> Paging:
    if page < 1 or per_page < 1:
        raise BadPage("page and per_page must be >= 1")
    return Paging(page, per_page, total, math.ceil(total / per_page))


def _block_essential(block: Block, confirmations: int) -> dict:
    reward = compute_block_reward(block)
    return {
        "hash": block.hash,
        "prev_hash": block.prev_hash,
        "height": block.height,
        "timestamp": block.timestamp,
        "confirmations": confirmations,
        "size_bytes": block.size_bytes,
        "tx_count": len(block.transactions),
        "subsidy": block.subsidy,
        "subsidy_slu": format_slu(block.subsidy),
        "reward": reward,
        "reward_slu": format_slu(reward),
    }


def build_chain_page(
    snapshot: IndexSnapshot,
    trend_window_days: int = 90,
    max_block_bytes: int = DEFAULT_MAX_BLOCK_BYTES,
) -> ChainPage:
    """Latest six blocks as glyphs (oldest first) plus the daily trend.

    Band fills are relative to the shown window (size against the block
    size limit); connector weights scale each gap against twice the
    median gap, clamped so one outlier cannot break the layout.
    """
    tip = snapshot.tip_height
    if tip < 0:
        raise EmptyChain("no blocks to show")
    count = min(CHAIN_WINDOW_BLOCKS, tip + 1)
    shown = [snapshot.get_block(h)[0] for h in range(tip - count + 1, tip + 1)]

    gaps = [b.timestamp - a.timestamp for a, b in zip(shown, shown[1:])]
    median_gap = statistics.median(gaps) if gaps else None
    rewards = [compute_block_reward(b) for b in shown]
    max_txs = max(len(b.transactions) for b in shown)
    max_reward = max(rewards)

    glyphs = []
    for i, block in enumerate(shown):
        confirmations = tip - block.height + 1
        if i < len(gaps):
            weight = gaps[i] / (2 * median_gap)
            gap_weight = min(max(weight, GAP_WEIGHT_MIN), GAP_WEIGHT_MAX)
        else:
            gap_weight = None
        tx_count = len(block.transactions)
        reward = rewards[i]
        glyphs.append(
            BlockGlyph(
                height=block.height,
                confirmations=confirmations,
                intensity_level=min(confirmations, CONFIRMATION_SATURATION),
                timestamp=block.timestamp,
                hash=block.hash,
                prev_hash=block.prev_hash,
                bands=[
                    Band("transactions", tx_count, str(tx_count), tx_count / max_txs),
                    Band("size", block.size_bytes, f"{block.size_bytes} B", block.size_bytes / max_block_bytes),
                    Band("reward", reward, format_slu(reward) + " SLU", reward / max_reward if max_reward else 0.0),
                ],
                gap_weight_to_next=gap_weight,
            )
        )

    summary = snapshot.summary()
    return ChainPage(
        summary={
            "block_count": summary.block_count,
            "tx_count": summary.tx_count,
            "address_count": summary.address_count,
            "tip_height": summary.tip_height,
            "tip_hash": summary.tip_hash,
        },
        glyphs=glyphs,
        trend=daily_trend(snapshot, trend_window_days),
    )


def _fee_level(fee: int, sorted_fees: list[int]) -> int:
    """Quintile level 1..5 within the block; equal fees share the lower
    level (rank of first occurrence)."""
    rank = bisect_left(sorted_fees, fee)
    return 1 + rank * FEE_LEVELS // len(sorted_fees)


def encode_coin_glyph(
    tx: Transaction,
    context: list[Transaction],
    ring_cap: int = RING_FILL_CAP,
) -> CoinGlyph:
    """Encode one transaction against its block's transaction set.

    Ring fills saturate at `ring_cap` slots; the eye radius ranks the
    size within the context (0.5 when every size is equal); the body
    intensity is the fee quintile within the context.
    """
    if all(t.txid != tx.txid for t in context):
        raise NotInContext(f"tx {tx.txid} not in the supplied context")
    sizes = [t.size_bytes for t in context]
    lo, hi = min(sizes), max(sizes)
    eye = 0.5 if lo == hi else (tx.size_bytes - lo) / (hi - lo)
    sorted_fees = sorted(compute_tx_fee(t) for t in context)
    return CoinGlyph(
        txid=tx.txid,
        left_ring_fill=min(len(tx.inputs) / ring_cap, 1.0),
        right_ring_fill=min(len(tx.outputs) / ring_cap, 1.0),
        eye_radius_fraction=eye,
        body_intensity_level=_fee_level(compute_tx_fee(tx), sorted_fees),
    )


def _summary_row(summary) -> dict:
    return {
        "txid": summary.txid,
        "in_addr": summary.in_addr,
        "out_addr": summary.out_addr,
        "tx_size": summary.tx_size,
        "tx_fee": summary.tx_fee,
        "tx_fee_slu": format_slu(summary.tx_fee),
    }


def build_block_page(
    snapshot: IndexSnapshot,
    block_key,
    sort_field: str = "tx_fee",
    order: str = "desc",
    value_filter: tuple[str, int | None, int | None] | None = None,
    page: int = 1,
    per_page: int = 20,
    shuffle_seed: int = 0,
) -> BlockPage:
    """Block essentials, the glyph strip, three histograms, and the paged
    transaction table. The strip always mirrors the first 15 rows of the
    current ordering; glyph encodings use the whole non-coinbase set of
    the block regardless of any filter."""
    block, confirmations = snapshot.get_block(block_key)
    rows, total = ordered_transactions(
        snapshot, block_key, sort_field, order, value_filter, shuffle_seed
    )
    paging = _paging(page, per_page, total)
    start = (page - 1) * per_page
    page_rows = [_summary_row(r) for r in rows[start : start + per_page]]

    spends = [t for t in block.transactions if not t.is_coinbase]
    by_txid = {t.txid: t for t in spends}
    glyphs = [encode_coin_glyph(by_txid[r.txid], spends) for r in rows[:GLYPH_STRIP_LIMIT]]

    return BlockPage(
        essential=_block_essential(block, confirmations),
        tx_count=len(block.transactions),
        glyphs=glyphs,
        ellipsis=total > GLYPH_STRIP_LIMIT,
        histograms=block_distributions(snapshot, block_key),
        rows=page_rows,
        paging=paging,
        sort_field=sort_field,
        order=order,
    )


def _sankey_nodes(shown: list[tuple[str, int]], merged, total: int) -> list[SankeyNode]:
    amounts = [amount for _, amount in shown]
    if merged:
        amounts.append(merged[1])
    peak = max(amounts, default=0)
    nodes = [
        SankeyNode(
            address=address,
            amount=amount,
            amount_slu=format_slu(amount),
            radius_fraction=math.sqrt(amount / peak) if peak else 0.0,
            width_fraction=amount / total if total else 0.0,
            merged=False,
            merged_count=None,
        )
        for address, amount in shown
    ]
    if merged:
        count, amount = merged
        nodes.append(
            SankeyNode(
                address=None,
                amount=amount,
                amount_slu=format_slu(amount),
                radius_fraction=math.sqrt(amount / peak) if peak else 0.0,
                width_fraction=amount / total if total else 0.0,
                merged=True,
                merged_count=count,
            )
        )
    return nodes


def coin_sankey_view(tx: Transaction, context: list[Transaction]) -> CoinSankeyView:
    data: SankeyData = sankey_aggregate(tx)
    return CoinSankeyView(
        inputs=_sankey_nodes(data.shown_inputs, data.merged_input, data.input_total),
        outputs=_sankey_nodes(data.shown_outputs, data.merged_output, data.output_total),
        input_total=data.input_total,
        input_total_slu=format_slu(data.input_total),
        output_total=data.output_total,
        output_total_slu=format_slu(data.output_total),
        center=encode_coin_glyph(tx, context),
    )


def _slot_rows(slots, page: int, per_page: int) -> tuple[list[dict], Paging]:
    paging = _paging(page, per_page, len(slots))
    start = (page - 1) * per_page
    rows = [
        {"address": s.address, "amount": s.amount, "amount_slu": format_slu(s.amount)}
        for s in slots[start : start + per_page]
    ]
    return rows, paging


def build_tx_page(
    snapshot: IndexSnapshot,
    txid: str,
    in_page: int = 1,
    out_page: int = 1,
    per_page: int = 20,
) -> TxPage:
    """Transaction essentials, the flow diagram with its center glyph,
    and the paged input/output address tables (slot order)."""
    tx, height, confirmations = snapshot.get_transaction(txid)
    block, _ = snapshot.get_block(height)
    # the center glyph ranks the tx among its block's spends; a coinbase
    # is not a spend, so it gets a degenerate one-element context
    if tx.is_coinbase:
        context = [tx]
    else:
        context = [t for t in block.transactions if not t.is_coinbase]
    fee = compute_tx_fee(tx)
    input_rows, input_paging = _slot_rows(tx.inputs, in_page, per_page)
    output_rows, output_paging = _slot_rows(tx.outputs, out_page, per_page)
    total_in = tx.total_in()
    total_out = tx.total_out()
    return TxPage(
        essential={
            "txid": tx.txid,
            "block_height": height,
            "block_hash": block.hash,
            "timestamp": tx.timestamp,
            "confirmations": confirmations,
            "is_coinbase": tx.is_coinbase,
            "size_bytes": tx.size_bytes,
            "fee": fee,
            "fee_slu": format_slu(fee),
            "input_count": len(tx.inputs),
            "output_count": len(tx.outputs),
            "total_in": total_in,
            "total_in_slu": format_slu(total_in),
            "total_out": total_out,
            "total_out_slu": format_slu(total_out),
        },
        sankey=coin_sankey_view(tx, context),
        input_rows=input_rows,
        input_paging=input_paging,
        output_rows=output_rows,
        output_paging=output_paging,
    )


def _ref_row(ref: TxRef) -> dict:
    return {
        "txid": ref.txid,
        "height": ref.height,
        "timestamp": ref.timestamp,
        "role": ref.role,
        "net_delta": ref.net_delta,
        "net_delta_slu": format_slu(ref.net_delta),
    }


def build_address_page(
    snapshot: IndexSnapshot,
    address: str,
    page: int = 1,
    per_page: int = 20,
) -> AddressPage:
    """Address essentials, the 30-day trends, and the participation
    table, newest first."""
    if page < 1 or per_page < 1:
        raise BadPage("page and per_page must be >= 1")
    balance, received, sent, tx_count, first_seen, last_seen = snapshot.address_summary(address)
    refs, total = snapshot.address_refs_page(address, (page - 1) * per_page, per_page)
    return AddressPage(
        essential={
            "address": address,
            "balance": balance,
            "balance_slu": format_slu(balance),
            "total_received": received,
            "total_received_slu": format_slu(received),
            "total_sent": sent,
            "total_sent_slu": format_slu(sent),
            "tx_count": tx_count,
            "first_seen_height": first_seen,
            "last_seen_height": last_seen,
        },
        trends=address_trends(snapshot, address),
        rows=[_ref_row(r) for r in refs],
        paging=_paging(page, per_page, total),
    )
