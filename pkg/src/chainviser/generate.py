"""Deterministic synthetic chain generator.

Stands in for a live network: emits a linked block sequence with a
configurable daily activity profile (stable rates plus spike days).
Every draw comes from one SplitMix64 stream seeded by the config, so a
config maps to exactly one chain, byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import ConfigInvalid, InsufficientLiquidity
from .model import (
    COIN,
    GENESIS_PREV_HASH,
    Block,
    Transaction,
    TxSlot,
    compute_block_hash,
    compute_tx_fee,
    compute_txid,
    derive_address,
)
from .rng import SplitMix64

BLOCK_HEADER_BYTES = 256  # flat allowance on top of summed transaction sizes
TX_BASE_BYTES = 180
TX_SLOT_BYTES = 64

# Input-count draw over 1..8, weighted toward small counts so most
# transactions mix only a few inputs.
_INPUT_COUNT_CUM = (30, 52, 68, 78, 86, 92, 97, 100)

# Smallest spend worth generating: 1 base unit of fee + 1 of output.
_MIN_SPEND = 2


@dataclass
class GenConfig:
    seed: int = 1
    block_interval_secs: int = 120
    interval_jitter_frac: float = 0.25
    mean_txs_per_block: float = 13.0
    num_wallets: int = 500
    subsidy: int = 50 * COIN
    max_block_bytes: int = 8 * 2**20
    start_time: int = 1552608000  # 2019-03-15T00:00:00Z
    duration_days: int = 1
    spike_days: list[tuple[int, float]] = field(default_factory=list)
    # 0 disables the halving hook; otherwise the subsidy halves every
    # this many blocks (floored at 1 base unit).
    halving_interval_blocks: int = 0

    def validate(self) -> None:
        checks = [
            (self.block_interval_secs >= 1, "block_interval_secs must be >= 1"),
            (0 <= self.interval_jitter_frac < 1, "interval_jitter_frac must be in [0, 1)"),
            (self.mean_txs_per_block > 0, "mean_txs_per_block must be positive"),
            (self.num_wallets >= 1, "num_wallets must be >= 1"),
            (self.subsidy >= 1, "subsidy must be at least 1 base unit"),
            (
                self.max_block_bytes >= BLOCK_HEADER_BYTES + TX_BASE_BYTES + TX_SLOT_BYTES,
                "max_block_bytes leaves no room for a coinbase",
            ),
            (self.start_time >= 0, "start_time must be non-negative"),
            (self.duration_days >= 1, "duration_days must be >= 1"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigInvalid(message)
        for day, mult in self.spike_days:
            if not 0 <= day < self.duration_days:
                raise ConfigInvalid(f"spike day {day} outside 0..{self.duration_days - 1}")
            if mult < 1:
                raise ConfigInvalid(f"spike multiplier {mult} below 1")
            if self.mean_txs_per_block * mult > 600:
                raise ConfigInvalid("effective per-block mean above 600")


@dataclass(slots=True)
class WalletState:
    """Spendable balance the generator tracks per wallet address.

    Inputs are reserved (deducted) when a transaction is generated;
    outputs are credited only once the transaction lands in a block, so
    a spend can never be funded by money the chain does not yet show.
    """

    address: str
    spendable: int = 0


def _pick_funded(rng: SplitMix64, wallets: list[WalletState], taken: set[int]) -> int | None:
    """Pick a wallet able to fund a minimal spend, distinct from `taken`.

    Rejection-samples first (cheap when most wallets are funded), then
    falls back to a scan from a random start so sparse early chains stay
    deterministic.
    """
    n = len(wallets)
    for _ in range(20):
        i = rng.below(n)
        if i not in taken and wallets[i].spendable >= _MIN_SPEND:
            return i
    start = rng.below(n)
    for step in range(n):
        i = (start + step) % n
        if i not in taken and wallets[i].spendable >= _MIN_SPEND:
            return i
    return None


def gen_transaction(rng: SplitMix64, wallets: list[WalletState], timestamp: int) -> Transaction:
    """Generate one spend against the wallet pool.

    1-8 inputs (weighted toward 1-3) from distinct funded wallets, 1-4
    outputs splitting the remainder, fee 0.01%-1% of the input total
    (at least 1 base unit). Input amounts are deducted immediately;
    output credits are the block assembler's job (see WalletState).
    """
    want_inputs = 1 + rng.weighted_index(list(_INPUT_COUNT_CUM))
    chosen: list[int] = []
    taken: set[int] = set()
    for _ in range(want_inputs):
        idx = _pick_funded(rng, wallets, taken)
        if idx is None:
            break
        chosen.append(idx)
        taken.add(idx)
    if not chosen:
        raise InsufficientLiquidity("no wallet can fund a minimal spend")

    inputs = []
    total_in = 0
    for idx in chosen:
        wallet = wallets[idx]
        amount = _MIN_SPEND + rng.below(wallet.spendable - 1)  # [2, spendable]
        wallet.spendable -= amount
        inputs.append(TxSlot(wallet.address, amount))
        total_in += amount

    rate_millionths = rng.randint(100, 10_000)  # 0.01% .. 1%
    fee = max(1, total_in * rate_millionths // 1_000_000)
    fee = min(fee, total_in - 1)  # leave at least 1 unit for outputs
    payout = total_in - fee

    n_outputs = min(rng.randint(1, 4), payout)
    parts = []
    remaining = payout
    for slot in range(n_outputs - 1):
        # keep 1 unit for each output still to come
        hi = remaining - (n_outputs - 1 - slot)
        part = 1 + rng.below(hi)
        parts.append(part)
        remaining -= part
    parts.append(remaining)

    outputs = [TxSlot(wallets[rng.below(len(wallets))].address, part) for part in parts]
    size = TX_BASE_BYTES + TX_SLOT_BYTES * (len(inputs) + len(outputs))
    txid = compute_txid(timestamp, inputs, outputs, size, False)
    return Transaction(txid, inputs, outputs, size, timestamp, False)


class ChainGenerator:
    """Holds the wallet pool and RNG stream while blocks are produced,
    so callers can inspect final wallet balances after iteration."""

    def __init__(self, config: GenConfig):
        config.validate()
        self.config = config
        self.rng = SplitMix64(config.seed)
        self.wallets = [
            WalletState(derive_address(f"wallet/{config.seed}/{i}".encode()))
            for i in range(config.num_wallets)
        ]
        self._by_address = {w.address: w for w in self.wallets}

    def blocks(self) -> Iterator[Block]:
        """Yield the chain, genesis first, streaming.

        Heights rise from 0 and timestamps strictly increase; each block
        links to the previous one. Per-block transaction counts are
        Poisson with the day's (possibly spiked) mean. Transactions that
        would push a block past max_block_bytes wait for the next block.
        """
        config = self.config
        rng = self.rng
        wallets = self.wallets
        by_address = self._by_address
        spike = dict(config.spike_days)

        coinbase_size = TX_BASE_BYTES + TX_SLOT_BYTES  # single output
        end_time = config.start_time + config.duration_days * 86400
        pending: list[Transaction] = []
        height = 0
        prev_hash = GENESIS_PREV_HASH
        now = config.start_time

        while now < end_time:
            day = (now - config.start_time) // 86400
            mean = config.mean_txs_per_block * spike.get(day, 1.0)
            target = rng.poisson(mean)

            budget = config.max_block_bytes - BLOCK_HEADER_BYTES - coinbase_size
            included: list[Transaction] = []
            while pending and pending[0].size_bytes <= budget:
                tx = pending.pop(0)
                included.append(tx)
                budget -= tx.size_bytes
            if not pending:  # only mint fresh demand once the backlog drains
                for _ in range(target):
                    try:
                        tx = gen_transaction(rng, wallets, now)
                    except InsufficientLiquidity:
                        break
                    if tx.size_bytes > budget:
                        pending.append(tx)
                        break
                    included.append(tx)
                    budget -= tx.size_bytes

            # settle output credits now that inclusion is decided
            fees = 0
            for tx in included:
                fees += compute_tx_fee(tx)
                for slot in tx.outputs:
                    by_address[slot.address].spendable += slot.amount

            if config.halving_interval_blocks:
                subsidy = max(1, config.subsidy >> (height // config.halving_interval_blocks))
            else:
                subsidy = config.subsidy
            miner = wallets[rng.below(len(wallets))]
            reward = subsidy + fees
            miner.spendable += reward
            coinbase_outputs = [TxSlot(miner.address, reward)]
            coinbase = Transaction(
                compute_txid(now, [], coinbase_outputs, coinbase_size, True),
                [],
                coinbase_outputs,
                coinbase_size,
                now,
                True,
            )

            transactions = [coinbase] + included
            block_size = BLOCK_HEADER_BYTES + sum(t.size_bytes for t in transactions)
            block_hash = compute_block_hash(
                height, prev_hash, now, [t.txid for t in transactions], block_size, subsidy
            )
            yield Block(block_hash, prev_hash, height, now, transactions, block_size, subsidy)

            prev_hash = block_hash
            height += 1
            if config.interval_jitter_frac == 0:
                now += config.block_interval_secs
            else:
                swing = config.interval_jitter_frac * (2 * rng.uniform() - 1)
                now += max(1, round(config.block_interval_secs * (1 + swing)))

        # drop spends that never made it into a block so wallet state
        # matches the emitted chain exactly
        for tx in pending:
            for slot in tx.inputs:
                by_address[slot.address].spendable += slot.amount


def generate_chain(config: GenConfig) -> Iterator[Block]:
    """The chain for `config` as a streaming iterator."""
    return ChainGenerator(config).blocks()
