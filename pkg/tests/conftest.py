import pytest

from chainviser.generate import GenConfig, generate_chain
from chainviser.chainfile import write_chain
from chainviser.index import IndexStore
from chainviser.model import (
    Block,
    GENESIS_PREV_HASH,
    Transaction,
    TxSlot,
    compute_block_hash,
    compute_txid,
    derive_address,
    slu,
)

SMALL_CONFIG = GenConfig(
    seed=7,
    duration_days=2,
    block_interval_secs=600,
    interval_jitter_frac=0.25,
    mean_txs_per_block=6.0,
    num_wallets=60,
)

# exactly 720 blocks: one day at a rigid 120 s cadence
DAY_CONFIG = GenConfig(
    seed=11,
    duration_days=1,
    block_interval_secs=120,
    interval_jitter_frac=0.0,
    mean_txs_per_block=5.0,
    num_wallets=80,
)

SPIKE_CONFIG = GenConfig(
    seed=23,
    duration_days=10,
    block_interval_secs=1200,
    interval_jitter_frac=0.25,
    mean_txs_per_block=4.0,
    num_wallets=50,
    spike_days=[(6, 3.0)],
)


@pytest.fixture(scope="session")
def small_chain():
    return list(generate_chain(SMALL_CONFIG))


@pytest.fixture(scope="session")
def small_chain_path(small_chain, tmp_path_factory):
    path = tmp_path_factory.mktemp("chain") / "small.slu.jsonl"
    write_chain(small_chain, path)
    return path


@pytest.fixture(scope="session")
def small_store(small_chain):
    store = IndexStore()
    store.ingest(small_chain)
    return store


@pytest.fixture(scope="session")
def small_snapshot(small_store):
    return small_store.snapshot()


@pytest.fixture(scope="session")
def day_chain():
    return list(generate_chain(DAY_CONFIG))


@pytest.fixture(scope="session")
def spike_chain():
    return list(generate_chain(SPIKE_CONFIG))


def addr(tag: str) -> str:
    return derive_address(tag.encode())


MINER = addr("miner")


def make_tx(inputs, outputs, timestamp, is_coinbase=False) -> Transaction:
    """Transaction from (address, amount-in-SLU-string-or-base-units) pairs."""
    def to_slots(pairs):
        return [
            TxSlot(a, v if isinstance(v, int) else slu(v))
            for a, v in pairs
        ]
    ins = to_slots(inputs)
    outs = to_slots(outputs)
    size = 180 + 64 * (len(ins) + len(outs))
    txid = compute_txid(timestamp, ins, outs, size, is_coinbase)
    return Transaction(txid, ins, outs, size, timestamp, is_coinbase)


def build_chain(spend_lists, start_time=1552608000, interval=120, subsidy=None) -> list[Block]:
    """Hand-built valid chain: one entry per block, each a list of
    (inputs, outputs) pair lists. Coinbase, fees, sizes, and hashes are
    filled in so the result passes every validator check."""
    subsidy = slu("50") if subsidy is None else subsidy
    blocks = []
    prev_hash = GENESIS_PREV_HASH
    for height, spend_specs in enumerate(spend_lists):
        timestamp = start_time + height * interval
        spends = [make_tx(ins, outs, timestamp) for ins, outs in spend_specs]
        fees = sum(t.total_in() - t.total_out() for t in spends)
        coinbase = make_tx([], [(MINER, subsidy + fees)], timestamp, is_coinbase=True)
        txs = [coinbase] + spends
        size = 256 + sum(t.size_bytes for t in txs)
        block_hash = compute_block_hash(
            height, prev_hash, timestamp, [t.txid for t in txs], size, subsidy
        )
        blocks.append(Block(block_hash, prev_hash, height, timestamp, txs, size, subsidy))
        prev_hash = block_hash
    return blocks


def store_of(blocks) -> IndexStore:
    store = IndexStore()
    store.ingest(blocks)
    return store
