import json

import pytest

from chainviser.errors import DuplicateBlock, LinkageMismatch, NotFound, StorageFailure
from chainviser.generate import ChainGenerator
from chainviser.index import IndexStore, ingest_file, open_store
from chainviser.model import compute_tx_fee, slu

import oracles
from conftest import SMALL_CONFIG, addr, build_chain, store_of

A = addr("idx-a")
B = addr("idx-b")
C = addr("idx-c")


class TestAppend:
    def test_genesis_into_empty_store(self):
        blocks = build_chain([[]])
        store = IndexStore()
        assert store.append_block(blocks[0]) == 0
        assert store.tip_height == 0

    def test_reappending_tip_is_duplicate(self):
        blocks = build_chain([[], []])
        store = store_of(blocks)
        with pytest.raises(DuplicateBlock):
            store.append_block(blocks[1])

    def test_height_gap_is_linkage_mismatch(self):
        blocks = build_chain([[], [], [], [], [], []])
        store = store_of(blocks[:4])
        with pytest.raises(LinkageMismatch):
            store.append_block(blocks[5])

    def test_first_block_must_be_genesis(self):
        blocks = build_chain([[], []])
        store = IndexStore()
        with pytest.raises(LinkageMismatch):
            store.append_block(blocks[1])


class TestGetBlock:
    def test_by_height_and_hash_with_confirmations(self, small_snapshot, small_chain):
        tip = small_snapshot.tip_height
        block, confirmations = small_snapshot.get_block(tip)
        assert confirmations == 1
        assert block is small_chain[tip]
        block, confirmations = small_snapshot.get_block(tip - 5)
        assert confirmations == 6
        by_hash, _ = small_snapshot.get_block(small_chain[3].hash)
        assert by_hash.height == 3

    def test_not_found(self, small_snapshot):
        with pytest.raises(NotFound):
            small_snapshot.get_block(-1)
        with pytest.raises(NotFound):
            small_snapshot.get_block(small_snapshot.tip_height + 1)
        with pytest.raises(NotFound):
            small_snapshot.get_block("f" * 64)


class TestGetTransaction:
    def test_coinbase_lookup(self, small_snapshot, small_chain):
        coinbase = small_chain[4].transactions[0]
        tx, height, confirmations = small_snapshot.get_transaction(coinbase.txid)
        assert tx.is_coinbase and compute_tx_fee(tx) == 0
        assert height == 4
        assert confirmations == small_snapshot.tip_height - 4 + 1

    def test_unknown_txid(self, small_snapshot):
        with pytest.raises(NotFound):
            small_snapshot.get_transaction("a" * 64)

    def test_containing_height_matches_linear_scan(self, small_snapshot, small_chain_path):
        expected = {}
        with open(small_chain_path) as handle:
            for line in handle:
                block = json.loads(line)
                for tx in block["transactions"]:
                    expected[tx["txid"]] = block["height"]
        sampled = list(expected)[::37]
        for txid in sampled:
            _, height, _ = small_snapshot.get_transaction(txid)
            assert height == expected[txid]


class TestGetAddress:
    def test_single_receipt(self):
        blocks = build_chain([[], [[[(A, "6.0")], [(B, "5.0")]]]])
        # fund A first so the spend has an input; B only receives
        snapshot = store_of(blocks).snapshot()
        record = snapshot.get_address(B)
        assert record.balance == slu("5.0")
        assert record.total_received == slu("5.0")
        assert record.total_sent == 0
        assert len(record.tx_refs) == 1
        assert record.tx_refs[0].role == "output"
        assert record.tx_refs[0].net_delta == slu("5.0")

    def test_input_and_output_in_one_tx_is_role_both(self):
        blocks = build_chain([[], [[[(A, "6.0")], [(A, "4.0"), (B, "1.5")]]]])
        snapshot = store_of(blocks).snapshot()
        record = snapshot.get_address(A)
        spend_ref = record.tx_refs[-1]
        assert spend_ref.role == "both"
        assert spend_ref.net_delta == slu("4.0") - slu("6.0")

    def test_never_seen_address(self, small_snapshot):
        with pytest.raises(NotFound):
            small_snapshot.get_address(C)

    def test_refs_are_ordered_by_height_then_position(self, small_snapshot):
        sampled = [a for a, _ in small_snapshot.iter_address_balances()][:20]
        for address in sampled:
            record = small_snapshot.get_address(address)
            keys = [(r.height, r.txid) for r in record.tx_refs]
            heights = [r.height for r in record.tx_refs]
            assert heights == sorted(heights)
            assert len(keys) == len(record.tx_refs)

    def test_balances_match_generator_wallets(self):
        generator = ChainGenerator(SMALL_CONFIG)
        snapshot = store_of(list(generator.blocks())).snapshot()
        for wallet in generator.wallets:
            if wallet.spendable == 0:
                continue
            assert snapshot.get_address(wallet.address).balance == wallet.spendable

    def test_paged_refs_newest_first(self, small_snapshot):
        address = max(
            (a for a, _ in small_snapshot.iter_address_balances()),
            key=lambda a: small_snapshot.address_summary(a)[3],
        )
        record = small_snapshot.get_address(address)
        rows, total = small_snapshot.address_refs_page(address, 0, 20)
        assert total == len(record.tx_refs)
        assert [r.txid for r in rows] == [r.txid for r in reversed(record.tx_refs[-20:])]
        rows2, _ = small_snapshot.address_refs_page(address, 20, 20)
        assert [r.txid for r in rows2] == [
            r.txid for r in reversed(record.tx_refs[-40:-20])
        ]


class TestSummary:
    def test_empty_store(self):
        summary = IndexStore().snapshot().summary()
        assert summary.block_count == 0
        assert summary.tx_count == 0
        assert summary.address_count == 0
        assert summary.tip_height == -1
        assert summary.tip_hash is None

    def test_day_chain_block_count(self, day_chain):
        summary = store_of(day_chain).snapshot().summary()
        assert summary.block_count == 720

    def test_counts_match_file_recount(self, small_snapshot, small_chain_path):
        blocks = oracles.load_blocks(small_chain_path)
        tx_count = sum(len(b["transactions"]) for b in blocks)
        distinct = {
            s["address"]
            for b in blocks
            for t in b["transactions"]
            for s in t["inputs"] + t["outputs"]
        }
        summary = small_snapshot.summary()
        assert summary.tx_count == tx_count
        assert summary.address_count == len(distinct)
        assert summary.block_count == len(blocks)

    def test_balance_conservation(self, small_snapshot, small_chain):
        total = sum(balance for _, balance in small_snapshot.iter_address_balances())
        assert total == len(small_chain) * SMALL_CONFIG.subsidy


class TestSnapshotIsolation:
    def test_old_snapshot_pinned_while_writer_appends(self, small_chain):
        store = store_of(small_chain[:50])
        old = store.snapshot()
        old_summary = old.summary()
        receiver = small_chain[50].transactions[0].outputs[0].address
        before = dict(old.iter_address_balances()).get(receiver, 0)

        store.append_block(small_chain[50])

        assert old.tip_height == 49
        assert old.summary() == old_summary
        with pytest.raises(NotFound):
            old.get_block(50)
        with pytest.raises(NotFound):
            old.get_transaction(small_chain[50].transactions[0].txid)
        after = dict(old.iter_address_balances()).get(receiver, 0)
        assert after == before  # the coinbase credit is invisible at tip 49

        fresh = store.snapshot()
        assert fresh.tip_height == 50
        assert fresh.get_block(50)[0] is small_chain[50]

    def test_confirmations_grow_with_new_snapshots(self, small_chain):
        store = store_of(small_chain[:10])
        assert store.snapshot().get_block(5)[1] == 5
        for extra in range(3):
            store.append_block(small_chain[10 + extra])
            assert store.snapshot().get_block(5)[1] == 6 + extra


class TestRebuild:
    def test_reingest_equals_original(self, small_chain):
        first = store_of(small_chain).snapshot()
        second = store_of(small_chain).snapshot()
        assert first.summary() == second.summary()
        for address, balance in first.iter_address_balances():
            assert second.get_address(address).balance == balance
        sample = small_chain[17].transactions[-1]
        assert second.get_transaction(sample.txid)[0] == sample


class TestPersistence:
    def test_ingest_then_open(self, small_chain_path, tmp_path):
        store_dir = tmp_path / "store"
        built = ingest_file(small_chain_path, store_dir=store_dir)
        reopened = open_store(store_dir)
        assert reopened.snapshot().summary() == built.snapshot().summary()
        assert (store_dir / "chain.slu.jsonl").exists()
        meta = json.loads((store_dir / "meta.json").read_text())
        assert meta["tip_height"] == built.tip_height

    def test_open_missing_dir_fails(self, tmp_path):
        with pytest.raises(StorageFailure):
            open_store(tmp_path / "nope")

    def test_open_with_stale_meta_fails(self, small_chain_path, tmp_path):
        store_dir = tmp_path / "store"
        ingest_file(small_chain_path, store_dir=store_dir)
        meta_path = store_dir / "meta.json"
        meta = json.loads(meta_path.read_text())
        meta["tip_height"] += 1
        meta_path.write_text(json.dumps(meta))
        with pytest.raises(StorageFailure):
            open_store(store_dir)
