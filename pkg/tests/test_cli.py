import json

import pytest
from fastapi.testclient import TestClient

from chainviser.api import create_app
from chainviser.cli import main
from chainviser.index import open_store


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def gen_args():
    return [
        "gen",
        "--seed", "5",
        "--days", "1",
        "--interval-secs", "600",
        "--jitter", "0",
        "--mean-txs", "4",
        "--wallets", "30",
    ]


@pytest.fixture(scope="module")
def chain_file(tmp_path_factory, gen_args):
    path = tmp_path_factory.mktemp("cli") / "chain.slu.jsonl"
    assert main(gen_args + ["--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def store_dir(tmp_path_factory, chain_file):
    directory = tmp_path_factory.mktemp("cli-store") / "store"
    assert main(["ingest", str(chain_file), "--store", str(directory)]) == 0
    return directory


class TestGen:
    def test_writes_expected_line_count(self, capsys, gen_args, tmp_path):
        out_path = tmp_path / "fresh.slu.jsonl"
        code, out, _ = run(capsys, *gen_args, "--out", str(out_path))
        assert code == 0
        assert len(out_path.read_text().splitlines()) == 144  # 86400 / 600
        assert "blocks=144" in out

    def test_same_flags_twice_identical_files(self, gen_args, tmp_path, chain_file):
        twin = tmp_path / "twin.slu.jsonl"
        assert main(gen_args + ["--out", str(twin)]) == 0
        assert twin.read_bytes() == chain_file.read_bytes()

    def test_spike_flag_shapes_the_trend(self, capsys, tmp_path):
        out_path = tmp_path / "spiked.slu.jsonl"
        code, _, _ = run(
            capsys,
            "gen", "--seed", "9", "--days", "5", "--interval-secs", "1800",
            "--mean-txs", "3", "--wallets", "20", "--spike", "3:4.0",
            "--out", str(out_path),
        )
        assert code == 0
        per_day = {}
        start = None
        for line in out_path.read_text().splitlines():
            block = json.loads(line)
            start = block["timestamp"] if start is None else start
            day = (block["timestamp"] - start) // 86400
            per_day[day] = per_day.get(day, 0) + len(block["transactions"])
        assert max(per_day, key=per_day.get) == 3

    def test_bad_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["gen", "--days", "one", "--out", "x"])
        assert err.value.code == 2

    def test_unwritable_out_exits_1(self, capsys, gen_args):
        code, _, err = run(capsys, *gen_args, "--out", "/nonexistent-dir/chain.slu.jsonl")
        assert code == 1
        assert err


class TestValidate:
    def test_clean_chain_exits_0(self, capsys, chain_file):
        code, out, _ = run(capsys, "validate", str(chain_file))
        assert code == 0
        assert "0 errors" in out

    def test_mutated_chain_exits_1(self, capsys, chain_file, tmp_path):
        lines = chain_file.read_text().splitlines()
        block = json.loads(lines[3])
        block["transactions"][0]["outputs"][0]["amount"] += 1
        lines[3] = json.dumps(block, separators=(",", ":"))
        bad = tmp_path / "bad.slu.jsonl"
        bad.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "validate", str(bad))
        assert code == 1
        assert "0 errors" not in out

    def test_missing_file_exits_1(self, capsys):
        code, _, err = run(capsys, "validate", "/no/such/file")
        assert code == 1
        assert err


class TestIngest:
    def test_prints_counts_and_persists(self, capsys, chain_file, tmp_path):
        directory = tmp_path / "store"
        code, out, _ = run(capsys, "ingest", str(chain_file), "--store", str(directory))
        assert code == 0
        assert "blocks=144" in out
        assert (directory / "chain.slu.jsonl").exists()
        assert (directory / "meta.json").exists()

    def test_store_flag_falls_back_to_env(self, capsys, chain_file, tmp_path, monkeypatch):
        directory = tmp_path / "env-store"
        monkeypatch.setenv("CHAINVISER_STORE", str(directory))
        code, out, _ = run(capsys, "ingest", str(chain_file))
        assert code == 0
        assert (directory / "meta.json").exists()

    def test_missing_store_flag_exits_2(self, chain_file, monkeypatch):
        monkeypatch.delenv("CHAINVISER_STORE", raising=False)
        with pytest.raises(SystemExit) as err:
            main(["ingest", str(chain_file)])
        assert err.value.code == 2


class TestStats:
    def test_trend_matches_chain_page(self, capsys, store_dir):
        code, out, _ = run(capsys, "stats", "--store", str(store_dir), "--trend")
        assert code == 0
        cli_trend = json.loads(out)
        with TestClient(create_app(open_store(store_dir))) as client:
            api_trend = client.get("/api/chain").json()["trend"]
        assert cli_trend == api_trend

    def test_block_distributions(self, capsys, store_dir):
        code, out, _ = run(capsys, "stats", "--store", str(store_dir), "--block", "10")
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"addr_count", "tx_size", "tx_fee"}

    def test_address_trends(self, capsys, store_dir):
        store = open_store(store_dir)
        address = next(a for a, _ in store.snapshot().iter_address_balances())
        code, out, _ = run(capsys, "stats", "--store", str(store_dir), "--address", address)
        assert code == 0
        assert len(json.loads(out)["points"]) == 30

    def test_stdout_is_pure_json(self, capsys, store_dir):
        _, out, _ = run(capsys, "stats", "--store", str(store_dir), "--trend")
        json.loads(out)  # a single parseable document, nothing else

    def test_requires_exactly_one_statistic(self, store_dir):
        with pytest.raises(SystemExit) as err:
            main(["stats", "--store", str(store_dir)])
        assert err.value.code == 2


def test_serve_rejects_bad_listen(capsys, store_dir):
    code = main(["serve", "--store", str(store_dir), "--listen", "nonsense"])
    assert code == 2
