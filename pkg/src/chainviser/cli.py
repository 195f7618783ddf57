"""Operator entry point: generate, validate, ingest, serve, stats.

Exit codes: 0 success, 1 runtime or data failure, 2 usage error.
The stats subcommand writes machine-readable JSON to stdout; human
chatter goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from .chainfile import DEFAULT_MAX_BLOCK_BYTES, read_chain, validate_chain, write_chain
from .errors import ChainError
from .generate import GenConfig, generate_chain
from .index import ingest_file, open_store
from .model import COIN, slu
from .stats import address_trends, block_distributions, daily_trend

STORE_ENV = "CHAINVISER_STORE"
LISTEN_ENV = "CHAINVISER_LISTEN"


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _spike(value: str) -> tuple[int, float]:
    day, _, mult = value.partition(":")
    try:
        return int(day), float(mult)
    except ValueError:
        raise argparse.ArgumentTypeError(f"spike must be DAY:MULT, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainviser")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a deterministic synthetic chain file")
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--days", type=int, default=1)
    gen.add_argument("--interval-secs", type=int, default=120)
    gen.add_argument("--jitter", type=float, default=0.25)
    gen.add_argument("--mean-txs", type=float, default=13.0)
    gen.add_argument("--wallets", type=int, default=500)
    gen.add_argument("--subsidy-slu", default="50", help="block subsidy in SLU")
    gen.add_argument("--start-time", type=int, default=1552608000)
    gen.add_argument("--max-block-bytes", type=int, default=DEFAULT_MAX_BLOCK_BYTES)
    gen.add_argument("--spike", type=_spike, action="append", default=[], metavar="DAY:MULT")
    gen.add_argument("--out", required=True)

    val = sub.add_parser("validate", help="run content checks over a chain file")
    val.add_argument("file")
    val.add_argument("--max-block-bytes", type=int, default=DEFAULT_MAX_BLOCK_BYTES)

    ing = sub.add_parser("ingest", help="build a store directory from a chain file")
    ing.add_argument("file")
    ing.add_argument("--store", default=os.environ.get(STORE_ENV))

    srv = sub.add_parser("serve", help="serve the explorer API over HTTP")
    srv.add_argument("--store", default=os.environ.get(STORE_ENV))
    srv.add_argument("--listen", default=os.environ.get(LISTEN_ENV, "127.0.0.1:8750"))
    srv.add_argument("--cors", default="*")

    stats = sub.add_parser("stats", help="dump one statistic as JSON to stdout")
    stats.add_argument("--store", default=os.environ.get(STORE_ENV))
    pick = stats.add_mutually_exclusive_group(required=True)
    pick.add_argument("--block", help="block height or hash: the three distributions")
    pick.add_argument("--address", help="address: the 30-day trends")
    pick.add_argument("--trend", action="store_true", help="chain daily trend")
    stats.add_argument("--window", type=int, default=90, help="trend window in days")

    return parser


def _cmd_gen(args) -> int:
    config = GenConfig(
        seed=args.seed,
        block_interval_secs=args.interval_secs,
        interval_jitter_frac=args.jitter,
        mean_txs_per_block=args.mean_txs,
        num_wallets=args.wallets,
        subsidy=slu(args.subsidy_slu),
        max_block_bytes=args.max_block_bytes,
        start_time=args.start_time,
        duration_days=args.days,
        spike_days=args.spike,
    )
    blocks = 0
    txs = 0
    addresses = set()

    def counted():
        nonlocal blocks, txs
        for block in generate_chain(config):
            blocks += 1
            txs += len(block.transactions)
            for tx in block.transactions:
                for s in tx.inputs:
                    addresses.add(s.address)
                for s in tx.outputs:
                    addresses.add(s.address)
            yield block

    written = write_chain(counted(), args.out)
    print(f"blocks={blocks} txs={txs} addresses={len(addresses)} bytes={written}")
    return 0


def _cmd_validate(args) -> int:
    report = validate_chain(read_chain(args.file), max_block_bytes=args.max_block_bytes)
    for height, kind, detail in report.errors:
        print(f"height {height}: {kind}: {detail}")
    print(f"{report.blocks_checked} blocks checked, {len(report.errors)} errors")
    return 0 if report.ok else 1


def _require_store(args) -> str:
    if not args.store:
        _log(f"no store directory given (flag --store or ${STORE_ENV})")
        raise SystemExit(2)
    return args.store


def _cmd_ingest(args) -> int:
    store = ingest_file(args.file, store_dir=_require_store(args))
    summary = store.snapshot().summary()
    print(
        f"blocks={summary.block_count} txs={summary.tx_count} "
        f"addresses={summary.address_count} tip={summary.tip_height}"
    )
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    store = open_store(_require_store(args))
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        _log(f"bad --listen address {args.listen!r}, want HOST:PORT")
        return 2
    _log(f"serving store {args.store} on {args.listen}")
    uvicorn.run(create_app(store, cors_origins=args.cors), host=host, port=int(port))
    return 0


def _cmd_stats(args) -> int:
    store = open_store(_require_store(args))
    snapshot = store.snapshot()
    if args.trend:
        payload = asdict(daily_trend(snapshot, args.window))
    elif args.block is not None:
        key = int(args.block) if args.block.isdigit() else args.block
        histograms = block_distributions(snapshot, key)
        payload = {name: asdict(h) for name, h in histograms.items()}
    else:
        payload = asdict(address_trends(snapshot, args.address))
    json.dump(payload, sys.stdout)
    sys.stdout.write("\n")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "validate": _cmd_validate,
    "ingest": _cmd_ingest,
    "serve": _cmd_serve,
    "stats": _cmd_stats,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ChainError as exc:
        _log(f"error: {exc}")
        return 1
    except OSError as exc:
        _log(f"io error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
