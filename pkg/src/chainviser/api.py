"""HTTP service over the page viewmodels plus keyword query resolution.

Every response body is JSON with snake_case field names and carries the
snapshot tip height it was built from. 404 means a well-formed key that
matches nothing, 400 a malformed parameter. Handlers open one snapshot
per request, so a concurrent ingester never tears a response.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import BadField, BadPage, EmptyChain, NotFound
from .index import IndexSnapshot, IndexStore
from .model import is_address, is_hash
from .stats import FILTER_FIELDS, ORDERS, SORT_FIELDS
from .viewmodel import (
    build_address_page,
    build_block_page,
    build_chain_page,
    build_tx_page,
)

PER_PAGE_DEFAULT = 20
PER_PAGE_MAX = 100


@dataclass(slots=True)
class QueryResolution:
    kind: str  # block | transaction | address | not_found | ambiguous_format
    canonical_key: str
    redirect_path: str


def classify_query(snapshot: IndexSnapshot, query: str) -> QueryResolution:
    """Map a free-form search string to the page it names.

    Decimal within [0, tip] resolves to a block height; 64 hex chars try
    txid first, then block hash; an address-shaped string resolves to an
    address page. Uppercase hex is folded to lowercase. Well-formed keys
    that match nothing resolve to not_found; everything else is
    ambiguous_format. Total: never raises.
    """
    text = query.strip()
    is_decimal = text.isascii() and text.isdigit()
    if is_decimal and int(text) <= snapshot.tip_height:
        key = str(int(text))
        return QueryResolution("block", key, f"/api/block/{key}")

    lowered = text.lower()
    if is_hash(lowered):
        try:
            snapshot.get_transaction(lowered)
            return QueryResolution("transaction", lowered, f"/api/tx/{lowered}")
        except NotFound:
            pass
        try:
            snapshot.get_block(lowered)
            return QueryResolution("block", lowered, f"/api/block/{lowered}")
        except NotFound:
            return QueryResolution("not_found", lowered, "")

    if len(text) == 36 and text[:1] in ("S", "s"):
        candidate = "S" + text[1:].lower()
        if is_address(candidate):
            try:
                snapshot.address_summary(candidate)
                return QueryResolution("address", candidate, f"/api/address/{candidate}")
            except NotFound:
                return QueryResolution("not_found", candidate, "")

    if is_decimal:
        return QueryResolution("not_found", text, "")
    return QueryResolution("ambiguous_format", text, "")


class _BadParam(Exception):
    pass


def _int_param(params, name: str, default: int | None) -> int | None:
    raw = params.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise _BadParam(f"parameter {name!r} must be an integer")


def _paging_params(params) -> tuple[int, int]:
    page = _int_param(params, "page", 1)
    per_page = _int_param(params, "per_page", PER_PAGE_DEFAULT)
    return page, min(per_page, PER_PAGE_MAX)


def _block_key(raw: str):
    if raw.isascii() and raw.isdigit():
        return int(raw)
    if is_hash(raw.lower()):
        return raw.lower()
    raise _BadParam(f"{raw!r} is neither a height nor a block hash")


def create_app(store: IndexStore, cors_origins: str = "*") -> FastAPI:
    app = FastAPI(title="chainviser", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[o.strip() for o in cors_origins.split(",")],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    def ok(snapshot: IndexSnapshot, payload: dict) -> JSONResponse:
        payload["tip_height"] = snapshot.tip_height
        return JSONResponse(payload)

    def fail(status: int, message: str) -> JSONResponse:
        return JSONResponse({"error": message}, status_code=status)

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return fail(404, str(exc))

    @app.exception_handler(_BadParam)
    async def _bad_param(request: Request, exc: _BadParam):
        return fail(400, str(exc))

    @app.exception_handler(BadField)
    async def _bad_field(request: Request, exc: BadField):
        return fail(400, str(exc))

    @app.exception_handler(BadPage)
    async def _bad_page(request: Request, exc: BadPage):
        return fail(400, str(exc))

    @app.exception_handler(EmptyChain)
    async def _empty_chain(request: Request, exc: EmptyChain):
        return fail(404, str(exc))

    @app.get("/api/health")
    def health():
        snapshot = store.snapshot()
        return JSONResponse(
            {"tip_height": snapshot.tip_height, "block_count": snapshot.tip_height + 1}
        )

    @app.get("/api/chain")
    def chain_page():
        snapshot = store.snapshot()
        return ok(snapshot, asdict(build_chain_page(snapshot)))

    @app.get("/api/block/{key}")
    def block_page(key: str, request: Request):
        snapshot = store.snapshot()
        params = request.query_params
        sort_field = params.get("sort", "tx_fee")
        order = params.get("order", "desc")
        if sort_field not in SORT_FIELDS:
            raise BadField(f"unknown sort field {sort_field!r}")
        if order not in ORDERS:
            raise BadField(f"unknown order {order!r}")
        shuffle_seed = _int_param(params, "shuffle_seed", 0)
        page, per_page = _paging_params(params)
        filter_field = params.get("filter_field")
        value_filter = None
        if filter_field is not None:
            if filter_field not in FILTER_FIELDS:
                raise BadField(f"unknown filter field {filter_field!r}")
            value_filter = (
                filter_field,
                _int_param(params, "min", None),
                _int_param(params, "max", None),
            )
        payload = build_block_page(
            snapshot,
            _block_key(key),
            sort_field=sort_field,
            order=order,
            value_filter=value_filter,
            page=page,
            per_page=per_page,
            shuffle_seed=shuffle_seed,
        )
        return ok(snapshot, asdict(payload))

    @app.get("/api/tx/{txid}")
    def tx_page(txid: str, request: Request):
        snapshot = store.snapshot()
        lowered = txid.lower()
        if not is_hash(lowered):
            raise _BadParam(f"{txid!r} is not a transaction id")
        params = request.query_params
        in_page = _int_param(params, "in_page", 1)
        out_page = _int_param(params, "out_page", 1)
        per_page = min(_int_param(params, "per_page", PER_PAGE_DEFAULT), PER_PAGE_MAX)
        payload = build_tx_page(snapshot, lowered, in_page, out_page, per_page)
        return ok(snapshot, asdict(payload))

    @app.get("/api/address/{address}")
    def address_page(address: str, request: Request):
        snapshot = store.snapshot()
        if not is_address(address):
            raise _BadParam(f"{address!r} is not an address")
        page, per_page = _paging_params(request.query_params)
        payload = build_address_page(snapshot, address, page, per_page)
        return ok(snapshot, asdict(payload))

    @app.get("/api/search")
    def search(request: Request):
        snapshot = store.snapshot()
        query = request.query_params.get("q", "")
        resolution = classify_query(snapshot, query)
        return ok(snapshot, asdict(resolution))

    return app
