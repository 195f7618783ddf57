import copy
import io
import json

import pytest

from chainviser.chainfile import (
    CHECK_FEE,
    CHECK_KINDS,
    CHECK_REWARD,
    block_to_dict,
    block_to_line,
    read_chain,
    validate_chain,
    write_chain,
)
from chainviser.errors import FormatViolation, ParseError

import mutations
from conftest import build_chain

# frozen after the first deterministic run of the 720-block day chain
DAY_CHAIN_BYTES = 2270077


class TestRoundTrip:
    def test_read_back_is_value_equal_and_byte_stable(self, small_chain, tmp_path):
        path = tmp_path / "chain.slu.jsonl"
        first_bytes = write_chain(small_chain, path)
        loaded = list(read_chain(path))
        assert loaded == small_chain
        again = io.BytesIO()
        assert write_chain(loaded, again) == first_bytes
        assert again.getvalue() == path.read_bytes()

    def test_empty_chain_writes_zero_bytes(self):
        buffer = io.BytesIO()
        assert write_chain([], buffer) == 0
        assert buffer.getvalue() == b""

    def test_single_block_is_single_line(self):
        blocks = build_chain([[]])
        buffer = io.BytesIO()
        write_chain(blocks, buffer)
        lines = buffer.getvalue().decode().splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["height"] == 0

    def test_seeded_day_chain_has_pinned_length(self, day_chain):
        buffer = io.BytesIO()
        assert write_chain(day_chain, buffer) == DAY_CHAIN_BYTES

    def test_reader_is_streaming(self, small_chain, tmp_path):
        path = tmp_path / "chain.slu.jsonl"
        write_chain(small_chain, path)
        reader = read_chain(path)
        assert next(reader).height == 0  # nothing else parsed yet
        reader.close()


class TestParseErrors:
    def test_truncated_last_line(self, small_chain, tmp_path):
        path = tmp_path / "cut.slu.jsonl"
        data = io.BytesIO()
        write_chain(small_chain[:3], data)
        path.write_bytes(data.getvalue()[:-40])
        with pytest.raises(ParseError) as err:
            list(read_chain(path))
        assert err.value.line_no == 3

    def test_non_object_line(self, tmp_path):
        path = tmp_path / "junk.slu.jsonl"
        path.write_text("[1,2,3]\n")
        with pytest.raises(ParseError):
            list(read_chain(path))

    @pytest.mark.parametrize(
        "edit",
        [
            lambda tx: tx["inputs"][0].__setitem__("amount", -5),
            lambda tx: tx["inputs"][0].__setitem__("amount", 0),
            lambda tx: tx["inputs"][0].__setitem__("amount", 1.5),
            lambda tx: tx["inputs"][0].__setitem__("amount", True),
            lambda tx: tx["inputs"][0].__setitem__("address", "nonsense"),
            lambda tx: tx.__setitem__("txid", "short"),
            lambda tx: tx.__setitem__("size_bytes", "big"),
            lambda tx: tx.pop("timestamp"),
            lambda tx: tx.__setitem__("is_coinbase", "no"),
        ],
    )
    def test_field_violations(self, edit, tmp_path):
        blocks = build_chain([[], [[[("S" + "a" * 35, "1.0")], [("S" + "b" * 35, "0.9")]]]])
        chain = [block_to_dict(b) for b in blocks]
        edit(chain[1]["transactions"][1])
        path = tmp_path / "bad.slu.jsonl"
        path.write_text("\n".join(json.dumps(b) for b in chain) + "\n")
        with pytest.raises(FormatViolation) as err:
            list(read_chain(path))
        assert err.value.line_no == 2

    def test_empty_transactions_rejected(self, tmp_path):
        chain = [block_to_dict(b) for b in build_chain([[]])]
        chain[0]["transactions"] = []
        path = tmp_path / "empty.slu.jsonl"
        path.write_text(json.dumps(chain[0]) + "\n")
        with pytest.raises(FormatViolation):
            list(read_chain(path))


@pytest.fixture(scope="module")
def dict_chain(small_chain):
    return [block_to_dict(b) for b in small_chain[:30]]


def _validate_dicts(chain):
    data = "\n".join(json.dumps(b) for b in chain) + "\n"
    return validate_chain(read_chain(io.BytesIO(data.encode())))


class TestValidator:
    def test_clean_chain_has_no_findings(self, dict_chain):
        report = _validate_dicts(dict_chain)
        assert report.ok
        assert report.blocks_checked == len(dict_chain)

    @pytest.mark.parametrize("kind", mutations.MUTATIONS)
    def test_each_mutation_fires_exactly_its_check(self, dict_chain, kind):
        chain, height, expected_kind = mutations.apply_mutation(dict_chain, kind)
        assert expected_kind == kind
        report = _validate_dicts(chain)
        assert [(h, k) for h, k, _ in report.errors] == [(height, kind)]

    def test_mutation_table_covers_all_nine_kinds(self):
        assert set(mutations.MUTATIONS) == set(CHECK_KINDS)

    def test_report_collects_findings_across_blocks(self, dict_chain):
        chain = copy.deepcopy(dict_chain)
        first = mutations.spend_block_position(chain)
        second = first + 3
        chain[first]["transactions"][0]["outputs"][0]["amount"] += 1
        spend = chain[second]["transactions"][1]
        spend["outputs"][0]["amount"] += sum(s["amount"] for s in spend["inputs"])
        mutations.recanonicalize(chain)
        report = _validate_dicts(chain)
        assert {(h, k) for h, k, _ in report.errors} == {
            (first, CHECK_REWARD),
            (second, CHECK_FEE),
        }


def test_block_to_line_is_compact_and_ordered(small_chain):
    line = block_to_line(small_chain[0])
    assert line.startswith('{"hash":"')
    assert '"transactions":[' in line
    assert " " not in line.split('"transactions"')[0]
