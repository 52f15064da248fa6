import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from farofangs import FeatureAllocation, SampleSet, expected_loss
from farofangs.formats import (
    FazError,
    dumps_result,
    emit_result,
    estimate_from_document,
    format_faz,
    mask_runtime,
    parse_faz,
    read_csv_allocation,
    read_samples,
    result_document,
    write_samples,
)

from conftest import Z1, Z2


def test_single_block(tmp_path):
    path = tmp_path / "s.faz"
    path.write_text("2 2\n1 0\n0 1\n")
    s = read_samples(path)
    assert (len(s), s.n, s.k_max) == (1, 2, 2)
    assert s[0].tolist() == [[1, 0], [0, 1]]


def test_twin_pair_file(tmp_path):
    path = tmp_path / "twins.faz"
    path.write_text("# two allocations\n" + format_faz([Z1, Z2]))
    s = read_samples(path)
    assert (len(s), s.n, s.k_max) == (2, 6, 4)
    assert s[0] == FeatureAllocation(Z1) and s[1] == FeatureAllocation(Z2)


def test_mixed_rows_names_block():
    text = "2 1\n1\n0\n\n3 1\n1\n1\n0\n"
    with pytest.raises(FazError, match="block 2") as info:
        parse_faz(text, "mixed.faz")
    assert info.value.line == 5
    assert str(info.value).startswith("mixed.faz:5:1:")


def test_zero_width_blocks():
    mats = parse_faz("3 0\n\n3 2\n1 1\n0 0\n1 0\n\n3 0\n")
    assert [z.k for z in mats] == [0, 2, 0]
    assert format_faz(mats).count("3 0") == 2


def test_comments_and_extra_blank_lines():
    mats = parse_faz("# c\n\n\n1 2\n1 0\n# between\n\n\n1 1\n1\n\n")
    assert [z.tolist() for z in mats] == [[[1, 0]], [[1]]]


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("", 1, 1, "no matrices"),
        ("# only a comment\n", 1, 1, "no matrices"),
        ("2\n", 1, 1, "header"),
        ("2 x\n", 1, 3, "not a nonnegative integer"),
        ("0 2\n", 1, 1, "at least one row"),
        ("2 2\n1 0\n", 3, 1, "found 1"),
        ("2 2\n1 0\n0 2\n", 3, 3, "not 0 or 1"),
        ("2 2\n1 0\n0\n", 3, 2, "1 entries"),
        ("2 2\n1 0\n0 1 1\n", 3, 5, "3 entries"),
        ("1 1\n1\n0\n", 3, 1, "more than"),
    ],
)
def test_located_errors(text, line, col, fragment):
    with pytest.raises(FazError, match=fragment) as info:
        parse_faz(text, "bad.faz")
    assert (info.value.line, info.value.col) == (line, col)


@given(st.text(alphabet="01 \n#x2-", max_size=60))
@settings(max_examples=400)
def test_parser_is_total(text):
    try:
        mats = parse_faz(text)
    except FazError as exc:
        assert exc.line >= 1 and exc.col >= 1
    else:
        assert mats and len({z.n for z in mats}) == 1


@st.composite
def sample_sets(draw):
    n = draw(st.integers(1, 6))
    count = draw(st.integers(1, 5))
    return [draw(arrays(np.uint8, (n, draw(st.integers(0, 4))), elements=st.integers(0, 1))) for _ in range(count)]


@given(sample_sets())
def test_round_trip(mats):
    parsed = parse_faz(format_faz(mats))
    assert SampleSet(parsed) == SampleSet(mats)


def test_write_read_round_trip(tmp_path, rng):
    s = SampleSet([rng.integers(0, 2, (7, k)) for k in (0, 3, 5)])
    write_samples(s, tmp_path / "o.faz")
    assert read_samples(tmp_path / "o.faz") == s


def _doc(estimate, loss=0.5, wall=1.25):
    return result_document(
        "estimate", estimate, loss, config={"a": 1.0, "seed": 3}, runtime={"wall_seconds": wall}, extra_field=None
    )


def test_result_document_fields(z1):
    doc = _doc(z1)
    assert "extra_field" not in doc
    assert doc["estimate"] == Z1.tolist()
    assert (doc["n"], doc["k"]) == (6, 3)
    assert estimate_from_document(doc) == z1
    assert estimate_from_document(dumps_result(doc)) == z1


def test_emitted_json_is_canonical(tmp_path, z1):
    path = tmp_path / "r.json"
    emit_result(_doc(z1), path)
    text = path.read_text()
    assert text == dumps_result(json.loads(text))
    keys = list(json.loads(text))
    assert keys == sorted(keys)


def test_bytes_differ_only_in_runtime(z1):
    d1, d2 = _doc(z1, wall=0.1), _doc(z1, wall=9.0)
    assert dumps_result(d1) != dumps_result(d2)
    assert dumps_result(mask_runtime(d1)) == dumps_result(mask_runtime(d2))


def test_expected_loss_field_recomputes(rng):
    samples = [rng.integers(0, 2, (8, 3)) for _ in range(6)]
    est = samples[0]
    doc = json.loads(dumps_result(_doc(est, expected_loss(est, samples))))
    assert doc["expected_loss"] == pytest.approx(expected_loss(estimate_from_document(doc), samples), abs=1e-9)


def test_empty_estimate_round_trips():
    doc = _doc(FeatureAllocation.empty(4))
    assert doc["estimate"] == [[], [], [], []]
    assert estimate_from_document(doc) == FeatureAllocation.empty(4)


def test_emit_surfaces_io_errors(tmp_path, z1):
    with pytest.raises(OSError):
        emit_result(_doc(z1), tmp_path / "missing" / "r.json")


def test_csv_shim(tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("# items by features\n1,0,1\n0, 1 ,1\n")
    assert read_csv_allocation(path).tolist() == [[1, 0, 1], [0, 1, 1]]
    path.write_text("1,0\n1\n")
    with pytest.raises(FazError, match="expected 2"):
        read_csv_allocation(path)
    path.write_text("1,a\n")
    with pytest.raises(FazError) as info:
        read_csv_allocation(path)
    assert (info.value.line, info.value.col) == (1, 2)
