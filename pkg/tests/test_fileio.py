import numpy as np
import pytest

from pentavec.errors import KindMismatch, ParseError
from pentavec.fileio import (
    KINDS,
    Record,
    emit_record,
    parse_record,
    read_record,
    transform_from_payload,
    transform_to_payload,
    write_record,
)
from pentavec.grids import Grid
from pentavec.poincare import PoincareTransform

TRICKY = np.array([0.1, 1.0 / 3.0, -0.0, 1e-300, -1e300, np.pi, 2.0**-52, 123456789.123456789])


def small_grid():
    return Grid(origin=(0.0, 0.1, -0.5, 1.0 / 3.0), spacing=(0.25, 0.5, 1.0, 0.7), shape=(2, 1, 2, 1))


def record_for(kind, rng):
    shape, _, needs_grid = KINDS[kind]
    grid = small_grid() if needs_grid else None
    payload_shape = (grid.shape + shape) if needs_grid else shape
    payload = rng.normal(size=payload_shape) * 10.0 ** rng.integers(-8, 8)
    basis = "P" if kind == "moment_field" else None
    return Record(kind=kind, payload=payload, basis=basis, kappa=0.3, grid=grid)


def test_emit_parse_emit_is_byte_identical_for_every_kind():
    rng = np.random.default_rng(80)
    for kind in KINDS:
        rec = record_for(kind, rng)
        text = emit_record(rec)
        back = parse_record(text)
        assert back.kind == rec.kind
        assert np.array_equal(back.payload, rec.payload)
        assert back.basis == rec.basis
        assert back.kappa == rec.kappa
        assert back.grid == rec.grid
        assert emit_record(back) == text


def test_tricky_values_survive_exactly():
    rec = Record(kind="four_basis_components", payload=TRICKY.reshape(4, 2).repeat(2, axis=1))
    back = parse_record(emit_record(rec))
    assert np.array_equal(back.payload, rec.payload)
    # negative zero keeps its sign bit through the text form
    rec = Record(kind="five_vector", payload=np.array([-0.0, 0.0, 1.0, -1.0, 0.1]))
    back = parse_record(emit_record(rec))
    assert np.signbit(back.payload[0]) and not np.signbit(back.payload[1])


def test_file_round_trip(tmp_path):
    rng = np.random.default_rng(81)
    path = tmp_path / "vector.pvec"
    rec = record_for("five_vector_field", rng)
    write_record(path, rec)
    back = read_record(path)
    assert np.array_equal(back.payload, rec.payload)
    assert back.grid == rec.grid


def test_comments_and_blank_lines_ignored():
    rec = Record(kind="five_vector", payload=np.arange(5.0))
    lines = emit_record(rec).splitlines()
    lines.insert(2, "# a comment")
    lines.insert(4, "")
    lines.append("# trailing note")
    back = parse_record("\n".join(lines) + "\n")
    assert np.array_equal(back.payload, np.arange(5.0))


def test_record_validation():
    with pytest.raises(KindMismatch):
        Record(kind="sixtensor", payload=np.zeros(5))
    with pytest.raises(KindMismatch):
        Record(kind="five_vector", payload=np.zeros(4))
    with pytest.raises(KindMismatch):
        Record(kind="five_vector", payload=np.zeros(5), grid=small_grid())
    with pytest.raises(KindMismatch):
        Record(kind="scalar_field", payload=np.zeros(4))  # grid missing
    with pytest.raises(KindMismatch):
        Record(kind="five_vector", payload=np.zeros(5), basis="Q")


def parse_error_for(text):
    with pytest.raises(ParseError) as info:
        parse_record(text)
    return info.value


def test_parse_error_locations():
    err = parse_error_for("not the magic\n")
    assert err.line == 1

    good = emit_record(Record(kind="five_vector", payload=np.arange(5.0)))

    err = parse_error_for(good.replace("kind five_vector", "kind sixvector"))
    assert "sixvector" in str(err) and err.line == 2

    err = parse_error_for(good.replace("labels 0 1 2 3 5", "labels 0 1 2 3 4"))
    assert err.line == 3

    err = parse_error_for(good.replace("data", "kind five_vector\ndata", 1))
    assert "duplicate" in str(err)

    err = parse_error_for(good.replace("data", "mystery 1\ndata", 1))
    assert "mystery" in str(err)

    err = parse_error_for(good.replace("data\n", ""))
    assert "data" in str(err)

    no_kind = "\n".join(line for line in good.splitlines() if not line.startswith("kind"))
    err = parse_error_for(no_kind + "\n")
    assert "kind" in str(err)


def test_parse_error_payload():
    good = emit_record(Record(kind="five_vector", payload=np.arange(5.0)))

    err = parse_error_for(good.replace("4", "4 9"))  # six values
    assert "needs 5 values" in str(err)

    err = parse_error_for(good.replace("3 4", "x 4"))
    assert "bad number" in str(err) and err.column is not None

    err = parse_error_for(good.replace("4", "nan"))
    assert "sample 4" in str(err) and err.line is not None

    err = parse_error_for(good.replace("4", "inf"))
    assert "not finite" in str(err)


def test_parse_error_grid_headers():
    rng = np.random.default_rng(82)
    good = emit_record(record_for("scalar_field", rng))

    err = parse_error_for("\n".join(l for l in good.splitlines() if not l.startswith("origin")) + "\n")
    assert "origin" in str(err)

    err = parse_error_for(good.replace("shape 2 1 2 1", "shape 2 1 2"))
    assert "four values" in str(err)

    err = parse_error_for(good.replace("shape 2 1 2 1", "shape 2 1 2 x"))
    assert "bad shape" in str(err)

    vec = emit_record(Record(kind="five_vector", payload=np.arange(5.0)))
    err = parse_error_for(vec.replace("data", "shape 1 1 1 1\ndata", 1))
    assert "carries no grid" in str(err)

    err = parse_error_for(good.replace("kappa 0.29999999999999999", "kappa many"))
    assert "kappa" in str(err)

    err = parse_error_for(good.replace("kappa 0.29999999999999999", "kappa inf"))
    assert "finite" in str(err)


def test_basis_flag_rejected_when_unknown():
    good = emit_record(Record(kind="five_vector", payload=np.arange(5.0), basis="O"))
    err = parse_error_for(good.replace("basis O", "basis X"))
    assert "basis" in str(err)


def test_transform_payload_round_trip():
    t = PoincareTransform(np.eye(4), [1.0, 2.0, 3.0, 4.0])
    payload = transform_to_payload(t)
    assert payload.shape == (20,)
    back = transform_from_payload(payload)
    assert np.array_equal(back.lam, t.lam)
    assert np.array_equal(back.a, t.a)
    rec = Record(kind="poincare_transform", payload=payload)
    again = transform_from_payload(parse_record(emit_record(rec)).payload)
    assert np.array_equal(again.lam, t.lam) and np.array_equal(again.a, t.a)
    with pytest.raises(KindMismatch):
        transform_from_payload(np.zeros(19))
