import pytest

from finkite.errors import SchemaError
from finkite.gallery import cyclic_magma, group_pair_span, meet_semilattice2
from finkite.internal import kite_from_span
from finkite.schemas import (SCHEMAS, dump_algebra, dump_directed_kite,
                             dump_finmap, load_algebra, load_directed_kite,
                             load_finmap, load_span, load_split_cospan,
                             load_variety_kite, dump_variety_kite,
                             schema_text)


def test_finmap_round_trip():
    from finkite.finmaps import FinMap
    f = FinMap(3, 2, (0, 1, 1))
    assert load_finmap(dump_finmap(f)).table == f.table


def test_finmap_error_points_at_field():
    with pytest.raises(SchemaError) as exc:
        load_finmap({"dom": 2, "cod": 2, "table": [0, 7]})
    assert "table[1]" in str(exc.value)
    with pytest.raises(SchemaError) as exc:
        load_finmap({"dom": 2, "cod": 2})
    assert "table" in str(exc.value)


def test_directed_kite_round_trip():
    dk = kite_from_span(group_pair_span(2))
    again = load_directed_kite(dump_directed_kite(dk))
    assert again == dk


def test_algebra_round_trip_and_variety_override():
    a = cyclic_magma(3)
    again = load_algebra(dump_algebra(a))
    assert again == a
    as_custom = load_algebra(dump_algebra(a), variety="custom")
    assert as_custom.variety == "custom"


def test_algebra_bad_table_length():
    with pytest.raises(SchemaError) as exc:
        load_algebra({"size": 2, "ops": [{"symbol": "*", "arity": 2,
                                          "table": [0, 0, 0]}]})
    assert "ops[0].table" in str(exc.value)


def test_variety_kite_round_trip():
    from finkite.algebra import wm_witness_search
    kite = wm_witness_search(meet_semilattice2())
    again = load_variety_kite(dump_variety_kite(kite))
    assert again == kite


def test_schema_text_known_names():
    for name in SCHEMAS:
        assert schema_text(name)
    with pytest.raises(SchemaError):
        schema_text("bogus")
