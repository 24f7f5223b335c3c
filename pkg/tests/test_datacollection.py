import pytest

from hypertess.datacollection import TableCollector

def test_collects_rows():
    collector = TableCollector({"a": ["x", "y"], "b": ["z"]})
    assert not collector.has_rows()
    collector.add_row("a", x = 1, y = 2)
    collector.add_row("a", x = 3)
    assert collector.has_rows("a")
    assert not collector.has_rows("b")
    assert collector.has_rows()
    frame = collector.get_table_dataframe("a")
    assert list(frame.columns) == ["x", "y"]
    assert frame["x"].tolist() == [1, 3]
    assert frame["y"].isna().tolist() == [False, True]

def test_unknown_column():
    collector = TableCollector({"a": ["x"]})
    with pytest.raises(KeyError):
        collector.add_row("a", w = 1)

def test_empty_table_keeps_columns():
    frame = TableCollector({"a": ["x", "y"]}).get_table_dataframe("a")
    assert frame.empty
    assert list(frame.columns) == ["x", "y"]
