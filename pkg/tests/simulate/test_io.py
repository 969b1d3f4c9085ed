import numpy as np
import pytest

from core.errors import DataError, PreconditionError
from simulate import read_observations
from simulate.io import has_header


def test_read_without_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("1.0,2.0,3.0\n4.0,5.0,6.0\n")
    assert not has_header(path)
    np.testing.assert_array_equal(read_observations(path), [[1, 2, 3], [4, 5, 6]])


def test_read_with_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,b\n1,2\n3,4\n5,6\n")
    assert has_header(path)
    assert read_observations(path).shape == (3, 2)


def test_non_numeric_cell_is_located(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,b\n1,2\n3,oops\n")
    with pytest.raises(DataError, match="'oops' at line 3, column 2"):
        read_observations(path)


def test_single_row_is_rejected(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("1,2,3\n")
    with pytest.raises(PreconditionError, match="n >= 2"):
        read_observations(path)


def test_missing_or_empty_file(tmp_path):
    with pytest.raises(DataError, match="Cannot read"):
        read_observations(tmp_path / "missing.csv")
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DataError):
        read_observations(empty)


@pytest.mark.parametrize("header", ["", "a,b,c\n"])
def test_byte_order_mark_keeps_every_row(tmp_path, header):
    path = tmp_path / "x.csv"
    rows = "1,2,3\n4,5,6\n7,8,9\n10,11,12\n"
    path.write_bytes(("\ufeff" + header + rows).encode("utf-8"))
    assert has_header(path) == bool(header)
    X = read_observations(path)
    assert X.shape == (4, 3)
    np.testing.assert_array_equal(X[0], [1, 2, 3])
