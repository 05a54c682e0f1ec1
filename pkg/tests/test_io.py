"""
Tests for trace CSV input and output.
"""

# packages
import numpy
import pandas
import pytest

# project
from inamc_app.cell.trace import TRACE_COLUMNS, Trace
from inamc_app.exceptions import TraceFormatError
from inamc_app.io.traces import read_csv, read_trace, write_csv, write_trace


def random_trace(rng, rows: int = 25) -> pandas.DataFrame:
    frame = pandas.DataFrame(rng.standard_normal((rows, len(TRACE_COLUMNS))), columns=TRACE_COLUMNS)
    frame["t_ms"] = numpy.arange(rows) * 0.1
    return frame


def test_trace_roundtrip_is_exact(rng, tmp_path):
    frame = random_trace(rng)
    frame.loc[3, "INa"] = numpy.nan
    path = write_trace(Trace(frame=frame), tmp_path / "trace.csv")
    loaded = read_trace(path)
    pandas.testing.assert_frame_equal(loaded, frame, check_exact=True)
    assert not list(tmp_path.glob("*.tmp"))


def test_trace_header(rng, tmp_path):
    path = write_trace(random_trace(rng, rows=2), tmp_path / "trace.csv")
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == ",".join(TRACE_COLUMNS)


def test_write_rejects_wrong_columns(rng, tmp_path):
    with pytest.raises(TraceFormatError):
        write_trace(random_trace(rng).drop(columns="O"), tmp_path / "trace.csv")
    assert not (tmp_path / "trace.csv").exists()


def test_read_rejects_wrong_columns(rng, tmp_path):
    path = write_csv(random_trace(rng).rename(columns={"Vm_mV": "V"}), tmp_path / "bad.csv")
    with pytest.raises(TraceFormatError):
        read_trace(path)


def test_read_rejects_text_values(rng, tmp_path):
    frame = random_trace(rng, rows=3).astype(object)
    frame.loc[1, "Cai"] = "high"
    path = write_csv(frame, tmp_path / "bad.csv")
    with pytest.raises(TraceFormatError):
        read_trace(path)


def test_read_rejects_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(TraceFormatError):
        read_csv(path)


def test_read_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_trace(tmp_path / "missing.csv")
