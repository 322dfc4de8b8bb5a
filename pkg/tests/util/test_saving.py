import json

import numpy as np
import pandas as pd
import pytest

from satsync.util import format_float, load_csv, load_json, save_csv, save_json


@pytest.mark.parametrize("x", [0.1, 1.0 / 3.0, -2.5e-7, 5e-324, 1.7976931348623157e308, 123456789.125, 0.0])
def test_format_float(x):
    text = format_float(x)
    assert "e" in text
    assert float(text) == x


def test_save_csv(tmp_path):
    rng = np.random.default_rng(0)
    frame = pd.DataFrame({"k": np.arange(5), "value": rng.normal(size=5) * 1e-3, "flag": [True, False] * 2 + [True]})
    path = str(tmp_path / "nested" / "table.csv")
    save_csv(frame, path)

    loaded = load_csv(path)
    assert list(loaded.columns) == ["k", "value", "flag"]
    assert np.array_equal(loaded["k"], frame["k"])
    assert np.array_equal(loaded["value"].to_numpy(), frame["value"].to_numpy())
    assert np.array_equal(loaded["flag"], frame["flag"])

    text = save_csv(frame)
    assert text.splitlines()[0] == "k,value,flag"
    assert "\r" not in text
    with open(path, encoding="utf-8") as f:
        assert f.read() == text


def test_save_json(tmp_path):
    path = str(tmp_path / "out" / "record.json")
    save_json({"a": np.float64(0.5), "b": np.arange(3), "c": np.bool_(True), "d": (1, np.int64(2))}, path)
    assert load_json(path) == {"a": 0.5, "b": [0, 1, 2], "c": True, "d": [1, 2]}
    with open(path, encoding="utf-8") as f:
        assert json.load(f)["a"] == 0.5
