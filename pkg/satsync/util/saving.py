import json
import os

import numpy as np
import pandas as pd
import yaml


def make_dirs(path):
    """
    Create the parent directory of path.
    """
    dirname = os.path.dirname(path)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)


def format_float(x):
    """
    Shortest scientific string that parses back to the same double.
    """
    return np.format_float_scientific(float(x), unique=True, trim="-")


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def save_json(obj, path):
    make_dirs(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_jsonable(obj), f, indent=2)
        f.write("\n")


def load_json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def load_yaml(path):
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def save_csv(frame: pd.DataFrame, path=None):
    """
    Write frame with every float column in round-trip scientific notation. Returns the text
    when path is None.
    """
    frame = frame.copy()
    for column in frame.columns:
        if pd.api.types.is_float_dtype(frame[column]):
            frame[column] = [format_float(x) for x in frame[column]]
    if path is None:
        return frame.to_csv(index=False, lineterminator="\n")
    make_dirs(path)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


def load_csv(path):
    return pd.read_csv(path, float_precision="round_trip")
