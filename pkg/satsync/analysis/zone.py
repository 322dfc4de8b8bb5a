import math

import numpy as np
import pandas as pd

from satsync.errors import GainError

BOUNDARY_PAIR = (1.0, 2.0)


def gain_zone_check(k1, k2, allow_boundary_pair=False) -> bool:
    """
    k1 in (0, 1), k2 > 0 and (1 + k1 - k2)^2 < 1 - k1; optionally also the pair (1, 2).
    """
    k1, k2 = float(k1), float(k2)
    if not (math.isfinite(k1) and math.isfinite(k2)):
        return False
    if allow_boundary_pair and (k1, k2) == BOUNDARY_PAIR:
        return True
    return 0.0 < k1 < 1.0 and k2 > 0.0 and (1.0 + k1 - k2) ** 2 < 1.0 - k1


def epsilon_margin(k1, k2) -> float:
    """
    epsilon = 1 - (1 + k1 - k2)^2 / (1 - k1), positive inside the open zone.
    """
    if not gain_zone_check(k1, k2):
        raise GainError(f"gains (k1, k2) = ({k1!r}, {k2!r}) are outside the open solvable zone")
    k1, k2 = float(k1), float(k2)
    return 1.0 - (1.0 + k1 - k2) ** 2 / (1.0 - k1)


def zone_grid(resolution=200, k1_max=1.0, k2_max=3.0, allow_boundary_pair=False) -> pd.DataFrame:
    """
    Sample the zone on a resolution x resolution grid of interior points of (0, k1_max) x (0, k2_max).
    """
    k1_axis = np.linspace(0.0, k1_max, resolution + 2)[1:-1]
    k2_axis = np.linspace(0.0, k2_max, resolution + 2)[1:-1]
    rows = {"k1": [], "k2": [], "inside": [], "epsilon": []}
    for k1 in k1_axis:
        for k2 in k2_axis:
            inside = gain_zone_check(k1, k2, allow_boundary_pair)
            rows["k1"].append(float(k1))
            rows["k2"].append(float(k2))
            rows["inside"].append(inside)
            rows["epsilon"].append(epsilon_margin(k1, k2) if gain_zone_check(k1, k2) else float("nan"))
    return pd.DataFrame(rows)
