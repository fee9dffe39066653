#!/usr/bin/env python3
"""Regenerate the synthetic profiles under scenarios/.

12 h at 60 s resolution. The PV curve is dark for the first 30 min and
follows a half sine peaking at the 2230 W rating at midday. The residential
load starts at 200 W with a morning peak, a midday plateau and an evening peak.
"""

import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "scenarios"
HOURS = 12.0
STEP_S = 60
PV_RATING_W = 2230.0


def pv_day(h):
    if h < 0.5 or h > 11.5:
        return 0.0
    return PV_RATING_W * max(0.0, math.sin(math.pi * (h - 0.5) / 11.0))


def pv_stress(h):
    # Full sun from 2 h to 10.5 h with slow ramps at both ends.
    if h < 0.5:
        return 0.0
    if h < 2.0:
        return PV_RATING_W * (h - 0.5) / 1.5
    if h <= 10.5:
        return PV_RATING_W
    return PV_RATING_W * max(0.0, (12.0 - h) / 1.5)


def load_residential(h):
    def bump(center, width):
        return math.exp(-(((h - center) / width) ** 2))

    plateau = math.exp(-(((h - 6.0) / 2.2) ** 4))
    return 200.0 + 160.0 * bump(2.0, 0.8) + 220.0 * bump(10.0, 1.0) + 150.0 * plateau


def load_flat(_h):
    return 200.0


def write(name, fn):
    rows = ["t_s,power_w"]
    for t in range(0, int(HOURS * 3600) + 1, STEP_S):
        rows.append(f"{t},{fn(t / 3600.0):.3f}")
    (OUT / name).write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    write("pv_day.csv", pv_day)
    write("pv_stress.csv", pv_stress)
    write("load_residential.csv", load_residential)
    write("load_flat_200.csv", load_flat)
