#!/usr/bin/env python3
"""Regenerates ref/fig1.json and ref/sec24.json.

Twelve 18x14 units (192 x 151.4 mm boards) in four columns of three, with a 40 mm
gap between the two middle columns for the thermal camera. The middle columns lie flat
in z = 0 facing +z; the outer columns are hinged at their inner edge and tilted 20
degrees toward the axis. Units 0-5 are the middle columns.
"""
import json
import math
from pathlib import Path

PITCH = 10.16e-3
BOARD_X = 0.192
BOARD_Y = 0.1514
GAP = 0.040
TILT = math.radians(20.0)
LOCAL_CENTER = (8.5 * PITCH, 6.5 * PITCH, 0.0)


def rot_y(angle, v):
    c, s = math.cos(angle), math.sin(angle)
    return (c * v[0] + s * v[2], v[1], -s * v[0] + c * v[2])


def unit(center, angle):
    off = rot_y(angle, LOCAL_CENTER)
    origin = [round(center[i] - off[i], 9) for i in range(3)]
    entry = {"origin": origin}
    if angle != 0.0:
        entry["rotation"] = {"axis": [0.0, 1.0, 0.0], "angle": round(angle, 12)}
    return entry


def units():
    out = []
    rows = (-BOARD_Y, 0.0, BOARD_Y)
    inner_x = 0.5 * GAP + 0.5 * BOARD_X
    for y in rows:
        for side in (-1.0, 1.0):
            out.append(unit((side * inner_x, y, 0.0), 0.0))
    hinge = 0.5 * GAP + BOARD_X
    for y in rows:
        for side in (-1.0, 1.0):
            cx = side * (hinge + 0.5 * BOARD_X * math.cos(TILT))
            cz = 0.5 * BOARD_X * math.sin(TILT)
            out.append(unit((cx, y, cz), -side * TILT))
    return out


def main():
    ref = Path(__file__).resolve().parent.parent / "ref"
    base = {
        "medium": {"sound_speed": 343.0, "density": 1.204, "attenuation": 0.12, "frequency": 40000.0},
        "units": units(),
        "drive": {"focus": [0.0, 0.0, 0.296], "amplitude": 1.0},
    }
    fig1 = dict(base, envelope={"kind": "square", "freq_hz": 50.0, "duty": 0.9})
    sec24 = dict(base, enabled=[0, 1, 2, 3, 4, 5], envelope={"kind": "static"})
    (ref / "fig1.json").write_text(json.dumps(fig1, indent=2) + "\n")
    (ref / "sec24.json").write_text(json.dumps(sec24, indent=2) + "\n")


if __name__ == "__main__":
    main()
