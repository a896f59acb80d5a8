# SPDX-FileCopyrightText: Copyright (c) 2026 The sonotherm Authors. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

import json
import pathlib

import numpy as np
import pytest

import sonotherm

REF = pathlib.Path(__file__).resolve().parents[2] / "ref"


@pytest.fixture(scope="module")
def small():
    return sonotherm.load_config(REF / "sec24.json", ["thermal_grid.nx=21", "thermal_grid.ny=21"])


def test_load_and_counts():
    cfg = sonotherm.load_config(REF / "fig1.json")
    assert cfg.element_count == 2988
    assert cfg.enabled_element_count == 2988
    again = sonotherm.load_config(json.loads(cfg.to_json()))
    assert again.to_json() == cfg.to_json()


def test_validation_error_carries_path():
    with pytest.raises(sonotherm.ValidationError, match="envelope.duty"):
        sonotherm.load_config({"units": [{"origin": [0, 0, 0]}],
                               "envelope": {"kind": "square", "freq_hz": 50, "duty": 1.5}})


def test_intensity_field_peaks_at_focus(small):
    f = sonotherm.intensity_field(small, extent=0.02, res=1e-3)
    grid = f["intensity"]
    assert grid.shape == (21, 21)
    assert np.unravel_index(np.argmax(grid), grid.shape) == (10, 10)
    assert f["peak"] == pytest.approx(grid.max())
    assert abs(sonotherm.focus_pressure(small)) > 0


def test_calibrate_then_simulate(small):
    cal = sonotherm.calibrate(small)
    small.absorbed_fraction = cal["eta"]
    run = sonotherm.simulate(small, envelope="static", duration=5.0, snapshots=[5.0])
    assert run["delta_t"][-1] == pytest.approx(5.4, abs=1e-2)
    assert np.all(np.diff(run["delta_t"]) >= 0)
    assert run["snapshots"][5.0].shape == (21, 21)
    am = sonotherm.simulate(small, envelope="square", duration=5.0)
    assert am["delta_t"][-1] / run["delta_t"][-1] == pytest.approx(0.9, abs=1e-9)
    assert am["time_to_threshold"] >= run["time_to_threshold"]


def test_time_to_threshold():
    assert sonotherm.time_to_threshold([0, 1, 2], [0, 0.1, 0.3], 0.2) == pytest.approx(1.5)
    assert sonotherm.time_to_threshold([0, 1], [0, 0.1], 0.2) is None


def test_run_cli():
    code, out, _ = sonotherm.run_cli(["validate", str(REF / "sec24.json")])
    assert code == 0
    assert json.loads(out)["enabled_elements"] == 1494
    code, _, err = sonotherm.run_cli(["reproduce", "fig9"])
    assert code == 2
    assert json.loads(err)["kind"] == "validation"
