# SPDX-FileCopyrightText: Copyright (c) 2026 The sonotherm Authors. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Airborne-ultrasound skin heating simulator."""

import json
import os

from ._core import (
    Config,
    SolverError,
    ValidationError,
    calibrate,
    focus_pressure,
    intensity_field,
    run_cli,
    simulate,
    time_to_threshold,
)

__all__ = [
    "Config",
    "SolverError",
    "ValidationError",
    "calibrate",
    "focus_pressure",
    "intensity_field",
    "load_config",
    "run_cli",
    "simulate",
    "time_to_threshold",
]


def load_config(source, overrides=()):
    """Config from a file path, a dict, or a JSON string, with optional a.b=value overrides."""
    if isinstance(source, dict):
        return Config(json.dumps(source), list(overrides))
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source) as f:
            return Config(f.read(), list(overrides))
    return Config(str(source), list(overrides))
