"""
Scenario files and delimited table export.

Scenario files are JSON with degrees and dB at the boundary::

    {
      "element_pattern": "omni",
      "main_user": 0,
      "users": [
        {"snr_db": 10.0, "paths": [{"aoa_deg": 45.0, "gain_re": 1.0, "gain_im": 0.0}]}
      ]
    }
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Mapping, Sequence

import numpy as np

from .exceptions import InvalidAngleError, ScenarioError
from .geometry import Geometry, angle_grid_deg
from .leakage import array_factor
from .scenario import ElementPattern, Path, User, UserScenario

DB_FLOOR = -120.0


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioError(f"{where}: must be finite")
    return value


def _deg_to_rad(x: float) -> float:
    return math.radians(x)


def _rad_to_deg(x: float) -> float:
    return _exact_inverse(x, math.degrees, _deg_to_rad)


def _db_to_linear(x: float) -> float:
    return 10.0 ** (x / 10.0)


def _linear_to_db(x: float) -> float:
    return _exact_inverse(x, lambda v: 10.0 * math.log10(v), _db_to_linear)


def _exact_inverse(x: float, forward: Callable, back: Callable, ulps: int = 8) -> float:
    # nearby float that converts back to exactly x, so dump/load round-trips
    y = forward(x)
    if back(y) == x:
        return y
    lo = hi = y
    for _ in range(ulps):
        lo, hi = math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)
        for c in (lo, hi):
            if back(c) == x:
                return c
    return y


def scenario_from_dict(data: Mapping[str, Any]) -> UserScenario:
    """Validate and convert a parsed scenario document."""
    if not isinstance(data, Mapping):
        raise ScenarioError("<root>: expected an object")
    unknown = set(data) - {"element_pattern", "users", "main_user"}
    if unknown:
        raise ScenarioError(f"{sorted(unknown)[0]}: unknown key")
    pattern_name = data.get("element_pattern", "omni")
    try:
        pattern = ElementPattern(pattern_name)
    except ValueError:
        choices = ", ".join(p.value for p in ElementPattern)
        raise ScenarioError(f"element_pattern: {pattern_name!r} is not one of {choices}") from None
    users_raw = data.get("users")
    if not isinstance(users_raw, list) or not users_raw:
        raise ScenarioError("users: expected a non-empty list")
    users = []
    for i, u in enumerate(users_raw):
        where = f"users[{i}]"
        if not isinstance(u, Mapping):
            raise ScenarioError(f"{where}: expected an object")
        if "snr_db" not in u:
            raise ScenarioError(f"{where}.snr_db: missing")
        snr_db = _number(u["snr_db"], f"{where}.snr_db")
        paths_raw = u.get("paths")
        if not isinstance(paths_raw, list) or not paths_raw:
            raise ScenarioError(f"{where}.paths: expected a non-empty list")
        paths = []
        for j, p in enumerate(paths_raw):
            pw = f"{where}.paths[{j}]"
            if not isinstance(p, Mapping):
                raise ScenarioError(f"{pw}: expected an object")
            if "aoa_deg" not in p:
                raise ScenarioError(f"{pw}.aoa_deg: missing")
            aoa = _number(p["aoa_deg"], f"{pw}.aoa_deg")
            gain = complex(
                _number(p.get("gain_re", 1.0), f"{pw}.gain_re"),
                _number(p.get("gain_im", 0.0), f"{pw}.gain_im"),
            )
            try:
                paths.append(Path(_deg_to_rad(aoa), gain))
            except InvalidAngleError:
                raise ScenarioError(f"{pw}.aoa_deg: {aoa} is outside [-90, 90]") from None
        users.append(User(tuple(paths), _db_to_linear(snr_db)))
    main = data.get("main_user", 0)
    if isinstance(main, bool) or not isinstance(main, int) or not 0 <= main < len(users):
        raise ScenarioError(f"main_user: {main!r} is not a valid user index")
    return UserScenario(tuple(users), main, pattern)


def scenario_to_dict(scenario: UserScenario) -> dict:
    return {
        "element_pattern": scenario.element_pattern.value,
        "main_user": scenario.main_user,
        "users": [
            {
                "snr_db": _linear_to_db(u.snr),
                "paths": [
                    {"aoa_deg": _rad_to_deg(p.aoa), "gain_re": p.gain.real, "gain_im": p.gain.imag}
                    for p in u.paths
                ],
            }
            for u in scenario.users
        ],
    }


def load_scenario(path: str) -> UserScenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"<root>: not valid JSON ({exc})") from None
    return scenario_from_dict(data)


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_scenario(scenario: UserScenario, path: str) -> None:
    atomic_write(path, json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


def scaffold_scenario(
    path: str,
    aoas_deg: Sequence[float] = (45.0, -30.0),
    snr_db: float = 10.0,
    element_pattern: str = "omni",
) -> UserScenario:
    """Write a starter scenario with one LOS user per angle and return it."""
    data = {
        "element_pattern": element_pattern,
        "main_user": 0,
        "users": [
            {"snr_db": float(snr_db), "paths": [{"aoa_deg": float(a), "gain_re": 1.0, "gain_im": 0.0}]}
            for a in aoas_deg
        ],
    }
    scenario = scenario_from_dict(data)
    atomic_write(path, json.dumps(data, indent=2) + "\n")
    return scenario


def _fmt(x: float) -> str:
    return repr(float(x))


def format_table(header: Sequence[str], rows: Iterable[Sequence[float]], delimiter: str = ",") -> str:
    lines = [delimiter.join(header)]
    for row in rows:
        lines.append(delimiter.join(str(v) if isinstance(v, (int, np.integer)) else _fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def to_db(magnitude) -> np.ndarray:
    """``20 log10(magnitude)`` floored at -120 dB."""
    mag = np.asarray(magnitude, dtype=float)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag)
    return np.maximum(db, DB_FLOOR)


@dataclass(frozen=True)
class PatternTable:
    theta_deg: np.ndarray
    af: np.ndarray

    @property
    def af_db(self) -> np.ndarray:
        return to_db(self.af)

    def rows(self):
        return zip(self.theta_deg, self.af, self.af_db)

    def to_text(self) -> str:
        return format_table(("theta_deg", "af", "af_db"), self.rows())


def pattern_table(geom: Geometry, theta1: float, resolution_deg: float = 0.1) -> PatternTable:
    """Array factor ``|leakage(theta1, theta)|`` over the front half-plane."""
    theta_deg = angle_grid_deg(resolution_deg)
    return PatternTable(theta_deg, array_factor(geom, theta1, np.radians(theta_deg)))


def read_table(path: str, delimiter: str = ",") -> tuple[List[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(delimiter)
    data = np.loadtxt(path, delimiter=delimiter, skiprows=1, ndmin=2)
    return header, data
