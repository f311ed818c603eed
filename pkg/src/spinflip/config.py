"""Key-value run configuration: grammar, units, presets, and context resolution.

Grammar: flat ``key = value`` lines, ``#`` starts a comment, units are
suffixes on the value (``d = 50 um``, ``f = 560 kHz``). Accepted unit
suffixes: um, mm, m (length), kHz, MHz (frequency), K (temperature),
s (time). Unknown keys are rejected.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

from .asymptotics import RegimeInputs
from .layered_green import LayerStack
from .quantities import Material, material_preset
from .spin_flip import (LossModel, SpinTransition, free_space_lifetime,
                        spin_matrix_elements)


class ConfigError(Exception):
    """Base class for configuration problems."""


class ConfigParseError(ConfigError):
    """Malformed line; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConfigUnknownKeyError(ConfigError):
    def __init__(self, line: int, key: str):
        super().__init__(f"line {line}: unknown key {key!r}")
        self.line = line
        self.key = key


class ConfigUnitError(ConfigError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConfigMissingKeyError(ConfigError):
    def __init__(self, key: str, hint: str = ""):
        msg = f"missing required key {key!r}"
        super().__init__(msg + (f" ({hint})" if hint else ""))
        self.key = key


UNIT_FACTORS = {
    "um": 1e-6, "mm": 1e-3, "m": 1.0,      # -> meters
    "kHz": 1e3, "MHz": 1e6,                # -> hertz
    "K": 1.0,                              # -> kelvin
    "s": 1.0,                              # -> seconds
}
_UNIT_DIMENSION = {
    "um": "length", "mm": "length", "m": "length",
    "kHz": "frequency", "MHz": "frequency",
    "K": "temperature", "s": "time",
}


def to_si(value: float, unit: str) -> float:
    """Convert value with a unit suffix to SI."""
    if unit not in UNIT_FACTORS:
        raise ValueError(f"unknown unit {unit!r}")
    return value * UNIT_FACTORS[unit]


def from_si(value: float, unit: str) -> float:
    """Convert an SI value into the given unit; inverse of to_si."""
    if unit not in UNIT_FACTORS:
        raise ValueError(f"unknown unit {unit!r}")
    return value / UNIT_FACTORS[unit]


# key -> dimension; "plain" keys are bare numbers, "word" keys bare tokens
_KEYS = {
    "material": "word",
    "delta": "length",
    "d": "length",
    "f": "frequency",
    "T": "temperature",
    "h": "length",
    "eps_substrate": "plain",
    "loss_factor": "plain",
    "background_rate": "plain",        # [1/s]
    "background_lifetime": "time",
    "F": "plain",
    "mF_i": "plain",
    "mF_f": "plain",
    "I": "plain",
    "tol": "plain",
    "sweep_variable": "word",
    "sweep_min": "sweep",
    "sweep_max": "sweep",
    "sweep_points": "plain",
    "sweep_spacing": "word",
}

_SWEEP_DIMENSION = {
    "distance": "length",
    "skin_depth": "length",
    "thickness": "length",
    "temperature": "temperature",
    "frequency": "frequency",
}


@dataclass(frozen=True)
class GridSpec:
    """Sweep grid: [minimum, maximum] sampled at `points` linear or log steps."""

    variable: str
    minimum: float
    maximum: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.variable not in _SWEEP_DIMENSION:
            raise ConfigError(f"unknown sweep variable {self.variable!r}; "
                              f"valid: {', '.join(sorted(_SWEEP_DIMENSION))}")
        if not self.minimum < self.maximum:
            raise ConfigError("sweep_min must be smaller than sweep_max")
        if self.points < 2:
            raise ConfigError("sweep_points must be at least 2")
        if self.spacing not in ("linear", "log"):
            raise ConfigError("sweep_spacing must be 'linear' or 'log'")
        if self.spacing == "log" and self.minimum <= 0:
            raise ConfigError("log spacing requires sweep_min > 0")


@dataclass(frozen=True)
class RunContext:
    """Fully resolved SI run parameters."""

    material: Optional[Material]   # None only when the skin depth is swept
    d: Optional[float]             # [m]; None only when the distance is swept
    omega: float                   # [rad/s]
    T: float                       # [K]
    h: float                       # [m], inf for a thick slab
    eps_substrate: float
    loss: LossModel
    F: float = 2.0
    mF_i: float = 2.0
    mF_f: float = 1.0
    I: float = 1.5
    tol: float = 1e-8
    grid: Optional[GridSpec] = None

    def transition(self, omega: Optional[float] = None) -> SpinTransition:
        w = self.omega if omega is None else omega
        s_ip, s_n = spin_matrix_elements(self.F, self.mF_i, self.mF_f, self.I)
        label = f"({self.F:g},{self.mF_i:g})->({self.F:g},{self.mF_f:g})"
        return SpinTransition(omega=w, S_inplane=s_ip, S_normal=s_n, label=label)

    def stack(self, film: Optional[Material] = None,
              h: Optional[float] = None) -> LayerStack:
        film = self.material if film is None else film
        if film is None:
            raise ConfigError("no film material resolved; provide 'material' "
                              "or 'delta'")
        substrate = (Material.vacuum() if self.eps_substrate == 1.0
                     else Material.dielectric(self.eps_substrate))
        return LayerStack(film=film, h=self.h if h is None else h,
                          substrate=substrate)

    def regime_inputs(self, d: float, delta: float, h: float,
                      omega: Optional[float] = None,
                      tau0: Optional[float] = None) -> RegimeInputs:
        w = self.omega if omega is None else omega
        if tau0 is None:
            tau0 = free_space_lifetime(self.transition(w))
        return RegimeInputs(d=d, delta=delta, h=h, omega=w, T=self.T, tau0=tau0)


# Presets are raw key -> SI/token maps merged *under* the user's keys.
PRESETS = {
    # distance scan above a thin conducting film on a dielectric substrate
    "fig2": {
        "f": 400e3,
        "T": 400.0,
        "delta": 103e-6,
        "h": 2e-6,
        "eps_substrate": 11.7,
        "loss_factor": 5.0 / 3.0,
        "sweep_variable": "distance",
        "sweep_min": 2e-6,
        "sweep_max": 100e-6,
        "sweep_points": 41,
        "sweep_spacing": "log",
    },
    # skin-depth scan at fixed height; h is chosen by the variant (thick/thin)
    "fig3": {
        "f": 560e3,
        "T": 300.0,
        "d": 50e-6,
        "eps_substrate": 1.0,
        "loss_factor": 1.0,
        "sweep_variable": "skin_depth",
        "sweep_min": 0.1e-6,
        "sweep_max": 1000e-6,
        "sweep_points": 61,
        "sweep_spacing": "log",
    },
}


def _parse_value(key: str, token: str, line: int):
    kind = _KEYS[key]
    if kind == "word":
        parts = token.split()
        if len(parts) != 1:
            raise ConfigParseError(line, f"key {key!r} takes a single token")
        return parts[0]
    parts = token.split()
    if len(parts) not in (1, 2):
        raise ConfigParseError(line, f"cannot parse value {token!r}")
    if key == "h" and parts[0] in ("inf", "infinite"):
        return math.inf
    try:
        number = float(parts[0])
    except ValueError:
        raise ConfigParseError(line, f"not a number: {parts[0]!r}") from None
    if len(parts) == 1:
        if kind in ("plain", "sweep"):
            return number
        raise ConfigUnitError(line, f"key {key!r} requires a unit suffix "
                                    f"({kind})")
    unit = parts[1]
    if unit not in UNIT_FACTORS:
        raise ConfigUnitError(line, f"unknown unit {unit!r}")
    if kind == "plain":
        raise ConfigUnitError(line, f"key {key!r} is dimensionless; got unit "
                                    f"{unit!r}")
    if kind != "sweep" and _UNIT_DIMENSION[unit] != kind:
        raise ConfigUnitError(line, f"key {key!r} expects a {kind} unit, got "
                                    f"{unit!r}")
    value = to_si(number, unit)
    if kind == "sweep":
        return (value, _UNIT_DIMENSION[unit])
    return value


def parse_config_text(text: str) -> dict:
    """First stage: grammar, units, and key validation. Returns raw key map."""
    raw = {}
    for lineno, full_line in enumerate(text.splitlines(), start=1):
        line = full_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(lineno, f"expected 'key = value', got "
                                           f"{line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigUnknownKeyError(lineno, key)
        if not value:
            raise ConfigParseError(lineno, f"empty value for key {key!r}")
        raw[key] = _parse_value(key, value, lineno)
    return raw


def _require(raw: dict, key: str, hint: str = ""):
    if key not in raw:
        raise ConfigMissingKeyError(key, hint)
    return raw[key]


def _sweep_value(raw, key, variable):
    value = raw[key]
    if isinstance(value, tuple):
        value, dim = value
        expected = _SWEEP_DIMENSION[variable]
        if dim != expected:
            raise ConfigError(f"{key} carries a {dim} unit but sweeping "
                              f"{variable} needs {expected}")
    return value


def parse_config(text: str, preset: Optional[str] = None,
                 require_background: bool = False) -> RunContext:
    """Parse a configuration document into a validated RunContext.

    `preset` supplies defaults that user keys override. With
    require_background=True, a background loss channel must be configured.
    """
    raw = dict(PRESETS[preset]) if preset else {}
    raw.update(parse_config_text(text))

    f = _require(raw, "f")
    if f <= 0:
        raise ConfigError("frequency must be positive")
    omega = 2.0 * math.pi * f
    T = _require(raw, "T")
    if T < 0:
        raise ConfigError("temperature must be non-negative")

    grid = None
    if "sweep_variable" in raw:
        variable = raw["sweep_variable"]
        if variable not in _SWEEP_DIMENSION:
            raise ConfigError(f"unknown sweep variable {variable!r}")
        _require(raw, "sweep_min")
        _require(raw, "sweep_max")
        grid = GridSpec(
            variable=variable,
            minimum=_sweep_value(raw, "sweep_min", variable),
            maximum=_sweep_value(raw, "sweep_max", variable),
            points=int(_require(raw, "sweep_points")),
            spacing=raw.get("sweep_spacing", "log"),
        )

    sweeping = grid.variable if grid else None

    if "material" in raw and "delta" in raw:
        raise ConfigError("give either 'material' or 'delta', not both")
    if "material" in raw:
        material = material_preset(raw["material"], T)
    elif "delta" in raw:
        material = Material.skin_depth_defined(raw["delta"], omega)
    elif sweeping == "skin_depth":
        material = None
    else:
        raise ConfigMissingKeyError("material",
                                    "or give the film skin depth via 'delta'")

    if "d" in raw:
        d = raw["d"]
        if d <= 0:
            raise ConfigError("d must be positive")
    elif sweeping == "distance":
        d = None
    else:
        raise ConfigMissingKeyError("d")

    if "background_rate" in raw and "background_lifetime" in raw:
        raise ConfigError("give either 'background_rate' or "
                          "'background_lifetime', not both")
    if "background_rate" in raw:
        background = raw["background_rate"]
    elif "background_lifetime" in raw:
        if raw["background_lifetime"] <= 0:
            raise ConfigError("background_lifetime must be positive")
        background = 1.0 / raw["background_lifetime"]
    elif require_background:
        raise ConfigMissingKeyError(
            "background_rate", "this preset needs a configured background "
            "loss; give background_rate [1/s] or background_lifetime")
    else:
        background = 0.0

    return RunContext(
        material=material,
        d=d,
        omega=omega,
        T=T,
        h=raw.get("h", math.inf),
        eps_substrate=raw.get("eps_substrate", 1.0),
        loss=LossModel(flip_to_loss_factor=raw.get("loss_factor", 5.0 / 3.0),
                       background_rate=background),
        F=raw.get("F", 2.0),
        mF_i=raw.get("mF_i", 2.0),
        mF_f=raw.get("mF_f", 1.0),
        I=raw.get("I", 1.5),
        tol=raw.get("tol", 1e-8),
        grid=grid,
    )


def with_overrides(ctx: RunContext, **changes) -> RunContext:
    """Return a copy of the context with fields replaced."""
    return replace(ctx, **changes)
