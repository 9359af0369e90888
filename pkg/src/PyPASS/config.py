# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""
YAML-Konfiguration von Experimenten.

Eine Konfiguration hat die Abschnitte ``system``, ``room``, ``scenario``, ``sweep``,
``spacing`` und ``minus`` sowie eine optionale Liste ``curves``. Jede Kurve überschreibt
einzelne Werte der Abschnitte. Overrides der Form ``abschnitt.schlüssel=wert`` werden
in die Basis und in jede Kurve geschrieben, haben also Vorrang.

Beispiel::

    figure: fig8
    system:
      txPowerDbm: 30.0
    room:
      height: 20.0
    scenario:
      kind: spmu
    sweep:
      methods: [quadrature, approx, montecarlo]
    curves:
    - name: d5
      room: {extent: 5.0}
    - name: d10
      room: {extent: 10.0}
"""

import copy
import importlib.resources
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Sequence, Tuple

import yaml

from .errors import ConfigError, ContractError, DomainError
from .montecarlo import ScenarioConfig
from .system_model import RoomGeometry, makeParams

if TYPE_CHECKING:
    from _typeshed import FileDescriptorOrPath

logger = logging.getLogger(__name__)

CURVE_TYPES = ("rate", "spacing")
QUANTITIES = ("rate", "sumRate")
SPACING_SCHEMES = ("lemma1", "fz")

DEFAULT_POWER_GRID = [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0]
DEFAULT_SAMPLES = 1000000


def _toFloat(v: Any) -> float:
    if isinstance(v, bool):
        raise ValueError("bool ist keine Zahl")
    res = float(v)
    if not math.isfinite(res):
        raise ValueError("keine endliche Zahl")
    return res


def _toInt(v: Any) -> int:
    if isinstance(v, bool):
        raise ValueError("bool ist keine Zahl")
    if isinstance(v, int):
        return v
    f = float(v)
    if not f.is_integer():
        raise ValueError("keine ganze Zahl")
    return int(f)


def _toStr(v: Any) -> str:
    if not isinstance(v, str):
        raise ValueError("kein Text")
    return v


def _toFloatList(v: Any) -> List[float]:
    if not isinstance(v, (list, tuple)):
        v = [v]
    return [_toFloat(x) for x in v]


def _toStrList(v: Any) -> List[str]:
    if not isinstance(v, (list, tuple)):
        v = [v]
    return [_toStr(x) for x in v]


_SCHEMA: Dict[str, Dict[str, Callable[[Any], Any]]] = {
    "system": {
        "carrierFrequency": _toFloat,
        "bandwidth": _toFloat,
        "numUsers": _toInt,
        "txPowerDbm": _toFloat,
        "noiseModel": _toStr,
    },
    "room": {
        "extent": _toFloat,
        "height": _toFloat,
    },
    "scenario": {
        "kind": _toStr,
        "nPas": _toInt,
        "placement": _toStr,
        "pa": _toStr,
    },
    "minus": {
        "kind": _toStr,
        "nPas": _toInt,
        "placement": _toStr,
        "pa": _toStr,
    },
    "sweep": {
        "powerDbm": _toFloatList,
        "methods": _toStrList,
        "samples": _toInt,
        "seed": _toInt,
        "quantity": _toStr,
    },
    "spacing": {
        "d0": _toFloat,
        "scheme": _toStr,
    },
}
"""erlaubte Schlüssel je Abschnitt mit ihrer Umwandlung"""

_TOP_LEVEL_KEYS = {"figure", "type", "description", "curves"} | set(_SCHEMA.keys())

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "system": {
        "carrierFrequency": 2.4e9,
        "bandwidth": 1.0e6,
        "numUsers": 2,
        "txPowerDbm": 30.0,
        "noiseModel": "per-pa",
    },
    "room": {
        "extent": 10.0,
        "height": 20.0,
    },
    "scenario": {
        "kind": "spsu",
        "nPas": 0,
        "placement": "lemma1",
        "pa": "center",
    },
    "sweep": {
        "powerDbm": DEFAULT_POWER_GRID,
        "methods": ["analytic"],
        "samples": DEFAULT_SAMPLES,
        "seed": 0,
        "quantity": "rate",
    },
    "spacing": {
        "d0": 20.0,
        "scheme": "lemma1",
    },
}
"""Standardwerte, f_c = 2.4 GHz, BW = 1 MHz und I = 2"""


@dataclass(frozen=True)
class SweepSpec:
    """Sweep über die Sendeleistung"""

    powerDbm: Tuple[float, ...]
    """Sendeleistungen in dBm"""

    methods: Tuple[str, ...]
    samples: int
    """Anzahl Ziehungen für ``montecarlo``"""

    seed: int
    quantity: str = "rate"
    """``rate`` (pro Nutzer) oder ``sumRate``"""

    def __post_init__(self) -> None:
        if len(self.powerDbm) == 0:
            raise ConfigError("die Liste der Sendeleistungen ist leer")
        if len(self.methods) == 0:
            raise ConfigError("keine Methode angegeben")
        if self.samples < 1:
            raise ConfigError("samples={} muss positiv sein".format(self.samples))
        if self.quantity not in QUANTITIES:
            raise ConfigError("unbekannte Größe '{}'".format(self.quantity))


@dataclass(frozen=True)
class CurveSpec:
    """Eine Kurve, die als eigene CSV-Datei geschrieben wird"""

    name: str
    type: str
    scenario: ScenarioConfig
    sweep: SweepSpec
    minus: Optional[ScenarioConfig] = None
    """wenn gesetzt, wird die Differenz scenario - minus berechnet"""

    spacingD0: float = 0.0
    spacingScheme: str = "lemma1"


@dataclass(frozen=True)
class FigureSpec:
    name: str
    description: str
    curves: Tuple[CurveSpec, ...]


def _checkSections(d: Dict[str, Any], where: str) -> None:
    for (section, values) in d.items():
        if section not in _SCHEMA:
            raise ConfigError("unbekannter Abschnitt '{}' in {}".format(section, where))
        if not isinstance(values, dict):
            raise ConfigError("Abschnitt '{}' in {} muss ein Dictionary sein".format(section, where))
        for key in values:
            if key not in _SCHEMA[section]:
                raise ConfigError("unbekannter Schlüssel '{}.{}' in {}".format(section, key, where))


def _section(merged: Dict[str, Dict[str, Any]], section: str) -> Dict[str, Any]:
    res = {}
    for (key, value) in merged.get(section, {}).items():
        try:
            res[key] = _SCHEMA[section][key](value)
        except (TypeError, ValueError) as e:
            raise ConfigError("ungültiger Wert '{}' für {}.{}: {}".format(value, section, key, e))
    return res


def _mergeSections(*layers: Dict[str, Any]) -> Dict[str, Dict[str, Any]]:
    merged: Dict[str, Dict[str, Any]] = {}
    for layer in layers:
        for section in _SCHEMA:
            if section in layer:
                merged.setdefault(section, {}).update(layer[section])
    return merged


def _scenarioFrom(merged: Dict[str, Dict[str, Any]], scenarioSection: Dict[str, Any]) -> ScenarioConfig:
    system = _section(merged, "system")
    room = _section(merged, "room")
    params = makeParams(system["carrierFrequency"], system["bandwidth"], system["txPowerDbm"], system["numUsers"])
    return ScenarioConfig(
        kind=scenarioSection["kind"],
        room=RoomGeometry(room["extent"], room["height"]),
        params=params,
        nPas=scenarioSection["nPas"],
        placement=scenarioSection["placement"],
        pa=scenarioSection["pa"],
        noiseModel=system["noiseModel"])


def _curveFromDict(base: Dict[str, Any], curve: Dict[str, Any], defaultName: str, curveType: str) -> CurveSpec:
    name = str(curve.get("name", defaultName))
    curveType = str(curve.get("type", curveType))
    if curveType not in CURVE_TYPES:
        raise ConfigError("unbekannter Kurventyp '{}' in Kurve '{}'".format(curveType, name))
    sections = {k: v for (k, v) in curve.items() if k not in ("name", "type")}
    _checkSections(sections, "Kurve '{}'".format(name))

    merged = _mergeSections(DEFAULTS, base, sections)
    scenarioSection = _section(merged, "scenario")
    try:
        scenario = _scenarioFrom(merged, scenarioSection)
    except (ContractError, DomainError) as e:
        raise ConfigError("Kurve '{}': {}".format(name, e))
    s = _section(merged, "sweep")
    sweep = SweepSpec(
        powerDbm=tuple(s["powerDbm"]),
        methods=tuple(s["methods"]),
        samples=s["samples"],
        seed=s["seed"],
        quantity=s["quantity"])

    minus = None
    if "minus" in merged:
        minusSection = dict(scenarioSection, **_section(merged, "minus"))
        try:
            minus = _scenarioFrom(merged, minusSection)
        except (ContractError, DomainError) as e:
            raise ConfigError("Kurve '{}', Abschnitt minus: {}".format(name, e))

    spacing = _section(merged, "spacing")
    if spacing["scheme"] not in SPACING_SCHEMES:
        raise ConfigError("unbekanntes Platzierungsschema '{}'".format(spacing["scheme"]))
    return CurveSpec(
        name=name,
        type=curveType,
        scenario=scenario,
        sweep=sweep,
        minus=minus,
        spacingD0=spacing["d0"],
        spacingScheme=spacing["scheme"])


def figureFromConfigDict(yamlDict: Dict[str, Any]) -> FigureSpec:
    """Erzeugt die Beschreibung eines Experiments aus einem Dictionary.

    :param yamlDict: die Konfiguration, z.B. aus einer YAML-Datei
    :type yamlDict: Dict[str, Any]
    :return: das Experiment
    :rtype: FigureSpec
    """
    if not isinstance(yamlDict, dict):
        raise ConfigError("die Konfiguration muss ein Dictionary sein")
    for key in yamlDict:
        if key not in _TOP_LEVEL_KEYS:
            raise ConfigError("unbekannter Schlüssel '{}'".format(key))

    name = str(yamlDict.get("figure", "custom"))
    base = {k: v for (k, v) in yamlDict.items() if k in _SCHEMA}
    _checkSections(base, "der Basis")
    curveType = str(yamlDict.get("type", "rate"))

    curveDicts = yamlDict.get("curves") or [{"name": "default"}]
    if not isinstance(curveDicts, list):
        raise ConfigError("'curves' muss eine Liste sein")
    curves = []
    for (i, c) in enumerate(curveDicts):
        if not isinstance(c, dict):
            raise ConfigError("Kurve {} muss ein Dictionary sein".format(i))
        curves.append(_curveFromDict(base, c, "curve{}".format(i), curveType))

    names = [c.name for c in curves]
    if len(set(names)) != len(names):
        raise ConfigError("Kurvennamen sind nicht eindeutig: {}".format(names))
    return FigureSpec(name=name, description=str(yamlDict.get("description", "")), curves=tuple(curves))


def loadConfigFile(yamlfile: 'FileDescriptorOrPath') -> Dict[str, Any]:
    """Liest eine YAML-Konfiguration als Dictionary"""
    try:
        with open(yamlfile, "r", encoding="utf-8") as stream:
            yamlDict = yaml.safe_load(stream)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError("Konfiguration '{}' nicht lesbar: {}".format(yamlfile, e))
    if not isinstance(yamlDict, dict):
        raise ConfigError("Konfiguration '{}' enthält kein Dictionary".format(yamlfile))
    return yamlDict


def figureFromConfigFile(yamlfile: 'FileDescriptorOrPath') -> FigureSpec:
    """Liest ein Experiment aus einer YAML-Datei"""
    return figureFromConfigDict(loadConfigFile(yamlfile))


def figureFromConfig(yamlString: str) -> FigureSpec:
    """Liest ein Experiment aus einem YAML-String"""
    try:
        yamlDict = yaml.safe_load(yamlString)
    except yaml.YAMLError as e:
        raise ConfigError("Konfiguration nicht lesbar: {}".format(e))
    return figureFromConfigDict(yamlDict)


def presetNames() -> List[str]:
    """Namen der mitgelieferten Presets, z.B. ``fig4``"""
    files = importlib.resources.files("PyPASS").joinpath("presets")
    return sorted(f.name[:-len(".yaml")] for f in files.iterdir() if f.name.endswith(".yaml"))


def loadPreset(name: str) -> Dict[str, Any]:
    """Lädt ein mitgeliefertes Preset als Dictionary"""
    if name not in presetNames():
        raise ConfigError("unbekanntes Preset '{}', bekannt sind {}".format(name, ", ".join(presetNames())))
    text = importlib.resources.files("PyPASS").joinpath("presets", name + ".yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


def applyOverrides(yamlDict: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """
    Wendet Overrides ``abschnitt.schlüssel=wert`` an. Der Wert wird als YAML gelesen.
    Er wird in die Basis und in alle Kurven geschrieben, die den Schlüssel selbst setzen.
    Das Original wird nicht verändert.

    :param yamlDict: die Konfiguration
    :type yamlDict: Dict[str, Any]
    :param overrides: die Overrides
    :type overrides: Sequence[str]
    :return: die neue Konfiguration
    :rtype: Dict[str, Any]
    """
    res = copy.deepcopy(yamlDict)
    for o in overrides:
        (path, sep, text) = o.partition("=")
        (section, dot, key) = path.strip().partition(".")
        if not sep or not dot or not key:
            raise ConfigError("Override '{}' hat nicht die Form abschnitt.schlüssel=wert".format(o))
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError("unbekannter Schlüssel '{}.{}' im Override".format(section, key))
        try:
            value = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError("Wert im Override '{}' nicht lesbar: {}".format(o, e))

        base = res.get(section)
        if not isinstance(base, dict):
            base = {}
            res[section] = base
        base[key] = value
        for c in res.get("curves") or []:
            if isinstance(c, dict) and isinstance(c.get(section), dict) and key in c[section]:
                c[section][key] = value
        logger.debug("Override {}.{} = {!r}".format(section, key, value))
    return res


def dumpConfig(yamlDict: Dict[str, Any]) -> str:
    """Schreibt eine Konfiguration als YAML. Eingelesen ergibt sie wieder dasselbe Dictionary."""
    return yaml.safe_dump(yamlDict, sort_keys=False, allow_unicode=True, default_flow_style=None)
