# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

import pathlib
import re
from typing import List, Union

from .errors import ConfigError

_SHEET_NAME_FORBIDDEN = re.compile(r"[\[\]:*?/\\]")


def prepareOutputDir(dir: Union[str, pathlib.Path]) -> pathlib.Path:
    """Prüft, ob ein Ausgabeverzeichnis existiert, und legt es sonst an.
    Ist dies nicht möglich, wird eine Exception geworfen.

    :param dir: das Verzeichnis
    :type dir: Union[str, pathlib.Path]
    :return: den normalisierten Pfad
    :rtype: pathlib.Path
    """

    if not (isinstance(dir, pathlib.Path)):
        dir = pathlib.Path(str(dir))

    dir = dir.resolve()
    if dir.exists() and not dir.is_dir():
        raise ConfigError("'" + str(dir) + "' ist kein Verzeichnis")
    try:
        dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError("Verzeichnis '" + str(dir) + "' kann nicht angelegt werden: " + str(e))
    return dir


def formatNumber(v: float) -> str:
    """Formatiert eine Zahl mit 9 signifikanten Stellen, wie in den CSV-Dateien"""
    return "%.9g" % v


def sheetName(name: str) -> str:
    """Macht aus einem Kurvennamen einen gültigen Namen für ein Excel-Blatt"""
    res = _SHEET_NAME_FORBIDDEN.sub("_", name).strip("'")
    return (res or "Blatt")[:31]


def parseSchedule(s: str) -> List[int]:
    """Liest eine kommagetrennte Liste von Stichprobengrößen, z.B. ``10000,40000,160000``"""
    try:
        return [int(float(p)) for p in s.split(",") if p.strip()]
    except ValueError:
        raise ConfigError("ungültiger Plan '{}'".format(s))
