# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

import pathlib

import pytest

from PyPASS import utils
from PyPASS.errors import ConfigError


def test_prepareOutputDir(tmp_path: pathlib.Path) -> None:
    d = utils.prepareOutputDir(tmp_path / "a" / "b")
    assert (d.is_dir())
    assert (utils.prepareOutputDir(str(d)) == d)


def test_prepareOutputDirFile(tmp_path: pathlib.Path) -> None:
    f = tmp_path / "file.txt"
    f.write_text("x", encoding="utf-8")
    with pytest.raises(ConfigError):
        utils.prepareOutputDir(f)


def test_formatNumber() -> None:
    assert (utils.formatNumber(1.0) == "1")
    assert (utils.formatNumber(1.0 / 3.0) == "0.333333333")
    assert (utils.formatNumber(12.887412345678) == "12.8874123")
    assert (utils.formatNumber(1.5e-7) == "1.5e-07")


def test_sheetName() -> None:
    assert (utils.sheetName("h20-d10") == "h20-d10")
    assert (utils.sheetName("a/b:c") == "a_b_c")
    assert (utils.sheetName("x" * 40) == "x" * 31)
    assert (utils.sheetName("''") == "Blatt")


def test_parseSchedule() -> None:
    assert (utils.parseSchedule("10000,40000,160000") == [10000, 40000, 160000])
    assert (utils.parseSchedule(" 1e4, 4e4 ,") == [10000, 40000])
    with pytest.raises(ConfigError):
        utils.parseSchedule("a,b")
