# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

import pathlib
import zipfile

import pandas as pd    # type: ignore

from PyPASS.pandas import exportToExcel


def test_exportToExcel(tmp_path: pathlib.Path) -> None:
    a = pd.DataFrame({"x": [0.0, 10.0], "value": [1.5, 2.5], "method": ["theorem", "theorem"]})
    b = pd.DataFrame({"x": [0.0], "value": [3.0], "method": ["montecarlo"]})
    empty = pd.DataFrame({"x": [], "value": []})
    f = tmp_path / "out.xlsx"
    exportToExcel(f, [(a, "kurve-a"), (b, "kurve-b"), (empty, "leer")])

    with zipfile.ZipFile(f) as z:
        workbook = z.read("xl/workbook.xml").decode("utf-8")
        names = z.namelist()
        sheet = z.read("xl/worksheets/sheet1.xml").decode("utf-8")
    assert ('name="kurve-a"' in workbook and 'name="kurve-b"' in workbook and 'name="leer"' in workbook)
    assert ("xl/tables/table1.xml" in names and "xl/tables/table2.xml" in names)
    assert ("xl/tables/table3.xml" not in names)
    assert ("<v>2.5</v>" in sheet)


def test_exportToExcelWithoutTable(tmp_path: pathlib.Path) -> None:
    f = tmp_path / "out.xlsx"
    exportToExcel(f, [(pd.DataFrame({"value": [1.0]}), "a")], addTable=False)
    with zipfile.ZipFile(f) as z:
        assert (not any(n.startswith("xl/tables/") for n in z.namelist()))
