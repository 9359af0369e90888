# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Export von Ergebnistabellen nach Excel mittels Pandas und XlsxWriter."""

import pandas as pd    # type: ignore
from pandas._typing import FilePath, WriteExcelBuffer    # type: ignore
from typing import Sequence, Tuple, Union

NUMBER_FORMAT = "0.000000000"


def exportToExcel(
        filename: Union[FilePath, WriteExcelBuffer, pd.ExcelWriter],
        dfs: Sequence[Tuple[pd.DataFrame, str]],
        addTable: bool = True) -> None:
    """
    Schreibt Ergebnistabellen in eine Excel-Datei, ein Blatt pro Tabelle.
    Die Spalte ``value`` bekommt ein Zahlenformat mit 9 Nachkommastellen.

    :param filename: Name der Excel-Datei
    :param dfs: Liste von Tupeln aus DataFrames und Namen von Blättern
    :param addTable: als Excel-Tabelle formatieren
    """
    with pd.ExcelWriter(filename, engine='xlsxwriter') as writer:
        numberFormat = writer.book.add_format({'num_format': NUMBER_FORMAT})
        for (df, name) in dfs:
            df.to_excel(writer, sheet_name=name, index=False, header=True)
            ws = writer.sheets[name]

            (max_row, max_col) = df.shape
            if addTable and max_row > 0 and max_col > 0:
                ws.add_table(0, 0, max_row, max_col - 1, {'columns': [{'header': str(c)} for c in df.columns]})

            if "value" in df.columns:
                col = list(df.columns).index("value")
                ws.set_column(col, col, None, numberFormat)

            ws.autofit()
