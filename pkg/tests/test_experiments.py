# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

import io
import pathlib

import pandas as pd    # type: ignore
import pytest

from PyPASS import analytic_rates, config, experiments
from PyPASS.errors import ConfigError, ContractError
from PyPASS.montecarlo import ScenarioConfig
from PyPASS.system_model import RoomGeometry, makeParams

ROOM = RoomGeometry(10.0, 20.0)


def test_analyticRate() -> None:
    params = makeParams(2.4e9, 1e6, 30.0, 2)
    spsu = ScenarioConfig("spsu", ROOM, params)
    assert (experiments.analyticRate(spsu, "analytic") == analytic_rates.rateSpsu(params, ROOM))
    assert (experiments.analyticRate(spsu, "maclaurin").method == "maclaurin")

    mpsu = ScenarioConfig("mpsu", ROOM, params, nPas=10)
    assert (experiments.analyticRate(mpsu, "high_snr") == analytic_rates.rateHighSnr(params, ROOM, 20.0))

    spmu = ScenarioConfig("spmu", ROOM, params)
    assert (experiments.analyticRate(spmu, "analytic").method == "quadrature")
    assert (experiments.analyticRate(spmu, "approx_arctan").method == "approx_arctan")
    assert (experiments.analyticRate(ScenarioConfig("siso", ROOM, params), "analytic").method == "quadrature")


def test_analyticRateErrors() -> None:
    params = makeParams(2.4e9, 1e6, 30.0, 2)
    with pytest.raises(ContractError):
        experiments.analyticRate(ScenarioConfig("spmu", ROOM, params, pa="optimized"), "analytic")
    with pytest.raises(ContractError):
        experiments.analyticRate(ScenarioConfig("mpsu", ROOM, params, nPas=3), "quadrature")
    with pytest.raises(ContractError):
        experiments.analyticRate(ScenarioConfig("mpsu", ROOM, params, nPas=3, noiseModel="single"), "theorem")
    with pytest.raises(ContractError):
        experiments.checkMethod(ScenarioConfig("siso", ROOM, params), "theorem")
    experiments.checkMethod(ScenarioConfig("spmu", ROOM, params, pa="optimized"), "montecarlo")


def test_runCurveRate() -> None:
    spec = config.figureFromConfig("""
scenario: {kind: mpsu, nPas: 4}
sweep: {powerDbm: [0.0, 20.0], methods: [theorem, montecarlo], samples: 500, seed: 3}
""")
    df = experiments.runCurve(spec.curves[0])
    assert (list(df.columns) == experiments.CSV_COLUMNS)
    assert (df["method"].tolist() == ["theorem", "theorem", "montecarlo", "montecarlo"])
    assert (df["x"].tolist() == [0.0, 20.0, 0.0, 20.0])
    assert (set(df["scenario"]) == {"mpsu-n4"})
    assert (df["n_samples"].tolist() == [0, 0, 500, 500])
    assert (df["ci_half_width"][0] == 0.0 and df["ci_half_width"][2] > 0.0)
    assert (set(df["seed"]) == {3})
    assert (df["value"][1] > df["value"][0])

    parallel = experiments.runCurve(spec.curves[0], workers=3)
    assert (df.equals(parallel))


def test_runCurveSumRate() -> None:
    spec = config.figureFromConfig("""
room: {extent: 10.0, height: 3.0}
scenario: {kind: siso}
sweep: {powerDbm: [30.0], methods: [quadrature], quantity: sumRate}
""")
    df = experiments.runCurve(spec.curves[0])
    params = makeParams(2.4e9, 1e6, 30.0, 2)
    expected = 2 * analytic_rates.rateSisoQuadrature(params, RoomGeometry(10.0, 3.0)).value
    assert (df["value"][0] == pytest.approx(expected, rel=1e-12))


def test_runCurveDifference() -> None:
    spec = config.figureFromConfig("""
scenario: {kind: spsu}
minus: {kind: spmu, pa: center}
sweep: {powerDbm: [30.0], methods: [analytic, montecarlo], samples: 20000}
""")
    df = experiments.runCurve(spec.curves[0])
    params = makeParams(2.4e9, 1e6, 30.0, 2)
    expected = analytic_rates.rateSpsu(params, ROOM).value - analytic_rates.rateSpmuQuadrature(params, ROOM).value
    assert (set(df["scenario"]) == {"spsu-minus-spmu-center"})
    assert (df["value"][0] == pytest.approx(expected, rel=1e-12))
    assert (abs(df["value"][1] - expected) < 3 * df["ci_half_width"][1])


def test_runCurveMethodErrors() -> None:
    spec = config.figureFromConfig("""
scenario: {kind: spsu}
minus: {kind: spmu}
sweep: {methods: [theorem]}
""")
    with pytest.raises(ConfigError):
        experiments.runCurve(spec.curves[0])

    spec = config.figureFromConfig("scenario: {kind: siso}\nsweep: {methods: [theorem]}")
    with pytest.raises(ContractError):
        experiments.runCurve(spec.curves[0])


def test_runCurveDropsMaclaurin(caplog: pytest.LogCaptureFixture) -> None:
    spec = config.figureFromConfig("""
room: {extent: 2.0, height: 2.0}
sweep: {powerDbm: [10.0], methods: [theorem, maclaurin]}
""")
    with caplog.at_level("WARNING", logger="PyPASS"):
        df = experiments.runCurve(spec.curves[0])
    assert (df["method"].tolist() == ["theorem"])
    assert ("maclaurin" in caplog.text)


def test_runCurveSpacing() -> None:
    spec = config.figureFromConfigDict(config.loadPreset("fig3"))
    curves = {c.name: experiments.runCurve(c) for c in spec.curves}
    for df in curves.values():
        assert (len(df) == 20)
        assert (df["x"].tolist() == list(range(-10, 10)))
    lam = spec.curves[0].scenario.params.wavelength
    assert (curves["grid"]["value"].tolist() == pytest.approx([lam] * 20, rel=1e-12))
    assert (curves["nz"]["value"][0] > curves["fz"]["value"][0] > lam)
    assert (set(curves["grid"]["method"]) == {"fz"})


def test_writeCsv(tmp_path: pathlib.Path) -> None:
    df = pd.DataFrame([experiments._row(1.0, 1.0 / 3.0, "theorem", "spsu", 0.0, 0, 0)], columns=experiments.CSV_COLUMNS)
    buf = io.StringIO()
    experiments.writeCsv(df, buf)
    assert (buf.getvalue() == "x,value,method,scenario,ci_half_width,n_samples,seed\n1,0.333333333,theorem,spsu,0,0,0\n")

    path = tmp_path / "out.csv"
    experiments.writeCsv(df, path)
    assert (path.read_text(encoding="utf-8") == buf.getvalue())


def test_runFigure(tmp_path: pathlib.Path) -> None:
    paths = experiments.runFigure("fig4", ["sweep.samples=300", "sweep.powerDbm=[0, 30]"], outDir=tmp_path / "a")
    assert ([p.name for p in paths] == ["fig4_n4.csv", "fig4_n10.csv", "fig4_n20.csv"])
    df = pd.read_csv(paths[1])
    assert (len(df) == 6)
    assert (set(df["method"]) == {"theorem", "high_snr", "montecarlo"})

    again = experiments.runFigure("fig4", ["sweep.samples=300", "sweep.powerDbm=[0, 30]"], outDir=tmp_path / "b", workers=4)
    for (p, q) in zip(paths, again):
        assert (p.read_bytes() == q.read_bytes())
