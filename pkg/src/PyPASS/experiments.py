# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""
Ausführen von Experimenten: Sweeps über die Sendeleistung und Abstände von PAs.
Jede Kurve wird als CSV mit den Spalten ``x,value,method,scenario,ci_half_width,n_samples,seed``
geschrieben. Zahlen werden mit 9 signifikanten Stellen formatiert.
"""

import dataclasses
import logging
import pathlib
from multiprocessing.pool import ThreadPool
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, Union

import pandas as pd    # type: ignore

from . import analytic_rates
from . import config
from . import montecarlo
from .errors import ConfigError, ContractError
from .placement import coherentPositions, farZonePositions, spacingProfile
from .system_model import RandomSource, withTxPowerDbm
from .utils import prepareOutputDir, sheetName

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["x", "value", "method", "scenario", "ci_half_width", "n_samples", "seed"]
CSV_FLOAT_FORMAT = "%.9g"


def analyticRate(cfg: montecarlo.ScenarioConfig, method: str) -> analytic_rates.RateValue:
    """
    Berechnet die Rate pro Nutzer eines Szenarios mit einer analytischen Methode.
    ``analytic`` steht für die exakte Methode des Szenarios (``theorem`` bzw. ``quadrature``).

    :param cfg: das Szenario
    :type cfg: ScenarioConfig
    :param method: die Methode
    :type method: str
    :rtype: RateValue
    """
    available = analytic_rates.analyticMethods(cfg.kind, cfg.pa)
    if method == "analytic" and available:
        method = available[0]
    if method not in available:
        raise ContractError("Methode '{}' passt nicht zum Szenario '{}'".format(method, cfg.tag))

    (params, room) = (cfg.params, cfg.room)
    if cfg.kind == "mpsu":
        if cfg.noiseModel != "per-pa":
            raise ContractError("analytische MPSU-Raten gibt es nur für das Rauschmodell per-pa")
        if method == "theorem":
            return analytic_rates.rateMpsu(params, room, cfg.nPas)
        return analytic_rates.rateHighSnr(params, room, analytic_rates.mpsuGainFactor(cfg.nPas))
    elif cfg.kind == "spsu":
        if method == "theorem":
            return analytic_rates.rateSpsu(params, room)
        elif method == "high_snr":
            return analytic_rates.rateHighSnr(params, room, 1.0)
        return analytic_rates.rateSpsuMaclaurin(params, room)
    elif cfg.kind == "spmu":
        if method == "quadrature":
            return analytic_rates.rateSpmuQuadrature(params, room)
        elif method == "approx":
            return analytic_rates.rateSpmuApprox(params, room)
        return analytic_rates.rateSpmuApprox(params, room, variant="arctan")
    return analytic_rates.rateSisoQuadrature(params, room)


def checkMethod(cfg: montecarlo.ScenarioConfig, method: str) -> None:
    """Prüft, ob eine Methode zu einem Szenario passt, und wirft sonst einen :class:`ContractError`"""
    if method == "montecarlo":
        return
    available = analytic_rates.analyticMethods(cfg.kind, cfg.pa)
    if not (method in available or (method == "analytic" and available)):
        raise ContractError("Methode '{}' passt nicht zum Szenario '{}'".format(method, cfg.tag))


def _curveMethods(curve: config.CurveSpec) -> List[str]:
    methods = []
    room = curve.scenario.room
    for m in curve.sweep.methods:
        if m == "maclaurin" and not room.height > room.extent:
            logger.warning("Kurve '{}': Methode maclaurin entfällt, da h={} > D={} verletzt ist".format(
                curve.name, room.height, room.extent))
            continue
        if curve.minus is not None:
            if m not in ("analytic", "montecarlo"):
                raise ConfigError("Differenzkurve '{}' erlaubt nur analytic und montecarlo, nicht '{}'".format(curve.name, m))
            checkMethod(curve.minus, m)
        checkMethod(curve.scenario, m)
        methods.append(m)
    return methods


def _row(x: float, value: float, method: str, scenario: str, ci: float, n: int, seed: int) -> Dict[str, Any]:
    return {"x": float(x), "value": float(value), "method": method, "scenario": scenario,
            "ci_half_width": float(ci), "n_samples": int(n), "seed": int(seed)}


def _evaluatePoint(curve: config.CurveSpec, pointIndex: int, powerDbm: float, method: str, workers: int) -> Dict[str, Any]:
    sweep = curve.sweep
    sumRate = (sweep.quantity == "sumRate")
    cfg = dataclasses.replace(curve.scenario, params=withTxPowerDbm(curve.scenario.params, powerDbm))
    rng = RandomSource(sweep.seed, stream=pointIndex)
    logger.debug("Kurve '{}', {} dBm, Methode {}".format(curve.name, powerDbm, method))

    if curve.minus is not None:
        other = dataclasses.replace(curve.minus, params=cfg.params)
        scenario = "{}-minus-{}".format(cfg.tag, other.tag)
        if method == "montecarlo":
            est = montecarlo.estimateRateDifference(cfg, other, sweep.samples, rng, sumRate=sumRate, workers=workers)
            return _row(powerDbm, est.mean, method, scenario, est.ciHalfWidth, est.nSamples, est.seed)
        scale = cfg.params.numUsers if sumRate else 1
        value = (analyticRate(cfg, method).value - analyticRate(other, method).value) * scale
        return _row(powerDbm, value, method, scenario, 0.0, 0, sweep.seed)

    if method == "montecarlo":
        if sumRate:
            est = montecarlo.estimateSumRate(cfg, sweep.samples, rng, workers=workers)
        else:
            est = montecarlo.estimateRate(cfg, sweep.samples, rng, workers=workers)
        return _row(powerDbm, est.mean, method, cfg.tag, est.ciHalfWidth, est.nSamples, est.seed)

    rate = analyticRate(cfg, method)
    scale = cfg.params.numUsers if sumRate else 1
    return _row(powerDbm, rate.value * scale, rate.method, cfg.tag, 0.0, 0, sweep.seed)


def _spacingRows(curve: config.CurveSpec) -> List[Dict[str, Any]]:
    cfg = curve.scenario
    if curve.spacingScheme == "lemma1":
        offsets = coherentPositions(curve.spacingD0, cfg.params, cfg.nPas)
    else:
        offsets = farZonePositions(cfg.params, cfg.nPas)
    profile = spacingProfile(offsets)
    return [_row(n, d, curve.spacingScheme, cfg.tag, 0.0, 0, curve.sweep.seed) for (n, d) in profile.entries]


def runCurve(curve: config.CurveSpec, workers: int = 1) -> pd.DataFrame:
    """
    Berechnet eine Kurve. Bei ``workers > 1`` werden die Stützstellen parallel berechnet,
    die Reihenfolge der Zeilen bleibt gleich.

    :param curve: die Kurve
    :type curve: CurveSpec
    :param workers: Anzahl Threads
    :type workers: int
    :return: Tabelle mit den Spalten ``CSV_COLUMNS``
    :rtype: pd.DataFrame
    """
    if curve.type == "spacing":
        return pd.DataFrame(_spacingRows(curve), columns=CSV_COLUMNS)

    tasks: List[Tuple[int, float, str]] = [
        (i, p, m) for m in _curveMethods(curve) for (i, p) in enumerate(curve.sweep.powerDbm)]

    parallelPoints = workers > 1 and len(tasks) > 1

    def work(task: Tuple[int, float, str]) -> Dict[str, Any]:
        (i, p, m) = task
        return _evaluatePoint(curve, i, p, m, 1 if parallelPoints else workers)

    if parallelPoints:
        with ThreadPool(min(workers, len(tasks))) as pool:
            rows = pool.map(work, tasks)
    else:
        rows = [work(t) for t in tasks]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def writeCsv(df: pd.DataFrame, path: Union[str, pathlib.Path, TextIO]) -> None:
    """Schreibt eine Tabelle als UTF-8 CSV mit Kopfzeile"""
    if isinstance(path, (str, pathlib.Path)):
        df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    else:
        df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def runFigureSpec(
        spec: config.FigureSpec,
        outDir: Union[str, pathlib.Path] = ".",
        xlsx: Optional[Union[str, pathlib.Path]] = None,
        workers: int = 1) -> List[pathlib.Path]:
    """
    Berechnet alle Kurven eines Experiments und schreibt eine CSV-Datei ``<figure>_<kurve>.csv``
    pro Kurve. Geschrieben wird erst, wenn alle Kurven berechnet sind.

    :param spec: das Experiment
    :type spec: FigureSpec
    :param outDir: Ausgabeverzeichnis, wird bei Bedarf angelegt
    :param xlsx: optional zusätzlich eine Excel-Datei mit einem Blatt pro Kurve
    :param workers: Anzahl Threads
    :type workers: int
    :return: die geschriebenen CSV-Dateien
    :rtype: List[pathlib.Path]
    """
    results = []
    for curve in spec.curves:
        logger.info("berechne {} / {}".format(spec.name, curve.name))
        results.append((curve.name, runCurve(curve, workers=workers)))

    out = prepareOutputDir(outDir)
    paths = []
    for (name, df) in results:
        path = out / "{}_{}.csv".format(spec.name, name)
        writeCsv(df, path)
        paths.append(path)

    if xlsx is not None:
        from .pandas import exportToExcel
        exportToExcel(xlsx, [(df, sheetName(name)) for (name, df) in results])
    return paths


def runFigure(
        preset: str,
        overrides: Sequence[str] = (),
        outDir: Union[str, pathlib.Path] = ".",
        xlsx: Optional[Union[str, pathlib.Path]] = None,
        workers: int = 1) -> List[pathlib.Path]:
    """Führt ein mitgeliefertes Preset (``fig3`` bis ``fig10``) mit Overrides aus."""
    yamlDict = config.applyOverrides(config.loadPreset(preset), overrides)
    return runFigureSpec(config.figureFromConfigDict(yamlDict), outDir=outDir, xlsx=xlsx, workers=workers)
