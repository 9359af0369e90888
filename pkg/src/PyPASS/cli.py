# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""
Kommandozeilen-Tool ``pass-sim``.

- ``pass-sim figure fig4 --seed 7 --out results`` berechnet ein Preset und schreibt CSV-Dateien
- ``pass-sim rate --scenario spsu --method theorem --h 20 --d 10`` gibt eine einzelne Rate aus
- ``pass-sim place --d0 5 --n 10`` gibt die Offsets der PAs als CSV aus
- ``pass-sim convergence --scenario spsu --schedule 10000,40000`` gibt eine Konvergenztabelle aus

Exit-Codes: 0 Erfolg, 2 Aufruf- oder Konfigurationsfehler, 3 numerischer Fehler.
Log-Ausgaben gehen nach stderr.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

import pandas as pd    # type: ignore

from . import config
from . import experiments
from .channel import NOISE_MODELS, PinchingArray
from .errors import ConfigError, NumericalError, PassError
from .montecarlo import (
    MPSU_PLACEMENTS,
    SCENARIO_KINDS,
    SPMU_PLACEMENTS,
    ScenarioConfig,
    convergenceReport,
    estimateRate,
    estimateSumRate,
)
from .placement import coherentPositions, farZonePositions, outOfRoomPAs
from .system_model import RandomSource, RoomGeometry, makeParams
from .utils import formatNumber, parseSchedule

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

METHOD_CHOICES = ["analytic", "theorem", "high_snr", "maclaurin", "quadrature", "approx", "approx_arctan", "montecarlo"]


def _addScenarioArguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scenario", choices=SCENARIO_KINDS, default="spsu", help="Szenario")
    p.add_argument("--h", type=float, default=20.0, help="Höhe des Wellenleiters in m")
    p.add_argument("--d", type=float, default=10.0, help="Größe D des Raums in m")
    p.add_argument("--power-dbm", type=float, default=30.0, help="Sendeleistung pro Nutzer in dBm")
    p.add_argument("--users", type=int, default=2, help="Anzahl I der Nutzer")
    p.add_argument("--n-pas", type=int, default=10, help="N, d.h. 2N+1 PAs pro Nutzer bei MPSU")
    p.add_argument("--placement", choices=MPSU_PLACEMENTS, default="lemma1", help="Platzierung bei MPSU")
    p.add_argument("--pa", choices=SPMU_PLACEMENTS, default="center", help="Position der PA bei SPMU")
    p.add_argument("--noise-model", choices=NOISE_MODELS, default="per-pa", help="Rauschmodell bei MPSU")
    p.add_argument("--fc", type=float, default=2.4e9, help="Trägerfrequenz in Hz")
    p.add_argument("--bw", type=float, default=1.0e6, help="Bandbreite in Hz")
    p.add_argument("--seed", type=int, default=0, help="Seed für Monte-Carlo")
    p.add_argument("--workers", type=int, default=1, help="Anzahl Threads")


def _scenarioFromArgs(args: argparse.Namespace) -> ScenarioConfig:
    return ScenarioConfig(
        kind=args.scenario,
        room=RoomGeometry(args.d, args.h),
        params=makeParams(args.fc, args.bw, args.power_dbm, args.users),
        nPas=args.n_pas,
        placement=args.placement,
        pa=args.pa,
        noiseModel=args.noise_model)


def makeParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pass-sim",
        description="Simulation und Analyse von Uplink-Pinching-Antennen-Systemen",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug-Ausgaben")
    parser.add_argument("-q", "--quiet", action="store_true", help="nur Warnungen und Fehler ausgeben")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="ein Experiment berechnen und als CSV schreiben",
                         formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    fig.add_argument("name", nargs="?", help="Preset, z.B. fig4")
    fig.add_argument("--config", help="YAML-Konfiguration statt Preset")
    fig.add_argument("--seed", type=int, help="Seed, überschreibt sweep.seed")
    fig.add_argument("--samples", type=int, help="Anzahl Ziehungen, überschreibt sweep.samples")
    fig.add_argument("--out", default=".", help="Ausgabeverzeichnis")
    fig.add_argument("--set", dest="overrides", action="append", default=[], metavar="ABSCHNITT.SCHLÜSSEL=WERT",
                     help="einzelnen Wert überschreiben, mehrfach möglich")
    fig.add_argument("--dump-config", metavar="DATEI",
                     help="effektive Konfiguration schreiben ('-' für stdout) und nichts berechnen")
    fig.add_argument("--xlsx", metavar="DATEI", help="zusätzlich alle Kurven in eine Excel-Datei schreiben")
    fig.add_argument("--workers", type=int, default=1, help="Anzahl Threads")

    rate = sub.add_parser("rate", help="eine ergodische Rate ausgeben",
                          formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _addScenarioArguments(rate)
    rate.add_argument("--method", choices=METHOD_CHOICES, default="analytic", help="Methode")
    rate.add_argument("--samples", type=int, default=config.DEFAULT_SAMPLES, help="Anzahl Ziehungen für montecarlo")
    rate.add_argument("--sum", action="store_true", help="Summenrate aller Nutzer statt Rate pro Nutzer")

    place = sub.add_parser("place", help="Offsets der PAs als CSV ausgeben",
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    place.add_argument("--d0", type=float, required=True, help="minimaler Abstand d0 in m")
    place.add_argument("--n", type=int, required=True, help="N, d.h. 2N+1 PAs")
    place.add_argument("--fz", action="store_true", help="Näherung x_n = nλ statt kohärenter Platzierung")
    place.add_argument("--anchor", type=float, help="Position der mittleren PA auf dem Wellenleiter")
    place.add_argument("--d", type=float, help="Größe D des Raums, fügt die Spalte in_room hinzu")
    place.add_argument("--fc", type=float, default=2.4e9, help="Trägerfrequenz in Hz")

    conv = sub.add_parser("convergence", help="Konvergenz einer Monte-Carlo-Schätzung als CSV ausgeben",
                          formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _addScenarioArguments(conv)
    conv.add_argument("--schedule", default="10000,40000,160000", help="kommagetrennte Stichprobengrößen")
    return parser


def _runFigure(args: argparse.Namespace) -> int:
    if args.config:
        yamlDict = config.loadConfigFile(args.config)
    elif args.name:
        yamlDict = config.loadPreset(args.name)
    else:
        logger.error("es muss ein Preset ({}) oder --config angegeben werden".format(", ".join(config.presetNames())))
        return EXIT_USAGE

    overrides: List[str] = list(args.overrides)
    if args.seed is not None:
        overrides.append("sweep.seed={}".format(args.seed))
    if args.samples is not None:
        overrides.append("sweep.samples={}".format(args.samples))
    yamlDict = config.applyOverrides(yamlDict, overrides)
    spec = config.figureFromConfigDict(yamlDict)

    if args.dump_config:
        text = config.dumpConfig(yamlDict)
        if args.dump_config == "-":
            sys.stdout.write(text)
        else:
            try:
                with open(args.dump_config, "w", encoding="utf-8") as f:
                    f.write(text)
            except OSError as e:
                raise ConfigError("Konfiguration kann nicht geschrieben werden: {}".format(e))
        return EXIT_OK

    paths = experiments.runFigureSpec(spec, outDir=args.out, xlsx=args.xlsx, workers=args.workers)
    for p in paths:
        logger.info("geschrieben: {}".format(p))
    return EXIT_OK


def _runRate(args: argparse.Namespace) -> int:
    cfg = _scenarioFromArgs(args)
    experiments.checkMethod(cfg, args.method)
    if args.method == "montecarlo":
        rng = RandomSource(args.seed)
        if args.sum:
            est = estimateSumRate(cfg, args.samples, rng, workers=args.workers)
        else:
            est = estimateRate(cfg, args.samples, rng, workers=args.workers)
        logger.info("Konfidenzintervall ±{} bei {} Ziehungen".format(formatNumber(est.ciHalfWidth), est.nSamples))
        value = est.mean
    else:
        value = experiments.analyticRate(cfg, args.method).value
        if args.sum:
            value *= cfg.params.numUsers
    print(formatNumber(value))
    return EXIT_OK


def _runPlace(args: argparse.Namespace) -> int:
    params = makeParams(args.fc, 1.0e6, 0.0, 1)
    if args.fz:
        offsets = farZonePositions(params, args.n)
    else:
        offsets = coherentPositions(args.d0, params, args.n)

    df = pd.DataFrame({"n": range(-args.n, args.n + 1), "offset": offsets})
    anchor = args.anchor if args.anchor is not None else 0.0
    if args.anchor is not None:
        df["position"] = anchor + offsets
    if args.d is not None:
        array = PinchingArray(anchor, tuple(offsets))
        outside = set(outOfRoomPAs(array, RoomGeometry(args.d, 1.0)))
        df["in_room"] = [n not in outside for n in df["n"]]
        if outside:
            logger.warning("{} PAs liegen außerhalb von [0, {}]".format(len(outside), args.d))
    experiments.writeCsv(df, sys.stdout)
    return EXIT_OK


def _runConvergence(args: argparse.Namespace) -> int:
    cfg = _scenarioFromArgs(args)
    df = convergenceReport(cfg, parseSchedule(args.schedule), RandomSource(args.seed), workers=args.workers)
    experiments.writeCsv(df, sys.stdout)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Einstiegspunkt von ``pass-sim``. Liefert den Exit-Code."""
    parser = makeParser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("PyPASS").setLevel(level)

    commands = {
        "figure": _runFigure,
        "rate": _runRate,
        "place": _runPlace,
        "convergence": _runConvergence,
    }
    try:
        return commands[args.command](args)
    except NumericalError as e:
        logger.error("numerischer Fehler: {}".format(e))
        return EXIT_NUMERICAL
    except PassError as e:
        logger.error(str(e))
        return EXIT_USAGE
