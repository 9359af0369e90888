# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Monte-Carlo-Schätzung ergodischer Raten.

Die Stichprobe wird in Blöcke fester Größe zerlegt. Block ``b`` zieht Nutzer ``i``
aus der Zufallsquelle ``rng.split(b).split(i)``. Mittelwert und Summe der
Abweichungsquadrate der Blöcke werden in fester Reihenfolge zusammengeführt, daher
liefern serielle und parallele Berechnung bitgleiche Ergebnisse.
"""

import logging
import math
from dataclasses import dataclass
from multiprocessing.pool import ThreadPool
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd    # type: ignore

from .channel import NOISE_MODELS, effectiveGainsExact, mpsuSnrScale, singleAntennaSnr
from .errors import ContractError, DomainError
from .placement import coherentOffsets, optimalSpmuPositions, spmuCenterPosition
from .system_model import RandomSource, RoomGeometry, SystemParams, sampleUsers

logger = logging.getLogger(__name__)

SCENARIO_KINDS = ("mpsu", "spsu", "spmu", "siso")
MPSU_PLACEMENTS = ("lemma1", "fz")
SPMU_PLACEMENTS = ("center", "optimized")

DEFAULT_BLOCK_SIZE = 1 << 15
CI_QUANTILE = 1.96

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Ein Szenario mit seinen Parametern.

    - ``mpsu``: 2N+1 PAs pro Nutzer, ``nPas`` = N, ``placement`` ist ``lemma1`` (kohärent) oder ``fz``
    - ``spsu``: eine PA pro Nutzer direkt über ihm
    - ``spmu``: eine PA für alle Nutzer, ``pa`` ist ``center`` oder ``optimized`` (zwei Nutzer)
    - ``siso``: klassische Antenne über der Ecke beim AP
    """

    kind: str
    room: RoomGeometry
    params: SystemParams
    nPas: int = 0
    placement: str = "lemma1"
    pa: str = "center"
    noiseModel: str = "per-pa"

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ContractError("unbekanntes Szenario '{}'".format(self.kind))
        if self.nPas < 0:
            raise ContractError("nPas={} darf nicht negativ sein".format(self.nPas))
        if self.placement not in MPSU_PLACEMENTS:
            raise ContractError("unbekannte Platzierung '{}'".format(self.placement))
        if self.pa not in SPMU_PLACEMENTS:
            raise ContractError("unbekannte PA-Position '{}'".format(self.pa))
        if self.noiseModel not in NOISE_MODELS:
            raise ContractError("unbekanntes Rauschmodell '{}'".format(self.noiseModel))
        if self.kind == "spmu" and self.pa == "optimized" and self.params.numUsers != 2:
            raise ContractError("die optimierte SPMU-Position ist nur für zwei Nutzer definiert")

    @property
    def tag(self) -> str:
        """Kurzname für Ausgaben, z.B. ``mpsu-n10`` oder ``spmu-optimized``"""
        if self.kind == "mpsu":
            return "mpsu-n{}".format(self.nPas) + ("-fz" if self.placement == "fz" else "")
        elif self.kind == "spmu":
            return "spmu-" + self.pa
        else:
            return self.kind


@dataclass(frozen=True)
class RateEstimate:
    """Ergebnis einer Monte-Carlo-Schätzung"""

    mean: float
    """Mittelwert in bit/s/Hz"""

    ciHalfWidth: float
    """halbe Breite des 95%-Konfidenzintervalls, 1.96·sd/√n"""

    nSamples: int
    seed: int

    nzViolations: int = 0
    """Anzahl Ziehungen mit d0 <= Nλ, die mit FZ-Positionen gerechnet wurden"""

    method: str = "montecarlo"


# (Anzahl, Mittelwert, Summe der Abweichungsquadrate)
_Moments = Tuple[int, float, float]


def _moments(values: np.ndarray) -> _Moments:
    n = len(values)
    mean = float(np.mean(values))
    return (n, mean, float(np.sum((values - mean) ** 2)))


def _mergeMoments(a: _Moments, b: _Moments) -> _Moments:
    (na, ma, sa) = a
    (nb, mb, sb) = b
    n = na + nb
    delta = mb - ma
    return (n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n)


def _blockSizes(nSamples: int, blockSize: int) -> List[int]:
    sizes = [blockSize] * (nSamples // blockSize)
    if nSamples % blockSize:
        sizes.append(nSamples % blockSize)
    return sizes


def _mpsuSnr(cfg: ScenarioConfig, xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, int]:
    params = cfg.params
    n = cfg.nPas
    lam = params.wavelength
    d0 = np.sqrt(ys ** 2 + cfg.room.height ** 2)
    step = np.arange(-n, n + 1) * lam
    fz = np.broadcast_to(step, (len(xs), 2 * n + 1))

    violations = 0
    if cfg.placement == "lemma1":
        valid = d0 > n * lam
        violations = int(len(xs) - np.count_nonzero(valid))
        safeD0 = np.where(valid, d0, 2.0 * n * lam + 1.0)
        offsets = np.where(valid[:, None], coherentOffsets(safeD0, lam, n), fz)
    else:
        offsets = fz

    gains = effectiveGainsExact(xs[:, None] + offsets, xs, ys, cfg.room, params)
    snr = params.transmitSnr * np.abs(gains) ** 2 / mpsuSnrScale(2 * n + 1, cfg.noiseModel)
    return (snr, violations)


def _dropRates(cfg: ScenarioConfig, rng: RandomSource, count: int, users: int) -> Tuple[np.ndarray, int]:
    """Raten (1/I)·log2(1+SNR) der Nutzer 0..users-1 in ``count`` Ziehungen, Form (users, count)"""
    room = cfg.room
    params = cfg.params
    gp = params.transmitSnr
    positions = [sampleUsers(rng.split(i), room, count) for i in range(users)]

    violations = 0
    snrs: List[Union[float, np.ndarray]] = []
    snr: Union[float, np.ndarray]
    if cfg.kind == "spmu" and cfg.pa == "optimized":
        ((x1, y1), (x2, y2)) = (positions[0], positions[1])
        pa = optimalSpmuPositions(x1, y1, x2, y2, room)
        snrs = [singleAntennaSnr(gp, pa - xs, ys, room) for (xs, ys) in positions]
    else:
        for (xs, ys) in positions:
            if cfg.kind == "mpsu":
                (snr, v) = _mpsuSnr(cfg, xs, ys)
                violations += v
            elif cfg.kind == "spsu":
                snr = singleAntennaSnr(gp, 0.0, ys, room)
            elif cfg.kind == "spmu":
                snr = singleAntennaSnr(gp, spmuCenterPosition(room) - xs, ys, room)
            else:
                snr = singleAntennaSnr(gp, xs, ys, room)
            snrs.append(snr)

    rates = np.log1p(np.vstack(snrs)) / (_LN2 * params.numUsers)
    return (rates, violations)


def _usersPerDrop(cfg: ScenarioConfig) -> int:
    return 2 if (cfg.kind == "spmu" and cfg.pa == "optimized") else 1


def _estimate(
        sampler: Callable[[RandomSource, int], Tuple[np.ndarray, int]],
        nSamples: int,
        rng: RandomSource,
        workers: int,
        blockSize: int) -> RateEstimate:
    if nSamples < 1:
        raise DomainError("mindestens eine Stichprobe wird benötigt, nicht {}".format(nSamples))
    if blockSize < 1:
        raise DomainError("Blockgröße {} muss positiv sein".format(blockSize))
    sizes = _blockSizes(nSamples, blockSize)

    def work(b: int) -> Tuple[_Moments, int]:
        (values, violations) = sampler(rng.split(b), sizes[b])
        return (_moments(values), violations)

    if workers > 1 and len(sizes) > 1:
        with ThreadPool(min(workers, len(sizes))) as pool:
            results = pool.map(work, range(len(sizes)))
    else:
        results = [work(b) for b in range(len(sizes))]

    (total, violations) = results[0]
    for (m, v) in results[1:]:
        total = _mergeMoments(total, m)
        violations += v
    (n, mean, m2) = total
    sd = math.sqrt(m2 / (n - 1)) if n > 1 else 0.0

    if violations > 0:
        logger.info("{} von {} Ziehungen mit d0 <= N·λ, dafür wurden FZ-Positionen verwendet".format(violations, n))
    return RateEstimate(
        mean=mean,
        ciHalfWidth=CI_QUANTILE * sd / math.sqrt(n),
        nSamples=n,
        seed=rng.seed,
        nzViolations=violations)


def estimateRate(
        cfg: ScenarioConfig,
        nSamples: int,
        rng: RandomSource,
        workers: int = 1,
        blockSize: int = DEFAULT_BLOCK_SIZE) -> RateEstimate:
    """
    Schätzt die ergodische Rate (1/I)·E[log2(1+SNR)] eines Nutzers.

    Bei MPSU wird für jede Ziehung die kohärente Platzierung um die x-Koordinate des Nutzers
    berechnet. Ist dabei d0 <= Nλ, werden FZ-Positionen verwendet und die Ziehung gezählt.
    Bei optimierter SPMU werden pro Ziehung zwei Nutzer gezogen, die Position der PA
    optimiert und die Raten beider Nutzer gemittelt.

    :param cfg: das Szenario
    :type cfg: ScenarioConfig
    :param nSamples: Anzahl der Ziehungen
    :type nSamples: int
    :param rng: die Zufallsquelle
    :type rng: RandomSource
    :param workers: Anzahl Threads, das Ergebnis hängt nicht davon ab
    :type workers: int
    :rtype: RateEstimate
    """
    users = _usersPerDrop(cfg)

    def sampler(blockRng: RandomSource, count: int) -> Tuple[np.ndarray, int]:
        (rates, violations) = _dropRates(cfg, blockRng, count, users)
        return (np.mean(rates, axis=0), violations)

    return _estimate(sampler, nSamples, rng, workers, blockSize)


def estimateSumRate(
        cfg: ScenarioConfig,
        nSamples: int,
        rng: RandomSource,
        workers: int = 1,
        blockSize: int = DEFAULT_BLOCK_SIZE) -> RateEstimate:
    """Schätzt die Summenrate über alle I Nutzer. Bei optimierter SPMU wird die PA
    für jede Ziehung neu platziert."""
    users = cfg.params.numUsers

    def sampler(blockRng: RandomSource, count: int) -> Tuple[np.ndarray, int]:
        (rates, violations) = _dropRates(cfg, blockRng, count, users)
        return (np.sum(rates, axis=0), violations)

    return _estimate(sampler, nSamples, rng, workers, blockSize)


def estimateRateDifference(
        cfgA: ScenarioConfig,
        cfgB: ScenarioConfig,
        nSamples: int,
        rng: RandomSource,
        sumRate: bool = False,
        workers: int = 1,
        blockSize: int = DEFAULT_BLOCK_SIZE) -> RateEstimate:
    """
    Schätzt die Differenz der Raten zweier Szenarien mit gemeinsamen Zufallszahlen,
    d.h. beide Szenarien sehen dieselben Nutzerpositionen.

    :param sumRate: Summenrate statt Rate pro Nutzer
    :type sumRate: bool
    """
    if cfgA.room != cfgB.room or cfgA.params != cfgB.params:
        raise ContractError("für eine Differenz müssen Raum und Systemparameter übereinstimmen")
    if sumRate:
        (usersA, usersB) = (cfgA.params.numUsers, cfgB.params.numUsers)
    else:
        (usersA, usersB) = (_usersPerDrop(cfgA), _usersPerDrop(cfgB))

    def reduce(rates: np.ndarray) -> np.ndarray:
        return np.sum(rates, axis=0) if sumRate else np.mean(rates, axis=0)

    def sampler(blockRng: RandomSource, count: int) -> Tuple[np.ndarray, int]:
        (ratesA, violationsA) = _dropRates(cfgA, blockRng, count, usersA)
        (ratesB, violationsB) = _dropRates(cfgB, blockRng, count, usersB)
        return (reduce(ratesA) - reduce(ratesB), violationsA + violationsB)

    return _estimate(sampler, nSamples, rng, workers, blockSize)


def convergenceReport(
        cfg: ScenarioConfig,
        schedule: Sequence[int],
        rng: RandomSource,
        workers: int = 1) -> pd.DataFrame:
    """
    Schätzt die Rate für wachsende Stichprobengrößen. Die halbe Breite des
    Konfidenzintervalls sollte wie 1/√n fallen.

    :param schedule: streng aufsteigende Stichprobengrößen
    :type schedule: Sequence[int]
    :return: Tabelle mit Spalten ``n_samples``, ``mean``, ``ci_half_width``, ``ci_ratio``
    :rtype: pd.DataFrame
    """
    if len(schedule) == 0:
        raise ContractError("leerer Plan")
    if any(n < 1 for n in schedule) or any(b <= a for (a, b) in zip(schedule, schedule[1:])):
        raise ContractError("der Plan {} muss streng aufsteigend und positiv sein".format(list(schedule)))

    rows = []
    previous: Optional[float] = None
    for n in schedule:
        est = estimateRate(cfg, n, rng, workers=workers)
        ratio = est.ciHalfWidth / previous if previous else float("nan")
        rows.append({
            "n_samples": est.nSamples,
            "mean": est.mean,
            "ci_half_width": est.ciHalfWidth,
            "ci_ratio": ratio})
        previous = est.ciHalfWidth
        logger.debug("n={}: {} ± {}".format(n, est.mean, est.ciHalfWidth))
    return pd.DataFrame(rows, columns=["n_samples", "mean", "ci_half_width", "ci_ratio"])
