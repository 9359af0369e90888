# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Physikalische Konstanten, Einheiten, Systemparameter und Zufallsquellen.

Intern wird jede Leistung in Watt gerechnet, dBm tauchen nur an der
Schnittstelle zum Benutzer auf.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.constants

from .errors import DomainError

SPEED_OF_LIGHT: float = scipy.constants.c
"""Lichtgeschwindigkeit in m/s, exakt 299 792 458"""

THERMAL_NOISE_DBM_PER_HZ: float = -174.0
"""Thermisches Rauschen bei Raumtemperatur in dBm/Hz"""

_UINT64_LIMIT = 1 << 64


def dbmToWatts(p: float) -> float:
    """Rechnet eine Leistung von dBm in Watt um.

    :param p: Leistung in dBm
    :type p: float
    :return: Leistung in Watt, d.h. 10^((p-30)/10)
    :rtype: float
    """
    if not math.isfinite(p):
        raise DomainError("Leistung {} dBm ist keine endliche Zahl".format(p))
    try:
        return 10.0 ** ((p - 30.0) / 10.0)
    except OverflowError:
        raise DomainError("Leistung {} dBm ist zu groß".format(p))


def wattsToDbm(p: float) -> float:
    """Rechnet eine Leistung von Watt in dBm um. Die Leistung muss positiv sein.

    :param p: Leistung in Watt
    :type p: float
    :return: Leistung in dBm
    :rtype: float
    """
    if not (math.isfinite(p) and p > 0):
        raise DomainError("Leistung {} W muss positiv und endlich sein".format(p))
    return 10.0 * math.log10(p) + 30.0


@dataclass(frozen=True)
class SystemParams:
    """
    Systemparameter eines PASS. Erzeugt werden sie normalerweise mit :func:`makeParams`.
    """

    carrierFrequency: float
    """Trägerfrequenz f_c in Hz"""

    wavelength: float
    """Wellenlänge λ = c / f_c in m"""

    bandwidth: float
    """Bandbreite BW in Hz"""

    noisePower: float
    """Rauschleistung σ² in W"""

    gamma: float
    """γ = (c/(4π f_c))² / σ² in m²/W"""

    numUsers: int
    """Anzahl I der Nutzer, die sich per TDMA den Wellenleiter teilen"""

    txPower: float
    """Sendeleistung P pro Nutzer in W"""

    def __post_init__(self) -> None:
        if not (self.carrierFrequency > 0 and self.wavelength > 0 and self.bandwidth > 0):
            raise DomainError("Frequenz, Wellenlänge und Bandbreite müssen positiv sein")
        if not (self.noisePower > 0 and self.gamma > 0):
            raise DomainError("Rauschleistung und gamma müssen positiv sein")
        if not (math.isfinite(self.txPower) and self.txPower >= 0):
            raise DomainError("Sendeleistung {} W ist ungültig".format(self.txPower))
        if not math.isfinite(self.gamma * self.txPower):
            raise DomainError("Sende-SNR ist bei {} W nicht mehr darstellbar".format(self.txPower))
        if self.numUsers < 1:
            raise DomainError("mindestens ein Nutzer wird benötigt, nicht {}".format(self.numUsers))

    @property
    def transmitSnr(self) -> float:
        """γ·P in m², die Sende-SNR bezogen auf 1 m Abstand"""
        return self.gamma * self.txPower


def makeParams(carrierFrequency: float, bandwidth: float, txPowerDbm: float, numUsers: int) -> SystemParams:
    """Erzeugt die Systemparameter. Wellenlänge, Rauschleistung σ² = -174 + 10·log10(BW) dBm
    und γ werden daraus berechnet.

    :param carrierFrequency: Trägerfrequenz in Hz
    :type carrierFrequency: float
    :param bandwidth: Bandbreite in Hz
    :type bandwidth: float
    :param txPowerDbm: Sendeleistung pro Nutzer in dBm
    :type txPowerDbm: float
    :param numUsers: Anzahl der Nutzer
    :type numUsers: int
    :return: die Parameter
    :rtype: SystemParams
    """
    if not (math.isfinite(carrierFrequency) and carrierFrequency > 0):
        raise DomainError("Trägerfrequenz {} Hz muss positiv sein".format(carrierFrequency))
    if not (math.isfinite(bandwidth) and bandwidth > 0):
        raise DomainError("Bandbreite {} Hz muss positiv sein".format(bandwidth))

    wavelength = SPEED_OF_LIGHT / carrierFrequency
    noisePower = dbmToWatts(THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(bandwidth))
    pathGain = (SPEED_OF_LIGHT / (4.0 * math.pi * carrierFrequency)) ** 2
    return SystemParams(
        carrierFrequency=carrierFrequency,
        wavelength=wavelength,
        bandwidth=bandwidth,
        noisePower=noisePower,
        gamma=pathGain / noisePower,
        numUsers=int(numUsers),
        txPower=dbmToWatts(txPowerDbm))


def withTxPower(params: SystemParams, txPower: float) -> SystemParams:
    """Kopie der Parameter mit anderer Sendeleistung in Watt"""
    return dataclasses.replace(params, txPower=txPower)


def withTxPowerDbm(params: SystemParams, txPowerDbm: float) -> SystemParams:
    """Kopie der Parameter mit anderer Sendeleistung in dBm"""
    return withTxPower(params, dbmToWatts(txPowerDbm))


@dataclass(frozen=True)
class UserPosition:
    """Position eines Nutzers auf dem Boden des Raums"""

    x: float
    """Koordinate parallel zum Wellenleiter in m"""

    y: float
    """Abstand zur Wellenleiter-Achse in m"""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError("Nutzerposition ({}, {}) ist ungültig".format(self.x, self.y))


@dataclass(frozen=True)
class RoomGeometry:
    """Quadratischer Raum der Größe D x D, der Wellenleiter hängt in Höhe h über der x-Achse."""

    extent: float
    """Seitenlänge D in m"""

    height: float
    """Höhe h des Wellenleiters in m"""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.extent) and self.extent > 0):
            raise DomainError("Raumgröße D={} muss positiv sein".format(self.extent))
        if not (math.isfinite(self.height) and self.height > 0):
            raise DomainError("Höhe h={} muss positiv sein".format(self.height))

    def contains(self, user: UserPosition) -> bool:
        return (0.0 <= user.x <= self.extent) and (0.0 <= user.y <= self.extent)


@dataclass(frozen=True)
class RandomSource:
    """
    Deterministische Zufallsquelle. Aus (seed, stream, path) wird über
    ``numpy.random.SeedSequence`` ein PCG64-Generator erzeugt, so dass die Zahlenfolge
    auf allen Plattformen identisch ist. Für jede Arbeitseinheit (Kurve, Stützstelle,
    Block, Nutzer) wird mit :meth:`split` eine eigene Quelle abgeleitet.

    :param seed: Seed, 64 Bit ohne Vorzeichen
    :type seed: int
    :param stream: Index des Streams, 64 Bit ohne Vorzeichen
    :type stream: int
    """

    seed: int
    stream: int = 0
    path: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for v in (self.seed, self.stream) + tuple(self.path):
            if not (0 <= v < _UINT64_LIMIT):
                raise DomainError("{} liegt nicht im Bereich von 64 Bit ohne Vorzeichen".format(v))

    def split(self, index: int) -> "RandomSource":
        """Leitet eine unabhängige Unterquelle ab"""
        return RandomSource(self.seed, self.stream, self.path + (int(index),))

    def generator(self) -> np.random.Generator:
        """Erzeugt einen neuen Generator, der am Anfang der Folge steht"""
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,) + self.path)
        return np.random.Generator(np.random.PCG64(seq))


def sampleUsers(rng: RandomSource, room: RoomGeometry, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Zieht ``count`` Nutzer, x und y jeweils unabhängig gleichverteilt auf [0, D].

    :return: Arrays der x- und y-Koordinaten
    :rtype: Tuple[np.ndarray, np.ndarray]
    """
    gen = rng.generator()
    xs = gen.uniform(0.0, room.extent, count)
    ys = gen.uniform(0.0, room.extent, count)
    return (xs, ys)


def sampleUser(rng: RandomSource, room: RoomGeometry) -> UserPosition:
    """Zieht einen gleichverteilten Nutzer. Gleiche Quelle liefert den gleichen Nutzer."""
    (xs, ys) = sampleUsers(rng, room, 1)
    return UserPosition(float(xs[0]), float(ys[0]))
