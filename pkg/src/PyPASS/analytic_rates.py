# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Geschlossene Formeln und Näherungen für ergodische Raten.

Alle Raten sind pro Nutzer in bit/s/Hz angegeben und enthalten den TDMA-Faktor 1/I.
Nutzer sind gleichverteilt auf dem Boden des Raums [0, D]².
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Tuple, Union

import scipy.integrate

from .errors import DomainError, NumericalError, PreconditionError
from .system_model import RoomGeometry, SystemParams

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

RATE_METHODS = ("theorem", "high_snr", "maclaurin", "quadrature", "approx", "approx_arctan")

MACLAURIN_TOL = 1e-12
MACLAURIN_MAX_TERMS = 500
QUAD_EPSREL = 1e-8
QUAD_EPSABS = 1e-12


@dataclass(frozen=True)
class RateValue:
    """Eine ergodische Rate mit der Methode, mit der sie berechnet wurde"""

    value: float
    """Rate in bit/s/Hz"""

    method: str
    """eine der Methoden aus ``RATE_METHODS``"""


def farZoneAmplitude(d0: float, params: SystemParams, numPerSide: int) -> float:
    """Betrag des effektiven Kanalgewinns im Fernbereich, (2/λ)·asinh(Nλ/d0).
    Der Beitrag der mittleren PA fehlt in dieser Näherung.

    :param d0: minimaler Abstand zwischen Nutzer und Wellenleiter
    :type d0: float
    :param params: Systemparameter
    :type params: SystemParams
    :param numPerSide: N
    :type numPerSide: int
    :rtype: float
    """
    if not d0 > 0:
        raise DomainError("d0={} muss positiv sein".format(d0))
    if numPerSide < 0:
        raise DomainError("N={} darf nicht negativ sein".format(numPerSide))
    lam = params.wavelength
    return (2.0 / lam) * math.asinh(numPerSide * lam / d0)


def mpsuGainFactor(numPerSide: int) -> int:
    """Antennengewinn 2N, für N=0 (eine einzelne PA) ist er 1"""
    if numPerSide < 0:
        raise DomainError("N={} darf nicht negativ sein".format(numPerSide))
    return 2 * numPerSide if numPerSide >= 1 else 1


def _ergodicKernel(gp: float, extent: float, heightSq: float, numUsers: int) -> float:
    # E_y[(1/I)·log2(1 + gp/(y²+heightSq))] mit y gleichverteilt auf [0, D]
    if gp == 0.0:
        return 0.0
    d = extent
    a = heightSq + gp
    logTerm = math.log1p(gp / (d * d + heightSq)) / LN2
    sa = math.sqrt(a)
    sh = math.sqrt(heightSq)
    atanTerm = (sa * math.atan(d / sa) - sh * math.atan(d / sh)) * 2.0 / (d * LN2)
    return (logTerm + atanTerm) / numUsers


def _checkGain(gainFactor: float) -> None:
    if not gainFactor >= 1:
        raise DomainError("Gewinnfaktor {} muss mindestens 1 sein".format(gainFactor))


def rateMpsu(params: SystemParams, room: RoomGeometry, numPerSide: int, gainFactor: Union[float, None] = None) -> RateValue:
    """
    Ergodische Rate bei mehreren PAs pro Nutzer in geschlossener Form:

        R = (1/I)·log2(1 + gγP/(D²+h²))
            + 2/(I·D·ln2)·(√(h²+gγP)·arctan(D/√(h²+gγP)) - h·arctan(D/h))

    :param params: Systemparameter
    :type params: SystemParams
    :param room: der Raum
    :type room: RoomGeometry
    :param numPerSide: N
    :type numPerSide: int
    :param gainFactor: g, Standard ist 2N (bzw. 1 für N=0)
    :return: Rate mit Methode ``theorem``
    :rtype: RateValue
    """
    g = float(mpsuGainFactor(numPerSide)) if gainFactor is None else float(gainFactor)
    _checkGain(g)
    value = _ergodicKernel(g * params.transmitSnr, room.extent, room.height ** 2, params.numUsers)
    return RateValue(value, "theorem")


def rateSpsu(params: SystemParams, room: RoomGeometry) -> RateValue:
    """Eine PA pro Nutzer, direkt über ihm. Identisch mit :func:`rateMpsu` für g=1."""
    return rateMpsu(params, room, 0, gainFactor=1.0)


def rateHighSnr(params: SystemParams, room: RoomGeometry, gainFactor: float = 1.0) -> RateValue:
    """
    Näherung für hohe SNR:

        (1/I)·log2(1 + gγP/(D²+h²)) + 2/(I·ln2) - 2h/(I·D·ln2)·arctan(D/h)

    Der Fehler gegenüber :func:`rateMpsu` ist höchstens 2D²/(3·I·ln2·(h²+gγP)).
    """
    _checkGain(gainFactor)
    d = room.extent
    h = room.height
    logTerm = math.log1p(gainFactor * params.transmitSnr / (d * d + h * h)) / LN2
    tail = 2.0 / LN2 - (2.0 * h / (d * LN2)) * math.atan(d / h)
    return RateValue((logTerm + tail) / params.numUsers, "high_snr")


def rateSpsuMaclaurin(
        params: SystemParams,
        room: RoomGeometry,
        tol: float = MACLAURIN_TOL,
        maxTerms: int = MACLAURIN_MAX_TERMS) -> RateValue:
    """
    Rate mit einer PA pro Nutzer über eine Maclaurin-Reihe der arctan-Terme.
    Die Reihe konvergiert nur für h > D, sie wird abgebrochen, sobald ein Term kleiner
    als ``tol`` ist.

    :param tol: Abbruchschranke für den Betrag eines Terms
    :type tol: float
    :param maxTerms: maximale Anzahl Terme
    :type maxTerms: int
    :return: Rate mit Methode ``maclaurin``
    :rtype: RateValue
    """
    d = room.extent
    h = room.height
    if not h > d:
        raise PreconditionError("Reihenentwicklung verlangt h > D, aber h={} und D={}".format(h, d))

    gp = params.transmitSnr
    ratioA = d * d / (h * h + gp)
    ratioH = d * d / (h * h)
    (powA, powH) = (1.0, 1.0)
    total = 0.0
    converged = False
    for k in range(maxTerms):
        term = (powA - powH) / (2 * k + 1)
        if k % 2 == 1:
            term = -term
        total += term
        if k > 0 and abs(term) < tol:
            converged = True
            break
        powA *= ratioA
        powH *= ratioH
    if not converged:
        raise NumericalError("Maclaurin-Reihe nach {} Termen nicht konvergiert".format(maxTerms))

    logTerm = math.log1p(gp / (d * d + h * h)) / LN2
    return RateValue((logTerm + 2.0 * total / LN2) / params.numUsers, "maclaurin")


def _roomQuadrature(params: SystemParams, room: RoomGeometry, paX: float) -> float:
    gp = params.transmitSnr
    if gp == 0.0:
        return 0.0
    d = room.extent
    h2 = room.height ** 2

    def integrand(y: float, x: float) -> float:
        return math.log1p(gp / ((paX - x) ** 2 + y * y + h2)) / LN2

    logger.debug("Quadratur über [0, {}]² mit Antenne bei x={}".format(d, paX))
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.integrate.IntegrationWarning)
        try:
            (value, _) = scipy.integrate.dblquad(integrand, 0.0, d, 0.0, d, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL)
        except scipy.integrate.IntegrationWarning as e:
            raise NumericalError("Quadratur nicht konvergiert: {}".format(e))
    return value / (params.numUsers * d * d)


def rateSpmuQuadrature(params: SystemParams, room: RoomGeometry) -> RateValue:
    """
    Rate bei einer PA in der Mitte des Wellenleiters, die sich alle Nutzer teilen.
    Das Doppelintegral

        (1/(I·D²))·∬ log2(1 + γP/((D/2-x)²+y²+h²)) dy dx

    über [0, D]² wird adaptiv numerisch integriert (relative Toleranz 1e-8).
    """
    return RateValue(_roomQuadrature(params, room, room.extent / 2.0), "quadrature")


def rateSisoQuadrature(params: SystemParams, room: RoomGeometry) -> RateValue:
    """Rate einer klassischen Antenne in Höhe h über der Ecke beim AP"""
    return RateValue(_roomQuadrature(params, room, 0.0), "quadrature")


def rateSpmuApprox(params: SystemParams, room: RoomGeometry, variant: str = "effective-height") -> RateValue:
    """
    Geschlossene Näherung der Rate bei einer PA in der Mitte.

    ``effective-height`` ersetzt den horizontalen Abstand (D/2-x)² zur PA durch seinen
    Mittelwert D²/12. Die Rate ist dann die von :func:`rateSpsu` mit der effektiven Höhe
    √(h²+D²/12). Der Fehler ist von zweiter Ordnung in der Varianz von (D/2-x)².

    ``arctan`` ist die Form

        (1/I)·[log2((2D²+h²+γP)/(2D²+h²)) - √(4D²+h²)/(D·ln2)·arctan(D/√(4D²+h²))]

    die die Rate deutlich unterschätzt. Negative Werte werden auf 0 gesetzt.

    Für h <= D wird eine Warnung ausgegeben, berechnet wird trotzdem.

    :param variant: ``effective-height`` oder ``arctan``
    :type variant: str
    :return: Rate mit Methode ``approx`` bzw. ``approx_arctan``
    :rtype: RateValue
    """
    d = room.extent
    h = room.height
    if not h > d:
        logger.warning("SPMU-Näherung außerhalb ihres Gültigkeitsbereichs h > D (h={}, D={})".format(h, d))

    if variant == "effective-height":
        value = _ergodicKernel(params.transmitSnr, d, h * h + d * d / 12.0, params.numUsers)
        return RateValue(value, "approx")
    elif variant == "arctan":
        gp = params.transmitSnr
        r = math.sqrt(4.0 * d * d + h * h)
        expr = (math.log1p(gp / (2.0 * d * d + h * h)) / LN2 - (r / (d * LN2)) * math.atan(d / r)) / params.numUsers
        if expr < 0:
            logger.warning("SPMU-Näherung ist negativ ({}), es wird 0 geliefert".format(expr))
            expr = 0.0
        return RateValue(expr, "approx_arctan")
    else:
        raise DomainError("unbekannte Variante '{}'".format(variant))


def highSnrSlope(scenario: str, params: SystemParams) -> float:
    """Steigung der Rate über log2(γP) bei hoher SNR. Sie ist in allen Szenarien 1/I."""
    return 1.0 / params.numUsers


def scenarioGapMpsuSpsu(params: SystemParams, room: RoomGeometry, numPerSide: int) -> float:
    """
    Unterschied der Summenraten mit 2N+1 PAs und mit einer PA pro Nutzer bei hoher SNR:

        log2(1 + 2NγP/(D²+h²)) - log2(1 + γP/(D²+h²))

    Für γP → ∞ strebt er gegen log2(2N).
    """
    if numPerSide < 1:
        raise DomainError("N={} muss mindestens 1 sein".format(numPerSide))
    gp = params.transmitSnr
    s = room.extent ** 2 + room.height ** 2
    return (math.log1p(2 * numPerSide * gp / s) - math.log1p(gp / s)) / LN2


def analyticMethods(kind: str, pa: str = "center") -> Tuple[str, ...]:
    """Analytische Methoden, die für ein Szenario zur Verfügung stehen. Die erste ist die exakte."""
    if kind == "mpsu":
        return ("theorem", "high_snr")
    elif kind == "spsu":
        return ("theorem", "high_snr", "maclaurin")
    elif kind == "spmu":
        return ("quadrature", "approx", "approx_arctan") if pa == "center" else ()
    elif kind == "siso":
        return ("quadrature",)
    return ()
