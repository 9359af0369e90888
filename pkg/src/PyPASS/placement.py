# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""Platzierung der Pinching-Antennen (PAs).

Enthält die kohärente Platzierung mehrerer PAs um einen Nutzer, deren Näherung
im Fernbereich (FZ), Abstände zwischen benachbarten PAs und die Position einer
einzelnen PA, die sich zwei Nutzer teilen.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np
import scipy.optimize

from .channel import PinchingArray
from .errors import ContractError, DomainError, NumericalError, PreconditionError
from .system_model import RoomGeometry, SystemParams, UserPosition

logger = logging.getLogger(__name__)

SCAN_STEP = 5e-4
"""maximale Schrittweite in m, mit der nach Vorzeichenwechseln der Stationaritätsbedingung gesucht wird"""

BISECT_XTOL = 1e-12
BISECT_MAXITER = 200

BATCH_GRID_POINTS = 64
BATCH_BISECT_STEPS = 60


def coherentPositions(d0: float, params: SystemParams, numPerSide: int) -> np.ndarray:
    """
    Optimierte Offsets x_n = nλ(2d0+nλ)/(2(d0+nλ)) für n = -N..N. Mit ihnen gilt
    √(x_n²+d0²) + x_n = d0 + nλ, alle Signale kommen also phasengleich an.

    :param d0: minimaler Abstand √(y²+h²) zwischen Nutzer und Wellenleiter
    :type d0: float
    :param params: Systemparameter, benötigt wird λ
    :type params: SystemParams
    :param numPerSide: N
    :type numPerSide: int
    :return: die 2N+1 Offsets relativ zur mittleren PA
    :rtype: np.ndarray
    """
    if not d0 > 0:
        raise DomainError("d0={} muss positiv sein".format(d0))
    if numPerSide < 0:
        raise DomainError("N={} darf nicht negativ sein".format(numPerSide))
    lam = params.wavelength
    if not d0 > numPerSide * lam:
        raise PreconditionError(
            "kohärente Platzierung verlangt d0 > N·λ, aber d0={} und N·λ={}".format(d0, numPerSide * lam))

    return coherentOffsets(np.asarray(d0, dtype=float), lam, numPerSide)


def coherentOffsets(d0: np.ndarray, wavelength: float, numPerSide: int) -> np.ndarray:
    """Vektorisierte Form von :func:`coherentPositions` ohne Prüfungen, eine Zeile je Wert von d0.
    Alle d0 müssen größer als Nλ sein."""
    step = np.arange(-numPerSide, numPerSide + 1) * wavelength
    d = d0[..., None]
    return step * (2.0 * d + step) / (2.0 * (d + step))


def farZonePositions(params: SystemParams, numPerSide: int) -> np.ndarray:
    """Offsets x_n = nλ, Näherung für d0 ≫ Nλ"""
    if numPerSide < 0:
        raise DomainError("N={} darf nicht negativ sein".format(numPerSide))
    return np.arange(-numPerSide, numPerSide + 1) * params.wavelength


@dataclass(frozen=True)
class SpacingProfile:
    """Abstände Δx_n = x_{n+1} - x_n benachbarter PAs, n = -N..N-1"""

    entries: Tuple[Tuple[int, float], ...]

    @property
    def indices(self) -> np.ndarray:
        return np.array([n for (n, _) in self.entries], dtype=int)

    @property
    def spacings(self) -> np.ndarray:
        return np.array([d for (_, d) in self.entries], dtype=float)


def spacingProfile(offsets: Union[np.ndarray, List[float], Tuple[float, ...]]) -> SpacingProfile:
    """Berechnet die Abstände benachbarter PAs.

    :param offsets: streng aufsteigende Offsets der 2N+1 PAs
    :return: das Profil mit 2N Einträgen
    :rtype: SpacingProfile
    """
    offs = np.asarray(offsets, dtype=float)
    if len(offs) % 2 != 1:
        raise ContractError("es werden 2N+1 Offsets erwartet, nicht {}".format(len(offs)))
    diffs = np.diff(offs)
    if np.any(diffs <= 0):
        raise ContractError("Offsets müssen streng aufsteigend sein")
    n = len(offs) // 2
    return SpacingProfile(tuple((i, float(d)) for (i, d) in zip(range(-n, n), diffs)))


def outOfRoomPAs(array: PinchingArray, room: RoomGeometry) -> List[int]:
    """Indizes n der PAs, die außerhalb von [0, D] auf dem Wellenleiter liegen.
    Es wird nichts abgeschnitten, da dies die Kohärenz zerstören würde."""
    n = array.numPerSide
    return [i for (i, p) in zip(range(-n, n + 1), array.positions) if p < 0.0 or p > room.extent]


def spmuCenterPosition(room: RoomGeometry) -> float:
    return room.extent / 2.0


def highSnrSumRate(
        x: Union[float, np.ndarray],
        u1: UserPosition,
        u2: UserPosition,
        room: RoomGeometry,
        params: SystemParams) -> Union[float, np.ndarray]:
    """
    Summenrate zweier Nutzer bei hoher SNR, wenn sich beide eine PA bei ``x`` teilen:
    Σ_i (1/I)·log2(γP/((x-x_i)²+y_i²+h²)).

    :param x: Position(en) der PA
    :return: Summenrate in bit/s/Hz, gleiche Form wie ``x``
    """
    gp = params.transmitSnr
    h2 = room.height ** 2
    q1 = (x - u1.x) ** 2 + u1.y ** 2 + h2
    q2 = (x - u2.x) ** 2 + u2.y ** 2 + h2
    return (np.log2(gp / q1) + np.log2(gp / q2)) / params.numUsers


def _stationarity(x: Union[float, np.ndarray], x1: float, y1: float, x2: float, y2: float, h2: float) -> Union[float, np.ndarray]:
    return (x - x1) / ((x - x1) ** 2 + y1 ** 2 + h2) - (x2 - x) / ((x - x2) ** 2 + y2 ** 2 + h2)


def _sumLogDistances(x: Union[float, np.ndarray], x1: float, y1: float, x2: float, y2: float, h2: float) -> Union[float, np.ndarray]:
    return np.log2((x - x1) ** 2 + y1 ** 2 + h2) + np.log2((x - x2) ** 2 + y2 ** 2 + h2)


def optimalSpmuPosition(u1: UserPosition, u2: UserPosition, room: RoomGeometry) -> float:
    """
    Optimale Position einer PA, die sich zwei Nutzer teilen. Maximiert wird die Summenrate
    bei hoher SNR, gesucht wird also eine Nullstelle von

        (x-x1)/((x-x1)²+y1²+h²) - (x2-x)/((x-x2)²+y2²+h²)

    in [x1, x2]. An den Rändern hat die Funktion unterschiedliche Vorzeichen. Da mehrere
    Nullstellen möglich sind, wird das Intervall zunächst abgetastet, jeder Wechsel von
    negativ nach positiv (ein lokales Maximum) per Bisektion verfeinert und das beste
    Maximum gewählt.

    :param u1: erster Nutzer
    :type u1: UserPosition
    :param u2: zweiter Nutzer, die Reihenfolge ist egal
    :type u2: UserPosition
    :param room: der Raum, benötigt wird h
    :type room: RoomGeometry
    :return: Position der PA auf dem Wellenleiter
    :rtype: float
    """
    if u1.x > u2.x:
        (u1, u2) = (u2, u1)
    if u1.x == u2.x:
        return u1.x

    (x1, y1, x2, y2, h2) = (u1.x, u1.y, u2.x, u2.y, room.height ** 2)

    def g(x: float) -> float:
        return float(_stationarity(x, x1, y1, x2, y2, h2))

    points = max(2, math.ceil((x2 - x1) / SCAN_STEP)) + 1
    grid = np.linspace(x1, x2, points)
    values = _stationarity(grid, x1, y1, x2, y2, h2)
    brackets = np.nonzero((values[:-1] < 0) & (values[1:] >= 0))[0]

    best = x1
    bestValue = math.inf
    for i in brackets:
        (a, b) = (float(grid[i]), float(grid[i + 1]))
        if values[i + 1] == 0:
            root = b
        else:
            try:
                root = scipy.optimize.bisect(g, a, b, xtol=BISECT_XTOL, maxiter=BISECT_MAXITER)
            except RuntimeError as e:
                raise NumericalError("Bisektion in [{}, {}] nicht konvergiert: {}".format(a, b, e))
        cost = float(_sumLogDistances(root, x1, y1, x2, y2, h2))
        if cost < bestValue:
            (best, bestValue) = (root, cost)

    if len(brackets) > 1:
        logger.debug("{} lokale Maxima zwischen {} und {}, gewählt {}".format(len(brackets), x1, x2, best))
    return best


def optimalSpmuPositions(
        x1: np.ndarray, y1: np.ndarray,
        x2: np.ndarray, y2: np.ndarray,
        room: RoomGeometry) -> np.ndarray:
    """
    Vektorisierte Variante von :func:`optimalSpmuPosition` für viele Nutzerpaare.
    Abgetastet wird mit einem gröberen Gitter, danach wird für alle Kandidaten gleichzeitig
    bisektiert. Ist das Maximum eindeutig, stimmen beide Varianten bis auf 1e-9 m überein.

    :return: Positionen der PA, eine pro Paar
    :rtype: np.ndarray
    """
    h2 = room.height ** 2
    swap = x1 > x2
    (xa, xb) = (np.where(swap, x2, x1), np.where(swap, x1, x2))
    (ya, yb) = (np.where(swap, y2, y1), np.where(swap, y1, y2))

    t = np.linspace(0.0, 1.0, BATCH_GRID_POINTS)
    grid = xa[:, None] + (xb - xa)[:, None] * t[None, :]
    values = _stationarity(grid, xa[:, None], ya[:, None], xb[:, None], yb[:, None], h2)
    (rows, cols) = np.nonzero((values[:, :-1] < 0) & (values[:, 1:] >= 0))

    lo = grid[rows, cols]
    hi = grid[rows, cols + 1]
    (bx1, by1, bx2, by2) = (xa[rows], ya[rows], xb[rows], yb[rows])
    for _ in range(BATCH_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        neg = _stationarity(mid, bx1, by1, bx2, by2, h2) < 0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    roots = 0.5 * (lo + hi)

    result = xa.astype(float).copy()
    if len(rows) > 0:
        cost = _sumLogDistances(roots, bx1, by1, bx2, by2, h2)
        order = np.lexsort((cost, rows))
        (uniqueRows, first) = np.unique(rows[order], return_index=True)
        result[uniqueRows] = roots[order][first]
    return result
