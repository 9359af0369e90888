# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

"""LoS-Kanal, exakte kohärente Summen über mehrere Pinching-Antennen (PAs) und das SNR pro Szenario.

Komplexe Kanalgewinne werden als ``complex`` ohne den Faktor γ geliefert. γ wird erst
bei der Berechnung des SNR berücksichtigt.
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ContractError, DomainError
from .system_model import RoomGeometry, SystemParams, UserPosition

if TYPE_CHECKING:
    from .montecarlo import ScenarioConfig

NOISE_MODELS = ("per-pa", "single")


@dataclass(frozen=True)
class PinchingArray:
    """
    2N+1 PAs auf dem Wellenleiter. Die PA mit Index n liegt bei ``anchor + offsets[n+N]``.

    :param anchor: Koordinate der mittleren PA (n=0) auf dem Wellenleiter
    :type anchor: float
    :param offsets: streng aufsteigende Offsets, der mittlere ist 0
    :type offsets: Tuple[float, ...]
    """

    anchor: float
    offsets: Tuple[float, ...]

    def __post_init__(self) -> None:
        offs = tuple(float(o) for o in self.offsets)
        object.__setattr__(self, "offsets", offs)
        if len(offs) % 2 != 1:
            raise ContractError("ein PinchingArray braucht 2N+1 PAs, nicht {}".format(len(offs)))
        if any(b <= a for (a, b) in zip(offs, offs[1:])):
            raise ContractError("Offsets müssen streng aufsteigend sein")
        if offs[len(offs) // 2] != 0.0:
            raise ContractError("der Offset der mittleren PA muss 0 sein")

    @property
    def numPerSide(self) -> int:
        """N, die Anzahl PAs auf jeder Seite der mittleren PA"""
        return len(self.offsets) // 2

    @property
    def positions(self) -> np.ndarray:
        return self.anchor + np.asarray(self.offsets)


def losAmplitude(distance: float, params: SystemParams) -> float:
    """Amplitude c/(4π f_c d) = λ/(4π d) des Freiraumkanals.

    :param distance: Abstand in m, muss positiv sein
    :type distance: float
    :param params: Systemparameter
    :type params: SystemParams
    :rtype: float
    """
    if not distance > 0:
        raise DomainError("Abstand {} m muss positiv sein".format(distance))
    return params.wavelength / (4.0 * math.pi * distance)


def paUserDistance(user: UserPosition, paX: float, room: RoomGeometry) -> float:
    """Abstand zwischen der PA bei ``paX`` auf dem Wellenleiter und dem Nutzer am Boden."""
    return math.sqrt((paX - user.x) ** 2 + user.y ** 2 + room.height ** 2)


def effectiveGainsExact(
        paPositions: np.ndarray,
        userX: np.ndarray,
        userY: np.ndarray,
        room: RoomGeometry,
        params: SystemParams) -> np.ndarray:
    """
    Vektorisierte Variante von :func:`effectiveGainExact` für viele Nutzer.
    Die Phase setzt sich aus Luftstrecke d_n und Strecke im Wellenleiter zusammen und wird
    modulo λ reduziert.

    :param paPositions: Matrix (M, 2N+1) der PA-Koordinaten auf dem Wellenleiter
    :type paPositions: np.ndarray
    :param userX: x-Koordinaten der M Nutzer
    :type userX: np.ndarray
    :param userY: y-Koordinaten der M Nutzer
    :type userY: np.ndarray
    :return: komplexe Kanalgewinne, Länge M
    :rtype: np.ndarray
    """
    lam = params.wavelength
    dist = np.sqrt((paPositions - userX[:, None]) ** 2 + (userY ** 2 + room.height ** 2)[:, None])
    cycles = np.mod(dist + paPositions, lam) / lam
    return np.sum(np.exp(-2j * np.pi * cycles) / dist, axis=1)


def effectiveGainExact(array: PinchingArray, user: UserPosition, room: RoomGeometry, params: SystemParams) -> complex:
    """Exakter effektiver Kanalgewinn Σ_n (1/d_n)·exp(-j2π(d_n + X_n)/λ) ohne den Faktor γ.

    :param array: die PAs
    :type array: PinchingArray
    :param user: der Nutzer
    :type user: UserPosition
    :rtype: complex
    """
    gains = effectiveGainsExact(
        array.positions[None, :],
        np.array([user.x]),
        np.array([user.y]),
        room,
        params)
    return complex(gains[0])


def mpsuSnrScale(numPas: int, noiseModel: str) -> float:
    """Nenner des MPSU-SNR: 2N+1 bei Rauschen pro PA, sonst 1"""
    if noiseModel == "per-pa":
        return float(numPas)
    elif noiseModel == "single":
        return 1.0
    else:
        raise ContractError("unbekanntes Rauschmodell '{}'".format(noiseModel))


def singleAntennaSnr(
        transmitSnr: float,
        dx: Union[float, np.ndarray],
        y: Union[float, np.ndarray],
        room: RoomGeometry) -> Union[float, np.ndarray]:
    """SNR γ·P/(dx²+y²+h²) einer einzelnen Antenne im horizontalen Abstand dx entlang
    des Wellenleiters, auch vektorisiert"""
    return transmitSnr / (dx ** 2 + y ** 2 + room.height ** 2)


def snrForScenario(
        scenario: "ScenarioConfig",
        user: UserPosition,
        placement: Union[PinchingArray, Sequence[float], float, None] = None) -> float:
    """
    Empfangs-SNR eines Nutzers. Raum und Systemparameter stammen aus dem Szenario.

    - MPSU: γ·P·|G|²/(2N+1), ``placement`` ist ein :class:`PinchingArray` (oder seine Offsets
      relativ zu x des Nutzers)
    - SPSU: γ·P/(y²+h²), die PA liegt direkt über dem Nutzer
    - SPMU: γ·P/((x_pa-x)²+y²+h²), ``placement`` ist die Koordinate x_pa der PA
    - SISO: γ·P/(x²+y²+h²), Antenne in der Ecke beim AP

    :param scenario: das Szenario
    :type scenario: ScenarioConfig
    :param user: der Nutzer
    :type user: UserPosition
    :param placement: Platzierung passend zum Szenario
    :return: SNR ohne Einheit
    :rtype: float
    """
    params = scenario.params
    room = scenario.room
    gp = params.transmitSnr

    if scenario.kind == "mpsu":
        array: Optional[PinchingArray] = None
        if isinstance(placement, PinchingArray):
            array = placement
        elif placement is not None and not isinstance(placement, (int, float)):
            array = PinchingArray(user.x, tuple(placement))
        if array is None:
            raise ContractError("MPSU benötigt ein PinchingArray als Platzierung")
        if array.numPerSide != scenario.nPas:
            raise ContractError("Szenario erwartet N={}, die Platzierung hat N={}".format(scenario.nPas, array.numPerSide))
        g = effectiveGainExact(array, user, room, params)
        return gp * abs(g) ** 2 / mpsuSnrScale(len(array.offsets), scenario.noiseModel)
    elif scenario.kind == "spsu":
        return float(singleAntennaSnr(gp, 0.0, user.y, room))
    elif scenario.kind == "spmu":
        if placement is None or not isinstance(placement, (int, float)):
            raise ContractError("SPMU benötigt die Koordinate der PA als Platzierung")
        return float(singleAntennaSnr(gp, float(placement) - user.x, user.y, room))
    elif scenario.kind == "siso":
        return float(singleAntennaSnr(gp, user.x, user.y, room))
    else:
        raise ContractError("unbekanntes Szenario '{}'".format(scenario.kind))
