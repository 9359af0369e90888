# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

import math

import pytest

from PyPASS import analytic_rates
from PyPASS.errors import DomainError, NumericalError, PreconditionError
from PyPASS.system_model import SPEED_OF_LIGHT, RoomGeometry, SystemParams, makeParams, withTxPower, withTxPowerDbm


def _params(txPowerDbm: float = 30.0, numUsers: int = 2) -> SystemParams:
    return makeParams(2.4e9, 1e6, txPowerDbm, numUsers)


ROOM = RoomGeometry(10.0, 20.0)


def test_farZoneAmplitude() -> None:
    params = makeParams(SPEED_OF_LIGHT / 0.125, 1e6, 30.0, 2)
    assert (analytic_rates.farZoneAmplitude(20.0, params, 0) == 0.0)
    assert (analytic_rates.farZoneAmplitude(20.0, params, 10) == pytest.approx(0.99935, abs=1e-4))
    values = [analytic_rates.farZoneAmplitude(20.0, params, n) for n in range(6)]
    assert (all(b > a for (a, b) in zip(values, values[1:])))
    with pytest.raises(DomainError):
        analytic_rates.farZoneAmplitude(0.0, params, 3)


def test_mpsuGainFactor() -> None:
    assert (analytic_rates.mpsuGainFactor(0) == 1)
    assert (analytic_rates.mpsuGainFactor(1) == 2)
    assert (analytic_rates.mpsuGainFactor(10) == 20)
    with pytest.raises(DomainError):
        analytic_rates.mpsuGainFactor(-1)


def test_rateMpsuReference() -> None:
    r = analytic_rates.rateMpsu(_params(), ROOM, 10)
    assert (r.method == "theorem")
    assert (r.value == pytest.approx(15.048, abs=1e-2))

    spsu = analytic_rates.rateSpsu(_params(), ROOM)
    assert (spsu.value == pytest.approx(12.888, abs=1e-2))
    assert (r.value - spsu.value == pytest.approx(0.5 * math.log2(20.0), abs=1e-3))


def test_rateSpsuSharedKernel() -> None:
    for p in [-10.0, 10.0, 30.0]:
        params = _params(p)
        assert (analytic_rates.rateSpsu(params, ROOM).value == analytic_rates.rateMpsu(params, ROOM, 0).value)
        assert (analytic_rates.rateSpsu(params, ROOM).value == analytic_rates.rateMpsu(params, ROOM, 7, gainFactor=1.0).value)


def test_zeroPower() -> None:
    params = withTxPower(_params(), 0.0)
    assert (analytic_rates.rateMpsu(params, ROOM, 10).value == 0.0)
    assert (analytic_rates.rateSpsu(params, ROOM).value == 0.0)
    assert (analytic_rates.rateSpsuMaclaurin(params, ROOM).value == pytest.approx(0.0, abs=1e-15))
    assert (analytic_rates.rateSpmuQuadrature(params, ROOM).value == 0.0)
    assert (analytic_rates.rateSisoQuadrature(params, ROOM).value == 0.0)
    assert (analytic_rates.scenarioGapMpsuSpsu(params, ROOM, 10) == 0.0)

    r = analytic_rates.rateSpmuApprox(params, ROOM, variant="arctan")
    assert (r.value == 0.0)
    assert (r.method == "approx_arctan")


def test_rateGainErrors() -> None:
    with pytest.raises(DomainError):
        analytic_rates.rateMpsu(_params(), ROOM, 3, gainFactor=0.5)
    with pytest.raises(DomainError):
        analytic_rates.rateHighSnr(_params(), ROOM, 0.0)


def test_highSnrTail() -> None:
    params = withTxPower(_params(), 0.0)
    assert (analytic_rates.rateHighSnr(params, ROOM, 1.0).value == pytest.approx(0.105, abs=1e-3))


def test_highSnrReference() -> None:
    params = _params()
    theorem = analytic_rates.rateMpsu(params, ROOM, 10).value
    high = analytic_rates.rateHighSnr(params, ROOM, 20.0)
    assert (high.method == "high_snr")
    assert (abs(high.value - theorem) < 1e-6)


def test_highSnrBound() -> None:
    for (d, h) in [(10.0, 20.0), (10.0, 5.0), (2.0, 2.0), (20.0, 3.0)]:
        room = RoomGeometry(d, h)
        for p in [-10.0, 0.0, 20.0, 40.0]:
            for g in [1.0, 8.0, 40.0]:
                params = _params(p)
                diff = abs(analytic_rates.rateHighSnr(params, room, g).value - analytic_rates.rateMpsu(params, room, 0, g).value)
                bound = 2 * d * d / (3 * params.numUsers * math.log(2.0) * (h * h + g * params.transmitSnr))
                assert (diff <= bound * (1 + 1e-9) + 1e-12)


def test_maclaurin() -> None:
    for (d, h) in [(10.0, 20.0), (5.0, 20.0), (10.0, 11.0)]:
        room = RoomGeometry(d, h)
        for p in [-10.0, 10.0, 30.0]:
            params = _params(p)
            r = analytic_rates.rateSpsuMaclaurin(params, room)
            assert (r.method == "maclaurin")
            assert (abs(r.value - analytic_rates.rateSpsu(params, room).value) < 1e-6)


def test_maclaurinErrors() -> None:
    with pytest.raises(PreconditionError):
        analytic_rates.rateSpsuMaclaurin(_params(), RoomGeometry(10.0, 5.0))
    with pytest.raises(PreconditionError):
        analytic_rates.rateSpsuMaclaurin(_params(), RoomGeometry(10.0, 10.0))
    with pytest.raises(NumericalError):
        analytic_rates.rateSpsuMaclaurin(_params(), RoomGeometry(10.0, 10.0001))
    with pytest.raises(NumericalError):
        analytic_rates.rateSpsuMaclaurin(_params(), RoomGeometry(10.0, 20.0), maxTerms=3)


def test_spmuQuadrature() -> None:
    params = _params()
    r = analytic_rates.rateSpmuQuadrature(params, ROOM)
    assert (r.method == "quadrature")
    assert (r.value == pytest.approx(12.87, abs=2e-2))
    assert (r.value < analytic_rates.rateSpsu(params, ROOM).value)


def test_spmuApprox() -> None:
    for p in [0.0, 10.0, 20.0, 30.0]:
        params = _params(p)
        quad = analytic_rates.rateSpmuQuadrature(params, ROOM).value
        approx = analytic_rates.rateSpmuApprox(params, ROOM)
        assert (approx.method == "approx")
        assert (abs(approx.value - quad) < 0.2)


def test_spmuApproxArctan() -> None:
    r = analytic_rates.rateSpmuApprox(_params(), ROOM, variant="arctan")
    assert (r.method == "approx_arctan")
    assert (r.value == pytest.approx(11.96, abs=1e-2))
    with pytest.raises(DomainError):
        analytic_rates.rateSpmuApprox(_params(), ROOM, variant="other")


def test_spmuApproxWarning(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level("WARNING", logger="PyPASS"):
        analytic_rates.rateSpmuApprox(_params(), RoomGeometry(10.0, 5.0))
    assert ("h > D" in caplog.text)


def test_sisoQuadrature() -> None:
    params = _params()
    siso = analytic_rates.rateSisoQuadrature(params, ROOM).value
    assert (siso < analytic_rates.rateSpmuQuadrature(params, ROOM).value)


def test_highSnrSlope() -> None:
    assert (analytic_rates.highSnrSlope("mpsu", _params(numUsers=2)) == 0.5)
    assert (analytic_rates.highSnrSlope("spmu", _params(numUsers=1)) == 1.0)

    lo = _params(60.0)
    hi = withTxPowerDbm(lo, 60.0 + 10.0 * math.log10(4.0))
    rates = [
        lambda p: analytic_rates.rateMpsu(p, ROOM, 10).value,
        lambda p: analytic_rates.rateSpsu(p, ROOM).value,
        lambda p: analytic_rates.rateSpmuQuadrature(p, ROOM).value,
    ]
    for rate in rates:
        slope = (rate(hi) - rate(lo)) / math.log2(4.0)
        assert (slope == pytest.approx(analytic_rates.highSnrSlope("any", lo), rel=1e-2))


def test_scenarioGap() -> None:
    params = _params()
    gap = analytic_rates.scenarioGapMpsuSpsu(params, ROOM, 10)
    assert (gap == pytest.approx(math.log2(20.0), abs=1e-3))
    highSnr = analytic_rates.rateHighSnr(params, ROOM, 20.0).value - analytic_rates.rateHighSnr(params, ROOM, 1.0).value
    assert (gap == pytest.approx(params.numUsers * highSnr, rel=1e-9))
    assert (analytic_rates.scenarioGapMpsuSpsu(_params(-10.0), ROOM, 1) > 0)
    with pytest.raises(DomainError):
        analytic_rates.scenarioGapMpsuSpsu(params, ROOM, 0)


def test_antennaGain() -> None:
    params = _params(60.0)
    for n in [5, 10, 20]:
        mpsu = analytic_rates.rateMpsu(params, ROOM, n).value
        spsu = analytic_rates.rateSpsu(params, ROOM).value
        assert (abs(params.numUsers * (mpsu - spsu) - math.log2(2 * n)) < 0.05)


def test_monotonicity() -> None:
    params = _params()
    byN = [analytic_rates.rateMpsu(params, ROOM, n).value for n in range(0, 6)]
    assert (all(b > a for (a, b) in zip(byN, byN[1:])))
    byP = [analytic_rates.rateSpsu(_params(p), ROOM).value for p in range(-10, 41, 5)]
    assert (all(b > a for (a, b) in zip(byP, byP[1:])))


def test_ordering() -> None:
    for room in [RoomGeometry(10.0, 20.0), RoomGeometry(10.0, 5.0)]:
        for p in [0.0, 30.0]:
            params = _params(p)
            mpsu = analytic_rates.rateMpsu(params, room, 10).value
            spsu = analytic_rates.rateSpsu(params, room).value
            spmu = analytic_rates.rateSpmuQuadrature(params, room).value
            assert (mpsu > spsu > spmu)


def test_analyticMethods() -> None:
    assert (analytic_rates.analyticMethods("mpsu") == ("theorem", "high_snr"))
    assert (analytic_rates.analyticMethods("spsu")[0] == "theorem")
    assert (analytic_rates.analyticMethods("spmu", "center")[0] == "quadrature")
    assert (analytic_rates.analyticMethods("spmu", "optimized") == ())
    assert (analytic_rates.analyticMethods("siso") == ("quadrature",))
