# Copyright (c) 2026 PyPASS contributors
#
# This file is part of PyPASS.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.

from . import errors
from . import utils
from . import system_model
from . import channel
from . import placement
from . import analytic_rates
from . import montecarlo
from . import config
from . import experiments

from .errors import (
    PassError,
    DomainError,
    PreconditionError,
    ContractError,
    NumericalError,
    ConfigError
)
from .system_model import (
    SystemParams,
    RoomGeometry,
    UserPosition,
    RandomSource,
    makeParams
)
from .channel import PinchingArray
from .montecarlo import ScenarioConfig, RateEstimate, estimateRate, estimateSumRate
from .analytic_rates import RateValue

try:
    from . import pandas
except ImportError:
    pass
