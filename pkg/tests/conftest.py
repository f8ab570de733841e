# Copyright (C) 2024  HillGap developers
#
# This file is part of HillGap.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.


from HillGap.Utility import *
from HillGap.Library import *

import pytest


@pytest.fixture
def zeroPotential():
    return buildPotential('exp_q', coeffs={}, real=True)


@pytest.fixture
def cosPotential():
    # v = 2 cos 2x, i.e. V(2) = V(-2) = 1
    return buildPotential('cos_v', vk=[SQRT2])


@pytest.fixture
def twoModePotential():
    # v = 2 cos 2x + cos 4x
    return buildPotential('cos_v', vk=[SQRT2, 1.0 / SQRT2])


@pytest.fixture
def sinePotential():
    # Q = sin 2x
    return buildPotential('exp_q', coeffs={2: -0.5j, -2: 0.5j}, real=True)


@pytest.fixture
def gasymovPotential():
    # v = exp(2ix)
    return buildPotential('exp_v', coeffs={2: 1.0})


@pytest.fixture
def deltaComb():
    return buildPotential('delta_comb', alpha=1.0, support=200)


@pytest.fixture
def complexPotential():
    return buildPotential('exp_v', coeffs={2: 0.3 + 0.1j, -2: 0.2j, 4: -0.1})


@pytest.fixture
def mathieu():
    # Characteristic values at q = 1 for -y'' + 2 cos(2x) y
    return {
        'a1': 1.8591080725,
        'b1': -0.1102488170,
        'b2': 3.9170247729,
    }
