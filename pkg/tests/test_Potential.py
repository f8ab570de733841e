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

import math

import numpy as np
import pytest


def test_exponentialCoefficients(sinePotential):
    assert fourierCoeffV(sinePotential, 2) == pytest.approx(1.0)
    assert fourierCoeffV(sinePotential, -2) == pytest.approx(1.0)
    assert fourierCoeffV(sinePotential, 0) == 0
    assert fourierCoeffV(sinePotential, 4) == 0


def test_cosinePresetMatchesSine(cosPotential, sinePotential):
    assert cosPotential.coeffs.keys() == sinePotential.coeffs.keys()

    for m, value in cosPotential.coeffs.items():
        assert value == pytest.approx(sinePotential.coeffs[m])

    assert cosPotential.isReal


def test_zeroCosineGivesEmptyCoefficients():
    p = buildPotential('cos_v', vk=[0.0, 0.0])

    assert p.coeffs == {}
    assert p.isZero


def test_sineBasisValue(sinePotential):
    sine = sineCoefficients(sinePotential, 8)

    assert sine[2] == pytest.approx(1.0 / SQRT2)
    assert np.allclose(sine[1::2], 0.0, atol=1e-14)
    assert fourierCoeffV(sinePotential, 2, basis='sine') == pytest.approx(SQRT2)


def test_deltaComb():
    p = buildPotential('delta_comb', alpha=math.pi, support=200)

    assert p.v0 == pytest.approx(1.0)
    assert p.support == 200
    assert fourierCoeffV(p, 40) == pytest.approx(1.0)
    assert fourierCoeffV(p, -40) == pytest.approx(1.0)

    # Sawtooth vanishes at the middle of the period
    assert abs(evaluateQ(p, math.pi / 2)) < 1e-12


def test_evaluateQ(sinePotential):
    x = np.array([0.0, math.pi / 4, math.pi / 2])

    assert np.allclose(evaluateQ(sinePotential, x), [0.0, 1.0, 0.0], atol=1e-14)


def test_tailEnergy(sinePotential):
    assert tailEnergy(sinePotential, 0) == pytest.approx(math.sqrt(0.5))
    assert tailEnergy(sinePotential, 2) == pytest.approx(math.sqrt(0.5))
    assert tailEnergy(sinePotential, 3) == 0

    with pytest.raises(ValueError):
        tailEnergy(sinePotential, -1)


def test_sineRecoversEvenAndOddParts():
    coeffs = {2: 0.3 + 0.2j, -2: 0.3 - 0.2j, 4: -0.1j, -4: 0.1j, 6: 0.05, -6: 0.05}

    p = buildPotential('exp_q', coeffs=coeffs, real=True)

    recovered = exponentialFromSine(sineCoefficients(p, 201), 6)

    for m, value in coeffs.items():
        assert abs(recovered[m] - value) < 1e-10


def test_sequenceRoundTrip(cosPotential):
    vMinus, vPlus = potentialSequence(cosPotential, 3)

    assert np.allclose(vMinus, [1.0, 0.0, 0.0])
    assert np.allclose(vPlus, [1.0, 0.0, 0.0])

    rebuilt = potentialFromSequence(vMinus, vPlus, isReal=True)

    assert rebuilt.coeffs.keys() == cosPotential.coeffs.keys()
    assert rebuilt.isReal


def test_configRoundTrip(complexPotential):
    rebuilt = potentialFromConfig(potentialToConfig(complexPotential))

    assert rebuilt == complexPotential


def test_configWithNestedParameters():
    p = potentialFromConfig({'kind': 'cos_v', 'coeffs': {'vk': [SQRT2]}})

    assert fourierCoeffV(p, 2) == pytest.approx(1.0)

    with pytest.raises(ConfigError):
        potentialFromConfig({'coeffs': {}})


def test_scalePotential(complexPotential):
    scaled = scalePotential(complexPotential, 2.0)

    assert fourierCoeffV(scaled, 4) == pytest.approx(2.0 * fourierCoeffV(complexPotential, 4))
    assert scalePotential(complexPotential, 0.0).isZero


@pytest.mark.parametrize(
    'kind, params, error',
    [
        ('exp_q', {'coeffs': {0: 1.0}}, ZeroMeanViolation),
        ('exp_q', {'coeffs': {3: 1.0}}, ParityError),
        ('exp_q', {'coeffs': {2: 1.0}, 'real': True}, ConjugacyViolation),
        ('exp_v', {'coeffs': {0: 1.0, 2: 1.0}}, ZeroMeanViolation),
        ('exp_v', {'coeffs': {1: 1.0}}, ParityError),
        ('cos_v', {'vk': [[1.0, 1.0]]}, ConjugacyViolation),
        ('delta_comb', {'alpha': 0.0}, InvalidParams),
        ('square_well', {}, InvalidParams),
    ],
)
def test_invalidPotentials(kind, params, error):
    with pytest.raises(error):
        buildPotential(kind, **params)


def test_oddIndexRejected(sinePotential):
    with pytest.raises(ParityError):
        fourierCoeffV(sinePotential, 3)
