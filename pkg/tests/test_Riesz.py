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

import numpy as np
import pytest


def test_freeOperatorHasNoDeviation(zeroPotential):
    record = projectionDeviation(zeroPotential, 4, K=16)

    assert not np.any(record.B)
    assert record.l1LinfProxy == 0.0
    assert record.l2OpNorm == 0.0
    assert record.idempotent and record.traceOk


@pytest.mark.parametrize('bc', [BC_PER_MINUS, BC_DIR])
def test_firstOrderByQuadrature(complexPotential, bc):
    closed = firstOrderDeviation(complexPotential, 3, bc=bc, K=24)
    quadrature = firstOrderQuadrature(complexPotential, 3, bc=bc, K=24)

    assert np.allclose(closed, quadrature, atol=1e-10)


def test_firstOrderByScaling(complexPotential):
    closed = firstOrderDeviation(complexPotential, 2, K=24)
    scaled = firstOrderByScaling(complexPotential, 2, K=24)

    assert np.max(np.abs(closed - scaled)) < 1e-6


@pytest.mark.parametrize('n', [2, 3, 4])
def test_projectionIsIdempotent(cosPotential, n):
    record = projectionDeviation(cosPotential, n, K=32)

    assert record.idempotent
    assert record.traceOk
    assert record.quadratureNodes >= 128


def test_dirichletProjection(cosPotential):
    record = projectionDeviation(cosPotential, 3, bc=BC_DIR, K=32)

    assert record.traceOk
    assert record.bc == BC_DIR
    assert record.l1LinfProxy == pytest.approx(2.0 * np.sum(np.abs(record.B)))


def test_indexOutsideBasis(cosPotential):
    with pytest.raises(InvalidParams):
        projectionDeviation(cosPotential, 3, bc=BC_PER_PLUS, K=16)


def test_proxyDecreases(cosPotential):
    scan = deviationScan(cosPotential, '2..6', K=48)

    proxies = [proxy for proxy, _ in scan.table().values()]

    assert list(scan.table()) == [2, 3, 4, 5, 6]
    assert all(first > second for first, second in zip(proxies, proxies[1:]))
    assert scan.slope < 0


@pytest.mark.slow
def test_proxySlope(cosPotential):
    scan = deviationScan(cosPotential, '4..20', K=80, jobs=2)

    proxies = [proxy for proxy, _ in scan.table().values()]

    assert all(first > second for first, second in zip(proxies, proxies[1:]))
    assert scan.slope <= -0.8


@pytest.mark.slow
def test_deltaCombProxyDecreases(deltaComb):
    scan = deviationScan(deltaComb, '6..24', K=96, jobs=2)

    proxies = [proxy for proxy, _ in scan.table().values()]

    assert list(scan.table()) == list(range(6, 25))
    assert all(first > second for first, second in zip(proxies, proxies[1:]))
    assert scan.slope < 0
