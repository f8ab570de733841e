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
import scipy.optimize


def freeTrace(lam):
    return 2.0 * math.cos(math.sqrt(lam) * math.pi)


def test_freeMonodromy(zeroPotential):
    result = monodromy(zeroPotential, 4.0)

    assert abs(result.trace - 2.0) < 1e-12
    assert np.allclose(result.matrix, np.eye(2), atol=1e-12)

    result = monodromy(zeroPotential, 2.0)

    assert abs(result.trace - freeTrace(2.0)) < 1e-12
    assert result.y2Pi == result.matrix[0, 1]


@pytest.mark.parametrize('lam', np.linspace(0.5, 40.0, 9))
def test_freeTraceOnGrid(zeroPotential, lam):
    result = monodromy(zeroPotential, lam)

    assert abs(result.trace - freeTrace(lam)) < 1e-9
    assert abs(result.det - 1.0) < 1e-8


@pytest.mark.parametrize('lam', [0.3, 3.3 + 0.5j, 17.0])
def test_wronskianConserved(complexPotential, lam):
    assert abs(monodromy(complexPotential, lam).det - 1.0) < 1e-8


def test_mathieuShooting(cosPotential, mathieu):
    upper, lower = locateBCEigenvalues(cosPotential, BC_PER_MINUS, 1)

    assert abs(upper - mathieu['a1']) < 1e-6
    assert abs(lower - mathieu['b1']) < 1e-6

    (mu,) = locateBCEigenvalues(cosPotential, BC_DIR, 1)

    assert abs(mu - mathieu['b1']) < 1e-6


def test_shootingMatchesMatrix(complexPotential):
    shot = locateBCEigenvalues(complexPotential, BC_PER_PLUS, 2)
    dense = pairFromMatrix(complexPotential, 2, 32)

    dense.sort(key=lambda value: (value.real, value.imag), reverse=True)

    for a, b in zip(shot, dense):
        assert relativeDifference(a, b) < 1e-6


def test_freeDoubleRoot(zeroPotential):
    roots = locateBCEigenvalues(zeroPotential, BC_PER_PLUS, 4)

    assert len(roots) == 2
    assert all(abs(root - 16.0) < 1e-9 for root in roots)

    with pytest.raises(MultiplicityAmbiguous):
        locateBCEigenvalues(zeroPotential, BC_PER_PLUS, 4, strict=True)


def test_dirichletInterlaces(cosPotential):
    for n in (1, 2):
        pair = [value.real for value in locateBCEigenvalues(cosPotential, bcForIndex(n), n)]
        (mu,) = locateBCEigenvalues(cosPotential, BC_DIR, n)

        assert min(pair) - 1e-7 <= mu.real <= max(pair) + 1e-7


@pytest.mark.slow
def test_kronigPenneyTrace(deltaComb):
    result = monodromy(deltaComb, 9.3)

    assert abs(result.trace - kronigPenneyTrace(1.0, 9.3)) < 1e-3


@pytest.mark.slow
def test_kronigPenneyEigenvalues(deltaComb):
    def gap(lam):
        return kronigPenneyTrace(1.0, lam).real - 2.0

    expected = sorted(
        [
            scipy.optimize.brentq(gap, 3.8, 4.2),
            scipy.optimize.brentq(gap, 4.3, 5.2),
        ],
        reverse=True,
    )

    roots = locateBCEigenvalues(deltaComb, BC_PER_PLUS, 2)

    for root, value in zip(roots, expected):
        assert abs(root - value) < 1e-3


def kronigPenneyPair(n):
    """Exact band edges of the unit delta comb near n^2; the lower edge is n^2."""
    sign = 1.0 if n % 2 == 0 else -1.0

    def gap(lam):
        return sign * kronigPenneyTrace(1.0, lam).real - 2.0

    upper = scipy.optimize.brentq(gap, (n + 1e-6) ** 2, (n + 0.5) ** 2)

    return upper, float(n * n)


@pytest.mark.slow
@pytest.mark.parametrize('n', [4, 5, 8, 12, 13, 16, 20, 24])
def test_deltaCombMatchesKronigPenney(deltaComb, n):
    upper, lower = locateBCEigenvalues(deltaComb, bcForIndex(n), n)
    expectedUpper, expectedLower = kronigPenneyPair(n)

    assert abs(upper - expectedUpper) < 1e-3
    assert abs(lower - expectedLower) < 1e-3
    assert abs((upper - lower) - (expectedUpper - expectedLower)) < 1e-3


@pytest.mark.slow
def test_deltaCombGapNearTwoOverPi(deltaComb):
    upper, lower = locateBCEigenvalues(deltaComb, BC_PER_PLUS, 20)

    assert abs(upper - lower) == pytest.approx(2.0 / math.pi, rel=0.05)


@pytest.mark.slow
@pytest.mark.parametrize('n', range(2, 13))
def test_twoModeShootingMatchesMatrix(twoModePotential, n):
    shot = locateBCEigenvalues(twoModePotential, bcForIndex(n), n)
    dense = sorted(pairFromMatrix(twoModePotential, n, 64), key=lambda value: value.real, reverse=True)

    for a, b in zip(shot, dense):
        assert relativeDifference(a, b) < 1e-6

    (mu,) = locateBCEigenvalues(twoModePotential, BC_DIR, n)

    edges = [value.real for value in shot]

    assert min(edges) - 1e-6 <= mu.real <= max(edges) + 1e-6
