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


def _order(value):
    return value.real, value.imag


def test_freeOperatorIsDiagonal(zeroPotential):
    op = assembleMatrix(zeroPotential, BC_PER_PLUS, 8)

    assert list(op.indices) == [-8, -6, -4, -2, 0, 2, 4, 6, 8]
    assert np.array_equal(op.matrix, np.diag([64, 36, 16, 4, 0, 4, 16, 36, 64]).astype(complex))


def test_periodicBands(cosPotential):
    op = assembleMatrix(cosPotential, BC_PER_PLUS, 8)

    offset = np.abs(op.indices[:, None] - op.indices[None, :])

    assert np.allclose(op.matrix[offset == 2], 1.0)
    assert np.allclose(op.matrix[(offset != 2) & (offset != 0)], 0.0)
    assert np.allclose(np.diag(op.matrix), op.freeDiagonal)


def test_dirichletMatrix(cosPotential, complexPotential):
    op = assembleMatrix(cosPotential, BC_DIR, 8)

    assert list(op.indices) == list(range(1, 9))

    # sin x is mapped to sin 3x
    assert abs(op.matrix[0, 0]) < 1e-14
    assert np.allclose(op.matrix, op.matrix.T)
    assert np.allclose(op.matrix.imag, 0.0)

    op = assembleMatrix(complexPotential, BC_DIR, 8)

    assert np.allclose(op.matrix, op.matrix.T)


def test_cutoffTooSmall(cosPotential):
    with pytest.raises(CutoffTooSmall):
        assembleMatrix(cosPotential, BC_PER_PLUS, 4)


def test_isolationRadius():
    assert isolationRadius(BC_PER_PLUS, 0) == 2.0
    assert isolationRadius(BC_PER_PLUS, 4) == 6.0
    assert isolationRadius(BC_PER_MINUS, 1) == 4.0
    assert isolationRadius(BC_DIR, 2) == 1.5


def test_freeDoubleEigenvalue(zeroPotential):
    op = assembleMatrix(zeroPotential, BC_PER_PLUS, 16)

    found = eigsInDisc(op, 16.0, 1.0)

    assert len(found) == 1
    assert found[0][0] == pytest.approx(16.0)
    assert found[0][1] == 2


def test_mathieuValues(cosPotential, mathieu):
    lower, upper = sorted(pairFromMatrix(cosPotential, 1, 32), key=lambda value: value.real)

    assert abs(upper - mathieu['a1']) < 1e-6
    assert abs(lower - mathieu['b1']) < 1e-6

    (mu,) = pairFromMatrix(cosPotential, 1, 32, bc=BC_DIR)

    assert abs(mu - mathieu['b1']) < 1e-6

    (mu,) = pairFromMatrix(cosPotential, 2, 32, bc=BC_DIR, verify=True)

    assert abs(mu - mathieu['b2']) < 1e-6


def test_windingCount(cosPotential):
    op = assembleMatrix(cosPotential, BC_PER_MINUS, 16)

    assert windingCount(op.matrix, 1.0, 4.0) == 2
    assert windingCount(op.matrix, 1.0, 0.9) == 1
    assert windingCount(op.matrix, 30.0, 1.0) == 0


def test_truncationStable(complexPotential):
    first = pairFromMatrix(complexPotential, 3, 24)
    second = pairFromMatrix(complexPotential, 3, 32)

    for a, b in zip(sorted(first, key=_order), sorted(second, key=_order)):
        assert relativeDifference(a, b) < 1e-8


def test_conjugatePairs():
    p = buildPotential('exp_q', coeffs={2: 2.0j, -2: -2.0j}, real=True)

    values = np.linalg.eigvals(assembleMatrix(p, BC_PER_PLUS, 16).matrix)

    for value in values:
        assert np.min(np.abs(values - np.conj(value))) < 1e-8


def test_exportMatrix(tmp_path, zeroPotential):
    op = assembleMatrix(zeroPotential, BC_DIR, 8)

    path = tmp_path / 'matrix.csv'
    exportMatrixCSV(op, path)

    rows = path.read_text().splitlines()

    assert len(rows) == 8
    assert rows[1].split(',')[2] == '4'
