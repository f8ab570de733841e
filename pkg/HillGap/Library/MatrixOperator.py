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

from __future__ import annotations

from HillGap.Utility import *
from HillGap.Library.Potential import *

from typing import List, Tuple

import math
import functools
import logging
import dataclasses

import numpy as np
import scipy.linalg

__all__ = [
    'TruncatedOperator',
    'assembleMatrix',
    'freeLevels',
    'isolationRadius',
    'windingCount',
    'eigsInDisc',
    'pairFromMatrix',
    'exportMatrixCSV',
]

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class TruncatedOperator:
    bc: str
    cutoff: int
    indices: np.ndarray
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.indices)

    @property
    def freeDiagonal(self) -> np.ndarray:
        return self.indices.astype(float) ** 2


def _indexSet(bc: str, K: int) -> np.ndarray:
    if bc == BC_PER_PLUS:
        return np.arange(-K + (K % 2), K + 1, 2)

    if bc == BC_PER_MINUS:
        return np.arange(-K + 1 - (K % 2), K + 1, 2)

    if bc == BC_DIR:
        return np.arange(1, K + 1)

    raise ValueError(f'unknown boundary condition \'{bc}\'')


# Can throw exceptions
def assembleMatrix(p: PotentialSpec, bc: str, K: int) -> TruncatedOperator:
    """
    Fourier-basis section of L_bc on |k| <= K.

    Per+/-: exp(ikx), entries k^2 + v0 on the diagonal and V(k - m) off it.
    Dir: sqrt(2) sin kx, entries k^2 + v0 + (V~(|k - m|) - V~(k + m)) / sqrt(2),
    where V~(0) = 0.
    """
    if K < MINIMUM_CUTOFF:
        raise CutoffTooSmall(
            f'cutoff K={K} below the minimum {MINIMUM_CUTOFF}', module=__name__
        )

    indices = _indexSet(bc, K)

    if bc == BC_DIR:
        sine = sineTable(p, 2 * K)

        k, m = indices[:, None], indices[None, :]

        matrix = (sine[np.abs(k - m)] - sine[k + m]) / SQRT2
    else:
        table = exponentialTable(p, 2 * K)

        matrix = table[(indices[:, None] - indices[None, :]) + 2 * K]

    matrix = np.array(matrix, dtype=complex)
    matrix[np.diag_indices_from(matrix)] += indices.astype(float) ** 2 + p.v0

    if p.isReal and bc == BC_DIR:
        # q~ is real for real Q
        matrix = matrix.real.astype(complex)

    logger.debug(f'assembled {bc} matrix of size {len(indices)} at K={K}')

    return TruncatedOperator(bc, K, indices, matrix)


@functools.lru_cache(None)
def freeLevels(bc: str, limit: int) -> Tuple[int, ...]:
    if bc == BC_DIR:
        return tuple(k * k for k in range(1, limit + 1))

    start = 0 if bc == BC_PER_PLUS else 1

    return tuple(k * k for k in range(start, limit + 1, 2))


def isolationRadius(bc: str, n: int) -> float:
    """
    Half the distance from n^2 to the nearest other free level of bc.
    """
    levels = [level for level in freeLevels(bc, n + 3) if level != n * n]

    return 0.5 * min(abs(level - n * n) for level in levels)


def _phaseOfDeterminant(matrix: np.ndarray) -> float:
    lu, pivots = scipy.linalg.lu_factor(matrix, check_finite=False)

    swaps = np.count_nonzero(pivots != np.arange(len(pivots)))

    return float(np.sum(np.angle(np.diag(lu)))) + math.pi * (swaps % 2)


def windingCount(
    matrix: np.ndarray, center: complex, radius: float, nodes: int = WINDING_MIN_NODES
) -> int:
    """
    Number of eigenvalues inside |lambda - center| < radius by the argument
    principle on det(lambda I - M), node count doubled until stable.
    """
    identity = np.eye(len(matrix), dtype=complex)

    previous = None

    while nodes <= WINDING_MAX_NODES:
        theta = 2.0 * math.pi * np.arange(nodes + 1) / nodes
        points = center + radius * np.exp(1j * theta)

        phases = np.array(
            [_phaseOfDeterminant(point * identity - matrix) for point in points]
        )

        steps = np.angle(np.exp(1j * np.diff(phases)))

        count = int(round(float(np.sum(steps)) / (2.0 * math.pi)))

        if count == previous:
            return count

        previous = count
        nodes *= 2

    raise ConvergenceFailure(
        f'winding count did not stabilize up to {WINDING_MAX_NODES} nodes',
        module=__name__,
    )


def _cluster(values: np.ndarray) -> List[Tuple[complex, int]]:
    result: List[Tuple[complex, int]] = []

    for value in sorted(values, key=lambda item: (item.real, item.imag)):
        for index, (center, count) in enumerate(result):
            if abs(value - center) <= CLUSTER_TOL * (1.0 + abs(center)):
                result[index] = ((center * count + value) / (count + 1), count + 1)
                break
        else:
            result.append((complex(value), 1))

    return result


# Can throw exceptions
def eigsInDisc(
    op: TruncatedOperator, center: complex, radius: float, verify: bool = True
) -> List[Tuple[complex, int]]:
    """
    Eigenvalues of the dense section inside the disc, clustered with their
    algebraic multiplicities.
    """
    try:
        values = scipy.linalg.eigvals(op.matrix, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as ex:
        raise ConvergenceFailure(f'dense eigensolver failed: {ex}', module=__name__)

    for attempt in range(4):
        distance = np.abs(np.abs(values - center) - radius)

        if np.all(distance >= BOUNDARY_CLEARANCE):
            break

        if attempt == 3:
            raise BoundaryEigenvalue(
                f'eigenvalue within {BOUNDARY_CLEARANCE} of |z - {center}| = {radius}',
                module=__name__,
            )

        radius *= 1.0 + 1e-3 * (attempt + 1)

        logger.warning(f'eigenvalue on disc boundary. Retry with radius {radius}')

    inside = values[np.abs(values - center) < radius]

    result = _cluster(inside)

    if verify:
        count = windingCount(op.matrix, center, radius)

        if count != sum(multiplicity for _, multiplicity in result):
            raise ConvergenceFailure(
                f'winding count {count} disagrees with {len(inside)} dense eigenvalues',
                module=__name__,
            )

    return result


def pairFromMatrix(
    p: PotentialSpec, n: int, K: int, bc: str = None, verify: bool = False
) -> List[complex]:
    """
    Eigenvalues near n^2 for bc (parity default), expanded by multiplicity.
    """
    bc = bcForIndex(n) if bc is None else bc

    op = assembleMatrix(p, bc, K)

    found = eigsInDisc(op, n * n + p.v0, isolationRadius(bc, n), verify=verify)

    values = [value for value, count in found for _ in range(count)]

    expected = 1 if bc == BC_DIR else 2

    if len(values) != expected:
        raise RootCountMismatch(
            f'{bc} n={n}: found {len(values)} eigenvalues, expected {expected}',
            module=__name__,
        )

    return values


def exportMatrixCSV(op: TruncatedOperator, path):
    rows = []

    for row in op.matrix:
        cells = []

        for value in row:
            cells += [formatNumber(value.real), formatNumber(value.imag)]

        rows.append(','.join(cells))

    with open(path, 'w', encoding='utf-8') as file:
        file.write('\n'.join(rows) + '\n')
