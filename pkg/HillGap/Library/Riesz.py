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
from HillGap.Library.Potential import PotentialSpec, scalePotential
from HillGap.Library.MatrixOperator import TruncatedOperator, assembleMatrix

from typing import Dict

import math
import logging
import functools
import dataclasses

import numpy as np
import scipy.linalg

__all__ = [
    'ProjectionDeviation',
    'DeviationScan',
    'projectionDeviation',
    'deviationScan',
    'firstOrderDeviation',
    'firstOrderQuadrature',
    'firstOrderByScaling',
]

logger = logging.getLogger(__name__)

PROJECTION_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class ProjectionDeviation:
    """
    B = P_n - P0_n on the truncated index set, with P_n from contour
    quadrature on |z - n^2 - v0| = n.
    """

    n: int
    bc: str
    indices: np.ndarray
    B: np.ndarray
    l1LinfProxy: float
    l2OpNorm: float
    quadratureNodes: int
    idempotencyError: float
    traceError: float

    @property
    def idempotent(self) -> bool:
        return self.idempotencyError <= PROJECTION_TOL

    @property
    def traceOk(self) -> bool:
        return self.traceError <= PROJECTION_TOL


@dataclasses.dataclass
class DeviationScan:
    records: Dict[int, ProjectionDeviation]
    slope: float | None

    def table(self) -> Dict[int, tuple]:
        return {
            n: (record.l1LinfProxy, record.l2OpNorm)
            for n, record in sorted(self.records.items())
        }


def _freeProjection(op: TruncatedOperator, n: int) -> np.ndarray:
    return np.diag((np.abs(op.indices) == n).astype(float))


def _split(op: TruncatedOperator, v0: complex):
    """Free diagonal k^2 + v0 and the remainder W = M - diag(k^2 + v0)."""
    diagonal = op.freeDiagonal + v0

    W = op.matrix.copy()
    W[np.diag_indices_from(W)] -= diagonal

    return diagonal, W


def _basisConstant(bc: str) -> float:
    # D^2 with D = sup |e_k|: 1 for exponentials, 2 for sqrt(2) sin kx
    return 2.0 if bc == BC_DIR else 1.0


def _checkClearance(op: TruncatedOperator, center: complex, radius: float):
    values = scipy.linalg.eigvals(op.matrix, check_finite=False)

    distance = np.abs(np.abs(values - center) - radius)

    if np.min(distance) < RIESZ_CLEARANCE * radius:
        closest = values[np.argmin(distance)]

        raise EigenvalueOnContour(
            f'{op.bc}: eigenvalue {closest} within {RIESZ_CLEARANCE} x {radius} '
            f'of the contour around {center}',
            module=__name__,
        )


def _nodeSum(
    op: TruncatedOperator,
    diagonal: np.ndarray,
    W: np.ndarray,
    center: complex,
    radius: float,
    thetas: np.ndarray,
    freeOnly: bool = False,
) -> np.ndarray:
    """sum_j r e^{i theta_j} R(z_j) W R0(z_j), with R replaced by R0 when freeOnly."""
    identity = np.eye(len(op.indices), dtype=complex)

    total = np.zeros(W.shape, dtype=complex)

    for theta in thetas:
        point = radius * np.exp(1j * theta)
        z = center + point

        right = W / (z - diagonal)[None, :]

        if freeOnly:
            left = right / (z - diagonal)[:, None]
        else:
            lu = scipy.linalg.lu_factor(z * identity - op.matrix, check_finite=False)
            left = scipy.linalg.lu_solve(lu, right, check_finite=False)

        total += point * left

    return total


def _quadrature(
    op: TruncatedOperator, v0: complex, n: int, nodes: int, freeOnly: bool = False
):
    """
    Trapezoid rule for (1/2 pi i) oint (R - R0) dz with nested node doubling
    until the l1 proxy settles.
    """
    center = n * n + v0
    radius = float(n)

    diagonal, W = _split(op, v0)

    if not np.any(W):
        return np.zeros_like(W), max(nodes, RIESZ_MIN_NODES)

    nodes = max(nodes, RIESZ_MIN_NODES)

    thetas = 2.0 * math.pi * np.arange(nodes) / nodes

    total = _nodeSum(op, diagonal, W, center, radius, thetas, freeOnly)

    B = total / nodes
    proxy = float(np.sum(np.abs(B)))

    while True:
        if 2 * nodes > RIESZ_MAX_NODES:
            raise QuadratureStall(
                f'{op.bc} n={n}: proxy not stable at {nodes} nodes', module=__name__
            )

        # New nodes sit halfway between the old ones
        thetas = 2.0 * math.pi * (np.arange(nodes) + 0.5) / nodes

        total += _nodeSum(op, diagonal, W, center, radius, thetas, freeOnly)
        nodes *= 2

        refined = total / nodes
        refinedProxy = float(np.sum(np.abs(refined)))

        change = abs(refinedProxy - proxy)

        B, proxy = refined, refinedProxy

        if change < RIESZ_NODE_TOL * max(1.0, proxy):
            break

        logger.debug(f'{op.bc} n={n}: proxy moved by {change:.3g} at {nodes} nodes')

    return B, nodes


# Can throw exceptions
def projectionDeviation(
    p: PotentialSpec, n: int, bc: str = None, K: int = DEFAULT_CUTOFF, nodes: int = RIESZ_MIN_NODES
) -> ProjectionDeviation:
    bc = bcForIndex(n) if bc is None else bc

    op = assembleMatrix(p, bc, K)

    if n not in np.abs(op.indices):
        raise InvalidParams(f'n={n} is not an index of the {bc} basis at K={K}', module=__name__)

    _checkClearance(op, n * n + p.v0, float(n))

    B, nodes = _quadrature(op, p.v0, n, nodes)

    P = _freeProjection(op, n) + B

    idempotencyError = float(np.linalg.norm(P @ P - P, 2))

    expected = 1.0 if bc == BC_DIR else 2.0
    traceError = float(abs(np.trace(P) - expected))

    record = ProjectionDeviation(
        n=n,
        bc=bc,
        indices=op.indices,
        B=B,
        l1LinfProxy=_basisConstant(bc) * float(np.sum(np.abs(B))),
        l2OpNorm=float(np.linalg.norm(B, 2)) if np.any(B) else 0.0,
        quadratureNodes=nodes,
        idempotencyError=idempotencyError,
        traceError=traceError,
    )

    if not record.idempotent or not record.traceOk:
        logger.warning(
            f'{bc} n={n}: projection check failed, idempotency {idempotencyError:.3g}, '
            f'trace {traceError:.3g}'
        )

    return record


def _scanEntry(n: int, p: PotentialSpec, bc: str, K: int, nodes: int) -> ProjectionDeviation:
    return projectionDeviation(p, n, bc, K, nodes)


# Can throw exceptions
def deviationScan(
    p: PotentialSpec,
    nRange,
    bc: str = None,
    K: int = None,
    nodes: int = RIESZ_MIN_NODES,
    jobs: int = 1,
) -> DeviationScan:
    """
    Proxy and operator norm over nRange at one fixed cutoff, with the
    least-squares slope of log proxy against log n.
    """
    first, last = parseRange(nRange)

    K = max(4 * last, 64) if K is None else K

    indices = list(range(first, last + 1))

    records = parallelMap(
        functools.partial(_scanEntry, p=p, bc=bc, K=K, nodes=nodes), indices, jobs
    )

    records = {record.n: record for record in records}

    points = [(math.log(n), math.log(r.l1LinfProxy)) for n, r in records.items() if r.l1LinfProxy > 0]

    slope = None

    if len(points) >= 2:
        x, y = np.array(points).T
        slope = float(np.polyfit(x, y, 1)[0])

        logger.info(f'deviation scan {first}..{last}: log-log slope {slope:.4g}')

    return DeviationScan(records, slope)


def firstOrderDeviation(p: PotentialSpec, n: int, bc: str = None, K: int = DEFAULT_CUTOFF) -> np.ndarray:
    """
    Closed-form first-order term of P_n - P0_n: W_km / (n^2 - k^2) on the
    columns of the free projection, W_km / (n^2 - m^2) on its rows.
    """
    bc = bcForIndex(n) if bc is None else bc

    op = assembleMatrix(p, bc, K)

    _, W = _split(op, p.v0)

    inside = np.abs(op.indices) == n
    squares = op.indices.astype(float) ** 2

    result = np.zeros_like(W)

    rows, cols = ~inside[:, None] & inside[None, :], inside[:, None] & ~inside[None, :]

    denominatorRows = (n * n - squares)[:, None] * np.ones(len(squares))[None, :]
    denominatorCols = np.ones(len(squares))[:, None] * (n * n - squares)[None, :]

    result[rows] = W[rows] / denominatorRows[rows]
    result[cols] = W[cols] / denominatorCols[cols]

    return result


def firstOrderQuadrature(
    p: PotentialSpec, n: int, bc: str = None, K: int = DEFAULT_CUTOFF, nodes: int = RIESZ_MIN_NODES
) -> np.ndarray:
    """(1/2 pi i) oint R0 W R0 dz by the same node-doubled trapezoid rule."""
    bc = bcForIndex(n) if bc is None else bc

    op = assembleMatrix(p, bc, K)

    return _quadrature(op, p.v0, n, nodes, freeOnly=True)[0]


def firstOrderByScaling(
    p: PotentialSpec,
    n: int,
    bc: str = None,
    K: int = DEFAULT_CUTOFF,
    t: float = 1e-4,
    nodes: int = RIESZ_MIN_NODES,
) -> np.ndarray:
    """Central difference of B(t v) in t at 0."""
    forward = projectionDeviation(scalePotential(p, t), n, bc, K, nodes).B
    backward = projectionDeviation(scalePotential(p, -t), n, bc, K, nodes).B

    return (forward - backward) / (2.0 * t)
