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
from HillGap.Library.Potential import buildPotential
from HillGap.Library.MatrixOperator import pairFromMatrix
from HillGap.Library.Shooting import locateBCEigenvalues

from typing import List, Sequence

import math
import logging
import dataclasses

import numpy as np

__all__ = [
    'PerturbationRecord',
    'a2Coefficient',
    'enCurve',
    'radiusReport',
    'radiusSlope',
    'lowerBoundThreshold',
]

logger = logging.getLogger(__name__)

HYPOTHESIS_DIVISOR = 15.0


@dataclasses.dataclass(frozen=True)
class PerturbationRecord:
    """
    Taylor data of E_n(z) = n^2 + a1 z + a2 z^2 + ... for -y'' + z v y, Dirichlet.
    """

    n: int
    a1: float
    a2: float
    sigma: float
    radiusUpper: float | None
    radiusAsymptotic: float | None
    lowerBoundRatio: float
    lowerBoundHolds: bool
    hypothesisHolds: bool
    deltaCap: float


def _coefficients(vk) -> np.ndarray:
    values = np.asarray([complex(value) for value in vk], dtype=complex)

    if np.any(values.imag != 0):
        raise ConjugacyViolation('cosine coefficients must be real', module=__name__)

    return values.real


def a2Coefficient(vk: Sequence[float], n: int, cutoff: int = None) -> float:
    """
    Second coefficient for v = sum v_k sqrt(2) cos 2kx, summed over p >= 1, p != m.

    n = 2m: (v_|p-m| - v_{p+m})^2 / (m^2 - p^2)
    n = 2m - 1: (v_|p-m| - v_{p+m-1})^2 / ((m - p)(m + p - 1))
    """
    values = _coefficients(vk)

    cutoff = 8 * max(n, len(values), 1) if cutoff is None else cutoff

    # v_0 = 0 and v_k = 0 beyond the stored coefficients
    padded = np.zeros(2 * cutoff + n + 2)
    padded[1:len(values) + 1] = values

    p = np.arange(1, cutoff + 1)

    if n % 2 == 0:
        m = n // 2
        p = p[p != m]

        terms = (padded[np.abs(p - m)] - padded[p + m]) ** 2 / (m * m - p * p)
    else:
        m = (n + 1) // 2
        p = p[p != m]

        terms = (padded[np.abs(p - m)] - padded[p + m - 1]) ** 2 / ((m - p) * (m + p - 1))

    return float(np.sum(terms) / 8.0)


# Can throw exceptions
def enCurve(
    vk: Sequence[float],
    n: int,
    zValues: Sequence[float],
    method: str = 'shoot',
    K: int = DEFAULT_CUTOFF,
) -> List[float]:
    """
    Dirichlet eigenvalue E_n(z) of -y'' + z v y near n^2.

    The matrix count at each z confirms that exactly one eigenvalue stays
    within the isolation radius.
    """
    values = _coefficients(vk)

    result = []

    for z in zValues:
        z = float(z)

        if z == 0 or not np.any(values):
            result.append(float(n * n))

            continue

        p = buildPotential('cos_v', vk=list(z * values))

        matrixValue = pairFromMatrix(p, n, K, bc=BC_DIR)[0]

        if method == 'matrix':
            result.append(float(matrixValue.real))
        elif method == 'shoot':
            result.append(float(locateBCEigenvalues(p, BC_DIR, n)[0].real))
        else:
            raise ValueError(f'unknown method \'{method}\'')

    return result


def radiusReport(
    vk: Sequence[float], nRange, cutoff: int = None, kFrom: int = None
) -> List[PerturbationRecord]:
    values = _coefficients(vk)

    first, last = parseRange(nRange)

    sigma = float(np.sum(np.abs(values)))
    norm = float(np.linalg.norm(values))

    deltaCap = norm / HYPOTHESIS_DIVISOR

    kFrom = len(values) + 1 if kFrom is None else kFrom

    k = np.arange(1, len(values) + 1)
    checked = k >= kFrom

    hypothesisHolds = bool(
        np.all(np.abs(values[checked]) <= deltaCap / k[checked] + 1e-15)
    )

    records = []

    for n in range(first, last + 1):
        vn = values[n - 1] if n <= len(values) else 0.0

        a2 = a2Coefficient(values, n, cutoff)

        if norm > 0:
            ratio = abs(a2) * 32.0 * n * n / (norm * norm)
            asymptotic = 32.0 * SQRT2 * sigma / (norm * norm) * n * n
        else:
            ratio, asymptotic = 0.0, None

        records.append(
            PerturbationRecord(
                n=n,
                a1=-vn / SQRT2,
                a2=a2,
                sigma=sigma,
                radiusUpper=SQRT2 * sigma / abs(a2) if a2 != 0 else None,
                radiusAsymptotic=asymptotic,
                lowerBoundRatio=ratio,
                lowerBoundHolds=ratio >= 1.0,
                hypothesisHolds=hypothesisHolds,
                deltaCap=deltaCap,
            )
        )

        logger.debug(f'perturbation n={n}: a2={a2:.6g}, lower bound ratio {ratio:.4g}')

    return records


def radiusSlope(records: Sequence[PerturbationRecord]) -> float | None:
    """Least-squares slope of log radius_upper against log n."""
    points = [
        (math.log(record.n), math.log(record.radiusUpper))
        for record in records
        if record.radiusUpper
    ]

    if len(points) < 2:
        return None

    x, y = np.array(points).T

    return float(np.polyfit(x, y, 1)[0])


def lowerBoundThreshold(records: Sequence[PerturbationRecord]) -> int | None:
    """Smallest n from which the lower bound holds for every later record."""
    threshold = None

    for record in sorted(records, key=lambda r: r.n):
        if record.lowerBoundHolds:
            threshold = record.n if threshold is None else threshold
        else:
            threshold = None

    return threshold
