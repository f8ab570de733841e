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
from HillGap.Library.Weights import Weight, weightedSeqNorm
from HillGap.Library.MatrixOperator import pairFromMatrix
from HillGap.Library.Shooting import locateBCEigenvalues
from HillGap.Library.BasicEquation import BasicEquation, SMatrix

from typing import Dict, List, Sequence, Tuple

import math
import logging
import functools
import dataclasses

import numpy as np

__all__ = [
    'SpectralTriple',
    'GapReport',
    'spectralTriple',
    'spectralTriples',
    'crossMethodDiscrepancy',
    'asymptoticsReport',
]

logger = logging.getLogger(__name__)

METHOD_BASIC = 'basic'
METHOD_MATRIX = 'matrix'
METHOD_SHOOT = 'shoot'


@dataclasses.dataclass(frozen=True)
class SpectralTriple:
    n: int
    lambdaPlus: complex
    lambdaMinus: complex
    mu: complex
    method: str = METHOD_BASIC
    # S at z*, z+ and z-. None when ||T|| refuses the reduction
    sStar: SMatrix | None = None
    sPlus: SMatrix | None = None
    sMinus: SMatrix | None = None

    @property
    def gamma(self) -> float:
        return abs(self.lambdaPlus - self.lambdaMinus)

    @property
    def delta(self) -> float:
        return abs(self.mu - 0.5 * (self.lambdaPlus + self.lambdaMinus))

    @property
    def Delta(self) -> float:
        return self.gamma + abs(self.lambdaPlus - self.mu)

    @property
    def zStar(self) -> complex:
        return 0.5 * (self.lambdaPlus + self.lambdaMinus) - self.n * self.n

    @property
    def betaWeight(self) -> float | None:
        """|beta-(z*)| + |beta+(z*)|"""
        if self.sStar is None:
            return None

        return abs(self.sStar.betaMinus) + abs(self.sStar.betaPlus)


@dataclasses.dataclass
class GapReport:
    triples: List[SpectralTriple]
    weight: Weight
    lhsSum: float
    # (||v||_Omega^2, ||v||_Omega^4)
    rhsBoundTerms: Tuple[float, float]
    summands: Dict[int, float]
    # n -> (gamma / beta weight, (gamma + |mu - lambda+|) / beta weight)
    ratioTable: Dict[int, Tuple[float, float]]
    lowerBound: Dict[int, Tuple[float, float]] = dataclasses.field(default_factory=dict)
    band: Dict[int, float] = dataclasses.field(default_factory=dict)
    decaySlope: float | None = None
    violations: List[str] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            'lhs_sum': self.lhsSum,
            'norm_sq': self.rhsBoundTerms[0],
            'norm_4': self.rhsBoundTerms[1],
            'rhs_4_norm_sq': 4.0 * self.rhsBoundTerms[0],
            'decay_slope': self.decaySlope,
            'ratio_table': {
                str(n): list(ratios) for n, ratios in sorted(self.ratioTable.items())
            },
            'violations': list(self.violations),
        }


def _dirichletValue(p: PotentialSpec, n: int, K: int, method: str) -> complex:
    if method == METHOD_MATRIX:
        return pairFromMatrix(p, n, K, bc=BC_DIR)[0]

    try:
        return locateBCEigenvalues(p, BC_DIR, n)[0]
    except ComputeError as ex:
        logger.warning(f'dirichlet shooting failed at n={n}: {ex}. Using the matrix value')

        return pairFromMatrix(p, n, K, bc=BC_DIR)[0]


def spectralTriple(n: int, p: PotentialSpec, K: int, method: str = METHOD_BASIC) -> SpectralTriple:
    """
    lambda+-, mu and the S evaluations for one n. Periodic for even n,
    antiperiodic for odd n.
    """
    bc = bcForIndex(n)

    sPlus = sMinus = sStar = None

    if method == METHOD_BASIC:
        pair = BasicEquation(p, n, K).solveDiscPair()

        lambdaPlus, lambdaMinus = pair.lambdaPlus, pair.lambdaMinus
        sPlus, sMinus = pair.sPlus, pair.sMinus
    elif method == METHOD_MATRIX:
        lambdaPlus, lambdaMinus = pairFromMatrix(p, n, K, bc=bc)
    elif method == METHOD_SHOOT:
        lambdaPlus, lambdaMinus = locateBCEigenvalues(p, bc, n)
    else:
        raise ValueError(f'unknown method \'{method}\'')

    if (lambdaMinus.real, lambdaMinus.imag) > (lambdaPlus.real, lambdaPlus.imag):
        lambdaPlus, lambdaMinus = lambdaMinus, lambdaPlus
        sPlus, sMinus = sMinus, sPlus

    zStar = 0.5 * (lambdaPlus + lambdaMinus) - n * n

    try:
        equation = BasicEquation(p, n, K)

        sStar = equation.sMatrix(zStar)

        if sPlus is None:
            sPlus = equation.sMatrix(lambdaPlus - n * n)
            sMinus = equation.sMatrix(lambdaMinus - n * n)
    except (TNormTooLarge, CutoffTooSmall) as ex:
        logger.info(f'no S evaluation at n={n}: {ex}')

    mu = _dirichletValue(p, n, K, method)

    logger.debug(f'triple n={n} ({method}): {lambdaPlus}, {lambdaMinus}, {mu}')

    return SpectralTriple(
        n=n,
        lambdaPlus=complex(lambdaPlus),
        lambdaMinus=complex(lambdaMinus),
        mu=complex(mu),
        method=method,
        sStar=sStar,
        sPlus=sPlus,
        sMinus=sMinus,
    )


# Can throw exceptions
def spectralTriples(
    p: PotentialSpec,
    nRange: Sequence[int],
    K: int,
    jobs: int = 1,
    method: str = METHOD_BASIC,
) -> List[SpectralTriple]:
    first, last = parseRange(nRange)

    if last > K // 4:
        logger.warning(f'n range up to {last} exceeds K/4={K // 4}. Results may be truncation-limited')

    triples = parallelMap(
        functools.partial(spectralTriple, p=p, K=K, method=method),
        range(first, last + 1),
        jobs,
    )

    return sorted(triples, key=lambda triple: triple.n)


def crossMethodDiscrepancy(tripleSets: Dict[str, List[SpectralTriple]]) -> Dict[int, float]:
    """Per-n max distance between lambda+- (and mu) across methods."""
    byN: Dict[int, List[SpectralTriple]] = {}

    for triples in tripleSets.values():
        for triple in triples:
            byN.setdefault(triple.n, []).append(triple)

    result = {}

    for n, group in sorted(byN.items()):
        worst = 0.0

        for i, first in enumerate(group):
            for second in group[i + 1:]:
                worst = max(
                    worst,
                    abs(first.lambdaPlus - second.lambdaPlus),
                    abs(first.lambdaMinus - second.lambdaMinus),
                    abs(first.mu - second.mu),
                )

        result[n] = worst

    return result


def _potentialWeightedNormSq(p: PotentialSpec, w: Weight) -> float:
    values = {}

    for m in p.coeffs:
        k = m // 2

        if abs(k) > w.limit:
            logger.warning(f'coefficient k={k} beyond weight range {w.limit}. Skipped')

            continue

        values[k] = fourierCoeffV(p, m)

    return weightedSeqNorm(values, w) ** 2


def asymptoticsReport(
    triples: Sequence[SpectralTriple], w: Weight, p: PotentialSpec, eta: float = TWO_SIDED_ETA
) -> GapReport:
    """
    Weighted gap sum, ratio table and the envelope check. Report-only: every
    failed relation becomes an entry of violations.
    """
    triples = sorted(triples, key=lambda triple: triple.n)

    normSq = _potentialWeightedNormSq(p, w)

    summands = {t.n: t.gamma ** 2 * w(t.n) ** 2 for t in triples}

    ratioTable = {}
    lowerBound = {}
    band = {}
    violations = []

    for t in triples:
        weight = t.betaWeight

        if weight is None:
            continue

        upper = t.gamma + abs(t.mu - t.lambdaPlus)

        if weight > RATIO_FLOOR:
            ratioTable[t.n] = (t.gamma / weight, upper / weight)

        if weight > ENVELOPE_FLOOR and not (
            ENVELOPE_LOWER * weight <= upper <= ENVELOPE_UPPER * weight
        ):
            violations.append(
                f'envelope n={t.n}: gamma + |mu - lambda+| = {upper:.6g} '
                f'outside [{ENVELOPE_LOWER:.6g}, {ENVELOPE_UPPER}] x {weight:.6g}'
            )

        if t.sPlus is not None:
            bp, bm = abs(t.sPlus.betaPlus), abs(t.sPlus.betaMinus)

            product = abs(t.sStar.betaPlus * t.sStar.betaMinus)

            if bp > 0 and bm > 0 and product > 0:
                ratio = bp / bm

                lowerBound[t.n] = (
                    2.0 * math.sqrt(ratio) / (1.0 + ratio),
                    t.gamma / (2.0 * math.sqrt(product)),
                )

            if t.gamma > RATIO_FLOOR:
                band[t.n] = (
                    max(
                        abs(t.sPlus.betaPlus - t.sStar.betaPlus),
                        abs(t.sPlus.betaMinus - t.sStar.betaMinus),
                    )
                    / t.gamma
                )

    if p.isReal:
        for t in triples:
            worst = max(abs(t.lambdaPlus.imag), abs(t.lambdaMinus.imag), abs(t.mu.imag))

            if worst >= 1e-9:
                violations.append(f'real potential n={t.n}: imaginary part {worst:.3g}')

        # Two-sided ratio at the largest n with a resolvable beta weight
        resolved = [
            t for t in triples if t.betaWeight is not None and t.betaWeight > ENVELOPE_FLOOR
        ]

        if resolved:
            last = resolved[-1]
            ratio = last.gamma / last.betaWeight

            if not (1.0 - eta <= ratio <= 1.0 + eta):
                violations.append(
                    f'two-sided ratio n={last.n}: {ratio:.6g} outside [{1.0 - eta}, {1.0 + eta}]'
                )

    decaySlope = None

    points = [(t.n * math.log(t.n), math.log(t.gamma)) for t in triples if t.gamma > RATIO_FLOOR and t.n > 1]

    if len(points) >= 2:
        x, y = np.array(points).T
        decaySlope = float(np.polyfit(x, y, 1)[0])

    for message in violations:
        logger.warning(message)

    return GapReport(
        triples=list(triples),
        weight=w,
        lhsSum=float(sum(summands.values())),
        rhsBoundTerms=(normSq, normSq * normSq),
        summands=summands,
        ratioTable=ratioTable,
        lowerBound=lowerBound,
        band=band,
        decaySlope=decaySlope,
        violations=violations,
    )
