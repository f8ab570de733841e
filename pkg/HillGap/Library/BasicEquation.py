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
from HillGap.Library.MatrixOperator import assembleMatrix, isolationRadius, windingCount

from typing import Tuple

import math
import logging
import dataclasses

import numpy as np
import scipy.linalg

__all__ = [
    'SMatrix',
    'DiscPair',
    'BasicEquation',
    'buildT',
    'sMatrix',
    'solveDiscPair',
    'nStar',
    'kappa',
    'firstOrderSeries',
]

logger = logging.getLogger(__name__)

SERIES_LINEAR_SOLVE = 'linear_solve'
SERIES_NEUMANN = 'neumann'


@dataclasses.dataclass(frozen=True)
class SMatrix:
    """
    2x2 reduced operator in the basis (e_{-n}, e_n) at lambda = n^2 + z.

    alpha = s11, beta_plus = s21, beta_minus = s12.
    """

    n: int
    z: complex
    s11: complex
    s12: complex
    s21: complex
    s22: complex
    tHSNorm: float
    K: int
    seriesMode: str = SERIES_LINEAR_SOLVE
    order: int | None = None
    residualBound: float = 0.0

    @property
    def alpha(self) -> complex:
        return 0.5 * (self.s11 + self.s22)

    @property
    def betaPlus(self) -> complex:
        return self.s21

    @property
    def betaMinus(self) -> complex:
        return self.s12

    @property
    def valid(self) -> bool:
        return self.tHSNorm < 1.0

    def determinant(self, z: complex = None) -> complex:
        z = self.z if z is None else z

        return (self.s11 - z) * (self.s22 - z) - self.s12 * self.s21

    def asArray(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s21, self.s22]])


@dataclasses.dataclass(frozen=True)
class DiscPair:
    n: int
    lambdaPlus: complex
    lambdaMinus: complex
    sPlus: SMatrix
    sMinus: SMatrix
    degenerate: bool
    geometricMultiplicity: int
    inDisc: bool
    iterations: Tuple[int, int]

    @property
    def zPlus(self) -> complex:
        return self.lambdaPlus - self.n * self.n

    @property
    def zMinus(self) -> complex:
        return self.lambdaMinus - self.n * self.n

    @property
    def zStar(self) -> complex:
        return 0.5 * (self.zPlus + self.zMinus)


class BasicEquation:
    """
    Reduction of L_{Per+/-} near n^2 to the 2x2 matrix S(z).

    Index set j in n + 2Z, |j| <= K, j != +-n. Blocks of V are assembled once;
    each S(z) costs one factorization of 1 - T(z).
    """

    def __init__(self, p: PotentialSpec, n: int, K: int):
        if K < MINIMUM_CUTOFF:
            raise CutoffTooSmall(
                f'cutoff K={K} below the minimum {MINIMUM_CUTOFF}', module=__name__
            )

        if 2 * n > K:
            raise CutoffTooSmall(
                f'cutoff K={K} must be at least twice n={n}', module=__name__
            )

        self.potential = p
        self.n = n
        self.K = K

        indices = np.arange(-K, K + 1)
        indices = indices[(indices - n) % 2 == 0]

        self.indices = indices[np.abs(indices) != n]
        self.pair = np.array([-n, n])

        table = exponentialTable(p, 2 * K)

        def block(rows, cols):
            return table[(rows[:, None] - cols[None, :]) + 2 * K]

        j = self.indices

        self.VJJ = block(j, j)
        self.VJP = block(j, self.pair)
        self.VPJ = block(self.pair, j)
        self.VPP = block(self.pair, self.pair)

    def kTilde(self, z: complex) -> np.ndarray:
        lam = self.n * self.n + z

        return 1.0 / principalSqrt(lam - self.potential.v0 - self.indices.astype(float) ** 2)

    def buildT(self, z: complex) -> Tuple[np.ndarray, float]:
        """T = K~ V K~ on the index set and its Hilbert-Schmidt norm."""
        kt = self.kTilde(z)

        T = kt[:, None] * self.VJJ * kt[None, :]

        return T, float(np.linalg.norm(T))

    def sMatrix(
        self, z: complex, seriesMode: str = SERIES_LINEAR_SOLVE, order: int = 0
    ) -> SMatrix:
        """
        S = P0 (V + C) P0 + P0 V K~ (1 - T)^{-1} K~ V P0.

        linear_solve factors 1 - T; neumann(order) sums T^s for s <= order.
        """
        z = complex(z)
        kt = self.kTilde(z)

        T, hsNorm = self.buildT(z)

        if hsNorm > T_NORM_REFUSE:
            raise TNormTooLarge(
                f'n={self.n}, z={z}: ||T||_HS = {hsNorm:.4g} exceeds {T_NORM_REFUSE}',
                module=__name__,
            )

        rhs = kt[:, None] * self.VJP
        row = self.VPJ * kt[None, :]

        identity = np.eye(len(T), dtype=complex)

        if seriesMode == SERIES_LINEAR_SOLVE:
            lu = scipy.linalg.lu_factor(identity - T, check_finite=False)
            solution = scipy.linalg.lu_solve(lu, rhs, check_finite=False)

            backward = np.linalg.norm((identity - T) @ solution - rhs)

            residualBound = float(np.linalg.norm(row) * backward / (1.0 - hsNorm))
            order = None
        elif seriesMode == SERIES_NEUMANN:
            term = rhs
            solution = rhs.copy()

            for _ in range(order):
                term = T @ term
                solution += term

            residualBound = float(
                hsNorm ** (order + 1)
                / (1.0 - hsNorm)
                * np.linalg.norm(rhs)
                * np.linalg.norm(row)
            )
        else:
            raise ValueError(f'unknown series mode \'{seriesMode}\'')

        S = self.VPP + row @ solution + self.potential.v0 * np.eye(2)

        return SMatrix(
            n=self.n,
            z=z,
            s11=complex(S[0, 0]),
            s12=complex(S[0, 1]),
            s21=complex(S[1, 0]),
            s22=complex(S[1, 1]),
            tHSNorm=hsNorm,
            K=self.K,
            seriesMode=seriesMode,
            order=order,
            residualBound=residualBound,
        )

    def _fixedPoint(self, seed: complex, zetaRef: complex, sign: float):
        """
        Newton with a frozen Jacobian on z - alpha(z) - sign zeta(z), where
        zeta^2 = beta_plus beta_minus and the branch follows zetaRef.
        """
        h = 1e-6 * (1.0 + abs(seed))

        slope = (
            self.sMatrix(seed + h).alpha - self.sMatrix(seed - h).alpha
        ) / (2.0 * h)

        jacobian = 1.0 - slope

        def evaluate(z, reference):
            s = self.sMatrix(z)

            zeta = complex(principalSqrt(s.betaPlus * s.betaMinus))

            # Keep the branch continuous along the iteration
            if abs(zeta + reference) < abs(zeta - reference):
                zeta = -zeta

            return s, zeta, z - s.alpha - sign * zeta

        z = complex(seed)

        s, zeta, residual = evaluate(z, zetaRef)

        for iteration in range(1, ROOT_MAX_ITER + 1):
            step = residual / jacobian
            damping = 1.0

            for _ in range(6):
                candidate = z - damping * step

                sNew, zetaNew, residualNew = evaluate(candidate, zeta)

                if abs(residualNew) <= abs(residual) or damping < 0.05:
                    break

                damping *= 0.5

            z, s, zeta, residual = candidate, sNew, zetaNew, residualNew

            scale = max(1.0, abs(z))

            if abs(residual) <= ROOT_TOL * scale or abs(damping * step) <= 1e-15 * scale:
                if abs(residual) < DEFAULT_TOL:
                    return z, s, iteration

        raise NoRootInDisc(
            f'n={self.n}: basic equation iteration from {seed} did not converge '
            f'(residual {abs(residual):.3g})',
            module=__name__,
        )

    def solveDiscPair(self, validate: bool = False) -> DiscPair:
        n = self.n

        s0 = self.sMatrix(0.0)

        zeta0 = complex(principalSqrt(s0.betaPlus * s0.betaMinus))

        zPlus, sPlus, iterPlus = self._fixedPoint(s0.alpha + zeta0, zeta0, 1.0)
        # Same branch reference for both roots; sign alone picks the root
        zMinus, sMinus, iterMinus = self._fixedPoint(s0.alpha - zeta0, zeta0, -1.0)

        lambdaPlus, lambdaMinus = n * n + zPlus, n * n + zMinus

        # Labeling: larger real part, then larger imaginary part
        if (lambdaMinus.real, lambdaMinus.imag) > (lambdaPlus.real, lambdaPlus.imag):
            lambdaPlus, lambdaMinus = lambdaMinus, lambdaPlus
            sPlus, sMinus = sMinus, sPlus
            iterPlus, iterMinus = iterMinus, iterPlus

        radius = isolationRadius(bcForIndex(n), n)

        for lam in (lambdaPlus, lambdaMinus):
            if abs(lam - n * n - self.potential.v0) >= radius:
                raise NoRootInDisc(
                    f'n={n}: root {lam} outside isolation radius {radius}',
                    module=__name__,
                )

        degenerate = abs(lambdaPlus - lambdaMinus) < DOUBLE_ROOT_TOL

        if degenerate:
            weight = abs(sPlus.betaPlus) + abs(sPlus.betaMinus)
            geometric = 2 if weight < DOUBLE_ROOT_TOL else 1

            logger.info(f'n={n}: double root at {lambdaPlus}, geometric multiplicity {geometric}')
        else:
            geometric = 1

        inDisc = all(
            abs(lam - n * n - self.potential.v0) < n / 4.0
            for lam in (lambdaPlus, lambdaMinus)
        )

        if validate:
            op = assembleMatrix(self.potential, bcForIndex(n), self.K)

            count = windingCount(op.matrix, n * n + self.potential.v0, radius)

            if count != 2:
                raise RootCountMismatch(
                    f'n={n}: winding count {count} inside radius {radius}, expected 2',
                    module=__name__,
                )

        logger.debug(
            f'solve disc pair n={n} converged in {iterPlus}/{iterMinus} iterations'
        )

        return DiscPair(
            n=n,
            lambdaPlus=lambdaPlus,
            lambdaMinus=lambdaMinus,
            sPlus=sPlus,
            sMinus=sMinus,
            degenerate=degenerate,
            geometricMultiplicity=geometric,
            inDisc=inDisc,
            iterations=(iterPlus, iterMinus),
        )


def buildT(p: PotentialSpec, n: int, z: complex, K: int) -> Tuple[np.ndarray, float]:
    return BasicEquation(p, n, K).buildT(z)


def sMatrix(p: PotentialSpec, n: int, z: complex, K: int, **kwargs) -> SMatrix:
    return BasicEquation(p, n, K).sMatrix(z, **kwargs)


def solveDiscPair(p: PotentialSpec, n: int, K: int, validate: bool = False) -> DiscPair:
    return BasicEquation(p, n, K).solveDiscPair(validate=validate)


def kappa(p: PotentialSpec, n: int) -> float:
    """E_sqrt(n)(q) + ||q|| / sqrt(n), the quantity n_star is tied to."""
    return tailEnergy(p, math.ceil(math.sqrt(n))) + tailEnergy(p, 0) / math.sqrt(n)


# Can throw exceptions
def nStar(p: PotentialSpec, K: int) -> int:
    """
    Smallest n with ||T(n, z)||_HS <= 1/2 at z = 0 and on |z| = n/4.
    """
    for n in range(1, K // 2 + 1):
        equation = BasicEquation(p, n, K)

        points = [0.0] + [n / 4.0 * np.exp(2j * math.pi * k / 8) for k in range(8)]

        norms = [equation.buildT(z)[1] for z in points]

        if max(norms) <= T_NORM_NSTAR:
            logger.debug(f'n_star={n} with max ||T|| {max(norms):.4g}, kappa {kappa(p, n):.4g}')

            return n

    raise NotReached(f'||T|| stays above {T_NORM_NSTAR} for n <= {K // 2}', module=__name__)


def firstOrderSeries(p: PotentialSpec, n: int, z: complex, K: int) -> np.ndarray:
    """
    Brute-force S to first order in V: V(a - b) + C delta_ab
    + sum_j V(a - j) V(j - b) / (lambda - C - j^2), a, b in (-n, n).
    """
    lam = n * n + z

    result = np.zeros((2, 2), dtype=complex)

    pair = (-n, n)

    for row, a in enumerate(pair):
        for col, b in enumerate(pair):
            total = fourierCoeffV(p, a - b) + (p.v0 if a == b else 0.0)

            for j in range(-K, K + 1):
                if (j - n) % 2 or abs(j) == n:
                    continue

                total += (
                    fourierCoeffV(p, a - j)
                    * fourierCoeffV(p, j - b)
                    / (lam - p.v0 - j * j)
                )

            result[row, col] = total

    return result
