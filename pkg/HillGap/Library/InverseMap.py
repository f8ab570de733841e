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
from HillGap.Library.BasicEquation import BasicEquation

from typing import Dict, List, Tuple

import math
import logging
import functools
import dataclasses

import numpy as np

__all__ = [
    'TailImage',
    'ReconstructionResult',
    'phiTail',
    'mapA',
    'phiCoefficients',
    'ballRadius',
    'contractionRatio',
    'injectivityWitness',
    'contractionThreshold',
    'reconstruct',
]

logger = logging.getLogger(__name__)

STALL_LIMIT = 5


@dataclasses.dataclass(frozen=True)
class TailImage:
    """
    A_N(v): v_{-+n} for n <= N, beta-+_n(z*_n) for N < n <= nMax.
    """

    N: int
    v0: complex
    head: Dict[int, Tuple[complex, complex]]
    tail: Dict[int, Tuple[complex, complex]]
    isReal: bool = False
    residualBounds: Dict[int, float] = dataclasses.field(default_factory=dict)

    @property
    def nMax(self) -> int:
        return max(list(self.head) + list(self.tail), default=0)

    def entry(self, n: int) -> Tuple[complex, complex]:
        if n in self.head:
            return self.head[n]

        return self.tail.get(n, (0j, 0j))

    def sequence(self, nMax: int = None) -> Tuple[np.ndarray, np.ndarray]:
        nMax = self.nMax if nMax is None else nMax

        entries = [self.entry(n) for n in range(1, nMax + 1)]

        minus = np.array([entry[0] for entry in entries], dtype=complex)
        plus = np.array([entry[1] for entry in entries], dtype=complex)

        return minus, plus

    def toJSON(self) -> dict:
        return {
            'N': self.N,
            'v0': complexToPair(self.v0),
            'real': self.isReal,
            'head': [
                {'n': n, 'vm': complexToPair(vm), 'vp': complexToPair(vp)}
                for n, (vm, vp) in sorted(self.head.items())
            ],
            'tail': [
                {'n': n, 'bm': complexToPair(bm), 'bp': complexToPair(bp)}
                for n, (bm, bp) in sorted(self.tail.items())
            ],
        }

    @staticmethod
    def fromJSON(data: dict) -> TailImage:
        try:
            return TailImage(
                N=int(data['N']),
                v0=pairToComplex(data.get('v0', 0.0)),
                head={
                    int(item['n']): (pairToComplex(item['vm']), pairToComplex(item['vp']))
                    for item in data.get('head', [])
                },
                tail={
                    int(item['n']): (pairToComplex(item['bm']), pairToComplex(item['bp']))
                    for item in data.get('tail', [])
                },
                isReal=bool(data.get('real', False)),
            )
        except (KeyError, TypeError, ValueError) as ex:
            raise ConfigError(f'invalid tail image: {ex}', module=__name__)


@dataclasses.dataclass
class ReconstructionResult:
    potential: PotentialSpec
    iterations: int
    residuals: List[float]
    decayRatio: float | None

    @property
    def residual(self) -> float:
        return self.residuals[-1]


def _tailEntry(n: int, p: PotentialSpec, K: int) -> Tuple[complex, complex, float]:
    equation = BasicEquation(p, n, K)

    pair = equation.solveDiscPair()

    s = equation.sMatrix(pair.zStar)

    return s.betaMinus, s.betaPlus, s.residualBound


# Can throw exceptions
def phiTail(p: PotentialSpec, N: int, nMax: int, K: int, jobs: int = 1) -> TailImage:
    if nMax > K // 4:
        raise CutoffTooSmall(f'n_max={nMax} exceeds K/4 with K={K}', module=__name__)

    vMinus, vPlus = potentialSequence(p, nMax)

    head = {n: (vMinus[n - 1], vPlus[n - 1]) for n in range(1, min(N, nMax) + 1)}

    tail = {}
    bounds = {}

    indices = list(range(N + 1, nMax + 1))

    if p.isZero:
        # Phi_N(0) = 0
        tail = {n: (0j, 0j) for n in indices}
    else:
        entries = parallelMap(functools.partial(_tailEntry, p=p, K=K), indices, jobs)

        for n, (bm, bp, bound) in zip(indices, entries):
            tail[n] = (complex(bm), complex(bp))
            bounds[n] = bound

    return TailImage(
        N=N, v0=p.v0, head=head, tail=tail, isReal=p.isReal, residualBounds=bounds
    )


def mapA(p: PotentialSpec, N: int, nMax: int, K: int, jobs: int = 1) -> TailImage:
    """A_N(v) = v + Phi_N(v), the same image as phiTail."""
    return phiTail(p, N, nMax, K, jobs)


def phiCoefficients(image: TailImage, p: PotentialSpec) -> Dict[int, complex]:
    """Phi_N(v) as k -> coefficient, k = -+n for N < n <= nMax."""
    vMinus, vPlus = potentialSequence(p, image.nMax)

    result = {}

    for n, (bm, bp) in image.tail.items():
        result[-n] = bm - vMinus[n - 1]
        result[n] = bp - vPlus[n - 1]

    return result


def _asMapping(minus: np.ndarray, plus: np.ndarray) -> Dict[int, complex]:
    values = {}

    for n, (vm, vp) in enumerate(zip(minus, plus), start=1):
        values[-n] = vm
        values[n] = vp

    return values


def _sequenceNorm(minus, plus, w: Weight) -> float:
    return weightedSeqNorm(_asMapping(minus, plus), w)


def ballRadius(N: int) -> float:
    """r_N with the Omega_1 = 1 proxy."""
    return (1.0 + 1.0 / math.sqrt(N)) ** -0.25


def _difference(
    first: PotentialSpec, second: PotentialSpec, nMax: int, w: Weight
) -> float:
    minus1, plus1 = potentialSequence(first, nMax)
    minus2, plus2 = potentialSequence(second, nMax)

    return _sequenceNorm(minus1 - minus2, plus1 - plus2, w)


# Can throw exceptions
def contractionRatio(
    p1: PotentialSpec,
    p2: PotentialSpec,
    N: int,
    w: Weight,
    K: int,
    nMax: int = None,
    jobs: int = 1,
) -> float:
    """||Phi_N(v1) - Phi_N(v2)||_Omega / ||v1 - v2||_Omega"""
    nMax = K // 4 if nMax is None else nMax

    denominator = _difference(p1, p2, nMax, w)

    if denominator == 0:
        raise IdenticalPotentials(
            'contraction ratio needs two distinct potentials', module=__name__
        )

    phi1 = phiCoefficients(phiTail(p1, N, nMax, K, jobs), p1)
    phi2 = phiCoefficients(phiTail(p2, N, nMax, K, jobs), p2)

    numerator = weightedSeqNorm({k: phi1[k] - phi2[k] for k in phi1}, w)

    ratio = numerator / denominator

    if ratio >= 0.5:
        logger.info(f'contraction ratio at N={N}: ratio {ratio:.4g} not below 1/2')

    return ratio


# Can throw exceptions
def injectivityWitness(
    p1: PotentialSpec,
    p2: PotentialSpec,
    N: int,
    w: Weight,
    K: int,
    nMax: int = None,
    jobs: int = 1,
) -> float:
    """||A_N(v1) - A_N(v2)||_Omega / ||v1 - v2||_Omega, at least 1/2 inside the ball."""
    nMax = K // 4 if nMax is None else nMax

    denominator = _difference(p1, p2, nMax, w)

    if denominator == 0:
        raise IdenticalPotentials(
            'injectivity witness needs two distinct potentials', module=__name__
        )

    minus1, plus1 = phiTail(p1, N, nMax, K, jobs).sequence(nMax)
    minus2, plus2 = phiTail(p2, N, nMax, K, jobs).sequence(nMax)

    return _sequenceNorm(minus1 - minus2, plus1 - plus2, w) / denominator


def _perturbed(p: PotentialSpec, rng: np.random.Generator, scale: float, modes: int, nMax: int):
    minus, plus = potentialSequence(p, nMax)

    noise = scale * rng.standard_normal(modes)

    if p.isReal:
        plus[:modes] += noise
        minus[:modes] += noise
    else:
        plus[:modes] += noise
        minus[:modes] += scale * rng.standard_normal(modes)

    return potentialFromSequence(minus, plus, p.v0, p.isReal)


# Can throw exceptions
def contractionThreshold(
    p: PotentialSpec,
    w: Weight,
    K: int,
    nMax: int = None,
    seed: int = DEFAULT_SEED,
    pairs: int = 3,
    scale: float = 0.1,
    modes: int = 3,
    jobs: int = 1,
) -> Tuple[int, float]:
    """
    Smallest N for which every pair of a seeded panel around p has a contraction ratio below 1/2.

    :return: (N, worst ratio at N)
    """
    nMax = K // 4 if nMax is None else nMax

    rng = np.random.default_rng(seed)

    panel = [(p, scalePotential(p, 0.0))] if not p.isZero else []

    panel += [(p, _perturbed(p, rng, scale, modes, nMax)) for _ in range(pairs)]

    for N in range(1, nMax):
        try:
            worst = max(
                contractionRatio(first, second, N, w, K, nMax, jobs)
                for first, second in panel
            )
        except ComputeError as ex:
            logger.debug(f'contraction scan skips N={N}: {ex}')

            continue

        logger.debug(f'contraction scan N={N}: worst ratio {worst:.4g}')

        if worst < 0.5:
            return N, worst

    raise NotReached(
        f'contraction ratio stays at or above 1/2 for N < {nMax}', module=__name__
    )


# Can throw exceptions
def reconstruct(
    target: TailImage,
    N: int,
    w: Weight,
    K: int,
    maxIter: int = 50,
    tol: float = DEFAULT_TOL,
    jobs: int = 1,
) -> ReconstructionResult:
    """
    Picard iteration v <- u - Phi_N(v) from v = head(u).

    Since A_N(v) = v + Phi_N(v) the update reads v <- v + (u - A_N(v)).
    """
    nMax = target.nMax

    if N != target.N:
        logger.warning(f'reconstruct with N={N} on an image built with N={target.N}')

    if target.N > nMax:
        raise InvalidParams(f'image has no tail beyond N={target.N}', module=__name__)

    targetMinus, targetPlus = target.sequence(nMax)

    minus, plus = target.sequence(nMax)

    # Tail starts at zero
    minus[N:] = 0
    plus[N:] = 0

    residuals = []
    ratios = []
    stalled = 0

    for iteration in range(1, maxIter + 1):
        p = potentialFromSequence(minus, plus, target.v0, target.isReal)

        imageMinus, imagePlus = phiTail(p, N, nMax, K, jobs).sequence(nMax)

        diffMinus, diffPlus = targetMinus - imageMinus, targetPlus - imagePlus

        residual = _sequenceNorm(diffMinus, diffPlus, w)

        if residuals:
            ratio = residual / residuals[-1] if residuals[-1] > 0 else 0.0

            ratios.append(ratio)

            stalled = stalled + 1 if ratio >= 1.0 else 0

        residuals.append(residual)

        logger.debug(f'reconstruct iteration {iteration}: residual {residual:.3g}')

        if residual < tol:
            decay = float(np.exp(np.mean(np.log(np.maximum(ratios, 1e-300))))) if ratios else None

            logger.info(f'reconstruct converged in {iteration} iterations, residual {residual:.3g}')

            return ReconstructionResult(p, iteration, residuals, decay)

        if stalled >= STALL_LIMIT:
            raise NoConvergence(
                f'residual did not decrease for {STALL_LIMIT} iterations '
                f'(last {residual:.3g})',
                module=__name__,
            )

        minus = minus + diffMinus
        plus = plus + diffPlus

    raise NoConvergence(
        f'no convergence in {maxIter} iterations (residual {residuals[-1]:.3g})',
        module=__name__,
    )
