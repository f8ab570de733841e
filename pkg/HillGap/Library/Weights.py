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

from typing import Callable, Mapping, Sequence, Tuple

import math
import logging
import dataclasses

import numpy as np
import scipy.optimize

__all__ = [
    'Weight',
    'makeWeight',
    'weightFromConfig',
    'weightedSeqNorm',
    'isSubmultiplicative',
    'constructOscillatingWeight',
    'compareWeights',
    'OSCILLATING_PRESETS',
]

logger = logging.getLogger(__name__)

SUBMULTIPLICATIVE_RANGE = 64
SUBMULTIPLICATIVE_TOL = 1e-12
SLOPE_TOL = 1e-10
SAMPLES_PER_UNIT = 8


@dataclasses.dataclass(frozen=True)
class Weight:
    """
    Even positive weight Omega(k) tabulated for |k| <= limit, Omega(0) = 1.
    """

    kind: str
    table: np.ndarray
    omega: np.ndarray | None = None
    params: dict = dataclasses.field(default_factory=dict)
    breaks: Tuple[float, ...] = ()

    @property
    def limit(self) -> int:
        return len(self.table) - 1

    def __call__(self, k):
        index = np.abs(np.asarray(k, dtype=int))

        if np.any(index > self.limit):
            raise IndexError(
                f'weight queried at |k|={int(np.max(index))} beyond its range {self.limit}'
            )

        values = self.table[index]

        return float(values) if values.ndim == 0 else values


def _tabulate(fn: Callable[[np.ndarray], np.ndarray], limit: int) -> np.ndarray:
    k = np.arange(1, limit + 1, dtype=float)

    table = np.ones(limit + 1)
    table[1:] = fn(k)

    return table


def isSubmultiplicative(
    omega: Callable[[int], float], bound: int = SUBMULTIPLICATIVE_RANGE
) -> bool:
    """Check omega(m + n) <= omega(m) omega(n) for all |m|, |n| <= bound."""
    m = np.arange(-bound, bound + 1)

    values = np.array([omega(int(item)) for item in m], dtype=float)
    sums = np.array([omega(int(item)) for item in np.arange(-2 * bound, 2 * bound + 1)])

    lhs = sums[(m[:, None] + m[None, :]) + 2 * bound]
    rhs = values[:, None] * values[None, :]

    return bool(np.all(lhs <= rhs * (1.0 + SUBMULTIPLICATIVE_TOL)))


def _omegaPreset(name: str, params: dict) -> Callable[[int], float]:
    if name == 'constant':
        return lambda m: 1.0

    if name == 'power':
        t = float(params.get('t', 1.0))

        if t < 0:
            raise InvalidParams(
                f'power omega needs t >= 0. Got t={t}', module=__name__
            )

        return lambda m: (1.0 + abs(m)) ** t

    if name == 'subexp':
        b = float(params.get('b', 0.5))
        c = float(params.get('c', 1.0))

        if not 0 < b < 1 or c <= 0:
            raise InvalidParams(
                f'subexp omega needs 0 < b < 1 and c > 0. Got b={b}, c={c}',
                module=__name__,
            )

        return lambda m: math.exp(c * abs(m) ** b)

    raise InvalidParams(f'unknown omega preset \'{name}\'', module=__name__)


# Can throw exceptions
def makeWeight(kind: str, limit: int = 256, **params) -> Weight:
    """
    Closed-form weight families.

    :param kind: 'power' (a), 'gevrey' (s, b, c), 'ratio_form' (omega),
                 'custom_table' (values) or 'oscillating' (preset, ...)
    :param limit: largest |k| tabulated
    """
    if kind == 'power':
        a = float(params.get('a', 0.0))

        if a < -1:
            raise InvalidParams(f'power weight needs a >= -1. Got a={a}', module=__name__)

        return Weight(kind, _tabulate(lambda k: k**a, limit), params={'a': a})

    if kind == 'gevrey':
        s = float(params.get('s', 0.0))
        b = float(params.get('b', 0.5))
        c = float(params.get('c', 1.0))

        if not 0 < b < 1:
            raise InvalidParams(
                f'invalid weight parameter \'b\'={b}. Expected 0 < b < 1',
                module=__name__,
            )

        if c <= 0:
            raise InvalidParams(
                f'invalid weight parameter \'c\'={c}. Expected c > 0',
                module=__name__,
            )

        return Weight(
            kind,
            _tabulate(lambda k: k**s * np.exp(c * k**b), limit),
            params={'s': s, 'b': b, 'c': c},
        )

    if kind == 'ratio_form':
        omega = params.get('omega', 'constant')

        if callable(omega):
            omegaFn = omega
            name = getattr(omega, '__name__', 'custom')
        else:
            omegaFn = _omegaPreset(str(omega), params)
            name = str(omega)

        if not isSubmultiplicative(omegaFn):
            raise InvalidParams(
                f'omega \'{name}\' is not submultiplicative', module=__name__
            )

        omegaTable = np.array([omegaFn(k) for k in range(limit + 1)], dtype=float)

        table = np.ones(limit + 1)
        table[1:] = omegaTable[1:] / np.arange(1, limit + 1)

        return Weight(kind, table, omega=omegaTable, params={'omega': name})

    if kind == 'custom_table':
        values = np.asarray(params.get('values', []), dtype=float)

        if values.size == 0 or np.any(values <= 0):
            raise InvalidParams('custom weight values must be positive', module=__name__)

        table = np.ones(len(values) + 1)
        table[1:] = values

        return Weight(kind, table)

    if kind == 'oscillating':
        preset = params.get('preset', 'example1')

        if preset not in OSCILLATING_PRESETS:
            raise InvalidParams(
                f'unknown oscillating preset \'{preset}\'', module=__name__
            )

        aFn, bFn = OSCILLATING_PRESETS[preset](params)

        return constructOscillatingWeight(aFn, bFn, limit)

    raise InvalidParams(f'unknown weight kind \'{kind}\'', module=__name__)


def weightFromConfig(config: Mapping, limit: int = 256) -> Weight:
    params = dict(config)
    kind = params.pop('kind', None)

    if kind is None:
        raise ConfigError('weight config has no \'kind\'', module=__name__)

    limit = int(params.pop('limit', limit))

    return makeWeight(kind, limit=limit, **params)


def weightedSeqNorm(x, w: Weight, indices: Sequence[int] = None) -> float:
    """
    (sum |x_k|^2 Omega(k)^2)^(1/2).

    :param x: mapping k -> x_k, or a sequence paired with indices
              (default 1, 2, ...)
    """
    if isinstance(x, Mapping):
        indices = np.fromiter(x.keys(), dtype=int, count=len(x))
        values = np.array(list(x.values()), dtype=complex)
    else:
        values = np.asarray(x, dtype=complex)

        if indices is None:
            indices = np.arange(1, len(values) + 1)
        else:
            indices = np.asarray(indices, dtype=int)

    if values.size == 0:
        return 0.0

    return float(np.sqrt(np.sum(np.abs(values) ** 2 * w(indices) ** 2)))


def _example1(params: dict):
    alpha = float(params.get('alpha', 0.0))
    beta = float(params.get('beta', 1.0))

    if not -1 < alpha < beta:
        raise InvalidParams(
            f'example1 needs -1 < alpha < beta. Got alpha={alpha}, beta={beta}',
            module=__name__,
        )

    def aFn(x):
        return (alpha + 1.0) * np.log(x + math.e)

    def bFn(x):
        return (beta + 1.0) * np.log(x + math.e)

    return aFn, bFn


def _example2(params: dict):
    def aFn(x):
        return np.log(np.log(x + math.e))

    def bFn(x):
        return x / np.log(x + math.e)

    return aFn, bFn


OSCILLATING_PRESETS = {
    'example1': _example1,
    'example2': _example2,
}


def _checkHypotheses(a: np.ndarray, b: np.ndarray):
    # Integer points only
    if np.any(b[1:] <= a[1:]):
        raise HypothesisViolation('need a(x) < b(x) for x > 0', module=__name__)

    for name, values in (('a', a), ('b', b)):
        first = np.diff(values)
        second = np.diff(values, 2)

        if np.any(first <= 0):
            raise HypothesisViolation(
                f'{name} must be increasing on integer points', module=__name__
            )

        if np.any(second > SLOPE_TOL):
            raise HypothesisViolation(
                f'{name} must be concave on integer points', module=__name__
            )


def constructOscillatingWeight(
    aFn: Callable, bFn: Callable, limit: int
) -> Weight:
    """
    Concave g squeezed between a and b, touching b at odd breakpoints and
    a at even ones, and the weight G(m) = exp(g(|m|)) / |m|.

    g = b up to c_1, then piecewise linear: each segment starts on b, has
    the smallest slope that keeps it above a, touches a, and ends where it
    meets b again.
    """
    integers = np.arange(limit + 1, dtype=float)

    aInt, bInt = aFn(integers), bFn(integers)

    if np.allclose(aInt, bInt, rtol=0.0, atol=1e-14):
        # Sandwich forces g = a
        table = np.ones(limit + 1)
        table[1:] = np.exp(aInt[1:]) / integers[1:]

        return Weight('oscillating', table, params={'degenerate': True})

    _checkHypotheses(aInt, bInt)

    xs = np.linspace(0.0, float(limit), SAMPLES_PER_UNIT * limit + 1)
    aGrid, bGrid = aFn(xs), bFn(xs)

    aSlope = np.gradient(aGrid, xs)
    bSlope = np.gradient(bGrid, xs)

    # c_1: from here on slopes stay <= 1/2 and b - a >= 1
    good = (aSlope <= 0.5) & (bSlope <= 0.5) & (bGrid - aGrid >= 1.0)
    bad = np.nonzero(~good)[0]

    if bad.size == 0:
        start = 0
    elif bad[-1] + 1 < xs.size:
        start = bad[-1] + 1
    else:
        raise HypothesisViolation(
            f'no c_1 within [0, {limit}] with slopes <= 1/2 and b - a >= 1',
            module=__name__,
        )

    breaks = [float(xs[start])]
    slopes = []

    origin = breaks[0]
    height = float(bFn(origin))

    while True:
        mask = xs > origin

        if not np.any(mask):
            break

        xTail, aTail = xs[mask], aGrid[mask]

        def staysAbove(slope: float) -> bool:
            return bool(np.all(height + slope * (xTail - origin) >= aTail - 1e-14))

        lower, upper = 0.0, 1.0

        if staysAbove(lower):
            # a never reaches the current level inside the range
            slopes.append(0.0)
            break

        while upper - lower > SLOPE_TOL:
            middle = 0.5 * (lower + upper)

            if staysAbove(middle):
                upper = middle
            else:
                lower = middle

        slope = upper
        slopes.append(slope)

        line = height + slope * (xTail - origin)

        # Tangency with a
        touch = float(xTail[np.argmin(line - aTail)])
        breaks.append(touch)

        def gap(x):
            return height + slope * (x - origin) - float(bFn(x))

        after = xs > touch
        crossing = np.nonzero(after & (height + slope * (xs - origin) >= bGrid))[0]

        if crossing.size == 0:
            break

        right = float(xs[crossing[0]])
        left = max(touch, right - 1.0 / SAMPLES_PER_UNIT)

        if gap(left) >= 0:
            nextOrigin = left
        else:
            nextOrigin = float(scipy.optimize.brentq(gap, left, right, xtol=1e-13))

        breaks.append(nextOrigin)

        origin = nextOrigin
        height = float(bFn(origin))

    def gFn(x):
        x = np.asarray(x, dtype=float)
        result = np.array(bFn(x), dtype=float)

        for index, slope in enumerate(slopes):
            segmentStart = breaks[2 * index]
            segmentHeight = float(bFn(segmentStart))

            mask = x >= segmentStart

            result = np.where(
                mask, segmentHeight + slope * (x - segmentStart), result
            )

        return result

    gInt = gFn(integers)

    table = np.ones(limit + 1)
    table[1:] = np.exp(gInt[1:]) / integers[1:]

    logger.info(
        f'oscillating weight with {len(breaks)} breakpoints within [0, {limit}]'
    )

    return Weight(
        'oscillating',
        table,
        params={'g': gInt, 'a': aInt, 'b': bInt},
        breaks=tuple(breaks),
    )


def compareWeights(first: Weight, second: Weight) -> Tuple[float, float]:
    """(sup first/second, sup second/first) over the common range."""
    limit = min(first.limit, second.limit)

    ratio = first.table[: limit + 1] / second.table[: limit + 1]

    return float(np.max(ratio)), float(np.max(1.0 / ratio))
