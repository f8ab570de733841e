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

from typing import Mapping, Tuple

import math
import logging
import dataclasses

import numpy as np
import scipy.linalg

__all__ = [
    'PotentialSpec',
    'buildPotential',
    'potentialParams',
    'potentialFromConfig',
    'potentialToConfig',
    'potentialFromSequence',
    'potentialSequence',
    'scalePotential',
    'fourierCoeffV',
    'sineCoefficients',
    'exponentialFromSine',
    'exponentialTable',
    'sineTable',
    'tailEnergy',
    'evaluateQ',
]

logger = logging.getLogger(__name__)

CONJUGACY_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class PotentialSpec:
    """
    Singular potential v = v0 + Q' with Q = sum q(m) exp(imx), m in 2Z \\ {0}.

    Exponential coefficients are the source of truth. Sine coefficients are
    always derived from them.
    """

    v0: complex = 0j
    coeffs: Mapping[int, complex] = dataclasses.field(default_factory=dict)
    isReal: bool = False

    @property
    def support(self) -> int:
        return max((abs(m) for m in self.coeffs), default=0)

    @property
    def isZero(self) -> bool:
        return self.v0 == 0 and not any(self.coeffs.values())

    def q(self, m: int) -> complex:
        return self.coeffs.get(m, 0j)

    def norm(self) -> float:
        return tailEnergy(self, 0)


def _checkCoefficients(coeffs: dict, v0: complex, isReal: bool):
    for m in coeffs:
        if m == 0:
            raise ZeroMeanViolation(
                'Q must have zero mean: entry at m=0 supplied', module=__name__
            )

        if m % 2 != 0:
            raise ParityError(
                f'coefficient index m={m} is odd. Expected m in 2Z', module=__name__
            )

    if isReal:
        if v0.imag != 0:
            raise ConjugacyViolation(
                f'real potential with non-real v0={v0}', module=__name__
            )

        for m, value in coeffs.items():
            mirror = coeffs.get(-m, 0j)

            if abs(mirror - value.conjugate()) > CONJUGACY_TOL * max(1.0, abs(value)):
                raise ConjugacyViolation(
                    f'real potential requires q(-m) = conj(q(m)). '
                    f'Got q({m})={value}, q({-m})={mirror}',
                    module=__name__,
                )


def _coefficientMapping(raw) -> dict:
    if raw is None:
        return {}

    if isinstance(raw, Mapping):
        return {int(m): pairToComplex(value) for m, value in raw.items()}

    # List of {"m": int, "re": float, "im": float}
    return {
        int(item['m']): complex(float(item.get('re', 0.0)), float(item.get('im', 0.0)))
        for item in raw
    }


# Can throw exceptions
def buildPotential(kind: str, **params) -> PotentialSpec:
    """
    Construct a potential.

    :param kind: 'exp_q' (q(m) given), 'exp_v' (V(m) given),
                 'cos_v' (v_k of sum v_k sqrt(2) cos 2kx) or 'delta_comb'
    :param params: kind-specific numbers, see potentialFromConfig
    :return: validated PotentialSpec
    """
    v0 = pairToComplex(params.get('v0', 0.0))

    if kind == 'exp_q':
        coeffs = _coefficientMapping(params.get('coeffs'))
        isReal = bool(params.get('real', False))
    elif kind == 'exp_v':
        values = _coefficientMapping(params.get('coeffs'))

        if values.get(0, 0j) != 0:
            raise ZeroMeanViolation(
                f'V(0)={values[0]} must vanish. Put the constant into v0',
                module=__name__,
            )

        values.pop(0, None)

        for m in values:
            if m % 2 != 0:
                raise ParityError(
                    f'coefficient index m={m} is odd. Expected m in 2Z',
                    module=__name__,
                )

        coeffs = {m: value / (1j * m) for m, value in values.items()}
        isReal = bool(params.get('real', False))
    elif kind == 'cos_v':
        vk = [pairToComplex(value) for value in params.get('vk', [])]

        for k, value in enumerate(vk, start=1):
            if value.imag != 0:
                raise ConjugacyViolation(
                    f'cos_v requires real v_k. Got v_{k}={value}', module=__name__
                )

        coeffs = {}

        for k, value in enumerate(vk, start=1):
            if value == 0:
                continue

            # V(2k) = V(-2k) = v_k / sqrt(2), q(m) = V(m) / (im)
            V = value.real / SQRT2

            coeffs[2 * k] = V / (2j * k)
            coeffs[-2 * k] = V / (-2j * k)

        isReal = True
    elif kind == 'delta_comb':
        alpha = pairToComplex(params.get('alpha', 0.0))

        if alpha.imag != 0 or alpha == 0:
            raise InvalidParams(
                f'delta_comb requires real alpha != 0. Got alpha={alpha}',
                module=__name__,
            )

        alpha = alpha.real

        if 'support' in params:
            support = int(params['support'])
        else:
            support = 4 * int(params.get('cutoff', DEFAULT_CUTOFF))

        # Sawtooth primitive alpha * (1/2 - x/pi) on (0, pi)
        coeffs = {
            m: alpha / (1j * math.pi * m)
            for m in range(-support, support + 1, 2)
            if m != 0
        }

        v0 = complex(alpha / math.pi)
        isReal = True
    else:
        raise InvalidParams(f'unknown potential kind \'{kind}\'', module=__name__)

    coeffs = {m: complex(value) for m, value in coeffs.items() if value != 0}

    _checkCoefficients(coeffs, v0, isReal)

    logger.debug(f'built {kind} potential with {len(coeffs)} coefficients')

    return PotentialSpec(v0=v0, coeffs=coeffs, isReal=isReal)


def potentialParams(config: Mapping) -> Tuple[str, dict]:
    """kind and flat build parameters of a potential config."""
    kind = config.get('kind')

    if kind is None:
        raise ConfigError('potential config has no \'kind\'', module=__name__)

    params = dict(config)
    params.pop('kind')

    coeffs = params.get('coeffs')

    # Kind-specific data may also sit inside "coeffs"
    if isinstance(coeffs, Mapping) and kind in ('cos_v', 'delta_comb'):
        params.pop('coeffs')
        params.update(coeffs)

    return kind, params


def potentialFromConfig(config: dict) -> PotentialSpec:
    kind, params = potentialParams(config)

    return buildPotential(kind, **params)


def potentialToConfig(p: PotentialSpec) -> dict:
    return {
        'kind': 'exp_q',
        'v0': complexToPair(p.v0),
        'coeffs': [
            {'m': m, 're': value.real, 'im': value.imag}
            for m, value in sorted(p.coeffs.items())
        ],
        'real': p.isReal,
    }


def potentialSequence(p: PotentialSpec, nMax: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Coefficients v_k = V(2k) of v.

    :return: (v_{-n}, v_n) for n = 1..nMax as two arrays
    """
    n = np.arange(1, nMax + 1)

    vMinus = np.array([fourierCoeffV(p, -2 * k) for k in n], dtype=complex)
    vPlus = np.array([fourierCoeffV(p, 2 * k) for k in n], dtype=complex)

    return vMinus, vPlus


def potentialFromSequence(
    vMinus, vPlus, v0: complex = 0j, isReal: bool = False
) -> PotentialSpec:
    coeffs = {}

    for n, (valueMinus, valuePlus) in enumerate(zip(vMinus, vPlus), start=1):
        coeffs[-2 * n] = complex(valueMinus)
        coeffs[2 * n] = complex(valuePlus)

    if isReal:
        # Symmetrize to kill rounding drift in the conjugate pairs
        for n in range(1, len(vPlus) + 1):
            value = 0.5 * (coeffs[2 * n] + coeffs[-2 * n].conjugate())

            coeffs[2 * n] = value
            coeffs[-2 * n] = value.conjugate()

        v0 = complex(complex(v0).real)

    return buildPotential('exp_v', coeffs=coeffs, v0=v0, real=isReal)


def scalePotential(p: PotentialSpec, t: float) -> PotentialSpec:
    return PotentialSpec(
        v0=p.v0 * t,
        coeffs={m: value * t for m, value in p.coeffs.items() if value * t != 0},
        isReal=p.isReal and complex(t).imag == 0,
    )


def fourierCoeffV(p: PotentialSpec, m: int, basis: str = 'exponential') -> complex:
    """
    V(m) = i m q(m) in the exponential basis, or V~(k) = k q~(k) in the sine basis.
    """
    if basis == 'exponential':
        if m % 2 != 0:
            raise ParityError(
                f'V(m) is defined for even m only. Got m={m}', module=__name__
            )

        if m == 0:
            return 0j

        return 1j * m * p.q(m)

    if basis == 'sine':
        if m < 1:
            raise ValueError(f'sine index must be >= 1. Got k={m}')

        return m * sineCoefficients(p, m)[m]

    raise ValueError(f'unknown basis \'{basis}\'')


def sineCoefficients(p: PotentialSpec, kMax: int) -> np.ndarray:
    """
    q~(k), k = 0..kMax, of Q = sum q~(k) sqrt(2) sin kx on [0, pi]; q~(0) = 0.
    """
    result = np.zeros(kMax + 1, dtype=complex)

    if not p.coeffs or kMax < 1:
        return result

    ms = np.array(sorted(p.coeffs), dtype=float)
    qs = np.array([p.coeffs[int(m)] for m in ms], dtype=complex)

    # Even k pick up the odd part of q only
    for k in range(2, kMax + 1, 2):
        result[k] = (1j / SQRT2) * (p.q(k) - p.q(-k))

    odd = np.arange(1, kMax + 1, 2, dtype=float)

    if odd.size:
        kernel = odd[:, None] / (odd[:, None] ** 2 - ms[None, :] ** 2)

        result[1::2] = (2.0 * SQRT2 / math.pi) * (kernel @ qs)

    return result


def exponentialFromSine(
    sine: np.ndarray, support: int, rcond: float = None
) -> dict[int, complex]:
    """
    Recover q(m), 0 < |m| <= support, from sine coefficients.

    The odd part q(m) - q(-m) comes from even k directly; the even part
    q(m) + q(-m) is solved by least squares from the odd k.
    """
    support -= support % 2

    if support <= 0:
        return {}

    if len(sine) <= support:
        raise ValueError(
            f'need sine coefficients up to k={support}. Got {len(sine) - 1}'
        )

    ms = np.arange(2, support + 1, 2, dtype=float)
    odd = np.arange(1, len(sine), 2, dtype=float)

    difference = -1j * SQRT2 * np.asarray(sine)[2 : support + 1 : 2]

    kernel = (2.0 * SQRT2 / math.pi) * odd[:, None] / (odd[:, None] ** 2 - ms[None, :] ** 2)

    total, *_ = scipy.linalg.lstsq(
        kernel.astype(complex), np.asarray(sine)[1::2].astype(complex), cond=rcond
    )

    result = {}

    for index, m in enumerate(ms.astype(int)):
        result[int(m)] = 0.5 * (total[index] + difference[index])
        result[-int(m)] = 0.5 * (total[index] - difference[index])

    return result


def exponentialTable(p: PotentialSpec, dMax: int) -> np.ndarray:
    """
    V(d) for d = -dMax..dMax, stored at position d + dMax.
    """
    table = np.zeros(2 * dMax + 1, dtype=complex)

    for m, value in p.coeffs.items():
        if abs(m) <= dMax:
            table[m + dMax] = 1j * m * value

    return table


def sineTable(p: PotentialSpec, kMax: int) -> np.ndarray:
    """
    V~(k) = k q~(k) for k = 0..kMax, with V~(0) = 0.
    """
    return np.arange(kMax + 1) * sineCoefficients(p, kMax)


def tailEnergy(p: PotentialSpec, m: int) -> float:
    if m < 0:
        raise ValueError(f'tail index must be >= 0. Got m={m}')

    return math.sqrt(
        sum(abs(value) ** 2 for k, value in p.coeffs.items() if abs(k) >= m)
    )


def evaluateQ(p: PotentialSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)

    if not p.coeffs:
        return np.zeros_like(x, dtype=complex)

    ms = np.array(list(p.coeffs), dtype=float)
    qs = np.array(list(p.coeffs.values()), dtype=complex)

    return np.exp(1j * np.multiply.outer(x, ms)) @ qs
