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

from HillGap.Utility.Constants import *

from typing import Callable, Iterable, Sequence, Tuple

import logging
import functools
import multiprocessing

import numpy as np

__all__ = [
    'principalSqrt',
    'parseRange',
    'complexToPair',
    'pairToComplex',
    'formatNumber',
    'relativeDifference',
    'bcForIndex',
    'parallelMap',
]

logger = logging.getLogger(__name__)

if PLATFORM_IS_WINDOWS:
    ProcessContext = multiprocessing
else:
    ProcessContext = multiprocessing.get_context('spawn')


def principalSqrt(w):
    """
    Square root with the argument taken in [-pi, pi).

    numpy uses (-pi, pi], which differs only on the negative real axis:
    there this returns -i*sqrt(r) instead of +i*sqrt(r).
    """
    w = np.asarray(w, dtype=complex)

    r = np.abs(w)
    phi = np.angle(w)
    phi = np.where(phi >= np.pi, phi - 2.0 * np.pi, phi)

    return np.sqrt(r) * np.exp(0.5j * phi)


# Can throw exceptions
def parseRange(value) -> Tuple[int, int]:
    if isinstance(value, str):
        first, sep, last = value.partition('..')

        if not sep:
            raise ValueError(f'invalid range \'{value}\'. Expected A..B')

        first, last = int(first), int(last)
    else:
        first, last = (int(item) for item in value)

    if first > last:
        raise ValueError(f'invalid range \'{value}\'. Empty')

    return first, last


def complexToPair(value) -> list:
    value = complex(value)

    return [value.real, value.imag]


def pairToComplex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f'invalid complex pair \'{value}\'')

        return complex(float(value[0]), float(value[1]))

    return complex(value)


def formatNumber(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    return f'{float(value):.17g}'


def relativeDifference(a, b, floor: float = 1e-12) -> float:
    return float(abs(a - b) / max(abs(a), abs(b), floor))


@functools.lru_cache(None)
def bcForIndex(n: int) -> str:
    # Periodic levels carry even n, antiperiodic odd n
    return BC_PER_PLUS if n % 2 == 0 else BC_PER_MINUS


def parallelMap(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """
    Ordered map over items. jobs <= 1 runs in-process.

    :param fn: picklable callable (module-level function or partial)
    :param items: arguments, one call each
    :param jobs: worker process count
    :return: results in the order of items
    """
    items: Sequence = list(items)

    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    jobs = min(jobs, len(items))

    logger.debug(f'parallel map over {len(items)} items with {jobs} workers')

    with ProcessContext.Pool(processes=jobs) as pool:
        return pool.map(fn, items)
