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

import math

import numpy as np
import pytest


def test_powerWeight():
    w = makeWeight('power', limit=16, a=0)

    assert np.all(w.table == 1.0)
    assert w(-5) == w(5) == 1.0

    w = makeWeight('power', limit=16, a=1)

    assert w(7) == 7.0
    assert w(0) == 1.0


def test_gevreyWeight():
    w = makeWeight('gevrey', limit=16, s=0, b=0.5, c=1.0)

    assert w(4) == pytest.approx(math.e**2, rel=1e-14)
    assert w(-4) == w(4)


def test_ratioFormWeight():
    w = makeWeight('ratio_form', limit=32, omega='constant')

    k = np.arange(1, 33)

    assert np.allclose(w(k), 1.0 / k)
    assert np.allclose(k * w(k), w.omega[1:])

    w = makeWeight('ratio_form', limit=32, omega='power', t=1.0)

    assert np.allclose(k * w(k), 1.0 + k)


def test_weightedNorm(cosPotential):
    assert weightedSeqNorm([0.0, 0.0, 0.0], makeWeight('power', a=1)) == 0.0

    indicator = [0.0, 0.0, 1.0]

    assert weightedSeqNorm(indicator, makeWeight('power', a=1)) == pytest.approx(3.0)

    vMinus, vPlus = potentialSequence(cosPotential, 4)

    w = makeWeight('ratio_form', limit=8, omega='constant')
    x = {-k: value for k, value in enumerate(vMinus, start=1)}
    x.update({k: value for k, value in enumerate(vPlus, start=1)})

    assert weightedSeqNorm(x, w) == pytest.approx(SQRT2)


def test_weightBeyondRange():
    w = makeWeight('power', limit=8, a=1)

    with pytest.raises(IndexError):
        w(9)


def test_submultiplicative():
    assert isSubmultiplicative(lambda m: (1.0 + abs(m)) ** 2)
    assert isSubmultiplicative(lambda m: math.exp(abs(m) ** 0.5))
    assert not isSubmultiplicative(lambda m: math.exp(abs(m) ** 2 / 100.0))


@pytest.mark.parametrize(
    'kind, params',
    [
        ('power', {'a': -2}),
        ('gevrey', {'b': 1.0}),
        ('gevrey', {'b': 0.5, 'c': 0.0}),
        ('ratio_form', {'omega': 'subexp', 'b': 1.5}),
        ('ratio_form', {'omega': lambda m: math.exp(m * m / 1000.0)}),
        ('custom_table', {'values': [1.0, -1.0]}),
        ('oscillating', {'preset': 'example1', 'alpha': 2.0, 'beta': 1.0}),
        ('triangle', {}),
    ],
)
def test_invalidWeights(kind, params):
    with pytest.raises(InvalidParams):
        makeWeight(kind, limit=16, **params)


def test_weightFromConfig():
    w = weightFromConfig({'kind': 'gevrey', 'b': 0.5, 'c': 1.0, 'limit': 10})

    assert w.limit == 10

    with pytest.raises(ConfigError):
        weightFromConfig({'a': 1})


def test_degenerateOscillatingWeight():
    def fn(x):
        return np.log(np.asarray(x) + math.e)

    w = constructOscillatingWeight(fn, fn, 32)

    assert w.breaks == ()

    k = np.arange(1, 33)

    assert np.allclose(w(k), np.exp(fn(k)) / k)


def test_oscillatingExample1():
    w = makeWeight('oscillating', limit=256, preset='example1', alpha=0.0, beta=1.0)

    g, a, b = w.params['g'], w.params['a'], w.params['b']

    assert len(w.breaks) >= 2
    assert np.all(a <= g + 1e-12)
    assert np.all(g <= b + 1e-12)

    # g = b up to the first breakpoint
    first = w.breaks[0]
    k = np.arange(len(g))

    assert np.allclose(g[k <= first], b[k <= first])

    slopes = np.diff(g)

    assert np.all(np.diff(slopes) <= 1e-9)

    # Weight relation G(m) = exp(g(m)) / m
    assert np.allclose(w(k[1:]), np.exp(g[1:]) / k[1:])


def test_oscillatingExample2():
    w = makeWeight('oscillating', limit=256, preset='example2')

    g, a, b = w.params['g'], w.params['a'], w.params['b']

    assert np.all(a <= g + 1e-12)
    assert np.all(g <= b + 1e-12)
    assert np.all(np.diff(np.diff(g)) <= 1e-9)

    # Consecutive touches of b are at least two apart
    touches = w.breaks[::2]

    assert all(right - left >= 2.0 for left, right in zip(touches, touches[1:]))


def test_hypothesisViolation():
    def aFn(x):
        return np.asarray(x, dtype=float) ** 2

    def bFn(x):
        return np.asarray(x, dtype=float) ** 2 + 1.0

    with pytest.raises(HypothesisViolation):
        constructOscillatingWeight(aFn, bFn, 16)


def test_compareWeights():
    first = makeWeight('power', limit=16, a=0)
    second = makeWeight('power', limit=16, a=1)

    upper, lower = compareWeights(first, second)

    assert upper == pytest.approx(1.0)
    assert lower == pytest.approx(16.0)
