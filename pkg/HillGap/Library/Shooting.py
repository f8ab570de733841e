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
from HillGap.Library.MatrixOperator import isolationRadius

from typing import Callable, List

import math
import logging
import dataclasses

import mpmath
import numpy as np
import scipy.optimize

__all__ = [
    'MonodromyResult',
    'ShootingIntegrator',
    'monodromy',
    'locateBCEigenvalues',
    'kronigPenneyTrace',
]

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class MonodromyResult:
    """
    Transfer matrix of y' = Qy + u, u' = (C - lambda - Q^2) y - Qu over [0, pi].
    """

    lam: complex
    matrix: np.ndarray
    steps: int
    change: float

    @property
    def y2Pi(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


def _chainProduct(factors: np.ndarray) -> np.ndarray:
    """Ordered product F_{N-1} ... F_1 F_0 over axis -3 by pairwise reduction."""
    while factors.shape[-3] > 1:
        if factors.shape[-3] % 2:
            identity = np.broadcast_to(
                np.eye(2, dtype=factors.dtype), factors.shape[:-3] + (1, 2, 2)
            )
            factors = np.concatenate([factors, identity], axis=-3)

        factors = factors[..., 1::2, :, :] @ factors[..., 0::2, :, :]

    return factors[..., 0, :, :]


class ShootingIntegrator:
    """
    Fixed-step RK4 propagator for one potential. Q is sampled once on the
    half-step grid by an inverse FFT of its Fourier coefficients.
    """

    def __init__(self, p: PotentialSpec, steps: int):
        self.potential = p
        self.steps = int(steps)

        if self.steps <= p.support // 2:
            raise ValueError(
                f'{self.steps} steps cannot resolve Fourier support {p.support}'
            )

        self.samples = {
            count: self._sampleQ(count) for count in (self.steps // 2, self.steps)
        }

    def _sampleQ(self, steps: int) -> np.ndarray:
        size = 2 * steps

        # x_j = j pi / size, exp(imx_j) = exp(2 pi i l j / size) with m = 2l
        spectrum = np.zeros(size, dtype=complex)

        for m, value in self.potential.coeffs.items():
            spectrum[(m // 2) % size] += value

        values = size * np.fft.ifft(spectrum)

        if self.potential.isReal:
            values = values.real.astype(complex)

        # Periodic endpoint x = pi
        return np.append(values, values[0])

    def _generator(self, Q: np.ndarray, lam) -> np.ndarray:
        lam = np.asarray(lam, dtype=complex)[..., None]

        A = np.empty(lam.shape[:-1] + Q.shape + (2, 2), dtype=complex)

        A[..., 0, 0] = Q
        A[..., 0, 1] = 1.0
        A[..., 1, 0] = self.potential.v0 - lam - Q * Q
        A[..., 1, 1] = -Q

        return A

    def product(self, lam, steps: int) -> np.ndarray:
        """RK4 monodromy with the given step count; lam may be an array."""
        if not self.potential.coeffs:
            return self._constantPropagator(lam)

        Q = self.samples.get(steps)

        if Q is None:
            Q = self._sampleQ(steps)

        h = math.pi / steps

        A0 = self._generator(Q[0:-1:2], lam)
        Ah = self._generator(Q[1::2], lam)
        A1 = self._generator(Q[2::2], lam)

        I = np.eye(2, dtype=complex)

        K1 = A0
        K2 = Ah @ (I + 0.5 * h * K1)
        K3 = Ah @ (I + 0.5 * h * K2)
        K4 = A1 @ (I + h * K3)

        factors = I + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4)

        return _chainProduct(factors)

    def _constantPropagator(self, lam) -> np.ndarray:
        # Q = 0: y'' = (v0 - lam) y has the exact propagator exp(pi A)
        c = self.potential.v0 - np.asarray(lam, dtype=complex)
        s = np.sqrt(c)

        with np.errstate(invalid='ignore', divide='ignore'):
            ratio = np.where(s == 0, math.pi, np.sinh(math.pi * s) / s)

        M = np.empty(c.shape + (2, 2), dtype=complex)

        M[..., 0, 0] = np.cosh(math.pi * s)
        M[..., 0, 1] = ratio
        M[..., 1, 0] = c * ratio
        M[..., 1, 1] = M[..., 0, 0]

        return M

    def matrix(self, lam) -> np.ndarray:
        coarse = self.product(lam, self.steps // 2)
        fine = self.product(lam, self.steps)

        # Richardson: RK4 error is O(h^4)
        return (16.0 * fine - coarse) / 15.0


def _initialSteps(p: PotentialSpec, steps: int) -> int:
    steps = max(int(steps), SHOOTING_MIN_STEPS)

    while steps <= 2 * p.support:
        steps *= 2

    return steps


# Can throw exceptions
def monodromy(
    p: PotentialSpec, lam: complex, steps: int = SHOOTING_MIN_STEPS
) -> MonodromyResult:
    """
    Monodromy at lam, step count doubled until the RK4 product moves by less
    than SHOOTING_STEP_TOL. The returned matrix is the Richardson combination
    of the last two products.
    """
    steps = _initialSteps(p, steps)

    integrator = ShootingIntegrator(p, 2 * steps)

    previous = integrator.product(lam, steps)

    while True:
        steps *= 2

        if steps > SHOOTING_MAX_STEPS:
            raise StepConvergenceFailure(
                f'monodromy at lambda={lam} not stable up to {SHOOTING_MAX_STEPS} steps',
                module=__name__,
            )

        current = integrator.product(lam, steps)
        change = float(np.max(np.abs(current - previous)))

        if change < SHOOTING_STEP_TOL * (1.0 + float(np.max(np.abs(current)))):
            break

        previous = current

    matrix = (16.0 * current - previous) / 15.0

    result = MonodromyResult(complex(lam), matrix, steps, change)

    if abs(result.det - 1.0) > SHOOTING_STEP_TOL:
        logger.warning(f'monodromy det {result.det} drifts from 1 at lambda={lam}')

    return result


def kronigPenneyTrace(alpha: float, lam) -> complex:
    """Discriminant of -y'' + alpha sum delta(x - k pi) y on a period of length pi."""
    k = np.sqrt(np.asarray(lam, dtype=complex))

    return 2.0 * np.cos(k * math.pi) + alpha / k * np.sin(k * math.pi)


def _findRoot(
    fn: Callable[[complex], complex],
    seed: complex,
    center: complex | None = None,
    radius: float = math.inf,
) -> complex:
    def derivative(lam):
        h = 1e-6 * (1.0 + abs(lam))

        return (fn(lam + h) - fn(lam - h)) / (2.0 * h)

    def inside(lam) -> bool:
        return center is None or abs(lam - center) < radius

    root, info = scipy.optimize.newton(
        fn,
        complex(seed),
        fprime=derivative,
        tol=1e-15,
        rtol=1e-14,
        maxiter=60,
        full_output=True,
        disp=False,
    )

    if info.converged and abs(fn(root)) < SHOOTING_ROOT_TOL:
        if inside(root):
            return complex(root)

        logger.warning(f'newton from {seed} left the disc at {root}. Falling back to muller')
    else:
        logger.warning(f'newton from {seed} stalled at {root}. Falling back to muller')

    delta = 1e-2 * (1.0 + abs(seed))

    if math.isfinite(radius):
        delta = min(delta, 0.1 * radius)

    try:
        root = mpmath.findroot(
            lambda x: mpmath.mpc(complex(fn(complex(x)))),
            (complex(seed), complex(seed) + delta, complex(seed) - delta),
            solver='muller',
            tol=1e-24,
            maxsteps=200,
            verify=False,
        )
    except (ValueError, ZeroDivisionError) as ex:
        raise RootNotFound(f'muller from {seed} failed: {ex}', module=__name__)

    root = complex(root)

    if abs(fn(root)) >= SHOOTING_ROOT_TOL:
        raise RootNotFound(
            f'no root near {seed}: residual {abs(fn(root))}', module=__name__
        )

    if not inside(root):
        raise RootNotFound(
            f'root {root} from {seed} outside radius {radius} of {center}',
            module=__name__,
        )

    return root


def _realAxisRoots(
    integrator: ShootingIntegrator, bc: str, center: float, radius: float
) -> List[complex] | None:
    """
    Eigenvalues of a real potential, bracketed on the real axis.

    The Dirichlet value mu of the gap is a simple zero of y2(pi) on the closed
    gap. g = sign * trace - 2 is positive inside the gap, negative in the
    adjacent bands and unimodal between them, so the Per+/- pair is found by
    brentq on either side of the maximum of g.
    """
    grid = np.linspace(center - radius, center + radius, SHOOTING_GRID_POINTS)

    M = integrator.matrix(grid)

    y2 = M[:, 0, 1].real
    changes = np.nonzero(np.sign(y2[:-1]) * np.sign(y2[1:]) <= 0)[0]

    if not len(changes):
        return None

    sign = 1.0 if bc == BC_PER_PLUS else -1.0
    values = sign * np.trace(M, axis1=-2, axis2=-1).real - 2.0

    if bc == BC_DIR:
        middles = 0.5 * (grid[changes] + grid[changes + 1])
        i = changes[np.argmin(np.abs(middles - center))]
    else:
        # Neighbouring Dirichlet values sit where g is near -4
        i = changes[np.argmax(np.maximum(values[changes], values[changes + 1]))]

    def y2At(lam):
        return float(integrator.matrix(lam)[0, 1].real)

    mu = scipy.optimize.brentq(y2At, grid[i], grid[i + 1], xtol=1e-13)

    if bc == BC_DIR:
        return [complex(mu)]

    def gap(lam):
        return sign * float(np.trace(integrator.matrix(lam)).real) - 2.0

    below = np.nonzero((grid < mu) & (values < 0.0))[0]
    above = np.nonzero((grid > mu) & (values < 0.0))[0]

    if not len(below) or not len(above):
        raise RootNotFound(
            f'{bc}: no band edge within radius {radius} of {center}', module=__name__
        )

    left, right = grid[below[-1]], grid[above[0]]

    peak = scipy.optimize.minimize_scalar(
        lambda lam: -gap(lam),
        bounds=(left, right),
        method='bounded',
        options={'xatol': 1e-12},
    )

    top = max((mu, float(peak.x)), key=gap)

    if gap(top) <= SHOOTING_CLOSED_GAP_TOL:
        # Closed gap: M = +-I at mu
        return [complex(mu), complex(mu)]

    lower = scipy.optimize.brentq(gap, left, top, xtol=1e-13)
    upper = scipy.optimize.brentq(gap, top, right, xtol=1e-13)

    return [complex(upper), complex(lower)]


def _complexRoots(
    integrator: ShootingIntegrator,
    p: PotentialSpec,
    bc: str,
    n: int,
    center: complex,
    radius: float,
) -> List[complex]:
    if bc == BC_DIR:
        seed = center - sineTable(p, 2 * n)[2 * n] / SQRT2

        def target(lam):
            return complex(integrator.matrix(lam)[0, 1])

        return [_findRoot(target, seed, center, radius)]

    sign = 1.0 if bc == BC_PER_PLUS else -1.0

    def target(lam):
        # Entrywise det(M -+ I) stays accurate near a closed gap
        M = integrator.matrix(lam)

        return complex((M[0, 0] - sign) * (M[1, 1] - sign) - M[0, 1] * M[1, 0])

    floor = 1e-3 * max(n, 1)

    # First-order half gap sqrt(V(2n) V(-2n)), kept inside the disc
    halfGap = 0j

    if n > 0:
        halfGap = complex(
            principalSqrt(fourierCoeffV(p, 2 * n) * fourierCoeffV(p, -2 * n))
        )

    if abs(halfGap) < floor:
        halfGap = complex(floor)
    elif abs(halfGap) > 0.5 * radius:
        halfGap *= 0.5 * radius / abs(halfGap)

    first = _findRoot(target, center + halfGap, center, radius)

    if n == 0:
        return [first]

    mirror = 2.0 * center - first

    if abs(mirror - first) < floor:
        mirror = first - 2.0 * halfGap

    second = _findRoot(lambda lam: target(lam) / (lam - first), mirror, center, radius)

    return [first, second]


# Can throw exceptions
def locateBCEigenvalues(
    p: PotentialSpec, bc: str, n: int, strict: bool = False
) -> List[complex]:
    """
    Eigenvalues near n^2 by shooting.

    Real potentials are bracketed on the real axis around the Dirichlet value.
    Otherwise per_plus / per_minus take the two roots of det(M(lambda) -+ I),
    the second one found on the deflated function, and dir the root of
    y2(pi, lambda).
    """
    center = n * n + p.v0
    radius = isolationRadius(bc, n)

    steps = monodromy(p, center).steps

    for _ in range(3):
        integrator = ShootingIntegrator(p, steps)

        roots = None

        if p.isReal and n > 0:
            roots = _realAxisRoots(integrator, bc, float(np.real(center)), radius)

        if roots is None:
            roots = _complexRoots(integrator, p, bc, n, center, radius)

        # Certificate at the roots with step doubling
        certified = max(monodromy(p, root, steps // 2).steps for root in roots)

        if certified <= steps:
            break

        logger.info(f'{bc} n={n}: refining with {certified} steps')

        steps = certified
    else:
        raise StepConvergenceFailure(
            f'{bc} n={n}: step count did not settle', module=__name__
        )

    for root in roots:
        if abs(root - center) >= radius:
            raise RootNotFound(
                f'{bc} n={n}: root {root} outside isolation radius {radius} of {center}',
                module=__name__,
            )

    roots.sort(key=lambda value: (value.real, value.imag), reverse=True)

    if len(roots) == 2 and abs(roots[0] - roots[1]) < DOUBLE_ROOT_TOL * (1.0 + abs(center)):
        logger.info(f'{bc} n={n}: double root at {roots[0]}')

        if strict:
            raise MultiplicityAmbiguous(
                f'{bc} n={n}: double root at {roots[0]}', module=__name__
            )

    return roots
