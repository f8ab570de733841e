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

__all__ = [
    'HillGapError',
    'ConfigError',
    'ZeroMeanViolation',
    'ConjugacyViolation',
    'ParityError',
    'InvalidParams',
    'HypothesisViolation',
    'CutoffTooSmall',
    'ComputeError',
    'BoundaryEigenvalue',
    'ConvergenceFailure',
    'StepConvergenceFailure',
    'RootNotFound',
    'MultiplicityAmbiguous',
    'TNormTooLarge',
    'NoRootInDisc',
    'RootCountMismatch',
    'NotReached',
    'NoConvergence',
    'EigenvalueOnContour',
    'QuadratureStall',
    'IdenticalPotentials',
    'InvariantViolation',
]


class HillGapError(Exception):
    def __init__(self, message: str = '', module: str = ''):
        super().__init__(message)

        # Where the error was raised, for CLI provenance
        self.module = module

    def __str__(self):
        message = super().__str__()

        if self.module:
            return f'[{self.module}] {message}'
        else:
            return message


class ConfigError(HillGapError, ValueError):
    pass


class ZeroMeanViolation(HillGapError, ValueError):
    pass


class ConjugacyViolation(HillGapError, ValueError):
    pass


class ParityError(HillGapError, ValueError):
    pass


class InvalidParams(HillGapError, ValueError):
    pass


class HypothesisViolation(HillGapError, ValueError):
    pass


class CutoffTooSmall(HillGapError, ValueError):
    pass


class ComputeError(HillGapError, RuntimeError):
    pass


class BoundaryEigenvalue(ComputeError):
    pass


class ConvergenceFailure(ComputeError):
    pass


class StepConvergenceFailure(ComputeError):
    pass


class RootNotFound(ComputeError):
    pass


class MultiplicityAmbiguous(ComputeError):
    pass


class TNormTooLarge(ComputeError):
    pass


class NoRootInDisc(ComputeError):
    pass


class RootCountMismatch(ComputeError):
    pass


class NotReached(ComputeError):
    pass


class NoConvergence(ComputeError):
    pass


class EigenvalueOnContour(ComputeError):
    pass


class QuadratureStall(ComputeError):
    pass


class IdenticalPotentials(HillGapError, ZeroDivisionError):
    pass


class InvariantViolation(HillGapError):
    pass
