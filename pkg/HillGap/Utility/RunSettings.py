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
from HillGap.Utility.Exceptions import *
from HillGap.Utility.Utility import parseRange

from typing import Any, Callable

import logging

__all__ = ['RunSettings', 'registerRunSettings']

logger = logging.getLogger(__name__)


class RunSettings:
    SettingsPool: dict[str, RunSettings] = dict()

    def __init__(
        self,
        name: str,
        validRange: list = None,
        default=None,
        converter: Callable[[Any], Any] = None,
        predicate: Callable[[Any], bool] = None,
    ):
        self.name = name
        self.validRange = validRange
        self.converter = converter
        self.predicate = predicate

        if validRange is None:
            self.default = default
        else:
            self.default = validRange[0] if default is None else default

        if name in RunSettings.SettingsPool:
            raise ValueError(f'\'{name}\' already exists in RunSettings')

    def convert(self, value):
        if value is None or self.converter is None:
            return value

        try:
            return self.converter(value)
        except (TypeError, ValueError) as ex:
            raise ConfigError(
                f'invalid value \'{value}\' for \'{self.name}\': {ex}',
                module=__name__,
            )

    def validate(self, value) -> bool:
        if value is None:
            return True

        if self.validRange is not None and value not in self.validRange:
            return False

        if self.predicate is not None and not self.predicate(value):
            return False

        return True

    @staticmethod
    def find(key: str) -> RunSettings:
        settings = RunSettings.SettingsPool.get(key)

        if settings is None:
            raise AttributeError(f'RunSettings \'{key}\' not found')

        assert isinstance(settings, RunSettings)

        return settings

    @staticmethod
    def get(values: dict, key: str):
        settings = RunSettings.find(key)

        value = values.get(key)

        if value is None:
            return settings.default

        return value

    @staticmethod
    def set(values: dict, key: str, value):
        settings = RunSettings.find(key)

        value = settings.convert(value)

        if settings.validate(value):
            values[key] = value
        else:
            # Value not in valid range, raise exception
            raise ConfigError(
                f'invalid RunSettings value \'{value}\' for \'{key}\'',
                module=__name__,
            )

    @staticmethod
    def defaults() -> dict:
        return {name: settings.default for name, settings in RunSettings.SettingsPool.items()}


def registerRunSettings(name: str, *args, **kwargs):
    RunSettings.SettingsPool[name] = RunSettings(name, *args, **kwargs)


def _positive(value) -> bool:
    return value > 0


registerRunSettings('command', validRange=COMMAND_RANGE)
registerRunSettings('method', validRange=METHOD_RANGE)
registerRunSettings(
    'K', default=DEFAULT_CUTOFF, converter=int, predicate=lambda K: K >= MINIMUM_CUTOFF
)
registerRunSettings('n_range', default=(1, 8), converter=parseRange)
registerRunSettings('nodes', default=DEFAULT_NODES, converter=int, predicate=_positive)
registerRunSettings('tol', default=DEFAULT_TOL, converter=float, predicate=_positive)
registerRunSettings('jobs', default=DEFAULT_JOBS, converter=int, predicate=_positive)
registerRunSettings('seed', default=DEFAULT_SEED, converter=int)
registerRunSettings('N', default=4, converter=int, predicate=_positive)
registerRunSettings('n_max', default=None, converter=int, predicate=_positive)
registerRunSettings('max_iter', default=50, converter=int, predicate=_positive)
registerRunSettings('out', default='.', converter=str)
registerRunSettings('potential')
registerRunSettings('weight')
registerRunSettings('weight_range', default=64, converter=int, predicate=_positive)
registerRunSettings('target')
registerRunSettings('bc', validRange=[None] + BC_RANGE, default=None)
