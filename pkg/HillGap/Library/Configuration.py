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
from HillGap.Library.Encoder import *
from HillGap.Library.Potential import PotentialSpec, potentialFromConfig
from HillGap.Library.Weights import Weight, makeWeight, weightFromConfig

from pathlib import Path
from typing import Union

import copy
import hashlib
import logging

__all__ = ['RunConfig', 'configHash']

logger = logging.getLogger(__name__)


class RunConfig(dict):
    """
    RunConfig is how HillGap sees one batch run.

    It subclasses from dict and can be constructed from:
      1. dictionary -- an existing JSON object
      2. string -- a JSON string or a path to a JSON file
    """

    def __init__(self, config: Union[str, dict] = '', baseDir: Union[str, Path] = None):
        self.baseDir = Path(baseDir) if baseDir is not None else Path.cwd()

        if isinstance(config, dict):
            super().__init__(**config)
        elif isinstance(config, str) and config:
            try:
                jsonObject = UJSONEncoder.decode(config)
            except ValueError:
                jsonObject = self._loadFile(config)

                self.baseDir = Path(config).resolve().parent

            if not isinstance(jsonObject, dict):
                raise ConfigError('run config must be a JSON object', module=__name__)

            super().__init__(**jsonObject)
        else:
            super().__init__()

    @staticmethod
    def _loadFile(path: Union[str, Path]):
        try:
            return UJSONEncoder.decodeFromFile(path)
        except FileNotFoundError:
            raise ConfigError(f'config file \'{path}\' not found', module=__name__)
        except ValueError as ex:
            raise ConfigError(f'config file \'{path}\' is not valid JSON: {ex}', module=__name__)

    def deepcopy(self) -> RunConfig:
        return copy.deepcopy(self)

    def setting(self, key: str):
        return RunSettings.get(self, key)

    def applyOverrides(self, **overrides) -> RunConfig:
        """Flags override config fields. None means not given."""
        for key, value in overrides.items():
            if value is not None:
                RunSettings.set(self, key, value)

        return self

    # Can throw exceptions
    def validate(self) -> RunConfig:
        for key in list(self.keys()):
            try:
                RunSettings.set(self, key, self[key])
            except AttributeError:
                raise ConfigError(f'unknown config field \'{key}\'', module=__name__)

        if self.get('command') is None:
            raise ConfigError('no command given', module=__name__)

        first, last = self.setting('n_range')
        K = self.setting('K')

        if first < 1 or last > K // 4:
            raise ConfigError(
                f'n range {first}..{last} not within [1, K/4] with K={K}',
                module=__name__,
            )

        return self

    def _resolve(self, key: str):
        value = self.get(key)

        if isinstance(value, str):
            path = Path(value)

            if not path.is_absolute():
                path = self.baseDir / path

            return self._loadFile(path)

        return value

    # Can throw exceptions
    def potential(self) -> PotentialSpec:
        config = self._resolve('potential')

        if not isinstance(config, dict):
            raise ConfigError('no potential given', module=__name__)

        return potentialFromConfig(config)

    def potentialConfig(self) -> dict:
        config = self._resolve('potential')

        if not isinstance(config, dict):
            raise ConfigError('no potential given', module=__name__)

        return config

    # Can throw exceptions
    def weight(self) -> Weight:
        config = self._resolve('weight')

        limit = self.setting('weight_range')

        if config is None:
            # Omega = 1
            return makeWeight('power', limit=limit, a=0.0)

        if not isinstance(config, dict):
            raise ConfigError('weight must be an object or a path', module=__name__)

        return weightFromConfig(config, limit)

    def target(self):
        return self._resolve('target')


def configHash(config: dict) -> str:
    """sha256 of the canonical sorted-key JSON text."""
    text = UJSONEncoder.encode(dict(config), sort_keys=True, indent=0)

    return hashlib.sha256(text.encode('utf-8')).hexdigest()
