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

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

import os

__all__ = ['Encoder']


class Encoder(ABC):
    """Text codec for run configs, tail images and summaries."""

    @abstractmethod
    def encode(self, data: Any, **kwargs) -> str:
        raise NotImplementedError

    @abstractmethod
    def decode(self, data: str, **kwargs) -> Any:
        raise NotImplementedError

    def encodeToFile(self, data: Any, path: str | os.PathLike, **kwargs) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.encode(data, **kwargs) + '\n', encoding='utf-8')

        return path

    def decodeFromFile(self, path: str | os.PathLike, **kwargs) -> Any:
        return self.decode(Path(path).read_text(encoding='utf-8'), **kwargs)
