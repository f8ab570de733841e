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

from HillGap.Interface import *

from typing import Any, AnyStr

import ujson

import numpy as np

__all__ = ['UJSONEncoder', 'toPlain']


def toPlain(data: Any) -> Any:
    """Convert numpy scalars, arrays and complex numbers into JSON-ready values."""
    if isinstance(data, dict):
        return {str(key): toPlain(value) for key, value in data.items()}

    if isinstance(data, (list, tuple)):
        return [toPlain(value) for value in data]

    if isinstance(data, np.ndarray):
        return toPlain(data.tolist())

    if isinstance(data, (bool, np.bool_)):
        return bool(data)

    if isinstance(data, (int, np.integer)):
        return int(data)

    if isinstance(data, (complex, np.complexfloating)):
        # Complex numbers are [re, im] pairs
        return [float(data.real), float(data.imag)]

    if isinstance(data, (float, np.floating)):
        return float(data)

    return data


class _UJSONEncoder(Encoder):
    def encode(self, data: Any, **kwargs) -> str:
        ensure_ascii = kwargs.pop('ensure_ascii', False)
        escape_forward_slashes = kwargs.pop('escape_forward_slashes', False)

        return ujson.dumps(
            toPlain(data),
            ensure_ascii=ensure_ascii,
            escape_forward_slashes=escape_forward_slashes,
            **kwargs,
        )

    def decode(self, data: AnyStr, **kwargs) -> Any:
        return ujson.loads(data, **kwargs)


UJSONEncoder = _UJSONEncoder()
