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
from HillGap.Library.Gaps import SpectralTriple

from pathlib import Path
from typing import Iterable, Sequence

import csv
import logging

__all__ = ['writeCSV', 'writeSummary', 'tripleRow', 'summaryPath']

logger = logging.getLogger(__name__)

SUMMARY_FILE = 'summary.json'


def _cell(value) -> str:
    if value is None:
        return ''

    if isinstance(value, str):
        return value

    return formatNumber(value)


def writeCSV(path, header: Sequence[str], rows: Iterable[Sequence]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, 'w', encoding='utf-8', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(header)

        for row in rows:
            writer.writerow([_cell(value) for value in row])

    logger.info(f'wrote {path}')


def summaryPath(out) -> Path:
    return Path(out) / SUMMARY_FILE


def writeSummary(out, data: dict) -> Path:
    path = UJSONEncoder.encodeToFile(data, summaryPath(out), indent=2, sort_keys=True)

    logger.info(f'wrote {path}')

    return path


def tripleRow(triple: SpectralTriple, envelopeRatio: float | None = None) -> list:
    sStar = triple.sStar

    return [
        triple.n,
        triple.lambdaPlus.real,
        triple.lambdaPlus.imag,
        triple.lambdaMinus.real,
        triple.lambdaMinus.imag,
        triple.mu.real,
        triple.mu.imag,
        triple.gamma,
        triple.delta,
        triple.Delta,
        abs(sStar.betaPlus) if sStar is not None else None,
        abs(sStar.betaMinus) if sStar is not None else None,
        envelopeRatio,
    ]
