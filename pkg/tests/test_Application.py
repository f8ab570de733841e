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


from HillGap.Interface import *
from HillGap.Utility import *
from HillGap.Library import *
from HillGap.__main__ import Application

import csv

import pytest

ExitCode = ApplicationFactory.ExitCode


def writeConfig(path, **fields):
    UJSONEncoder.encodeToFile(fields, path)

    return str(path)


def readCSV(path):
    with open(path, encoding='utf-8', newline='') as file:
        return list(csv.reader(file))


def runApplication(tmp_path, *argv, **config):
    configPath = writeConfig(tmp_path / 'run.json', **config)

    return Application(
        [*argv, '--config', configPath, '--out', str(tmp_path / 'out'), '--jobs', '1', '--quiet']
    ).run()


def summary(tmp_path):
    return UJSONEncoder.decodeFromFile(summaryPath(tmp_path / 'out'))


COS_POTENTIAL = {'kind': 'cos_v', 'vk': [SQRT2]}


def test_spectrumAllMethods(tmp_path):
    code = runApplication(
        tmp_path, 'spectrum', '--method', 'all', '--n-range', '1..3', '--cutoff', '32',
        potential=COS_POTENTIAL,
    )

    assert code == ExitCode.ExitSuccess

    rows = readCSV(tmp_path / 'out' / 'spectrum.csv')

    assert rows[0] == GAPS_CSV_HEADER + ['method', 'discrepancy']
    assert len(rows) == 1 + 3 * 3
    assert {row[-2] for row in rows[1:]} == {'basic', 'matrix', 'shoot'}

    data = summary(tmp_path)

    assert data['command'] == 'spectrum'
    assert data['version'] == APPLICATION_VERSION
    assert data['violations'] == []
    assert data['max_discrepancy'] < 1e-6
    assert len(data['config_hash']) == 64


def test_gaps(tmp_path):
    code = runApplication(
        tmp_path, 'gaps', '--n-range', '1..4', '--cutoff', '32', potential=COS_POTENTIAL
    )

    assert code == ExitCode.ExitSuccess
    assert len(readCSV(tmp_path / 'out' / 'gaps.csv')) == 5

    data = summary(tmp_path)

    assert data['norm_sq'] == pytest.approx(2.0)
    assert data['lhs_sum'] <= data['rhs_4_norm_sq']


def test_perturb(tmp_path):
    vk = [0.05 / k for k in range(1, 21)]

    code = runApplication(
        tmp_path, 'perturb', '--n-range', '30..32', '--cutoff', '128',
        potential={'kind': 'cos_v', 'vk': vk},
    )

    assert code == ExitCode.ExitSuccess

    rows = readCSV(tmp_path / 'out' / 'perturb.csv')

    assert rows[0] == PERTURB_CSV_HEADER
    assert [row[-1] for row in rows[1:]] == ['1', '1', '1']
    assert summary(tmp_path)['lower_bound_threshold'] == 30


def test_perturbNestedCoefficients(tmp_path):
    code = runApplication(
        tmp_path, 'perturb', '--n-range', '1..2',
        potential={'kind': 'cos_v', 'coeffs': {'vk': [1.0]}},
    )

    assert code == ExitCode.ExitSuccess

    rows = readCSV(tmp_path / 'out' / 'perturb.csv')

    assert float(rows[1][1]) == pytest.approx(-1.0 / SQRT2)
    assert float(rows[1][2]) == pytest.approx(-1.0 / 16.0)
    assert float(rows[2][2]) == pytest.approx(-1.0 / 24.0)


def test_perturbNeedsCoefficients(tmp_path):
    code = runApplication(tmp_path, 'perturb', potential={'kind': 'cos_v'})

    assert code == ExitCode.ConfigError


def test_perturbNeedsCosine(tmp_path):
    code = runApplication(
        tmp_path, 'perturb', potential={'kind': 'exp_v', 'coeffs': {'2': 1.0}}
    )

    assert code == ExitCode.ConfigError


def test_weights(tmp_path):
    code = runApplication(
        tmp_path, 'weights',
        weight={'kind': 'oscillating', 'preset': 'example1', 'alpha': 0.0, 'beta': 1.0},
        weight_range=128,
    )

    assert code == ExitCode.ExitSuccess
    assert len(readCSV(tmp_path / 'out' / 'weights.csv')) == 1 + 129

    data = summary(tmp_path)

    assert data['kind'] == 'oscillating'
    assert len(data['breaks']) >= 2


def test_riesz(tmp_path):
    code = runApplication(
        tmp_path, 'riesz', '--n-range', '2..4', '--cutoff', '32', potential=COS_POTENTIAL
    )

    assert code == ExitCode.ExitSuccess
    assert readCSV(tmp_path / 'out' / 'riesz.csv')[0] == RIESZ_CSV_HEADER
    assert summary(tmp_path)['slope'] < 0


def test_rieszTraceViolation(tmp_path):
    # b1 lies outside the unit contour around 1
    code = runApplication(
        tmp_path, 'riesz', '--n-range', '1..1', '--cutoff', '32', potential=COS_POTENTIAL
    )

    assert code == ExitCode.InvariantViolation
    assert any(item.startswith('trace') for item in summary(tmp_path)['violations'])


def test_reconstruct(tmp_path):
    potential = {
        'kind': 'exp_v',
        'coeffs': {'2': 0.2, '-2': 0.2, '4': 0.05, '-4': 0.05},
        'real': True,
    }

    code = runApplication(
        tmp_path, 'reconstruct', '--cutoff', '24', '--n-range', '1..2',
        potential=potential, N=2, n_max=6,
    )

    assert code == ExitCode.ExitSuccess

    data = summary(tmp_path)

    assert data['max_error'] < 1e-8
    assert data['residual'] < DEFAULT_TOL
    assert len(readCSV(tmp_path / 'out' / 'reconstruct.csv')) == 7


def test_reconstructFromImage(tmp_path):
    p = buildPotential('cos_v', vk=[0.3])
    image = mapA(p, 1, 4, 16)

    targetPath = writeConfig(tmp_path / 'target.json', **image.toJSON())

    code = runApplication(
        tmp_path, 'reconstruct', '--cutoff', '16', '--n-range', '1..2', target=targetPath, N=1
    )

    assert code == ExitCode.ExitSuccess
    assert 'max_error' not in summary(tmp_path)


def test_computeFailure(tmp_path):
    code = runApplication(
        tmp_path, 'spectrum', '--n-range', '1..1', '--cutoff', '16',
        potential={'kind': 'cos_v', 'vk': [50.0 * SQRT2]},
    )

    assert code == ExitCode.ComputeFailure


def test_configErrors(tmp_path):
    missing = str(tmp_path / 'missing.json')

    assert Application(['gaps', '--config', missing]).run() == ExitCode.ConfigError

    code = runApplication(tmp_path, 'gaps', potential=COS_POTENTIAL, colour='red')

    assert code == ExitCode.ConfigError

    code = runApplication(tmp_path, 'gaps', '--n-range', '1..40', potential=COS_POTENTIAL)

    assert code == ExitCode.ConfigError


def test_unknownCommand():
    with pytest.raises(SystemExit) as info:
        Application(['draw']).run()

    assert info.value.code == 2
