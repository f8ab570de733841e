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
from HillGap.Utility import *
from HillGap.Library import *

from pathlib import Path
from typing import List, Sequence

import sys
import logging
import argparse
import traceback

import numpy as np

__all__ = ['Application', 'main']

logger = logging.getLogger(__name__)

ORACLE_RELATIVE_TOL = 1e-6
SYMMETRY_TOL = 1e-10


def buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hillgap',
        description='Spectral gaps of Hill operators with singular potentials',
    )

    parser.add_argument('command', choices=COMMAND_RANGE)
    parser.add_argument('--config', help='run config JSON file')
    parser.add_argument('--out', help='output directory')
    parser.add_argument('--method', choices=METHOD_RANGE)
    parser.add_argument('--n-range', dest='n_range', help='index range A..B')
    parser.add_argument('--cutoff', dest='K', type=int, help='Fourier cutoff K')
    parser.add_argument('--nodes', type=int, help='initial quadrature nodes')
    parser.add_argument('--tol', type=float, help='reconstruction tolerance')
    parser.add_argument('--jobs', type=int, help='worker processes')
    parser.add_argument('--seed', type=int)

    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true')
    verbosity.add_argument('--quiet', action='store_true')

    return parser


class Application(ApplicationFactory):
    def __init__(self, argv: Sequence[str] = None):
        super().__init__()

        self.argv = list(sys.argv[1:] if argv is None else argv)

        self.config = RunConfig()
        self.violations: List[str] = []

    @staticmethod
    def configureLogging(level: int):
        logging.basicConfig(
            format='[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s',
            level=level,
        )
        logging.raiseExceptions = False

    def setting(self, key: str):
        return self.config.setting(key)

    @property
    def out(self) -> Path:
        return Path(self.setting('out'))

    def summary(self, **fields) -> dict:
        return {
            'application': APPLICATION_NAME,
            'version': APPLICATION_VERSION,
            'command': self.setting('command'),
            'config_hash': configHash(self.config),
            'violations': list(self.violations),
            **fields,
        }

    def checkSymmetry(self, p: PotentialSpec, triples: Sequence[SpectralTriple]):
        for triple in triples:
            s = triple.sStar

            if s is None:
                continue

            if abs(s.s11 - s.s22) > SYMMETRY_TOL * (1.0 + abs(s.s11)):
                self.violations.append(f'symmetry n={triple.n}: s11 != s22')

            if p.isReal and abs(s.z.imag) < 1e-12:
                if abs(s.s12 - s.s21.conjugate()) > SYMMETRY_TOL * (1.0 + abs(s.s12)):
                    self.violations.append(f'symmetry n={triple.n}: s12 != conj(s21)')

    def runSpectrum(self):
        p = self.config.potential()

        method = self.setting('method')
        methods = ['basic', 'matrix', 'shoot'] if method == 'all' else [method]

        tripleSets = {
            name: spectralTriples(
                p, self.setting('n_range'), self.setting('K'), self.setting('jobs'), name
            )
            for name in methods
        }

        discrepancy = crossMethodDiscrepancy(tripleSets) if len(methods) > 1 else {}

        for n, value in discrepancy.items():
            if value > ORACLE_RELATIVE_TOL * (1.0 + n * n):
                self.violations.append(f'oracle mismatch n={n}: {value:.3g}')

        for triples in tripleSets.values():
            self.checkSymmetry(p, triples)

        rows = [
            tripleRow(triple) + [name, discrepancy.get(triple.n)]
            for name, triples in tripleSets.items()
            for triple in triples
        ]

        writeCSV(self.out / 'spectrum.csv', GAPS_CSV_HEADER + ['method', 'discrepancy'], rows)

        return self.summary(
            methods=methods,
            max_discrepancy=max(discrepancy.values(), default=None),
        )

    def runGaps(self):
        p = self.config.potential()

        method = self.setting('method')

        triples = spectralTriples(
            p,
            self.setting('n_range'),
            self.setting('K'),
            self.setting('jobs'),
            'basic' if method == 'all' else method,
        )

        self.checkSymmetry(p, triples)

        report = asymptoticsReport(triples, self.config.weight(), p)

        self.violations += report.violations

        rows = [
            tripleRow(triple, report.ratioTable.get(triple.n, (None, None))[1])
            for triple in triples
        ]

        writeCSV(self.out / 'gaps.csv', GAPS_CSV_HEADER, rows)

        fields = report.summary()
        fields.pop('violations')

        return self.summary(**fields)

    def runReconstruct(self):
        N = self.setting('N')
        K = self.setting('K')
        nMax = self.setting('n_max') or K // 4

        w = self.config.weight()

        source = None

        if self.config.get('target') is not None:
            target = TailImage.fromJSON(self.config.target())
        else:
            source = self.config.potential()
            target = mapA(source, N, nMax, K, self.setting('jobs'))

        result = reconstruct(
            target,
            N,
            w,
            K,
            maxIter=self.setting('max_iter'),
            tol=self.setting('tol'),
            jobs=self.setting('jobs'),
        )

        vMinus, vPlus = potentialSequence(result.potential, target.nMax)

        rows = [
            [n, vm.real, vm.imag, vp.real, vp.imag]
            for n, (vm, vp) in enumerate(zip(vMinus, vPlus), start=1)
        ]

        writeCSV(
            self.out / 'reconstruct.csv', ['n', 'vm_re', 'vm_im', 'vp_re', 'vp_im'], rows
        )

        fields = {
            'N': N,
            'iterations': result.iterations,
            'residual': result.residual,
            'decay_ratio': result.decayRatio,
            'recovered': potentialToConfig(result.potential),
            'target': target.toJSON(),
        }

        if source is not None:
            sourceMinus, sourcePlus = potentialSequence(source, target.nMax)

            fields['max_error'] = float(
                max(np.max(np.abs(vMinus - sourceMinus)), np.max(np.abs(vPlus - sourcePlus)))
            )

            try:
                fields['contraction'] = list(
                    contractionThreshold(
                        source,
                        w,
                        K,
                        nMax,
                        seed=self.setting('seed'),
                        jobs=self.setting('jobs'),
                    )
                )
            except NotReached as ex:
                logger.warning(f'contraction threshold: {ex}')

        return self.summary(**fields)

    def runRiesz(self):
        p = self.config.potential()

        scan = deviationScan(
            p,
            self.setting('n_range'),
            self.setting('bc'),
            self.setting('K'),
            self.setting('nodes'),
            self.setting('jobs'),
        )

        for n, record in sorted(scan.records.items()):
            if not record.idempotent:
                self.violations.append(
                    f'idempotency n={n}: {record.idempotencyError:.3g}'
                )

            if not record.traceOk:
                self.violations.append(f'trace n={n}: {record.traceError:.3g}')

        rows = [
            [n, record.l1LinfProxy, record.l2OpNorm, record.quadratureNodes]
            for n, record in sorted(scan.records.items())
        ]

        writeCSV(self.out / 'riesz.csv', RIESZ_CSV_HEADER, rows)

        return self.summary(slope=scan.slope)

    def runPerturb(self):
        kind, params = potentialParams(self.config.potentialConfig())

        if kind != 'cos_v':
            raise ConfigError('perturb needs a cos_v potential', module=__name__)

        if 'vk' not in params:
            raise ConfigError('cos_v potential has no \'vk\'', module=__name__)

        vk = [pairToComplex(value) for value in params['vk']]

        records = radiusReport(vk, self.setting('n_range'))

        rows = [
            [r.n, r.a1, r.a2, r.radiusUpper, r.lowerBoundHolds]
            for r in records
        ]

        writeCSV(self.out / 'perturb.csv', PERTURB_CSV_HEADER, rows)

        return self.summary(
            radius_slope=radiusSlope(records),
            lower_bound_threshold=lowerBoundThreshold(records),
            hypothesis_holds=bool(records and records[0].hypothesisHolds),
        )

    def runWeights(self):
        w = self.config.weight()

        k = np.arange(0, w.limit + 1)

        writeCSV(self.out / 'weights.csv', ['k', 'weight'], zip(k, w(k)))

        power = makeWeight('power', limit=w.limit, a=1.0)

        return self.summary(
            kind=w.kind,
            params=w.params,
            breaks=list(w.breaks),
            versus_power=list(compareWeights(w, power)),
        )

    def dispatch(self) -> dict:
        return {
            'spectrum': self.runSpectrum,
            'gaps': self.runGaps,
            'reconstruct': self.runReconstruct,
            'riesz': self.runRiesz,
            'perturb': self.runPerturb,
            'weights': self.runWeights,
        }[self.setting('command')]()

    def run(self) -> int:
        args = buildParser().parse_args(self.argv)

        if args.verbose:
            self.configureLogging(logging.DEBUG)
        elif args.quiet:
            self.configureLogging(logging.WARNING)
        else:
            self.configureLogging(logging.INFO)

        try:
            if args.config:
                self.config = RunConfig(args.config)

            self.config.applyOverrides(
                command=args.command,
                out=args.out,
                method=args.method,
                n_range=args.n_range,
                K=args.K,
                nodes=args.nodes,
                tol=args.tol,
                jobs=args.jobs,
                seed=args.seed,
            )
            self.config.validate()

            summary = self.dispatch()

            writeSummary(self.out, summary)

            if self.violations:
                raise InvariantViolation(
                    f'{len(self.violations)} invariant violations', module=__name__
                )
        except InvariantViolation as ex:
            for violation in self.violations:
                logger.error(f'invariant violation: {violation}')

            logger.error(str(ex))

            return ApplicationFactory.ExitCode.InvariantViolation
        except (ConfigError, OSError, ValueError) as ex:
            logger.error(f'config error: {ex}')

            return ApplicationFactory.ExitCode.ConfigError
        except ComputeError as ex:
            logger.error(f'compute failure: {ex}')

            return ApplicationFactory.ExitCode.ComputeFailure

        return ApplicationFactory.ExitCode.ExitSuccess


def main():
    try:
        sys.exit(Application().run())
    except SystemExit:
        raise
    except Exception:
        # Any non-exit exceptions

        traceback.print_exc()

        sys.exit(ApplicationFactory.ExitCode.UnknownException)


if __name__ == '__main__':
    main()
