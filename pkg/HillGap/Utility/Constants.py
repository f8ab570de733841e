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

from HillGap.Version import __version__

import os
import platform
import math

APPLICATION_NAME = 'HillGap'
APPLICATION_VERSION = __version__

PLATFORM_IS_WINDOWS = platform.system() == 'Windows'

SQRT2 = math.sqrt(2.0)

# Boundary conditions
BC_PER_PLUS = 'per_plus'
BC_PER_MINUS = 'per_minus'
BC_DIR = 'dir'
BC_RANGE = [BC_PER_PLUS, BC_PER_MINUS, BC_DIR]

METHOD_RANGE = ['basic', 'matrix', 'shoot', 'all']
COMMAND_RANGE = ['spectrum', 'gaps', 'reconstruct', 'riesz', 'perturb', 'weights']

DEFAULT_CUTOFF = 64
DEFAULT_NODES = 128
DEFAULT_TOL = 1e-10
DEFAULT_SEED = 0
DEFAULT_JOBS = os.cpu_count() or 1

MINIMUM_CUTOFF = 8

# Basic equation
T_NORM_REFUSE = 0.9
T_NORM_NSTAR = 0.5
ROOT_TOL = 1e-12
ROOT_MAX_ITER = 100
DOUBLE_ROOT_TOL = 1e-9

# Shooting
SHOOTING_MIN_STEPS = 256
SHOOTING_MAX_STEPS = 2**17
SHOOTING_STEP_TOL = 1e-8
SHOOTING_ROOT_TOL = 1e-10
SHOOTING_GRID_POINTS = 65
SHOOTING_CLOSED_GAP_TOL = 1e-12

# Dense eigenvalues and winding counts
WINDING_MIN_NODES = 128
WINDING_MAX_NODES = 8192
BOUNDARY_CLEARANCE = 1e-6
CLUSTER_TOL = 1e-7

# Riesz quadrature
RIESZ_MIN_NODES = 64
RIESZ_MAX_NODES = 4096
RIESZ_NODE_TOL = 1e-9
RIESZ_CLEARANCE = 1e-4

# Gap report
ENVELOPE_LOWER = 1.0 / 72.0
ENVELOPE_UPPER = 58.0
ENVELOPE_FLOOR = 1e-10
RATIO_FLOOR = 1e-12
TWO_SIDED_ETA = 0.25

GAPS_CSV_HEADER = [
    'n',
    'lam_plus_re',
    'lam_plus_im',
    'lam_minus_re',
    'lam_minus_im',
    'mu_re',
    'mu_im',
    'gamma',
    'delta',
    'Delta',
    'beta_plus_abs',
    'beta_minus_abs',
    'envelope_ratio',
]
RIESZ_CSV_HEADER = ['n', 'proxy', 'opnorm', 'nodes']
PERTURB_CSV_HEADER = ['n', 'a1', 'a2', 'radius_upper', 'lower_bound_ok']
