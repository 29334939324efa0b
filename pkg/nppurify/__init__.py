"""Quaternion dynamics of the competition between purification and decoherence of a qubit"""

# Make version number available
from .version import __version_info__, __version__

# Export public objects
from .quat import Quaternion, mul, inv, parts, unit_exp
from .qubit_state import (
    HamiltonianSpec, Observables, PolarState, from_polar, hamiltonian_params, observables,
    polar_decompose, project_p, rho_of)
from .reference_oracle import DensityMatrix, D_matrix, S_matrix, U_conj
from .dynamics import (
    CycleReport, DephasingParams, DuParams, OrbitAbsorbed, OrbitRecord, PoleError, Regime,
    classify, detect_cycle, f_complex, iterate, map_d, map_du, map_s, map_u, step)
from .scan import GridSpec, ScanOptions, ScanResult, SliceSpec, julia_scan, mandel_scan
from .fractal import (
    BoxDimEstimate, BulbResult, EmbeddingPoint, VolumeSpec, box_dim, bulb_scan, dim_profile,
    embed, extract_boundary, marked_extent, profile_dataframe, unembed)
