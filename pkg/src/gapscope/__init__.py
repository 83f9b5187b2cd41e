"""gapscope: spectral gap analysis for annealing paths.

Sweeps the pencil H(theta) = H0*cos(theta) + H1*sin(theta) around the
circle, tracks bands and their convexity densities, extracts the critical
value curves of the numerical range, and computes front invariants
(winding, Maslov, writhe, Thurston-Bennequin, linking) that classify the
gap morphology.
"""

from .backend import BACKEND
from .linalg import EigenDecomposition, eigh, shifted_pinv_apply, commutator, matrix_sign, kron_embed
from .problems import (
    BarrierSpec,
    HamiltonianPair,
    UnfoldingSpec,
    barrier_lagrange,
    barrier_sign,
    diagonal_pair,
    grover_pair,
    hamming_plus_barrier,
    hamming_weight,
    transverse_field,
    unfolding_family,
    y_perturbation,
)
from .sweep import (
    CrossingSet,
    GapFunction,
    SpectralSweep,
    ThetaGrid,
    band_derivative,
    exact_crossings,
    gap,
    path_hamiltonian,
    read_sweep_csv,
    rho_at,
    sweep,
    write_sweep_csv,
)
from .curves import (
    BoundaryReport,
    Crossing,
    FrontCurve,
    RootSet,
    SwallowTail,
    VertexSet,
    arc_length,
    boundary,
    crossings_between,
    cusps,
    front,
    inflections,
    polar_plot,
    self_intersections,
    swallow_tails,
    vertices,
)
from .topology import (
    DegenerateContactError,
    GapReport,
    TunnelingReport,
    band_invariants,
    build_report,
    classify,
    crossing_sign,
    isotopy_equal,
    linking,
    maslov,
    rho_root_invariant,
    thurston_bennequin,
    tunneling_indicator,
    winding_index,
    writhe,
)
from .storage import RunConfig, read_problem, read_report, write_problem, write_report
from .render import render_svg

__version__ = "0.1.0"
