"""Hermite radial basis interpolation with a monomial-scaled kernel basis.

The estimators follow the usual fit/predict shape: build one from a kernel
family and its knobs, call ``fit`` with planar nodes and sampled values
(plus gradients for the Hermite variants), then ``predict`` or ``gradient``
anywhere.  The experiments subpackage reruns the accuracy studies behind
the method as deterministic CSV sweeps; ``rbfherm --help`` lists them.
"""

from .kernels import (
    Gaussian,
    InverseMultiquadric,
    InverseQuadric,
    Kernel,
    Multiquadric,
    PolyharmonicSpline,
    make_kernel,
    scaled_basis_gradients,
    scaled_basis_values,
    scaled_gaussian_peak,
    scaled_kernel_1d,
)
from .polynomials import PolyBasis, n_poly_terms
from .nodes import (
    NodeSet,
    cost_node_set,
    disk_node_set,
    halton_disk_nodes,
    halton_points,
    k_nearest,
    min_energy_disk_nodes,
    radical_inverse,
    riesz_energy,
    triangle_interior_nodes,
)
from .linalg import SolveReport, cond_estimate_1norm, solve_dense
from .interpolators import (
    ErrorReport,
    HermiteRBFInterpolant,
    ModifiedHermiteRBFInterpolant,
    RBFInterpolant,
    assemble_hermite_system,
    assemble_rbf_system,
    assemble_scaled_hermite_system,
    dump_weights,
    error_report,
)
from .testfunctions import CAMELBACK, TRIG, TestFunction, get_test_function
from .experiments import (
    EPS_GRID,
    ErrorRecord,
    ExperimentConfig,
    default_config,
    read_records,
    run_cost_study,
    run_eps_n_sweep,
    run_experiment,
    run_method_compare,
    run_poly_compare,
    run_radius_scaling,
    write_records,
)
from .plotting import PlotError, PlotSpec, emit_plot, infer_plot_spec

__version__ = "0.1.0"

__all__ = [
    "Kernel",
    "Gaussian",
    "Multiquadric",
    "InverseMultiquadric",
    "InverseQuadric",
    "PolyharmonicSpline",
    "make_kernel",
    "scaled_basis_values",
    "scaled_basis_gradients",
    "scaled_kernel_1d",
    "scaled_gaussian_peak",
    "PolyBasis",
    "n_poly_terms",
    "NodeSet",
    "disk_node_set",
    "cost_node_set",
    "min_energy_disk_nodes",
    "halton_points",
    "halton_disk_nodes",
    "triangle_interior_nodes",
    "k_nearest",
    "riesz_energy",
    "radical_inverse",
    "SolveReport",
    "solve_dense",
    "cond_estimate_1norm",
    "RBFInterpolant",
    "HermiteRBFInterpolant",
    "ModifiedHermiteRBFInterpolant",
    "assemble_rbf_system",
    "assemble_hermite_system",
    "assemble_scaled_hermite_system",
    "ErrorReport",
    "error_report",
    "dump_weights",
    "TestFunction",
    "TRIG",
    "CAMELBACK",
    "get_test_function",
    "ExperimentConfig",
    "ErrorRecord",
    "EPS_GRID",
    "default_config",
    "run_experiment",
    "run_eps_n_sweep",
    "run_poly_compare",
    "run_method_compare",
    "run_radius_scaling",
    "run_cost_study",
    "write_records",
    "read_records",
    "PlotSpec",
    "PlotError",
    "emit_plot",
    "infer_plot_spec",
    "__version__",
]
