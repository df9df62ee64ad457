"""Multi-channel discriminative filters under circular correlation and
circular convolution, solved in closed form in the frequency domain.

The two formulations are provably interchangeable when the target response
is a centrosymmetric Gaussian: their spectral solutions are conjugate,
their responses are origin flips of each other, and their response MSEs are
equal.  This package solves both, certifies the agreement numerically
(:mod:`circfilt.equivalence`), cross-checks the frequency-domain solver
against a dense spatial-domain reference (:mod:`circfilt.oracle`), and
ships a minimal online tracker built on the same solves.
"""

from .equivalence import (
    EquivalenceReport,
    InstanceSpec,
    SuiteResult,
    Tolerances,
    check_conjugation,
    check_flip_symmetry,
    check_mse_equality,
    check_peak_mirror,
    conjugation_residue,
    flip_symmetry_residue,
    make_instance,
    mse_pair,
    peak_mirror,
    run_suite,
    sweep_instances,
)
from .estimator import CirculantRidge
from .fileio import FormatError, read_bank, read_pgm, read_sample, read_spectral, write_pgm, write_sample, write_spectral
from .grids import circular_distance, flip, flip_index, wrap_index, wrap_offset
from .labels import LabelReport, default_sigma, gaussian_label, validate_label
from .oracle import ComparisonReport, DenseSystem, build_dense, compare, dense_solve
from .solver import assemble_bin_systems, filter_to_spatial, mse, objective_value, solve_filter
from .spectral import (
    MODES,
    ConsistencyError,
    circ_convolve,
    circ_correlate,
    dft2,
    idft2,
    response,
    take_real,
)
from .tracker import Tracker, TrackerConfig, TrackingLostError, extract_features

__version__ = "0.1.0"

__all__ = [
    "CirculantRidge",
    "ComparisonReport",
    "ConsistencyError",
    "DenseSystem",
    "EquivalenceReport",
    "FormatError",
    "InstanceSpec",
    "LabelReport",
    "MODES",
    "SuiteResult",
    "Tolerances",
    "Tracker",
    "TrackerConfig",
    "TrackingLostError",
    "assemble_bin_systems",
    "build_dense",
    "check_conjugation",
    "check_flip_symmetry",
    "check_mse_equality",
    "check_peak_mirror",
    "circ_convolve",
    "circ_correlate",
    "circular_distance",
    "compare",
    "conjugation_residue",
    "default_sigma",
    "dense_solve",
    "dft2",
    "extract_features",
    "filter_to_spatial",
    "flip",
    "flip_index",
    "flip_symmetry_residue",
    "gaussian_label",
    "idft2",
    "make_instance",
    "mse",
    "mse_pair",
    "peak_mirror",
    "objective_value",
    "read_bank",
    "read_pgm",
    "read_sample",
    "read_spectral",
    "response",
    "run_suite",
    "solve_filter",
    "sweep_instances",
    "take_real",
    "validate_label",
    "wrap_index",
    "wrap_offset",
    "write_pgm",
    "write_sample",
    "write_spectral",
]
