"""1D periodic atomistic chains, their strain-gradient continuum limits, and
the numerical machinery to measure the modeling error between them."""

from .potentials import PairPotential, ShiftedPotential, InteractionRange, \
    make_potential, shifted, decay_moment
from .lattice import PeriodicLatticeField, finite_difference, \
    stencil_derivatives, hermite_interpolant, project_mean_zero, \
    check_admissible
from .splines import bspline, bspline_kernel, reproducing_kernel, \
    SplineKernel, localization_weight, moment_sum, nodal_interpolant, \
    convolution_interpolant, measurement_interpolant, KernelField
from .optimize import MinimizeProblem, MinimizeResult, bfgs_minimize, \
    newton_minimize, gradient_check
from .atomistic import AtomisticSystem, AtomisticSolution, external_work, \
    atomistic_stress, hessian_dft_eigenvalues, dft_solve
from .continuum import SineField, SumField, continuum_model, MODEL_KEYS, \
    consistency_residual, external_work_gap, continuum_energy
from .fem import PeriodicSplineSpace, FemField, assemble, solve_continuum, \
    grad_l2_distance, energy_gap, IndefiniteHessianError
from .analysis import atomistic_symbol, cb_symbol, hoc_taylor_symbol, \
    direct_symbol, stability_constants, find_negative_mode
from .harness import StudyConfig, run_sweep, run_consistency, run_stability, \
    run_solve, fit_slope, load_config

__version__ = "0.1.0"
