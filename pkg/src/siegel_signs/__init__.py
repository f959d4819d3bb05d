"""Exact first-sign-change computations for genus-two Siegel cusp forms."""

from .bounds import BoundReport, bound_report, c_g, theorem_bound, trace_bound_T0
from .jacobi import (
    JacobiTable,
    flip,
    jacobi_mul,
    minimal_alpha,
    phi10_1,
    phi12_1,
    phi_0_1,
    phi_minus2_1,
    sign_flip_product,
    taylor_coeff,
    weak_generator,
)
from .kernels import BACKEND
from .lift import SiegelLift, fourier_jacobi, lift_of_weight, maass_coeff, theta_oracle_chi10
from .pipeline import PipelineReport, direct_scan, find_T0, run
from .reduction import BinaryHalfIntegral, act_unimodular, enumerate_reduced, is_positive_definite, reduce
from .series import QExpansion, cusp_decompose, delta, eisenstein, eta, first_sign_change, miller_basis

__version__ = "0.1.0"
