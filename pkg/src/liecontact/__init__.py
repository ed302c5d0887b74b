"""Exact computation and verification engine for contact-graded orthogonal
algebras, their embedding into a path-geometry grading of sl(2n+2), and the
chain geometry of the homogeneous model.

Everything asserted is exact rational arithmetic; floats appear only in
sampling helpers, derivative cross-checks and trajectory export. The
`liecontact` console script runs the verification suites and emits
machine-readable reports.
"""

from .chains import (ChainCurve, ModelPoint, STensorEval, act, chain_eval,
                     chain_matrix, chain_transversality, emit_trajectory,
                     fit_pipeline_constant, flow_transversality, origin,
                     pipeline_s, rank_one_by_S, reconstruct_cone, s_tensor)
from .extension import (Cochain1, Cochain2, alpha, alpha_restriction_matrix,
                        build_psi_cochain, check_pair_conditions,
                        codifferential, curvature_report,
                        fit_trilinear_constant, hat_lift, i_map, i_map_float,
                        i_prime, i_prime_float, is_normal, psi_alpha, psi_gq,
                        psi_support_report, psi_trilinear,
                        symmetrized_reference)
from .linalg import (DualRat, Mat, Rat, det, exp_float, exp_nilpotent,
                     invert, rank_kernel, rat, rat_sqrt, solve_linear)
from .path_sl import (SlElement, sl_bracket, sl_jacobi_check, sl_neg_basis,
                      sl_neg_coordinates, w0)
from .report import SUITE_NAMES, SuiteConfig, run
from .so_contact import (G0Element, QGroupElement, Signature, SoElement,
                         ad_g0, bracket, bracket_gm1, equivariance_checks,
                         grading_check, inner, jacobi_check, segre_rank,
                         so_basis, so_coordinates)
from .split_quat import (QuatStructureOnH, SplitQuaternion, act_on_h,
                         eigenspace_decompose, max_subspace_for_line,
                         norm_sq, quat_mul, rank_one_witness, stack_columns,
                         unstack_columns)

__version__ = "0.1.0"
