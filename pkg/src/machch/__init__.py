"""Channel-hopping sequences with maximum rendezvous diversity (IDEAL-CH) and
guaranteed rendezvous under heterogeneous availability (ORTHO-CH), with
exhaustive verifiers and a two-user rendezvous simulator."""
from .core import (
    CapabilityError, Certification, ChMatrix, ChSequence, MalformedInputError, PreconditionError,
)
from .diffsets import DifferenceSet, build_rds, find_perfect_difference_set, verify_difference_set
from .idealmat import IdealMatrix, build_ideal_matrix, build_preset, correlation, verify_ideal
from .machseq import (
    approximation_ratio, build_general_mach_matrix, build_mach_matrix, build_semi_mach, ideal_ch,
    mach_matrix_to_sequence, verify_1d_mrd, verify_2d_mrd,
)
from .orthoch import build_ortho_family, mttr_bound, ortho_ch, verify_cover, verify_ortho_pair
from .simulator import ettr_estimate, mcttr_sweep, mttr_sweep, run

__version__ = "0.1.0"
