"""Real rank-two certification toolkit for tensors, binary forms and curves."""

from .binary_forms import BinaryForm, classify_binary_form, quintic_alternative_test
from .certify import Certificate, Verdict, certify_border_rank2, certify_symmetric, tangential_witness
from .decompose import DecompositionKind, Rank2Decomposition, best_rank_one, decompose_rank2
from .hyperdet import HyperdetReport, all_subhyperdets, hyperdet222
from .space_curve import CurveParam, classify_point, plucker_map, scan_path, solve_secants
from .tableaux import hook_length_dim, preimage_quadric, quadric_basis
from .tensors import SymTensorCoords, sym_to_tensor, tensor

__version__ = "0.1.0"

__all__ = [
    "BinaryForm", "Certificate", "CurveParam", "DecompositionKind", "HyperdetReport",
    "Rank2Decomposition", "SymTensorCoords", "Verdict", "all_subhyperdets",
    "best_rank_one", "certify_border_rank2", "certify_symmetric", "classify_binary_form",
    "classify_point", "decompose_rank2", "hook_length_dim", "hyperdet222", "plucker_map",
    "preimage_quadric", "quadric_basis", "quintic_alternative_test", "scan_path",
    "solve_secants", "sym_to_tensor", "tangential_witness", "tensor",
]
