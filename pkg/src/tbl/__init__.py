"""Transverse braid invariants: self-linking, Khovanov homology and psi, branched double covers."""

__version__ = "0.1.0"

from .braid import (BraidWord, QuasipositiveCertificate, bm_pair, cyclic_permute,
                    detect_isolated_negative_level, detect_negative_kink, parse_braid,
                    self_linking, stabilize, verify_quasipositive_certificate)
from .cover import chord_presentation, d3, h1, linking_matrix
from .diagram import close_braid, determinant, goeritz, is_alternating_braid_diagram, signature
from .khovanov import build_complex, homology_dims, psi_chain, psi_nonzero
from .verdict import classify

__all__ = [
    "BraidWord", "QuasipositiveCertificate", "bm_pair", "cyclic_permute",
    "detect_isolated_negative_level", "detect_negative_kink", "parse_braid", "self_linking",
    "stabilize", "verify_quasipositive_certificate", "chord_presentation", "d3", "h1",
    "linking_matrix", "close_braid", "determinant", "goeritz", "is_alternating_braid_diagram",
    "signature", "build_complex", "homology_dims", "psi_chain", "psi_nonzero", "classify",
]
