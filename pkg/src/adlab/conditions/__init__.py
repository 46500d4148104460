from .lattice import (MODES, BasePair, closure_edges, completeness_check, implies,
                      matrix, normalize_condition, soundness_check)
from .registry import base_pairs, builtin_examples, load_registry_file
from .certificates import build_certificate, list_examples, verify_certificate

__all__ = [
    "MODES", "BasePair", "closure_edges", "completeness_check", "implies",
    "matrix", "normalize_condition", "soundness_check",
    "base_pairs", "builtin_examples", "load_registry_file",
    "build_certificate", "list_examples", "verify_certificate",
]
