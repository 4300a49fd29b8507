"""Locally recoverable codes over finite fields.

Constructions (Tamo-Barg, Hermitian and power-cover curve codes, fiber-product
codes with availability 2, Hermitian- and norm-trace-lifted codes), a uniform
repair-group engine, distance bounds and a storage simulator.
"""

from .gf import Field, FieldElement, FieldError, field_of_order, make_field
from .evalcode import EvaluationCode, build_code, min_distance_bruteforce
from .recovery import (CertificationError, LocalCode, RecoveryStructure, RepairGroup,
                       certify, derive_lambda, recover)
from .bounds import classify, singleton_lrc
from .registry import CodeSpec, parse_spec

__all__ = [
    "Field", "FieldElement", "FieldError", "field_of_order", "make_field",
    "EvaluationCode", "build_code", "min_distance_bruteforce",
    "CertificationError", "LocalCode", "RecoveryStructure", "RepairGroup",
    "certify", "derive_lambda", "recover", "classify", "singleton_lrc",
    "CodeSpec", "parse_spec",
]
