"""Semigroups of transformations of {1..n} preserving (T_n(l)) or reflecting
(T*_n(l)) the distance l between points."""

from .algebra import (RegularityReport, closure, find_witness_linear, is_regular_element,
                      is_regular_semigroup, is_witness, search_witness)
from .elements import ElementSet
from .structure import (Decomposition, SemigroupSpec, Variant, decompose,
                        enumerate_naive, enumerate_semigroup, preserves_length,
                        reflects_length)
from .transform import (CapacityError, ParseError, Transformation, compose, format_text,
                        identity, image_set, make, parse_text, preimage)
from .verify import ClaimResult, predicted_regular, verify_all
from .witnesses import (counterexample_T1, counterexample_Tl, strictness_witness,
                        witness_half, witness_star_large, witness_star_small)

__all__ = [
    "CapacityError", "ClaimResult", "Decomposition", "ElementSet", "ParseError",
    "RegularityReport", "SemigroupSpec", "Transformation", "Variant", "closure",
    "compose", "counterexample_T1", "counterexample_Tl", "decompose", "enumerate_naive",
    "enumerate_semigroup", "find_witness_linear", "format_text", "identity", "image_set",
    "is_regular_element", "is_regular_semigroup", "is_witness", "make", "parse_text",
    "predicted_regular", "preimage", "preserves_length", "reflects_length",
    "search_witness", "strictness_witness", "verify_all", "witness_half",
    "witness_star_large", "witness_star_small",
]
