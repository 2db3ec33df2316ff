"""Clifford spectrum of three 2x2 Hermitian matrices: closed form, witness, geometry, meshing."""

from .errors import InternalConsistencyError, PreconditionError, ValidationError
from .geometry import (CassiniPhase, ComponentsHint, SpectrumClassification, SpectrumKind,
                       Situation, H_eval, classify, classify_cassini_level, rotated_frame)
from .localizer import (build_localizer, det_localizer, localizer_gap, quadratic_form,
                        quadratic_form_gap)
from .pauli import (CanonicalParams, HermitianTriple, PauliCoeffs, canonicalize, loads_triple,
                    pauli_compose, pauli_decompose)
from .quartic import QuarticInvariants, D_full, D_reduced, invariants, symmetry_center
from .surface import Box, ScalarField, TriangleMesh, bounding_box, export, extract, sample
from .witness import Branch, WitnessResult, refine_spectrum_point, witness_point

__all__ = [
    "InternalConsistencyError", "PreconditionError", "ValidationError",
    "CassiniPhase", "ComponentsHint", "SpectrumClassification", "SpectrumKind", "Situation",
    "H_eval", "classify", "classify_cassini_level", "rotated_frame",
    "build_localizer", "det_localizer", "localizer_gap", "quadratic_form", "quadratic_form_gap",
    "CanonicalParams", "HermitianTriple", "PauliCoeffs", "canonicalize", "loads_triple",
    "pauli_compose", "pauli_decompose",
    "QuarticInvariants", "D_full", "D_reduced", "invariants", "symmetry_center",
    "Box", "ScalarField", "TriangleMesh", "bounding_box", "export", "extract", "sample",
    "Branch", "WitnessResult", "refine_spectrum_point", "witness_point",
]
