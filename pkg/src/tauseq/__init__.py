"""Tau-tilting invariants of quiver algebras with monomial relations.

The package computes, over a prime field, support tau-tilting objects and
their mutation graph, Bongartz and co-Bongartz complements, perpendicular
reduction, and the bijection between ordered support tau-rigid objects and
signed tau-exceptional sequences.
"""

from .algebra import (AlgebraQuotient, QuiverPresentation, StructAlgebra,
                      algebra_invariants, parse_algebra, parse_quiver,
                      path_algebra, quotient_by_ideal,
                      quotient_by_idempotent_ideal)
from .complexes import (ext1_dim, hom_K_dim, min_presentation, tau)
from .errors import (CapExceededError, DomainError, InputError, TauseqError)
from .modules import (FdModule, ModuleMap, decompose, decompose_grouped,
                      direct_sum, hom_basis, hom_dim, in_gen, injective_module,
                      is_iso, is_local_endo, parse_modules, projective_module,
                      simple_module, torsion_free_quotient, trace_submodule)
from .reduction import (WideContext, e_inverse, e_map, j_membership,
                        make_context, root_context, transport)
from .sequences import (SignedSequence, count_sequences, enumerate_ordered,
                        enumerate_sequences, phi, psi, validate_sequence)
from .tautilt import (Registry, SignedObject, bongartz, cobongartz,
                      complement_correspondence,
                      enumerate_support_tau_tilting, indec_tau_rigid_items,
                      is_support_tau_rigid, is_tau_rigid, mutate)

__version__ = "0.1.0"

__all__ = [
    "AlgebraQuotient", "CapExceededError", "DomainError", "FdModule",
    "InputError", "ModuleMap", "QuiverPresentation", "Registry",
    "SignedObject", "SignedSequence", "StructAlgebra", "TauseqError",
    "WideContext", "algebra_invariants", "bongartz", "cobongartz",
    "complement_correspondence", "count_sequences", "decompose",
    "decompose_grouped", "direct_sum", "e_inverse", "e_map",
    "enumerate_ordered", "enumerate_sequences",
    "enumerate_support_tau_tilting", "ext1_dim", "hom_K_dim", "hom_basis",
    "hom_dim", "in_gen", "indec_tau_rigid_items", "injective_module",
    "is_iso", "is_local_endo", "is_support_tau_rigid", "is_tau_rigid",
    "j_membership", "make_context", "min_presentation", "mutate",
    "parse_algebra", "parse_modules", "parse_quiver", "path_algebra", "phi",
    "projective_module", "psi", "quotient_by_ideal",
    "quotient_by_idempotent_ideal", "root_context", "simple_module", "tau",
    "torsion_free_quotient", "trace_submodule", "transport",
    "validate_sequence",
]
