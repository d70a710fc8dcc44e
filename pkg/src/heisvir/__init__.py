"""Exact computer algebra for the Heisenberg-Virasoro Lie algebra family.

The package models the untwisted algebra, its fractional-mode sector
algebras, and their induced highest-weight modules over exact rational
scalars, and verifies their structural identities mechanically: bracket
axioms, the symmetry trichotomy of the vacuum vertex algebra, mode-level
field commutators, contravariant forms and irreducible-quotient characters,
and the splitting of the conformal vector.
"""

from .kernel import ParamPoly, Rational, UnboundParameterError, VARS
from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    C1,
    C2,
    C3,
    Generator,
    I,
    K1,
    K3,
    L,
    MalformedGeneratorError,
    UNTWISTED,
    bracket,
    bracket_elem,
    degree,
    validate_generator,
)
from .modules import (
    CYCLIC,
    InvariantViolationError,
    ModuleDescriptor,
    ModuleVector,
    PBWMonomial,
    act,
    act_elem,
    basis_at_level,
    cyclic_vector,
    graded_dimension,
    lattice_levels,
    monomial_vector,
    sigma_grade,
    twisted_verma_module,
    vacuum_module,
)
from .fields import (
    CommutatorReport,
    DeltaReport,
    FieldId,
    Laurent2,
    LatticeError,
    WindowError,
    delta_identity_check,
    derivative_property_check,
    field_mode,
    generator_product,
    verify_commutator,
)
from .structure import (
    AutReport,
    ConcreteParamsError,
    ConformalReport,
    DomainError,
    GramMatrix,
    automorphism_group,
    conformal_decomposition_check,
    gram_matrix,
    gram_nullity,
    gram_rank,
    irreducible_character,
    raising_generators,
    singular_vectors,
    verma_character,
)

__version__ = "0.1.0"
