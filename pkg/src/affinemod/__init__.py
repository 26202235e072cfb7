"""Exact computations with affine modifications, weight gradings and locally nilpotent derivations."""

from .certificate import Block, FamilyParams, build_family, case_analysis, ml_report
from .config import Config, get_config, use_config
from .derivation import Derivation, degree, exp_action, jacobian_derivation, kernel_member, lnd_check
from .errors import (
    AffineModError,
    InvariantError,
    ParseError,
    PreconditionError,
    ResourceCapError,
    RingMismatchError,
)
from .grading import (
    convention51_weights,
    gr_element,
    graded_ideal,
    homogeneous_irreducible_candidates,
    minimal_degree,
)
from .ideal import (
    Ideal,
    MonomialOrder,
    PresentedAlgebra,
    dimension,
    gradient_generic_independence,
    groebner_basis,
    ideal_equal,
    is_regular_sequence,
    is_semiregular_sequence,
    membership,
    normal_form,
)
from .kernels import BACKEND
from .modification import (
    ModificationLocus,
    basic_step,
    compose_split,
    davis_presentation,
    fiber_product_presentation,
    largest_ideal,
    modification_ideals,
)
from .poly import Polynomial, Ring, WeightFunction, principal_component, weight_degree

__version__ = "0.1.0"
