"""Tubular elliptic Weyl groups and their hyperbolic covers, exactly.

Integer matrix realizations of the Weyl groups of types D4/E6/E7/E8 with two
radical directions, their hyperbolic covers, reflection-length certificates,
Hurwitz orbit censuses and absolute-order interval posets.
"""

from .rootsys import (
    EllipticBasis,
    FiniteType,
    FiniteTypeData,
    RootVector,
    elliptic_basis,
    elliptic_diagram,
    finite_roots,
    finite_type_data,
    highest_root,
    is_root,
    simple_root,
)
from .bilinear import Ambient, RationalSubspace, fixed_space, gram_matrix, is_null_space, orth_complement, signature
from .group import (
    GroupMatrix,
    NotInGroupError,
    TensorWord,
    Triple,
    central_z,
    coxeter_transformation,
    eichler,
    identity_triple,
    matrix_to_triple,
    order_in_w,
    projection_phi,
    reflection_matrix,
    reflection_triple,
    transvection,
    triple_mul,
    triple_to_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
