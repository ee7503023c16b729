"""Exact computer algebra for Z/4-graded associative algebras with involution.

The main entry points are re-exported here; see the submodules for the
full interface.
"""

from .algebra import (
    AlgebraElement,
    FinDimAlgebra,
    a_involute,
    a_mul,
    direct_product,
    homogeneous_basis,
    load_algebra,
    validate,
)
from .envelope import build_envelope, envelope_sym_skew_basis, minimal_witnesses
from .grassmann import GrassmannElement, g_grade_component, g_involute, g_mul
from .identities import check_envelope_lemma, evaluate, is_graded_star_identity, is_star_identity
from .kernel import BACKEND
from .parser import parse_poly
from .poly import (
    Kind,
    Multidegree,
    StarPolynomial,
    Variable,
    full_linearization,
    grade_of_monomial,
    involute,
    mul,
    multidegree,
    multihomogeneous_components,
    to_text,
    y,
    z,
)
from .tideal import consequence_span, exact_rank, in_span, is_member, prepare_generators
from .transforms import alternator, eta, grade_expansions, pair_action, s_op, symmetrizer, t_op, tilde

__version__ = "0.1.0"
