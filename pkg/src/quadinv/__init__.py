"""Quadratic-form invariants (m, u, AU, layer) of recursively described fields,
with an exact Springer-based form engine over F_p((t_1))...((t_r)) to check them."""

from .calculus import au_set, m_invariant, possible_m, u_invariant
from .descriptors import (
    INF,
    Base,
    BaseClass,
    Cdvf,
    RationalFnField,
    SemiGlobal,
    cdvf_depth,
    laurent,
    ms_us,
    validate,
)
from .dsl import parse_field, parse_form, print_field
from .errors import (
    BudgetExceeded,
    CapExceeded,
    Contradiction,
    DslSyntaxError,
    FormError,
    GraphError,
    HypothesisRequired,
    InvalidDescriptor,
    NotMsUsComputable,
    QuadInvError,
)
from .forms import (
    ClassForm,
    SquareClass,
    Tower,
    au_enumerate,
    class_of_element,
    is_isotropic,
    is_universal,
    kaplansky_radical,
    represents,
)
from .laurent import LaurentElement
from .layers import (
    attainable_au,
    build_component_tree,
    layer,
    m_from_layer,
    make_fully_arboreal_example,
    make_layer_example,
)
from .models import LEAF, RATLEAF, Model, Nested, ReductionGraph, is_tree
from .oracle import cross_validate, fp_isotropy_witness, verify_certificate, witness_search

__version__ = "0.1.0"
