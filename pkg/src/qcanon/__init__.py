"""Dual canonical bases of quantum matrix algebras and their invariants."""

from .canonical import (
    CanonicalExpansion,
    MinorSpec,
    canonical_as_element,
    canonical_block,
    canonical_element,
    detq_shift_check,
    expand_in_canonical,
    quantum_determinant,
    quantum_minor,
    sl_reduce,
)
from .kernel import BACKEND
from .laurent import ONE, ZERO, LaurentPoly, q_power
from .qmatrix import (
    AlgebraElement,
    Word,
    bar_element,
    generator,
    matrix,
    modified_monomial,
    monomial,
    multiply,
    sigma,
    straighten,
)
from .uq import GeneratorSymbol, WeightVector, act_L, act_R, parse_generator, theta, weight_of

__version__ = "0.1.0"
