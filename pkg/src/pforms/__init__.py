"""Differential forms over F_p(x_1, ..., x_m): annihilators, Cartier operator, restriction kernels."""

from .errors import (ContextMismatchError, DegenerateStepError, HypothesisError, NotAPowerError,
                     NotClosedError, PFormsError)
from .field_core import FieldContext, RationalFunction
from .forms import DifferentialForm, FormSubspace, cartier, d, is_closed, is_exact, is_nu_member, wedge

__version__ = "0.1.0"

__all__ = [
    "FieldContext", "RationalFunction", "DifferentialForm", "FormSubspace",
    "cartier", "d", "is_closed", "is_exact", "is_nu_member", "wedge",
    "PFormsError", "ContextMismatchError", "NotAPowerError", "NotClosedError",
    "HypothesisError", "DegenerateStepError",
]
