"""Independent checks: abelianization, coset enumeration, permutation quotients,
and Alexander polynomials."""

from .coset import CosetTable, is_identity_perm, permutation_eval, todd_coxeter
from .quotients import QuotientSearch, finite_quotient_search
from .smith import SmithForm, element_order_in_h1, h1_invariants, smith_normal_form

__all__ = [
    "CosetTable", "is_identity_perm", "permutation_eval", "todd_coxeter", "QuotientSearch",
    "finite_quotient_search", "SmithForm", "element_order_in_h1", "h1_invariants",
    "smith_normal_form",
]
