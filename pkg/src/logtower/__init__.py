"""logtower: differential subfields of iterated-logarithm and antiderivative towers."""
from .errors import LogtowerError
from .gaussian import GaussRat
from .constfield import Atom, AtomFrac, atom, make_const, vec_last, vec_project
from .poly import Poly
from .multipoly import (
    X, GenSym, LogSym, RatExpr, apply_derivation, divides, homogeneous_components,
    irreducible_linear_check, poly_arith, poly_gcd, translate,
)
from .iterlog import closure, essential_elements, pi, pi_set, psi, towers
from .subfield import (
    LinearForm, Presentation, antiderivative_subfield, combine_to_single_generator,
    exponential_subfield, fixing_forms, generic_subfield, iterlog_subfield, mixed_subfield,
    reduce_forms_over_C, rewrite_in_generators, span_equal,
)
from .certify import jie_check, no_antiderivative_certificate, soundness_probe, substitution_fixes
from .frontend import load_tower, load_tower_file, parse, parse_generic, parse_iterlog, print_ast
from . import kernels

__version__ = "0.1.0"
BACKEND = kernels.BACKEND
