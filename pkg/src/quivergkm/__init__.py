"""Exact computations in the positive part of generalized Kac-Moody algebras of quivers.

Classical and quantum Serre presentations, noncommutative symmetric functions,
Psi-twisted products, coproducts, integral lattices and component counts.
"""

from .coeffs import QQ, QQ_q, LaurentPoly, RatFunc, q_binomial, q_factorial, q_integer, qbinom_sign_probe
from .freealg import NCPoly, enumerate_words, span_rank
from .quiver import (
    GeneratorIndex,
    Quiver,
    QuiverError,
    TwistForm,
    a_n_quiver,
    classify_vertices,
    default_twist,
    euler_form,
    generator_pairing,
    jordan_quiver,
    loop_quiver,
    symmetrized_form,
    two_vertex_quiver,
    validate_twist,
)
from .presentation import (
    CheckResult,
    Presentation,
    divided_power,
    divided_serre_check,
    graded_dimension,
    integral_lattice_closure,
    normal_form,
    tilde_generator,
    tilde_serre_check,
)
from .twist import (
    coproduct,
    coproduct_descends_check,
    minus_q_correspondence_check,
    tilde_coproduct_check,
    twisted_bialgebra_check,
    twisted_multiply,
)
from .seminil import character_identity_check, component_count_one_vertex, kostant_count

__version__ = "0.1.0"
