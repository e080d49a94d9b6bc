"""Signature invariants of hermitian forms over Q(zeta_m)(t).

Exact cyclotomic arithmetic, rational functions with the involution
t -> 1/t, hermitian forms and their formal Witt classes, signature step
functions on the unit circle, and a decision procedure for the vanishing
of a rational Witt class.
"""

from .decide import Decision, decide_batch, is_trivial
from .errors import (
    ConductorMismatchError,
    ConsistencyError,
    HermitianViolation,
    IndeterminateError,
    PoleError,
    RefinementBudgetExceeded,
    SingularFormError,
    UnsupportedPolynomialError,
    WittsigError,
)
from .field import CertifiedInterval, CyclotomicNumber, Embedding, embed_numeric, embeddings_G0, real_sign, zeta
from .forms import (
    EigenComponent,
    HermitianForm,
    IsometryTriple,
    SupportedPoly,
    WittElement,
    diagonalize_constant,
    direct_sum,
    extend_constant,
    make_canonical,
    make_metabolic,
    mu_component,
    scale,
    sigma_component,
    signature_constant,
    signature_vector,
    split_form,
    trace_form_rp,
    triple_to_fp_form,
    validate,
)
from .funcfield import LaurentPoly, RationalFunction, eval_numeric, eval_root_of_unity, parse_expr
from .sigfunc import (
    ExactPoint,
    IsolatedPoint,
    SignatureStepFunction,
    evaluate_class_at,
    jump_candidates,
    jumps,
    numeric_class_signature,
    signature_step_function,
)

__version__ = "0.1.0"
