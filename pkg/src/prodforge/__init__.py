"""Square-free-indexed exponent sequences and the infinite products they generate."""

from .arith import (
    bernoulli_table,
    build_spf_sieve,
    divisors,
    factorize,
    mobius,
    squarefree_order,
)
from .catalog import check_identity, list_identities, phi_reference, stirling_ratio, zeta_reference
from .coefficients import (
    CoeffTable,
    Kind,
    a_closed,
    a_s_closed,
    b_closed,
    b_s_closed,
    certify_tables,
    closed_table,
    solve_triangular,
)
from .evaluator import EvalPoint, EvalReport, abel_evaluate, eval_product, partial_sum, tail_bound
from .series import (
    FactorKind,
    ProductForm,
    SeriesSpec,
    dirichlet_mix,
    formal_log_check,
    to_cos_product,
    to_product,
    trig_to_product,
)

__version__ = "0.1.0"
