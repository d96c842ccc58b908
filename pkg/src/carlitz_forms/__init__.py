"""Exact u-series of Drinfeld modular forms over A = F_q[T].

Arithmetic in F_q and A, the Carlitz module, truncated u-series with
precision tracking, the U_p/V_p operators, trace and norm from Gamma_0(p)
to GL_2(A), Eisenstein fixtures and the monomial/elementary transition.
"""

from .carlitz import (
    AdditivePolynomial,
    PrimeModulus,
    carlitz_action,
    frobenius_congruence_check,
    hayes_eisenstein_check,
    hayes_quotient,
    inverse_cyclotomic,
)
from .errors import (
    CarlitzError,
    DomainError,
    InternalError,
    LimitExceededError,
    PrecisionError,
    RingMismatchError,
)
from .fields import INF, FieldSpec, RationalFunction, get_field, is_irreducible, v_p
from .fixtures import (
    eisenstein_g,
    eisenstein_gk,
    false_eisenstein,
    fricke_eigen_fixture,
    goss_table,
    u_sub_a,
    weight2_type1_fixture,
)
from .limits import Limits
from .operators import (
    Gamma0PairForm,
    Gl2aForm,
    build_g0,
    build_gr,
    fricke_pair,
    full_level_pair,
    lift_by_vp,
    norm_product,
    norm_tilde,
    root_symmetrics,
    trace_pair,
    up_direct,
    up_oracle_newton,
    vp_op,
)
from .series import ScaledSeries, TruncatedSeries, congruent_mod, difference_valuation
from .symfunc import Partition, conglemma_check, expand_e_in_m, expand_m_in_e, partitions_of

__version__ = "0.1.0"
