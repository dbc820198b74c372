"""diaglab: exact counting and circle-method diagnostics for diagonal
Diophantine systems.

The package counts integer solutions of simultaneous diagonal equations
by meet-in-the-middle convolution of value distributions, evaluates the
associated exponential sums and oscillatory integrals, assembles the
singular series and p-adic densities along two independent routes, and
compares exact counts against the predicted asymptotic constant.
"""

__version__ = "0.1.0"

from .systems import (
    DiagonalSystem,
    EquationBlock,
    SystemError_,
    check_highly_non_singular,
    derived_constants,
    is_highly_non_singular,
    load_system,
    make_system,
    parse_system,
    select_columns,
    serialize_system,
    validate_system,
)
from .counting import (
    CountReport,
    CountingError,
    count_aux_quadratic,
    count_difference,
    count_homogeneous,
    count_vinogradov,
    enumerate_oracle,
    vinogradov_system,
)
from .expsums import (
    ComplexSample,
    RationalPoint,
    eval_K,
    eval_S,
    eval_f,
    eval_g,
    eval_v,
    major_arc_approx,
)
from .circle import (
    A_count,
    A_exp,
    M_count,
    chi_infinity_quadrature,
    chi_infinity_schmidt,
    chi_p,
    compare,
    local_solubility_p,
    local_solubility_real,
    major_arc_locate,
    predict,
    singular_integral_Q,
    singular_series_truncated,
)
from .analysis import conjecture_ratio, established_ranges, fit_exponent
