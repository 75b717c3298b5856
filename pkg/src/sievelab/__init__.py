"""sievelab: a verification workbench for modular square roots, additive
energies, complete exponential sums, character sums, and large-sieve
inequalities with explicit constants.

Every fast evaluation path is cross-checked against an independent
brute-force oracle, and every explicit-constant inequality is executed
on concrete instances.
"""

__version__ = "1.0.0"

from .arith import (  # noqa: E402,F401
    FactoredModulus,
    crt_combine,
    divisor_count,
    eps_q,
    factorize,
    gcd_power_sum,
    is_prime,
    jacobi,
    mod_inverse,
)
from .sqrtmod import (  # noqa: F401
    RootMultiset,
    RootSet,
    build_root_multiset,
    root_pairs,
    sqrt_mod_all,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
)
from .energies import (  # noqa: F401
    EnergyReport,
    SpectrumCheck,
    energy_e2,
    energy_e4,
    energy_f2,
    hypothesis_scan,
    kssz_check,
    parseval_check,
    scan_summary,
)
from .expsums import (  # noqa: F401
    ExpSumValue,
    RationalFunctionModP,
    esum_jh,
    gauss_sum_closed,
    gauss_sum_direct,
    gcal,
    gcal_bound,
    rational_expsum,
)
from .sieve import (  # noqa: F401
    ApproxFrame,
    BudgetExceeded,
    PxQuery,
    SieveInstance,
    build_frame,
    dirichlet_approx,
    double_sieve_check,
    ls_bound_table,
    ls_lhs,
    lsreduce_check,
    propmain_bounds,
    px_count,
    px_monitor,
)
from .charsums import (  # noqa: F401
    S4Input,
    TrigWeight,
    cubic_form_charsum,
    s4_closed,
    s4_direct,
    sharp_energy,
    weighted_energy,
)
