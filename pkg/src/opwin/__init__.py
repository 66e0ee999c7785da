"""opwin: exact finite windows of a growth-sequence operator construction.

A growth sequence d defines a constructed basis (e_i) of the span of the
unit vectors (f_i) through five case families; the package builds exact
windows of the induced operator T (e_i -> e_{i+1}), the even-index
selector S_2, the rank-one K, the change-of-basis Q, verifies the
commuting chain T -- T^m -- S_2 -- K entry-exactly, and recovers series
representations p(T) for windows commuting with T.  All arithmetic is
exact (rationals and powers of two with radical exponents); numeric
questions are answered with rigorous interval enclosures.
"""

from .scalars import (
    DyadicExponent,
    Enclosure,
    ExactScalar,
    evaluate,
    format_scalar,
    from_power_of_two,
    parse_scalar,
)
from .growth import (
    ConfigError,
    DivisibilityError,
    GrowthSequence,
    IndexCase,
    ValidationReport,
    WindowError,
    case_ranges,
    classify,
    v_of,
    validate,
)
from .linalg import (
    SparseVector,
    Window,
    Witness,
    apply,
    commutator,
    format_window,
    parse_window,
    window_product,
)
from .basis import e_in_f, f_in_e, q_window, qinv_window, support_profile, SupportProfile
from .windows import (
    ColumnNorm,
    NormReport,
    k_window,
    non_scalarity_witness,
    norm_scan,
    s2_closed_form_check,
    s2_window,
    shift_window,
    t_window,
)
from .commutant import (
    CommutantSolution,
    SeriesWindow,
    conjugate_to_e_basis,
    conjugate_to_f_basis,
    series_apply,
    shift_commutant_extract,
    solve_commutant,
    toeplitz_from_series,
    verify_ttilde_is_shift,
)
from .config import ALL_SUITES, RunConfig, parse_config, resolve_config
from .suites import Report, run_suite

__version__ = "0.1.0"
