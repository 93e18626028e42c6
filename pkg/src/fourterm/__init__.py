"""Real-rootedness of polynomials generated by 1/(1 + c t + b t^2 + z t^3).

The polynomials H_m(z) satisfy H_m + c H_{m-1} + b H_{m-2} + z H_{m-3} = 0.
Their zeros are all real exactly when c = 0 and b >= 0, or c != 0 and
-1 <= b/c^2 <= 1/3.  This package locates the zeros of the sequence by two
independent numerical routes and cross-checks them.  Outside the real-rooted
region it builds explicit non-real witnesses.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .recurrence import (  # noqa: E402
    RealPolynomial,
    Regime,
    SequenceParams,
    SequenceWindow,
    closed_form_eval,
    degree_bound,
    evaluate,
    generate_sequence,
)
from .theta import (  # noqa: E402
    IntervalSpec,
    cubic_roots_at,
    g_m,
    interval_endpoint,
    scaled_interval,
    z_of_theta,
    zeta,
)
from .analysis import (  # noqa: E402
    GmZeroSet,
    ZeroReport,
    check_hyperbolicity,
    count_czero_g_zeros,
    count_g_zeros,
    density_sample,
    match_zeros,
    polynomial_zeros,
    zero_report,
)
from .witness import (  # noqa: E402
    Classification,
    Verdict,
    attraction_check,
    classify,
    equimodular_check,
    nonreal_witness,
)
