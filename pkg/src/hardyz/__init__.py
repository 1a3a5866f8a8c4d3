"""Higher derivatives of Hardy's Z-function and the f_n / h_n / g_n families."""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainViolation,
    HardyError,
    NearZeroDenominator,
    PoleError,
    PoleProximity,
    PrecisionExhausted,
    RealityCheckFailed,
    UnstableScan,
    WindingUnresolved,
)
from .jet import Jet  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .recursion import (  # noqa: E402
    FamilyId,
    Kind,
    a_coeffs,
    f_jet,
    g_jet,
    g_value,
    h_jet,
    hardy_z,
    z_derivative,
    z_derivatives,
)
from .special import DomainSpec, chi, digamma, log_gamma, omega, theta  # noqa: E402
from .zeros import (  # noqa: E402
    Rectangle,
    count_zeros,
    interlace_check,
    pole_order_estimate,
    ratio_monotonicity_probe,
    scan_zeros,
    winding_count,
)
from .zeta import PrecisionConfig, estimate_em_params, zeta, zeta_jet  # noqa: E402
