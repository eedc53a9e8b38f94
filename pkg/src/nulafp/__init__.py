"""Grating-lobe-free block-partitioned linear arrays for massive MIMO favorable propagation."""

__version__ = "0.1.0"

from .design import (
    DesignRequest,
    NulaDesign,
    design_nula,
    enumerate_designs,
    gcd,
    optimize_finite_n,
    verify_cancellation,
)
from .exceptions import NulaError
from .geometry import (
    NulaGeometry,
    UlaGeometry,
    steering_block,
    steering_nula,
    steering_ula,
)
from .grating import GratingLobeSet, gl_enumerate, gl_exists
from .leakage import (
    AsymptoticClass,
    Limit,
    array_factor,
    block_leakage_at_gl,
    classify_asymptotic,
    leakage_direct,
    leakage_nula_factored,
    leakage_ula_closed,
)
from .scenario import (
    ElementPattern,
    Path,
    User,
    UserScenario,
    apply_element_pattern,
    build_channel,
    compute_sinr,
    fp_convergence_sweep,
)
