"""Random k-regular XORSAT instances and exact energy-landscape analytics."""

from .ensemble import (
    Configuration,
    estimate_simple_probability,
    induced_matrix,
    sample_configuration,
    sample_k_regular,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    State,
    enumerate_kernel,
    kernel_basis,
    mul_vec,
    rank,
    solve_standard_basis,
    weight,
)
from .landscape import (
    BarrierResult,
    Instance,
    barrier_to_ground,
    barriers_to_ground,
    bottleneck_height,
    energy,
    enumerate_local_minima,
    ground_states,
    is_local_minimum,
)
from .rng import RngSpec

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "State",
    "Configuration",
    "Instance",
    "BarrierResult",
    "RngSpec",
    "mul_vec",
    "weight",
    "rank",
    "kernel_basis",
    "enumerate_kernel",
    "solve_standard_basis",
    "sample_configuration",
    "induced_matrix",
    "sample_k_regular",
    "estimate_simple_probability",
    "energy",
    "ground_states",
    "is_local_minimum",
    "enumerate_local_minima",
    "bottleneck_height",
    "barrier_to_ground",
    "barriers_to_ground",
    "__version__",
]
