"""Teleportation fidelity in an expanding background, with brute-force checks.

Layered as: sparse Fock-space algebra (:mod:`dsteleport.fock`), vacuum
structure of the expanding background (:mod:`dsteleport.desitter`), the
free-mode dual-rail protocol (:mod:`dsteleport.freemode`), the cavity
scheme (:mod:`dsteleport.cavity`), and a CSV/figure-emitting command line
(:mod:`dsteleport.cli`).
"""

from .desitter import (
    BUNCH_DAVIES,
    DeSitterParams,
    SqueezingParams,
    alpha_for_cutoff,
    alpha_one_particle_state,
    alpha_vacuum_state,
    power_spectrum_modification,
    squeezing_from_params,
    truncation_tail_bound,
)
from .fock import (
    DensityOperator,
    StateVector,
    fidelity_pure_mixed,
    partial_trace,
    partial_trace_pure,
    tensor_product,
)
from .freemode import (
    BELL_OUTCOMES,
    BellOutcome,
    LogicalQubit,
    TeleportResult,
    bell_channel_state,
    bob_conditional_state,
    bob_region1_density,
    closed_form_fidelity,
    fidelity_brute_force,
    teleport,
)
from .cavity import (
    AtomPath,
    ConformalCavity,
    EntangledChannel,
    StaticCavity,
    amplitude_ca_closed_form,
    amplitude_ca_numeric,
    amplitude_cb_numeric,
    amplitude_numeric,
    conformal_mode_function,
    scheme2_fidelity,
    static_cavity_from_conformal,
    static_mode_function,
    to_conformal,
    to_static,
)
from .sampling import fibonacci_bloch

__version__ = "0.1.0"
