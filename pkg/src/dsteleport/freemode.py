"""Dual-rail teleportation over an expanding background (free-mode scheme).

Alice and Bob share a logical Bell state in the dual-rail encoding
|0> = |1>|0>, |1> = |0>|1>.  Alice stays comoving, so her kets remain exact
logical labels; Bob turns inertial, so each of his two rails expands into a
(region I, region II) squeezed pair and everything beyond his horizon must
be traced out.  This module builds Bob's conditional states for the four
Bell outcomes, reduces them to region I by brute force, applies the
standard correction unitaries, and compares the resulting fidelity with
the closed form (1 - q)^3, q = (tanh r * Delta)^2.

Bob's four physical modes are ordered (rail-1 I, rail-1 II, rail-2 I,
rail-2 II) with partition labels ("I", "II", "I", "II").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .desitter import DeSitterParams, alpha_one_particle_state, alpha_vacuum_state, squeezing_from_params
from .fock import (
    DensityOperator,
    StateVector,
    fidelity_pure_mixed,
    partial_trace_pure,
    superpose,
    tensor_product,
)

REGION_I = "I"
REGION_II = "II"
ALICE = "A"

#: Region labels of Bob's four physical modes.
BOB_PARTITION = (REGION_I, REGION_II, REGION_I, REGION_II)

#: Region labels of the shared channel: Alice's abstract logical mode first.
CHANNEL_PARTITION = (ALICE,) + BOB_PARTITION


@dataclass(frozen=True)
class LogicalQubit:
    """Unknown input qubit a|0> + b|1> in the dual-rail logical basis."""

    a: complex
    b: complex

    def __post_init__(self):
        norm2 = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"|a|^2 + |b|^2 = {norm2}, expected 1")

    @staticmethod
    def normalized(a: complex, b: complex) -> "LogicalQubit":
        n = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        return LogicalQubit(a / n, b / n)


@dataclass(frozen=True)
class BellOutcome:
    """Result (i, j) of Alice's joint projective measurement."""

    i: int
    j: int

    def __post_init__(self):
        if self.i not in (0, 1) or self.j not in (0, 1):
            raise ValueError(f"outcome bits must be 0 or 1, got ({self.i}, {self.j})")


BELL_OUTCOMES = (
    BellOutcome(0, 0),
    BellOutcome(0, 1),
    BellOutcome(1, 0),
    BellOutcome(1, 1),
)


def outcome_coefficients(outcome: BellOutcome, qubit: LogicalQubit) -> tuple[complex, complex]:
    """Coefficients (x, y) of Bob's post-measurement state x|0> + y|1>."""
    a, b = complex(qubit.a), complex(qubit.b)
    table = {
        (0, 0): (a, b),
        (0, 1): (b, a),
        (1, 0): (a, -b),
        (1, 1): (-b, a),
    }
    return table[(outcome.i, outcome.j)]


#: 2x2 correction unitaries on the restricted region-I rail basis
#: {|1,0>, |0,1>}, extended as identity on all other occupations.  Bob
#: applies them after learning (i, j): identity, rail swap, phase flip,
#: and swap-then-phase respectively.
CORRECTIONS = {
    (0, 0): ((1, 0), (0, 1)),
    (0, 1): ((0, 1), (1, 0)),
    (1, 0): ((1, 0), (0, -1)),
    (1, 1): ((0, 1), (-1, 0)),
}


@lru_cache(maxsize=128)
def dual_rail_zero(p: DeSitterParams, n_max: int) -> StateVector:
    """Bob's logical |0>: one-particle expansion on rail 1, vacuum on rail 2."""
    return tensor_product(
        alpha_one_particle_state(p, n_max), alpha_vacuum_state(p, n_max)
    )


@lru_cache(maxsize=128)
def dual_rail_one(p: DeSitterParams, n_max: int) -> StateVector:
    """Bob's logical |1>: vacuum on rail 1, one-particle expansion on rail 2."""
    return tensor_product(
        alpha_vacuum_state(p, n_max), alpha_one_particle_state(p, n_max)
    )


def bell_channel_state(p: DeSitterParams, n_max: int) -> StateVector:
    """The shared channel (|0_A>|0_B> + |1_A>|1_B>) / sqrt(2).

    Alice measures before any horizon physics applies to her, so her qubit
    is represented by a single abstract two-level mode (occupation 0 or 1)
    prepended to Bob's four physical modes.
    """
    zero_b = dual_rail_zero(p, n_max)
    one_b = dual_rail_one(p, n_max)
    inv = 1.0 / math.sqrt(2.0)
    amps = {}
    for occ, amp in zero_b.amplitudes.items():
        amps[(0,) + occ] = inv * amp
    for occ, amp in one_b.amplitudes.items():
        amps[(1,) + occ] = inv * amp
    return StateVector(5, n_max, amps)


def bob_conditional_state(
    outcome: BellOutcome, qubit: LogicalQubit, p: DeSitterParams, n_max: int
) -> StateVector:
    """Bob's (normalized) four-mode state after Alice announces ``outcome``."""
    x, y = outcome_coefficients(outcome, qubit)
    phi = superpose(
        [(x, dual_rail_zero(p, n_max)), (y, dual_rail_one(p, n_max))]
    )
    return phi.normalized()


def project_bell_outcome(
    outcome: BellOutcome, qubit: LogicalQubit, p: DeSitterParams, n_max: int
) -> StateVector:
    """First-principles projection of the full input onto one Bell outcome.

    Builds |psi_C> (x) |channel> over six modes (Alice's input and channel
    qubits abstract, Bob physical) and applies <Bell_ij| on the two logical
    modes.  Returns Bob's unnormalized four-mode state, whose squared norm
    is the outcome probability.  Serves as the oracle for
    :func:`outcome_coefficients`.
    """
    channel = bell_channel_state(p, n_max)
    input_amps = {}
    for c_bit, c_amp in ((0, complex(qubit.a)), (1, complex(qubit.b))):
        if c_amp == 0:
            continue
        for occ, amp in channel.amplitudes.items():
            input_amps[(c_bit,) + occ] = c_amp * amp
    # <Bell_ij| = (<0, j| + (-1)^i <1, 1-j|) / sqrt(2) on (input, channel) modes
    inv = 1.0 / math.sqrt(2.0)
    sign = -1.0 if outcome.i else 1.0
    projected = {}
    for occ, amp in input_amps.items():
        c_bit, a_bit, bob = occ[0], occ[1], occ[2:]
        if c_bit == 0 and a_bit == outcome.j:
            projected[bob] = projected.get(bob, 0j) + inv * amp
        elif c_bit == 1 and a_bit == 1 - outcome.j:
            projected[bob] = projected.get(bob, 0j) + sign * inv * amp
    return StateVector(4, n_max, projected)


def bob_region1_density(
    outcome: BellOutcome,
    qubit: LogicalQubit,
    p: DeSitterParams,
    n_max: int,
    normalize: bool = True,
) -> DensityOperator:
    """Bob's reduced state on his two region-I modes, by brute-force trace.

    Built solely from the squeezed expansions and the Fock-space partial
    trace, independent of any closed-form expression for the reduced state.
    With ``normalize=False`` the dual-rail expansions are left with their
    raw truncated norms, which keeps every stored matrix element exact
    (truncation then only removes high-occupation entries).
    """
    x, y = outcome_coefficients(outcome, qubit)
    if normalize:
        zero_b = dual_rail_zero(p, n_max)
        one_b = dual_rail_one(p, n_max)
    else:
        zero_b = tensor_product(
            alpha_one_particle_state(p, n_max, normalize=False),
            alpha_vacuum_state(p, n_max, normalize=False),
        )
        one_b = tensor_product(
            alpha_vacuum_state(p, n_max, normalize=False),
            alpha_one_particle_state(p, n_max, normalize=False),
        )
    phi = superpose([(x, zero_b), (y, one_b)])
    if normalize:
        phi = phi.normalized()
    return partial_trace_pure(phi, BOB_PARTITION, keep=REGION_I)


def region1_density_closed_form(
    x: complex,
    y: complex,
    p: DeSitterParams,
    n_max: int,
    rail_order: str = "reversed",
) -> DensityOperator:
    """Closed-form block expression for Bob's unnormalized region-I state.

    Diagonal family: (1-q)^3 q^(n-1) [(n-m)|x|^2 + m|y|^2] on |m, n-m>;
    off-diagonal family: (1-q)^3 q^n sqrt((m+1)(n-m+1)) x y* on
    |m, n-m+1><m+1, n-m| plus Hermitian conjugates.

    ``rail_order`` fixes how a printed ket |u, v> maps onto the two
    region-I rails: "direct" reads (u, v) = (rail 1, rail 2), "reversed"
    reads (u, v) = (rail 2, rail 1).  The brute-force trace is the
    authority; this expression exists to be compared against it.
    """
    if rail_order not in ("direct", "reversed"):
        raise ValueError(f"rail_order must be 'direct' or 'reversed', got {rail_order!r}")
    s = squeezing_from_params(p)
    q = s.q
    pref = (1.0 - q) ** 3

    def ket(u: int, v: int) -> tuple[int, int]:
        return (u, v) if rail_order == "direct" else (v, u)

    entries: dict = {}

    def put(row, col, val):
        if row[0] <= n_max and row[1] <= n_max and col[0] <= n_max and col[1] <= n_max:
            entries[(row, col)] = entries.get((row, col), 0j) + val

    # Per-rail occupations reach n_max each, so the total block index runs
    # to 2 * n_max; the put() guard trims kets that leave the register.
    x2, y2, xy = abs(x) ** 2, abs(y) ** 2, x * complex(y).conjugate()
    for n in range(1, 2 * n_max + 1):
        qd = q ** (n - 1)
        for m in range(n + 1):
            w = pref * qd * ((n - m) * x2 + m * y2)
            if w != 0.0:
                put(ket(m, n - m), ket(m, n - m), complex(w))
    for n in range(0, 2 * n_max + 1):
        qo = q**n
        for m in range(n + 1):
            c = pref * qo * math.sqrt((m + 1) * (n - m + 1)) * xy
            if c != 0j:
                put(ket(m, n - m + 1), ket(m + 1, n - m), c)
                put(ket(m + 1, n - m), ket(m, n - m + 1), c.conjugate())
    return DensityOperator(2, n_max, (REGION_I, REGION_I), entries)


def apply_rail_correction(rho: DensityOperator, outcome: BellOutcome) -> DensityOperator:
    """Conjugate ``rho`` by the outcome's correction unitary.

    The unitary acts on the two-dimensional span of the region-I rail kets
    |1,0> and |0,1> and as identity on every other occupation.
    """
    u = CORRECTIONS[(outcome.i, outcome.j)]
    rails = ((1, 0), (0, 1))

    def expand(occ, conjugate):
        if occ in rails:
            idx = rails.index(occ)
            col = [u[0][idx], u[1][idx]]
            if conjugate:
                col = [complex(c).conjugate() for c in col]
            return [(rails[row], col[row]) for row in range(2) if col[row] != 0]
        return [(occ, 1.0)]

    entries: dict = {}
    for (r, c), v in rho.entries.items():
        for new_r, fr in expand(r, conjugate=False):
            for new_c, fc in expand(c, conjugate=True):
                key = (new_r, new_c)
                entries[key] = entries.get(key, 0j) + fr * fc * v
    return DensityOperator(rho.mode_count, rho.n_max, rho.partition, entries)


def target_region1_state(qubit: LogicalQubit, n_max: int) -> StateVector:
    """The state Bob aims to hold: a|1,0> + b|0,1> on his region-I rails."""
    return StateVector.from_amplitudes(
        2, n_max, {(1, 0): complex(qubit.a), (0, 1): complex(qubit.b)}
    )


def closed_form_fidelity(p: DeSitterParams) -> float:
    """Analytic teleportation fidelity (1 - tanh^2 r * Delta^2)^3."""
    return (1.0 - squeezing_from_params(p).q) ** 3


def fidelity_brute_force(
    outcome: BellOutcome, qubit: LogicalQubit, p: DeSitterParams, n_max: int
) -> float:
    """Fidelity of Bob's corrected region-I state against the intended qubit.

    This is the full pipeline - squeezed expansions, conditional state,
    partial trace over region II, correction unitary, pure-mixed overlap -
    and serves as the numerical oracle for :func:`closed_form_fidelity`.
    """
    rho = bob_region1_density(outcome, qubit, p, n_max)
    corrected = apply_rail_correction(rho, outcome)
    return fidelity_pure_mixed(target_region1_state(qubit, n_max), corrected)


def outcome_probability(
    outcome: BellOutcome, qubit: LogicalQubit, p: DeSitterParams, n_max: int
) -> float:
    """Probability of a Bell outcome, from the first-principles projection."""
    return project_bell_outcome(outcome, qubit, p, n_max).norm_squared()


def block_weights(rho: DensityOperator, n_blocks: int) -> list[float]:
    """Scalar prefactors of the excitation-number blocks of a region-I state.

    Block n collects the diagonal occupations with total photon number n;
    its trace equals p_n * n(n+1)/2 where p_n is the geometric prefactor
    (1-q)^3 q^(n-1).  Returns [p_0, p_1, ...] with p_0 = 0.
    """
    traces = [0.0] * (n_blocks + 1)
    for (r, c), v in rho.entries.items():
        if r == c:
            total = sum(r)
            if total <= n_blocks:
                traces[total] += v.real
    weights = [0.0]
    for n in range(1, n_blocks + 1):
        weights.append(traces[n] / (n * (n + 1) / 2.0))
    return weights


@dataclass(frozen=True)
class TeleportResult:
    """Outcome of one teleportation run: reduced state plus both fidelities."""

    rho_region1: DensityOperator
    fidelity_numeric: float
    fidelity_closed_form: float
    block_weights: list

    def __post_init__(self):
        for f in (self.fidelity_numeric, self.fidelity_closed_form):
            if not (-1e-10 <= f <= 1.0 + 1e-10):
                raise ValueError(f"fidelity {f} outside [0, 1]")


def teleport(
    outcome: BellOutcome,
    qubit: LogicalQubit,
    p: DeSitterParams,
    n_max: int,
    n_blocks: int = 8,
) -> TeleportResult:
    """Run the protocol for one outcome and collect the verification data."""
    rho = bob_region1_density(outcome, qubit, p, n_max)
    corrected = apply_rail_correction(rho, outcome)
    fid = fidelity_pure_mixed(target_region1_state(qubit, n_max), corrected)
    return TeleportResult(
        rho_region1=rho,
        fidelity_numeric=fid,
        fidelity_closed_form=closed_form_fidelity(p),
        block_weights=block_weights(rho, n_blocks),
    )
