"""Vacuum structure of an expanding background as seen by a static observer.

The conformal vacuum of a massless mode with momentum ``k`` in a background
expanding at Hubble rate ``H`` looks, to an observer confined inside the
cosmological horizon, like a two-mode squeezed state pairing region-I and
region-II quanta with

    tanh(r) = exp(-pi k / H)

(the Gibbons-Hawking thermal factor).  A one-parameter family of alternative
vacua, labeled by a real ``alpha < 0`` and motivated by a short-distance
cutoff at scale ``Lambda`` via exp(alpha) ~ H / Lambda, distorts the
geometric Schmidt spectrum by the factor

    Delta = (1 + exp(alpha + pi k/H)) / (1 + exp(alpha - pi k/H)) >= 1

with Delta = 1 exactly in the cutoff-free limit alpha -> -inf.  All series
in this module converge because q = tanh(r)^2 * Delta^2 < 1 for every valid
parameter choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import TruncationError
from .fock import StateVector

#: Sentinel for the cutoff-free vacuum (alpha -> -infinity).  Code branches on
#: it explicitly; it is never fed through an exponential.
BUNCH_DAVIES = float("-inf")


@dataclass(frozen=True)
class DeSitterParams:
    """Physical inputs: expansion rate, mode momentum, vacuum parameter."""

    H: float
    k: float
    alpha: float = BUNCH_DAVIES
    Lambda: float | None = None

    def __post_init__(self):
        if not (self.H > 0.0):
            raise ValueError(f"H must be positive, got {self.H}")
        if not (self.k > 0.0):
            raise ValueError(f"k must be positive, got {self.k}")
        # CPT invariance forces a real alpha; normalizability forces alpha < 0.
        if math.isnan(self.alpha) or self.alpha >= 0.0:
            raise ValueError(f"alpha must be real and negative, got {self.alpha}")
        if self.Lambda is not None and not (self.Lambda > self.H):
            raise ValueError(f"Lambda must exceed H, got Lambda={self.Lambda}, H={self.H}")

    @property
    def is_bunch_davies(self) -> bool:
        return self.alpha == BUNCH_DAVIES


@dataclass(frozen=True)
class SqueezingParams:
    """Derived squeezing data: r, tanh r, the Delta distortion and q = (tanh r * Delta)^2."""

    r: float
    tanh_r: float
    delta: float
    q: float

    @property
    def tanh_r_delta(self) -> float:
        """Schmidt ratio tanh(r) * Delta, computed overflow-free as sqrt(q)."""
        return math.sqrt(self.q)

    @property
    def cosh_r(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.tanh_r**2)

    @property
    def sinh_r(self) -> float:
        return self.tanh_r / math.sqrt(1.0 - self.tanh_r**2)


def _softplus(x: float) -> float:
    """log(1 + e^x), stable for large |x|."""
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def squeezing_from_params(p: DeSitterParams) -> SqueezingParams:
    """Map physical parameters to squeezing data.

    ``Delta`` is evaluated in log space once the exponents exceed the
    overflow range; ``q`` is always formed from logarithms so it stays
    finite and below 1 even when ``Delta`` itself overflows.
    """
    x = math.pi * p.k / p.H
    tanh_r = math.exp(-x)
    r = math.atanh(tanh_r) if tanh_r < 1.0 else math.inf
    if p.is_bunch_davies:
        delta = 1.0
        q = tanh_r * tanh_r
    else:
        log_delta = _softplus(p.alpha + x) - _softplus(p.alpha - x)
        delta = math.exp(log_delta) if log_delta < 700.0 else math.inf
        q = math.exp(2.0 * (log_delta - x))
    return SqueezingParams(r=r, tanh_r=tanh_r, delta=delta, q=q)


def alpha_for_cutoff(H: float, Lambda: float) -> float:
    """Vacuum parameter implied by a momentum cutoff: exp(alpha) = H / Lambda.

    A convenience only; callers remain free to pick alpha independently.
    """
    if not (Lambda > H > 0.0):
        raise ValueError(f"need Lambda > H > 0, got H={H}, Lambda={Lambda}")
    return math.log(H / Lambda)


def _tail_after(q: float, n_last_kept: int) -> tuple[float, float, float]:
    """Closed-form discarded weights of the three series families.

    For N = ``n_last_kept`` these are the weights of all terms with index
    n > N in, respectively:

      vacuum          (1-q) * sum q^n
      one-particle    (1-q)^2 * sum (n+1) q^n
      triple product  (1-q)^3 * sum (n+1)^2 q^n   (bounds the three-fold
                      tensor products entering the dual-rail states)
    """
    if q == 0.0:
        return 0.0, 0.0, 0.0
    one = 1.0 - q
    c = n_last_kept + 2
    head = q ** (n_last_kept + 1)
    s0 = 1.0 / one
    s1 = q / one**2
    s2 = q * (1.0 + q) / one**3
    t_vac = one * head * s0
    t_one = one**2 * head * (s1 + c * s0)
    t_triple = one**3 * head * (s2 + 2 * c * s1 + c * c * s0)
    return t_vac, t_one, t_triple


def truncation_tail_bound(p: DeSitterParams, tol: float) -> int:
    """Smallest per-mode cutoff keeping every discarded series tail below ``tol``.

    The returned cutoff is safe for the vacuum and one-particle expansions
    and for the three-fold products of such expansions used by the
    teleportation channel.  The one-particle series keeps indices up to
    n_max - 1 (the excitation raises the occupation by one), so the tails
    are evaluated at n_max - 1.  Always at least 1, since the one-particle
    state needs room for a single excitation even at q = 0.
    """
    if not (0.0 < tol < 1.0):
        raise ValueError(f"tol must be in (0, 1), got {tol}")
    q = squeezing_from_params(p).q
    n = 1
    while max(_tail_after(q, n - 1)) >= tol:
        n += 1
        if n > 10_000_000:
            raise TruncationError(f"tail bound did not converge for q={q}")
    return n


def _check_cutoff(p: DeSitterParams, n_max: int, tol: float | None) -> None:
    if n_max < 1:
        raise TruncationError(f"n_max must be at least 1, got {n_max}")
    if tol is not None:
        needed = truncation_tail_bound(p, tol)
        if n_max < needed:
            raise TruncationError(
                f"n_max={n_max} too small for tol={tol}; need at least {needed}"
            )


def alpha_vacuum_state(
    p: DeSitterParams,
    n_max: int,
    tol: float | None = None,
    normalize: bool = True,
) -> StateVector:
    """Two-mode expansion of the vacuum over (region I, region II) pairs.

    The amplitudes form the geometric sequence
    sqrt(1 - q) * (tanh r * Delta)^n on kets |n, n>, truncated at ``n_max``.
    With ``normalize=True`` (default) the truncated state is rescaled to unit
    norm; pass ``normalize=False`` to inspect the raw truncated norm, whose
    deficit from 1 is the discarded tail weight.
    """
    _check_cutoff(p, n_max, tol)
    s = squeezing_from_params(p)
    t = s.tanh_r_delta
    prefactor = math.sqrt(1.0 - s.q)
    amps = {}
    coeff = prefactor
    for n in range(n_max + 1):
        amps[(n, n)] = complex(coeff)
        coeff *= t
    state = StateVector.from_amplitudes(2, n_max, amps)
    return state.normalized() if normalize else state


def alpha_one_particle_state(
    p: DeSitterParams,
    n_max: int,
    tol: float | None = None,
    normalize: bool = True,
) -> StateVector:
    """Two-mode expansion of the one-particle excitation.

    Amplitudes (1 - q) * (tanh r * Delta)^n * sqrt(n + 1) on kets |n+1, n>;
    the exact (untruncated) norm is 1 because (1-q)^2 sum (n+1) q^n = 1.
    The series index stops at ``n_max - 1`` so the region-I occupation
    n + 1 fits the register cutoff.
    """
    _check_cutoff(p, n_max, tol)
    s = squeezing_from_params(p)
    t = s.tanh_r_delta
    prefactor = 1.0 - s.q
    amps = {}
    coeff = prefactor
    for n in range(n_max):
        amps[(n + 1, n)] = complex(coeff * math.sqrt(n + 1))
        coeff *= t
    state = StateVector.from_amplitudes(2, n_max, amps)
    return state.normalized() if normalize else state


def power_spectrum_modification(H: float, Lambda: float) -> float:
    """Relative change of the inflationary power spectrum from the cutoff vacuum.

    Returns (H / Lambda) * sin(2 Lambda / H); bounded by H / Lambda.
    """
    if not (Lambda > H > 0.0):
        raise ValueError(f"need Lambda > H > 0, got H={H}, Lambda={Lambda}")
    return (H / Lambda) * math.sin(2.0 * Lambda / H)
