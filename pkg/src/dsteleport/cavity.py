"""Cavity-based teleportation scheme: mode functions, chart transforms,
atom-mediated entangling amplitudes, and the resulting channel fidelity.

Alice's cavity is at rest in the conformal chart (coordinates eta < 0, z);
Bob's cavity is at rest in the static chart (t, r) behind mirrors at r = 0
and r = L'.  A two-level atom crossing both cavities can deposit a single
photon in either one; the emission amplitudes C_A and C_B define a
generally non-maximal entangled channel, and the teleportation fidelity
through that channel depends only on the weight split between them.

Emission amplitudes are overlaps of the *conjugate* mode function with the
switched atom coupling,

    C = -i * integral eps(tau) * conj(phi(x(tau))) * exp(-i Omega tau) dtau,

since an emitted photon rides the creation-operator half of the field.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.integrate import quad

from .desitter import BUNCH_DAVIES
from .errors import DegenerateChannelError, HorizonDomainError, QuadratureError

#: Channels with both raw amplitudes below this magnitude are degenerate.
DEGENERACY_FLOOR = 1e-30


@dataclass(frozen=True)
class ConformalCavity:
    """Cavity at rest in the conformal chart: mirrors at z1 and z1 + L."""

    z1: float
    L: float
    n: int
    N_A: float = 1.0
    alpha: float = BUNCH_DAVIES

    def __post_init__(self):
        if not (self.L > 0.0):
            raise ValueError(f"cavity length must be positive, got {self.L}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"mode index must be a positive integer, got {self.n}")
        if math.isnan(self.alpha) or self.alpha >= 0.0:
            raise ValueError(f"alpha must be real and negative, got {self.alpha}")

    @property
    def k_n(self) -> float:
        return self.n * math.pi / self.L


@dataclass(frozen=True)
class StaticCavity:
    """Cavity at rest in the static chart: mirrors at r = 0 and r = L_prime."""

    L_prime: float
    n: int
    N_B: float = 1.0

    def __post_init__(self):
        if not (self.L_prime > 0.0):
            raise ValueError(f"cavity length must be positive, got {self.L_prime}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"mode index must be a positive integer, got {self.n}")


def static_length(L: float, H: float) -> float:
    """Length of a conformal cavity as measured in the static chart."""
    if not (L > 0.0 and H >= 0.0):
        raise ValueError(f"need L > 0 and H >= 0, got L={L}, H={H}")
    return L / math.sqrt(1.0 + L * L * H * H)


def static_cavity_from_conformal(c: ConformalCavity, H: float, N_B: float = 1.0) -> StaticCavity:
    """Static-chart counterpart of a conformal cavity."""
    lp = static_length(c.L, H)
    if lp * H >= 1.0:
        raise HorizonDomainError(f"static length {lp} reaches the horizon 1/H = {1.0 / H}")
    return StaticCavity(L_prime=lp, n=c.n, N_B=N_B)


def static_wavenumber(c: StaticCavity, H: float) -> float:
    """Mode wavenumber k'_n = 2 n pi H / log((1 + H L') / (1 - H L'))."""
    if H == 0.0:
        return c.n * math.pi / c.L_prime
    x = H * c.L_prime
    if x >= 1.0:
        raise HorizonDomainError(f"H L' = {x} >= 1: cavity crosses the horizon")
    return 2.0 * c.n * math.pi * H / math.log((1.0 + x) / (1.0 - x))


def conformal_mode_function(c: ConformalCavity, eta: float, z: float) -> complex:
    """Cavity mode in the conformal chart, Dirichlet at both mirrors.

    sin(k_n (z - z1)) times a superposition of positive and negative
    frequency parts weighted by exp(alpha); the alpha -> -inf branch keeps
    only the positive-frequency part.
    """
    if not (c.z1 <= z <= c.z1 + c.L):
        raise ValueError(f"z = {z} outside cavity [{c.z1}, {c.z1 + c.L}]")
    k = c.k_n
    spatial = math.sin(k * (z - c.z1))
    if c.alpha == BUNCH_DAVIES:
        return c.N_A / math.sqrt(k) * spatial * cmath.exp(-1j * k * eta)
    norm = c.N_A / math.sqrt(k * (1.0 - math.exp(2.0 * c.alpha)))
    osc = cmath.exp(-1j * k * eta) + math.exp(c.alpha) * cmath.exp(1j * k * eta)
    return norm * spatial * osc


def static_mode_function(c: StaticCavity, H: float, t: float, r: float) -> complex:
    """Cavity mode in the static chart, vanishing at r = 0 and r = L_prime."""
    if H > 0.0 and r >= 1.0 / H:
        raise HorizonDomainError(f"r = {r} at or beyond the horizon 1/H = {1.0 / H}")
    if not (0.0 <= r <= c.L_prime):
        raise ValueError(f"r = {r} outside cavity [0, {c.L_prime}]")
    kp = static_wavenumber(c, H)
    if H == 0.0:
        arg = kp * (r - c.L_prime)
    else:
        ratio = (1.0 + H * r) * (1.0 - H * c.L_prime) / ((1.0 - H * r) * (1.0 + H * c.L_prime))
        arg = (kp / H) * 0.5 * math.log(ratio)
    return c.N_B / math.sqrt(kp) * math.sin(arg) * cmath.exp(-1j * kp * t)


def to_conformal(t: float, r: float, H: float) -> tuple[float, float]:
    """Chart map (t, r) -> (eta, z); defined inside the horizon |r H| < 1."""
    if abs(r * H) >= 1.0:
        raise HorizonDomainError(f"|r H| = {abs(r * H)} >= 1")
    scale = math.exp(-t * H) / math.sqrt(1.0 - r * r * H * H)
    return (-scale / H, r * scale)


def to_static(eta: float, z: float, H: float) -> tuple[float, float]:
    """Inverse chart map (eta, z) -> (t, r).

    Uses r = -z / (H eta) and exp(-2 t H) = H^2 (eta^2 - z^2), which is the
    exact inverse of :func:`to_conformal`; points with eta^2 <= z^2 lie
    beyond the horizon of the static observer.
    """
    if eta >= 0.0:
        raise HorizonDomainError(f"conformal time must be negative, got {eta}")
    d = eta * eta - z * z
    if d <= 0.0:
        raise HorizonDomainError(f"point (eta={eta}, z={z}) lies beyond the horizon")
    r = -z / (H * eta)
    t = -math.log(H * H * d) / (2.0 * H)
    return (t, r)


@dataclass(frozen=True)
class AtomPath:
    """Atom trajectory and coupling: fixed conformal position Z, proper time = eta.

    ``eta_a``/``w`` center and width of the Gaussian switching for cavity A;
    ``eta_b``/``w_b`` the same for cavity B (``None`` picks the transit of
    the static cavity's midpoint and reuses ``w``).
    """

    Z: float
    Omega: float
    eps: float
    w: float
    eta_a: float
    eta_b: float | None = None
    w_b: float | None = None

    def __post_init__(self):
        if not (self.w > 0.0):
            raise ValueError(f"switching width must be positive, got {self.w}")
        if self.w_b is not None and not (self.w_b > 0.0):
            raise ValueError(f"switching width must be positive, got {self.w_b}")


def amplitude_ca_closed_form(c: ConformalCavity, path: AtomPath) -> complex:
    """Photon-emission amplitude into the conformal cavity, in closed form.

    Valid for the Gaussian switching eps * exp(-(tau - eta_a)^2 / w^2) and
    the atom sitting at the cavity midpoint, where the spatial factor is
    sin(n pi / 2): exactly zero for even mode index.  The two Gaussian
    resonance terms sit at detunings k_n -/+ Omega; the second carries the
    exp(alpha) weight and disappears in the alpha -> -inf branch.
    """
    if c.n % 2 == 0:
        return 0j
    sign = 1.0 if (c.n - 1) // 2 % 2 == 0 else -1.0
    k = c.k_n
    w = path.w
    dm = k - path.Omega
    dp = k + path.Omega
    lead = cmath.exp(-dm * dm * w * w / 4.0 + 1j * dm * path.eta_a)
    if c.alpha == BUNCH_DAVIES:
        root = math.sqrt(math.pi / k)
        bracket = lead
    else:
        root = math.sqrt(math.pi / (k * (1.0 - math.exp(2.0 * c.alpha))))
        bracket = lead + cmath.exp(-dp * dp * w * w / 4.0 - 1j * dp * path.eta_a + c.alpha)
    return -1j * path.eps * w * c.N_A * root * sign * bracket


def amplitude_numeric(
    field,
    switching,
    omega: float,
    window: tuple[float, float],
    abs_tol: float = 1e-10,
    limit: int = 200,
) -> complex:
    """Adaptive quadrature of -i * int eps(tau) conj(field(tau)) e^(-i Omega tau) dtau.

    ``field`` maps proper time to the mode-function value along the
    trajectory; ``switching`` is the real coupling envelope.  Raises
    :class:`QuadratureError` when the quadrature error estimate exceeds
    ``abs_tol``.
    """
    lo, hi = window
    if not (hi > lo):
        raise ValueError(f"empty integration window ({lo}, {hi})")

    def integrand(tau: float) -> complex:
        return switching(tau) * field(tau).conjugate() * cmath.exp(-1j * omega * tau)

    re, re_err = quad(lambda tau: integrand(tau).real, lo, hi,
                      epsabs=abs_tol / 4.0, epsrel=1e-12, limit=limit)
    im, im_err = quad(lambda tau: integrand(tau).imag, lo, hi,
                      epsabs=abs_tol / 4.0, epsrel=1e-12, limit=limit)
    if re_err + im_err > abs_tol:
        raise QuadratureError(
            f"quadrature error {re_err + im_err:.3e} exceeds {abs_tol:.3e} "
            f"over window ({lo}, {hi}) with limit={limit}"
        )
    return -1j * complex(re, im)


def _gaussian_switching(eps: float, center: float, width: float):
    return lambda tau: eps * math.exp(-(((tau - center) / width) ** 2))


def amplitude_ca_numeric(
    c: ConformalCavity,
    path: AtomPath,
    window: tuple[float, float] | None = None,
    abs_tol: float = 1e-10,
    limit: int = 200,
) -> complex:
    """Quadrature counterpart of :func:`amplitude_ca_closed_form`."""
    if window is None:
        window = (path.eta_a - 8.0 * path.w, path.eta_a + 8.0 * path.w)
    if window[1] - window[0] < 6.0 * path.w:
        raise ValueError(f"window {window} narrower than 6 switching widths")
    field = lambda tau: conformal_mode_function(c, tau, path.Z)
    return amplitude_numeric(
        field, _gaussian_switching(path.eps, path.eta_a, path.w),
        path.Omega, window, abs_tol=abs_tol, limit=limit,
    )


def default_cavity_b_center(path: AtomPath, H: float, L_prime: float) -> float:
    """Proper time at which the atom crosses the static cavity's midpoint."""
    return -2.0 * path.Z / (H * L_prime)


def amplitude_cb_numeric(
    c: StaticCavity,
    H: float,
    path: AtomPath,
    window: tuple[float, float] | None = None,
    abs_tol: float = 1e-10,
    limit: int = 200,
    switching=None,
) -> complex:
    """Emission amplitude into the static cavity along the conformal trajectory.

    The trajectory (eta, z) = (tau, Z) is pulled into the static chart with
    the exact inverse chart map; the mode function is evaluated there.  The
    field vanishes outside the mirrors (r > L_prime contributes zero), and a
    window reaching the horizon (|tau| <= Z) is an error.  ``switching``
    defaults to a Gaussian of width ``path.w_b`` centered on the midpoint
    transit; pass any callable to use a different envelope.
    """
    if not (path.Z > 0.0):
        raise ValueError(f"atom position Z must be positive, got {path.Z}")
    if not (H > 0.0):
        raise ValueError(f"H must be positive, got {H}")
    w_b = path.w_b if path.w_b is not None else path.w
    center = path.eta_b if path.eta_b is not None else default_cavity_b_center(path, H, c.L_prime)
    if window is None:
        window = (center - 8.0 * w_b, center + 8.0 * w_b)
    if window[1] - window[0] < 6.0 * w_b:
        raise ValueError(f"window {window} narrower than 6 switching widths")
    if window[1] >= -path.Z:
        raise HorizonDomainError(
            f"window {window} reaches the horizon crossing at tau = {-path.Z}"
        )
    if switching is None:
        switching = _gaussian_switching(path.eps, center, w_b)

    def field(tau: float) -> complex:
        t, r = to_static(tau, path.Z, H)
        if r > c.L_prime:
            return 0j
        return static_mode_function(c, H, t, r)

    return amplitude_numeric(field, switching, path.Omega, window,
                             abs_tol=abs_tol, limit=limit)


@dataclass(frozen=True)
class EntangledChannel:
    """Single-photon channel C_A |1_A 0_B> + C_B |0_A 1_B>, raw and renormalized."""

    c_a_raw: complex
    c_b_raw: complex

    @property
    def is_degenerate(self) -> bool:
        return abs(self.c_a_raw) < DEGENERACY_FLOOR and abs(self.c_b_raw) < DEGENERACY_FLOOR

    def _norm(self) -> float:
        if self.is_degenerate:
            raise DegenerateChannelError(
                f"both amplitudes below {DEGENERACY_FLOOR}: no photon was emitted"
            )
        return math.sqrt(abs(self.c_a_raw) ** 2 + abs(self.c_b_raw) ** 2)

    @property
    def c_a(self) -> complex:
        """Renormalized amplitude: |c_a|^2 + |c_b|^2 = 1."""
        return self.c_a_raw / self._norm()

    @property
    def c_b(self) -> complex:
        return self.c_b_raw / self._norm()

    @property
    def weight_a(self) -> float:
        """Probability that the photon sits in cavity A."""
        return abs(self.c_a) ** 2


def channel_entropy(ch: EntangledChannel) -> float:
    """Shannon entropy (bits) of the photon-location distribution; 1 = maximal."""
    p = ch.weight_a
    total = 0.0
    for x in (p, 1.0 - p):
        if x > 0.0:
            total -= x * math.log2(x)
    return total


def multi_mode_channel(
    z1: float,
    L: float,
    H: float,
    path: AtomPath,
    mode_indices,
    alpha: float = BUNCH_DAVIES,
    N_A: float = 1.0,
    N_B: float = 1.0,
) -> EntangledChannel:
    """Channel with the emission weight accumulated over several cavity modes.

    A single resonant index normally suffices: off-resonant modes are
    exponentially suppressed by the Gaussian switching window.  This helper
    sums the per-mode emission probabilities |C|^2 within each cavity
    (distinct modes are orthogonal, so their relative phases do not affect
    the weight split) and returns the channel built from the square-root
    totals.
    """
    weight_a = 0.0
    weight_b = 0.0
    for n in mode_indices:
        cavity = ConformalCavity(z1=z1, L=L, n=n, N_A=N_A, alpha=alpha)
        static = static_cavity_from_conformal(cavity, H, N_B=N_B)
        weight_a += abs(amplitude_ca_closed_form(cavity, path)) ** 2
        weight_b += abs(amplitude_cb_numeric(static, H, path)) ** 2
    return EntangledChannel(math.sqrt(weight_a), math.sqrt(weight_b))


@dataclass(frozen=True)
class OutcomeStats:
    probability: float
    fidelity: float


@dataclass(frozen=True)
class Scheme2Result:
    average: float
    per_outcome: dict  # (i, j) -> OutcomeStats


def scheme2_fidelity(ch: EntangledChannel, samples) -> Scheme2Result:
    """Average teleportation fidelity through a non-maximal channel.

    For each input qubit (a, b) the four Bell outcomes leave Bob with
    (up to the standard correction, which also absorbs the known
    preparation phases of C_A and C_B)

        outcomes (0,0), (1,0):  |c_B| a |0> + |c_A| b |1>,
        outcomes (0,1), (1,1):  |c_A| a |0> + |c_B| b |1>,

    occurring with probabilities proportional to the squared norms.  The
    returned ``average`` weights each outcome's fidelity by its probability
    and averages over the supplied deterministic sample set; ``per_outcome``
    carries the sample-averaged probability and probability-weighted
    fidelity of each outcome.
    """
    if ch.is_degenerate:
        raise DegenerateChannelError("cannot teleport through an empty channel")
    ca = abs(ch.c_a)
    cb = abs(ch.c_b)
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one input sample")

    acc_average = 0.0
    acc_prob = {(i, j): 0.0 for i in (0, 1) for j in (0, 1)}
    acc_pf = {(i, j): 0.0 for i in (0, 1) for j in (0, 1)}
    for a, b in samples:
        norm2 = abs(a) ** 2 + abs(b) ** 2
        u = abs(a) ** 2 / norm2
        v = abs(b) ** 2 / norm2
        # swap-type outcomes (j = 0): corrected state (cb a, ca b)
        w_swap = ca * ca * v + cb * cb * u
        f_swap = (cb * u + ca * v) ** 2 / w_swap if w_swap > 0.0 else 0.0
        # direct-type outcomes (j = 1): corrected state (ca a, cb b)
        w_dir = ca * ca * u + cb * cb * v
        f_dir = (ca * u + cb * v) ** 2 / w_dir if w_dir > 0.0 else 0.0
        acc_average += w_swap * f_swap + w_dir * f_dir
        for i in (0, 1):
            acc_prob[(i, 0)] += w_swap / 2.0
            acc_pf[(i, 0)] += (w_swap / 2.0) * f_swap
            acc_prob[(i, 1)] += w_dir / 2.0
            acc_pf[(i, 1)] += (w_dir / 2.0) * f_dir

    count = len(samples)
    per_outcome = {}
    for key in acc_prob:
        prob = acc_prob[key] / count
        fid = acc_pf[key] / acc_prob[key] if acc_prob[key] > 0.0 else 0.0
        per_outcome[key] = OutcomeStats(probability=prob, fidelity=fid)
    return Scheme2Result(average=acc_average / count, per_outcome=per_outcome)
