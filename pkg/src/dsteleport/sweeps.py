"""Parameter sweeps and deterministic CSV emission.

All numeric output uses 12 significant digits with a period decimal
separator and LF line endings, so identical configurations produce
byte-identical files on any platform.
"""

from __future__ import annotations

from . import cavity as cav
from .config import Config
from .desitter import DeSitterParams, squeezing_from_params, truncation_tail_bound
from .freemode import BellOutcome, LogicalQubit, closed_form_fidelity, fidelity_brute_force
from .sampling import fibonacci_bloch

#: Fixed input qubit for the brute-force column; the fidelity is
#: amplitude-independent, which the verification suite checks separately.
_REFERENCE_QUBIT = LogicalQubit(0.6, 0.8)
_REFERENCE_OUTCOME = BellOutcome(0, 0)

FIG2_HEADER = ("H_over_k", "alpha", "fidelity_closed_form", "fidelity_brute_force")
SWEEP_HEADER = ("H_over_k", "alpha", "tanh_r", "delta", "q", "n_max", "fidelity_closed_form")
CAVITY_HEADER = (
    "H",
    "C_A_re",
    "C_A_im",
    "C_A_numeric_re",
    "C_A_numeric_im",
    "C_B_re",
    "C_B_im",
    "channel_weight_CA",
    "scheme2_fidelity",
)


def format_value(value) -> str:
    """Canonical cell rendering: 12 significant digits, locale-free."""
    if isinstance(value, int):
        return str(value)
    return f"{float(value):.12g}"


def _grid_points(cfg: Config):
    """(alpha, H/k) pairs in output order: sorted by (alpha, H_over_k)."""
    for alpha in sorted(cfg.sweep.alphas):
        for h_over_k in cfg.sweep.h_over_k:
            yield alpha, h_over_k


def _point_params(cfg: Config, alpha: float, h_over_k: float) -> DeSitterParams:
    k = cfg.sweep.k
    return DeSitterParams(H=h_over_k * k, k=k, alpha=alpha)


def fig2_rows(cfg: Config) -> list[tuple]:
    """Teleportation fidelity curves: closed form next to the brute-force oracle."""
    rows = []
    for alpha, h_over_k in _grid_points(cfg):
        p = _point_params(cfg, alpha, h_over_k)
        n_max = cfg.sweep.n_max or truncation_tail_bound(p, cfg.sweep.tolerance)
        brute = fidelity_brute_force(_REFERENCE_OUTCOME, _REFERENCE_QUBIT, p, n_max)
        rows.append((h_over_k, alpha, closed_form_fidelity(p), brute))
    return rows


def sweep_rows(cfg: Config) -> list[tuple]:
    """Squeezing diagnostics over the same grid, closed forms only."""
    rows = []
    for alpha, h_over_k in _grid_points(cfg):
        p = _point_params(cfg, alpha, h_over_k)
        s = squeezing_from_params(p)
        n_max = cfg.sweep.n_max or truncation_tail_bound(p, cfg.sweep.tolerance)
        rows.append((h_over_k, alpha, s.tanh_r, s.delta, s.q, n_max, closed_form_fidelity(p)))
    return rows


def cavity_rows(cfg: Config) -> list[tuple]:
    """Entangling amplitudes and channel fidelity across the expansion-rate grid."""
    c = cfg.cavity
    samples = fibonacci_bloch(c.bloch_samples)
    rows = []
    for h_rate in c.h_grid:
        cavity = cav.ConformalCavity(z1=c.z1, L=c.length, n=c.mode_index,
                                     N_A=c.norm_a, alpha=c.alpha)
        static = cav.static_cavity_from_conformal(cavity, h_rate, N_B=c.norm_b)
        path = cav.AtomPath(Z=c.z1 + c.length / 2.0, Omega=c.omega, eps=c.coupling,
                            w=c.width, eta_a=c.eta_a, eta_b=c.eta_b, w_b=c.width_b)
        closed = cav.amplitude_ca_closed_form(cavity, path)
        numeric = cav.amplitude_ca_numeric(cavity, path)
        c_b = cav.amplitude_cb_numeric(static, h_rate, path)
        channel = cav.EntangledChannel(closed, c_b)
        fid = cav.scheme2_fidelity(channel, samples).average
        rows.append((
            h_rate,
            closed.real, closed.imag,
            numeric.real, numeric.imag,
            c_b.real, c_b.imag,
            channel.weight_a,
            fid,
        ))
    return rows


def render_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str, header, rows) -> None:
    """UTF-8, comma-separated, header row, LF endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(header, rows))
