"""Render sweep results as figures next to the delimited output.

Import of matplotlib is deferred into the functions so the CSV path stays
usable in stripped-down environments; the Agg backend is forced because
these figures are written to files, never shown.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _alpha_label(alpha: float) -> str:
    return "-inf (cutoff-free)" if alpha == float("-inf") else f"{alpha:g}"


def plot_fidelity_curves(rows, path: str) -> None:
    """Fidelity vs H/k, one curve per vacuum parameter (fig2/sweep output)."""
    plt = _pyplot()
    by_alpha: dict = {}
    for row in rows:
        h_over_k, alpha, closed = row[0], row[1], row[2]
        by_alpha.setdefault(alpha, []).append((h_over_k, closed))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for alpha in sorted(by_alpha):
        pts = sorted(by_alpha[alpha])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                label=f"alpha = {_alpha_label(alpha)}")
    ax.set_xlabel("H / k")
    ax.set_ylabel("teleportation fidelity")
    ax.set_ylim(0.0, 1.02)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_cavity_sweep(rows, path: str) -> None:
    """Amplitude magnitudes, channel weight and fidelity vs expansion rate."""
    plt = _pyplot()
    h = [r[0] for r in rows]
    abs_ca = [abs(complex(r[1], r[2])) for r in rows]
    abs_cb = [abs(complex(r[5], r[6])) for r in rows]
    weight = [r[7] for r in rows]
    fid = [r[8] for r in rows]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 6.4), sharex=True)
    top.plot(h, abs_ca, "o-", label="|C_A|")
    top.plot(h, abs_cb, "s-", label="|C_B|")
    top.set_ylabel("emission amplitude")
    top.legend()
    top.grid(True, alpha=0.3)
    bottom.plot(h, weight, "o-", label="channel weight on A")
    bottom.plot(h, fid, "s-", label="scheme-2 fidelity")
    bottom.set_xlabel("H")
    bottom.set_ylabel("weight / fidelity")
    bottom.legend()
    bottom.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
