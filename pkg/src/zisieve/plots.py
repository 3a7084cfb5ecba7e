"""Figure rendering for the CSV report paths.

matplotlib is imported lazily with the Agg backend so library use never
touches a display.  Each report figure lands next to its CSV.
"""

from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_path_for(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".png")


def render_mertens_figure(rows: list[dict], out_path: str | Path) -> Path:
    """ratio-to-theory and fitted B against x, log-x axes."""
    plt = _pyplot()
    xs = [row["x"] for row in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax1.semilogx(xs, [row["ratio_to_theory"] for row in rows], "o-", ms=3)
    ax1.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax1.set_ylabel("product / ((pi/4) e^gamma log x)")
    ax2.semilogx(xs, [row["fitted_B"] for row in rows], "o-", ms=3, color="tab:orange")
    ax2.set_ylabel("recip sum - loglog x")
    ax2.set_xlabel("norm bound x")
    fig.suptitle("Mertens sums over Gaussian prime ideals")
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_scan_figure(rows: list[dict], out_path: str | Path) -> Path:
    """Representation ratio against the target norm."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    norms = [row["norm"] for row in rows]
    ratios = [row["ratio"] for row in rows]
    ax.semilogx(norms, ratios, ".", ms=2, alpha=0.5)
    if ratios:
        ax.axhline(min(ratios), color="tab:red", lw=0.8, ls="--",
                   label=f"min ratio {min(ratios):.3f}")
        ax.legend(loc="upper right")
    ax.set_xlabel("N(target)")
    ax.set_ylabel("r / (S1 * N / log^2 N)")
    ax.set_title("Representation counts against the theorem lower-bound shape")
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
