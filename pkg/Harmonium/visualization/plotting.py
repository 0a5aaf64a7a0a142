import logging
import math
from typing import Optional, Sequence

import matplotlib.pyplot as plt

from ..tuning.euler import EulerPoint, pitch_of_ratio
from ..tuning.pythag import Construction, pyt_alphabet, pyt_freq
from ..utils.config import REFERENCE_NOTE

logger = logging.getLogger(__name__)


def _finish(fig, save_path: Optional[str]):
    # Ajusta o layout e exibe ou salva
    plt.tight_layout()
    if save_path:
        fig.savefig(save_path)
        logger.info("plot saved to %s", save_path)
    else:
        plt.show()
    plt.close(fig)


def plot_euler_lattice(points: Sequence[EulerPoint], save_path: str = None,
                       labels: Optional[Sequence[str]] = None):
    """
    Plots Euler points on the fifth/third plane.

    Parameters:
    points : Sequence[EulerPoint]
        The points; e3 goes on the x axis, e5 on the y axis and e2 sets the colour.
    save_path : str, optional
        If provided, saves the plot to the specified file path instead of displaying it.
    labels : Sequence[str], optional
        One annotation per point.
    """
    if not points:
        logger.warning("no Euler points given, nothing to plot")
        return

    fig, ax = plt.subplots(figsize=(7, 6))
    ax.set_title("Euler lattice")
    ax.set_xlabel("fifths (exponent of 3)")
    ax.set_ylabel("thirds (exponent of 5)")

    xs = [float(p.e3) for p in points]
    ys = [float(p.e5) for p in points]
    octaves = [float(p.e2) for p in points]
    cloud = ax.scatter(xs, ys, c=octaves, cmap="viridis", s=60, edgecolors="black")
    fig.colorbar(cloud, ax=ax, label="octaves (exponent of 2)")

    if labels:
        for x, y, text in zip(xs, ys, labels):
            ax.annotate(text, (x, y), textcoords="offset points", xytext=(5, 5))

    ax.grid(True, linestyle=":")
    ax.set_aspect("equal", adjustable="datalim")
    _finish(fig, save_path)


def plot_fifths_spiral(cycles: int, construction: Construction = Construction.CHAIN,
                       save_path: str = None, reference=REFERENCE_NOTE):
    """
    Polar plot of the Pythagorean alphabet up to ``cycles``.

    The angle is the pitch modulo one octave, the radius is 1 + cycle, so
    the comma drift of each cycle shows as a rotation.
    """
    letters = pyt_alphabet(cycles)
    fig = plt.figure(figsize=(7, 7))
    ax = fig.add_subplot(projection="polar")
    ax.set_title(f"Pythagorean letters, cycles 0..{cycles} ({Construction(construction).value})")

    for cycle in range(cycles + 1):
        row = [l for l in letters if l.cycle == cycle]
        cents = [pitch_of_ratio(pyt_freq(l, construction, reference), reference) % 1200 for l in row]
        angles = [2 * math.pi * c / 1200 for c in cents]
        ax.scatter(angles, [1 + cycle] * len(row), s=30, label=f"cycle {cycle}")

    ax.set_xticks([2 * math.pi * pc / 12 for pc in range(12)])
    ax.set_xticklabels([str(pc) for pc in range(12)])
    ax.legend(loc="upper right", bbox_to_anchor=(1.25, 1.1), fontsize="small")
    _finish(fig, save_path)
