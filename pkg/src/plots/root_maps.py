from typing import Dict

import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

from src.qpoly import QuasiPolynomial, conjugate as conjugate_of, to_pretty
from src.rootfinder import Rectangle, roots_in_region
from src.tolerances import DEFAULT_TOLERANCES, Tolerances


def analyze_root_map(q: QuasiPolynomial, region: Rectangle, conjugate: bool = False,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> Dict[str, pd.DataFrame]:
    """
    Locates the roots of q (and optionally of its conjugate) inside a rectangle.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.
        region (Rectangle): The window, left half-plane allowed.
        conjugate (bool): Whether to add the roots of the conjugate quasi-polynomial.
        tolerances (Tolerances): Root-finding settings.

    Returns:
        dict: Root tables with columns re, im, multiplicity, keyed by label.
    """
    targets = {to_pretty(q): q}
    if conjugate:
        targets[f"conj {to_pretty(q)}"] = conjugate_of(q)
    tables = {}
    for label, target in targets.items():
        roots = roots_in_region(target, region, tolerances)
        tables[label] = pd.DataFrame({
            "re": [root.real for root in roots.roots],
            "im": [root.imag for root in roots.roots],
            "multiplicity": list(roots.multiplicities),
        })
    return tables


def plot_root_map(q: QuasiPolynomial, region: Rectangle, conjugate: bool = False, save_fig_as=None,
                  tolerances: Tolerances = DEFAULT_TOLERANCES):
    """
    Plots the roots of q as stars (and of its conjugate as circles) with the imaginary axis marked.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.
        region (Rectangle): The plotted window.
        conjugate (bool): Whether to plot the conjugate roots too.
        save_fig_as (str, optional): The file path to save the plot as a PNG image. Defaults to None.
        tolerances (Tolerances): Root-finding settings.

    Returns:
        matplotlib.figure.Figure: The figure.
    """
    tables = analyze_root_map(q, region, conjugate, tolerances)

    fig, ax = plt.subplots(figsize=(7, 7))
    fig.suptitle('Roots of the quasi-polynomial', fontsize=14)

    for (label, table), marker in zip(tables.items(), ['*', 'o']):
        sns.scatterplot(data=table, x='re', y='im', marker=marker, s=120, label=label, ax=ax)

    ax.axvline(0.0, color='black', linewidth=1)
    ax.set_xlim(region.re_min, region.re_max)
    ax.set_ylim(region.im_min, region.im_max)
    ax.set_xlabel('Re(s)')
    ax.set_ylabel('Im(s)')
    ax.legend(loc='upper left')

    plt.tight_layout(rect=[0, 0, 1, 0.96])

    if save_fig_as:
        plt.savefig(save_fig_as, format='png')

    plt.show()
    return fig
