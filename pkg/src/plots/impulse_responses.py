from typing import Optional

import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns

from src.lti import impulse_response_frame
from src.phi import FirBlock


def plot_impulse_response(block: FirBlock, t_max: Optional[float] = None, samples: int = 1000, save_fig_as=None):
    """
    Plots the impulse response of an FIR block with the end of its support marked.

    Args:
        block (FirBlock): The FIR block.
        t_max (float, optional): Right end of the time axis. Defaults to twice the support end.
        samples (int): Number of time samples.
        save_fig_as (str, optional): The file path to save the plot as a PNG image. Defaults to None.

    Returns:
        matplotlib.figure.Figure: The figure.
    """
    support = float(block.support_end)
    t_max = (2.0 * support if support > 0 else 1.0) if t_max is None else t_max
    frame = impulse_response_frame(block.delay_sum, np.linspace(0.0, t_max, samples))

    fig, ax = plt.subplots(figsize=(10, 5))
    fig.suptitle('Impulse response of the FIR block', fontsize=14)

    sns.lineplot(data=frame, x='t', y='f', color='navy', ax=ax)
    ax.axvline(support, color='crimson', linestyle='--', label=f'support end {support:g}')
    ax.set_xlabel('t')
    ax.set_ylabel('f(t)')
    ax.legend()

    plt.tight_layout(rect=[0, 0, 1, 0.95])

    if save_fig_as:
        plt.savefig(save_fig_as, format='png')

    plt.show()
    return fig
