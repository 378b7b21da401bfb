"""Module provides plotting of polarization time series."""

from typing import Dict, Sequence

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_series(t: Sequence[float], series: Dict[str, Sequence[float]], size: int = 5, fontsize: int = None) -> tuple:
    """
    Plot time series in a column, one panel per series.
    :param t: sample times.
    :param series: values keyed by panel title.
    :param size: height of one panel.
    :param fontsize: size of title font.
    :return: figure and axes.
    """
    nrows = len(series)
    fig, axes = plt.subplots(nrows, 1, figsize=(3 * size, nrows * size), sharex=True, squeeze=False)
    for ax, (title, values) in zip(axes.flatten(), series.items()):
        ax.plot(np.asarray(t), np.asarray(values), linewidth=0.8)
        ax.set_title(title, fontsize=fontsize)
        ax.grid(alpha=0.3)
    axes[-1, 0].set_xlabel("t")
    return fig, axes
