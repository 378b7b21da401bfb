"""Module provides signal models that are fitted to polarization time series."""

from typing import Sequence

import torch
import torch.nn as nn


class TwoCosineModel(nn.Module):
    """Sum of two oscillations a_k cos(f_k t) + b_k sin(f_k t) with frequencies near their seeds."""
    def __init__(
        self,
        seed_frequencies: Sequence[float],
        cos_amplitudes: Sequence[float],
        sin_amplitudes: Sequence[float]
    ):
        """
        Initialize an instance.
        :param seed_frequencies: initial angular frequencies, also the scale of the frequency parameters.
        :param cos_amplitudes: initial cosine amplitudes.
        :param sin_amplitudes: initial sine amplitudes.
        """
        super(TwoCosineModel, self).__init__()
        self.register_buffer("seeds", torch.as_tensor(seed_frequencies, dtype=torch.float64))
        # relative offsets keep the frequency parameters O(1) whatever the time scale
        self.offsets = nn.Parameter(torch.zeros(len(seed_frequencies), dtype=torch.float64))
        self.cos_amplitudes = nn.Parameter(torch.as_tensor(cos_amplitudes, dtype=torch.float64).clone())
        self.sin_amplitudes = nn.Parameter(torch.as_tensor(sin_amplitudes, dtype=torch.float64).clone())

    @property
    def frequencies(self) -> torch.Tensor:
        """
        Current angular frequencies.
        :return: tensor of frequencies.
        """
        return self.seeds * (1 + self.offsets)

    def forward(self, t: torch.Tensor) -> torch.Tensor:
        """
        Evaluate the signal.
        :param t: sample times.
        :return: signal values.
        """
        phases = t[:, None] * self.frequencies[None, :]
        return (torch.cos(phases) * self.cos_amplitudes + torch.sin(phases) * self.sin_amplitudes).sum(dim=1)
