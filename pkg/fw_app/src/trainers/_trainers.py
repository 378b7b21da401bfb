"""
Module provides custom trainers that are used to fit
oscillation models to polarization time series.
"""

import logging
from typing import Callable

import torch
import torch.nn as nn
import torch.nn.functional as F
import torch.optim as optim

logger = logging.getLogger(__name__)


class Trainer:
    """Trainer that fits a signal model to sampled data by least squares."""
    def __init__(self, model: nn.Module, device: str = "cpu"):
        """
        Initialize an instance.
        :param model: signal model whose forward maps sample times to values.
        :param device: device to use (e.g. "cpu", "cuda").
        """
        self.model = model.to(device=device, dtype=torch.float64)
        self.device = device
        self._counter = None
        self._loss = None

    @property
    def loss(self) -> float:
        """
        Mean squared residual of the last evaluation.
        :return: loss value.
        """
        return float(self._loss.item()) if self._loss is not None else float("inf")

    def fit(
        self,
        t: torch.Tensor,
        y: torch.Tensor,
        max_iter: int = 50,
        verbose: int = None
    ) -> nn.Module:
        """
        Fit the model to the samples.
        :param t: sample times.
        :param y: sample values.
        :param max_iter: maximum number of optimizer steps.
        :param verbose: frequency (in iterations) to log the loss.
        :return: fitted model.
        """
        self._init_params()

        t = t.to(device=self.device, dtype=torch.float64)
        y = y.to(device=self.device, dtype=torch.float64)

        optimizer = self._get_optimizer(self.model)
        closure_fn = self._get_closure_fn(t, y, optimizer, verbose)

        while self._counter < max_iter:
            optimizer.step(closure_fn)

        # the last closure call may be a rejected line-search trial
        with torch.no_grad():
            self._loss = F.mse_loss(self.model(t), y)
        if verbose:
            self._print_metrics()

        return self.model

    def _init_params(self) -> None:
        """
        Set initial state of internal parameters.
        """
        self._counter = 0
        self._loss = None

    @staticmethod
    def _get_optimizer(model: nn.Module) -> optim.Optimizer:
        """
        Create the optimizer.
        :param model: model to be fitted.
        :return: optimizer to use.
        """
        return optim.LBFGS(model.parameters(), line_search_fn="strong_wolfe", tolerance_grad=1e-9,
                           tolerance_change=1e-16, history_size=20)

    def _get_closure_fn(
        self,
        t: torch.Tensor,
        y: torch.Tensor,
        optimizer: optim.Optimizer,
        verbose: int = None
    ) -> Callable:
        """
        Create a closure function that is needed by the optimizer.
        :param t: sample times.
        :param y: sample values.
        :param optimizer: optimizer to use.
        :param verbose: frequency (in iterations) to log the loss.
        :return: closure function.
        """
        def closure_fn() -> torch.Tensor:
            optimizer.zero_grad()
            loss = F.mse_loss(self.model(t), y)
            loss.backward()
            self._loss = loss.detach()

            if verbose and self._counter % verbose == 0:
                self._print_metrics()
            self._counter += 1

            return loss

        return closure_fn

    def _print_metrics(self) -> None:
        """
        Log current fit metrics.
        """
        logger.debug("iteration %d, loss %.3e", self._counter, self.loss)
