"""SGD and Adam update rules over a ParamRegistry.

The L2 penalty is applied inside the step (g + 2*l2*theta) rather than
materialized in the loss; training code adds the l2*||Theta||^2 term to
the logged loss separately so the reported objective matches.
"""
from __future__ import annotations

import numpy as np

from .registry import ParamRegistry


class Sgd:
    def __init__(self, lr: float, l2: float = 0.0):
        if lr <= 0:
            raise ValueError("learning rate must be positive")
        if l2 < 0:
            raise ValueError("l2 weight must be nonnegative")
        self.lr = lr
        self.l2 = l2

    def step(self, registry: ParamRegistry) -> None:
        for p in registry.trainable():
            if self.l2:
                p.value -= self.lr * (p.grad + 2.0 * self.l2 * p.value)
            else:
                p.value -= self.lr * p.grad


class Adam:
    def __init__(self, lr: float, l2: float = 0.0,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        if lr <= 0:
            raise ValueError("learning rate must be positive")
        if l2 < 0:
            raise ValueError("l2 weight must be nonnegative")
        self.lr = lr
        self.l2 = l2
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m: dict[str, np.ndarray] = {}
        self._v: dict[str, np.ndarray] = {}

    def step(self, registry: ParamRegistry) -> None:
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        bias1 = 1.0 - b1 ** self.t
        bias2 = 1.0 - b2 ** self.t
        for p in registry.trainable():
            g = p.grad
            if self.l2:
                g = g + 2.0 * self.l2 * p.value
            m = self._m.setdefault(p.name, np.zeros_like(p.value))
            v = self._v.setdefault(p.name, np.zeros_like(p.value))
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * g * g
            p.value -= self.lr * (m / bias1) / (np.sqrt(v / bias2) + self.eps)


def make_optimizer(rule: str, lr: float, l2: float = 0.0):
    if rule == "sgd":
        return Sgd(lr, l2)
    if rule == "adam":
        return Adam(lr, l2)
    raise ValueError(f"unknown optimizer rule: {rule}")
