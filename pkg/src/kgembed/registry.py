"""Named parameter store with per-parameter gradient accumulators."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError


@dataclass
class Param:
    """One trainable (or buffer) tensor plus its gradient accumulator.

    tag "dense" marks ordinary trainable parameters; tag "buffer" marks
    state such as batch-norm running statistics that is checkpointed but
    never touched by the optimizer or the L2 penalty.
    """

    name: str
    value: np.ndarray
    grad: np.ndarray = field(repr=False, default=None)
    tag: str = "dense"

    def __post_init__(self):
        if self.grad is None:
            self.grad = np.zeros_like(self.value)
        if self.grad.shape != self.value.shape:
            raise NumericalError(f"grad shape mismatch for {self.name}")


class ParamRegistry:
    """Ordered mapping name -> Param owned by exactly one training loop."""

    def __init__(self):
        self._params: dict[str, Param] = {}

    def add(self, name: str, value: np.ndarray, tag: str = "dense") -> Param:
        if name in self._params:
            raise ValueError(f"duplicate parameter name: {name}")
        p = Param(name, np.ascontiguousarray(value), tag=tag)
        self._params[name] = p
        return p

    def __getitem__(self, name: str) -> Param:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __iter__(self):
        return iter(self._params.values())

    def names(self):
        return list(self._params)

    def trainable(self):
        return [p for p in self._params.values() if p.tag != "buffer"]

    def zero_grads(self) -> None:
        for p in self._params.values():
            p.grad[...] = 0.0

    def l2_norm_sq(self) -> float:
        """Squared L2 norm of all trainable parameters."""
        return float(sum((p.value * p.value).sum() for p in self.trainable()))

    def snapshot(self) -> dict[str, np.ndarray]:
        return {name: p.value.copy() for name, p in self._params.items()}

    def load_values(self, values: dict[str, np.ndarray]) -> None:
        for name, arr in values.items():
            p = self._params[name]
            if p.value.shape != arr.shape:
                raise NumericalError(
                    f"shape mismatch loading {name}: {p.value.shape} vs {arr.shape}")
            p.value[...] = arr
