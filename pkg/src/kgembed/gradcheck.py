"""Finite-difference validation of hand-written backward passes."""
from __future__ import annotations

import numpy as np

from .registry import ParamRegistry


def relative_error(analytic: float, numeric: float) -> float:
    """|a - n| scaled by max(1, |a|, |n|); absolute for small gradients."""
    return abs(analytic - numeric) / max(1.0, abs(analytic), abs(numeric))


def numerical_grad(loss_fn, value: np.ndarray, coords, step: float = 1e-5):
    """Central-difference gradient of loss_fn at selected flat coordinates.

    loss_fn takes no arguments and must see mutations of `value`.
    """
    flat = value.reshape(-1)
    out = []
    for c in coords:
        orig = flat[c]
        flat[c] = orig + step
        up = loss_fn()
        flat[c] = orig - step
        down = loss_fn()
        flat[c] = orig
        out.append((up - down) / (2.0 * step))
    return np.array(out)


def grad_check(loss_fn, registry: ParamRegistry, params=None,
               coords_per_param: int = 10, step: float = 1e-5,
               rng: np.random.Generator | None = None) -> dict:
    """Compare accumulated analytic gradients against central differences.

    loss_fn() must zero the registry's gradients, run a deterministic
    forward + backward pass, and return the scalar loss. Returns a report
    with per-parameter and overall max relative error.
    """
    rng = rng or np.random.default_rng(0)
    names = params if params is not None else [p.name for p in registry.trainable()]

    loss_fn()  # populate analytic gradients
    analytic = {n: registry[n].grad.copy() for n in names}

    report = {"per_param": {}, "max_rel_error": 0.0}
    for n in names:
        p = registry[n]
        size = p.value.size
        k = min(coords_per_param, size)
        coords = rng.choice(size, size=k, replace=False) if size > k else np.arange(size)
        numeric = numerical_grad(loss_fn, p.value, coords, step=step)
        errs = [relative_error(analytic[n].reshape(-1)[c], num)
                for c, num in zip(coords, numeric)]
        worst = max(errs) if errs else 0.0
        report["per_param"][n] = worst
        report["max_rel_error"] = max(report["max_rel_error"], worst)

    loss_fn()  # leave gradients in a consistent state
    return report
