"""Dense numeric kernels with explicit forward/backward pairs.

Every kernel is a pure function over numpy arrays. Backward functions
take the saved forward inputs (or outputs, when cheaper) plus the
upstream gradient and return gradients for each input; callers chain
them by hand and accumulate into parameter tables via scatter_add_rows.
"""
from __future__ import annotations

import numpy as np

from .errors import NumericalError


def assert_finite(name: str, *arrays: np.ndarray) -> None:
    """Raise NumericalError if any array contains NaN or Inf."""
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NumericalError(f"non-finite values produced by {name}")


# ---------------------------------------------------------------------------
# linear maps

def matvec(w: np.ndarray, x: np.ndarray) -> np.ndarray:
    """w (m, n) @ x (n,) -> (m,)."""
    return w @ x


def matvec_backward(w, x, dy):
    """Returns (dw, dx) for y = w @ x."""
    return np.outer(dy, x), w.T @ dy


def linear(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched affine map: x (B, n), w (m, n), b (m,) -> (B, m)."""
    return x @ w.T + b


def linear_backward(x, w, dy):
    """Returns (dx, dw, db) for y = x @ w.T + b."""
    return dy @ w, dy.T @ x, dy.sum(axis=0)


# ---------------------------------------------------------------------------
# elementwise nonlinearities

def relu(x):
    return np.maximum(x, 0.0)


def relu_backward(x, dy):
    # subgradient at exactly 0 is taken as 0
    return dy * (x > 0)


def tanh(x):
    return np.tanh(x)


def tanh_backward(y, dy):
    """Backward from the forward output y = tanh(x)."""
    return dy * (1.0 - y * y)


def sigmoid(x):
    """Numerically stable logistic function."""
    out = np.empty_like(x, dtype=np.result_type(x, np.float32))
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def sigmoid_backward(y, dy):
    """Backward from the forward output y = sigmoid(x)."""
    return dy * y * (1.0 - y)


# ---------------------------------------------------------------------------
# elementwise arithmetic (trivial, kept for a uniform kernel inventory)

def add_backward(dy):
    return dy, dy


def sub_backward(dy):
    return dy, -dy


def mul_backward(a, b, dy):
    return dy * b, dy * a


# ---------------------------------------------------------------------------
# concat / split

def concat(a, b, axis=-1):
    return np.concatenate([a, b], axis=axis)


def concat_backward(a, b, dy, axis=-1):
    n = a.shape[axis]
    return np.take(dy, range(n), axis=axis), np.take(dy, range(n, dy.shape[axis]), axis=axis)


# ---------------------------------------------------------------------------
# masked softmax over the last axis

def masked_softmax(logits: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Softmax over slots where mask is True; masked slots get exactly 0.

    Rows with no valid slot return an all-zero row (the caller decides
    what an empty attention pool means).
    """
    m = mask.astype(bool)
    # subtract the max over valid slots for stability; rows without any
    # valid slot keep 0 and fall out below
    shifted = np.where(m, logits, -np.inf)
    row_max = shifted.max(axis=-1, keepdims=True)
    row_max = np.where(np.isfinite(row_max), row_max, 0.0)
    e = np.exp(np.where(m, logits - row_max, 0.0)) * m
    denom = e.sum(axis=-1, keepdims=True)
    return np.divide(e, denom, out=np.zeros_like(e), where=denom > 0)


def masked_softmax_backward(p: np.ndarray, dp: np.ndarray) -> np.ndarray:
    """Full Jacobian-vector product; masked slots (p == 0) get zero grad."""
    inner = (p * dp).sum(axis=-1, keepdims=True)
    return p * (dp - inner)


# ---------------------------------------------------------------------------
# distances over the last axis

def l1_distance(a, b):
    return np.abs(a - b).sum(axis=-1)


def l1_distance_backward(a, b, ds):
    g = np.sign(a - b) * np.expand_dims(ds, -1)
    return g, -g


def l2sq_distance(a, b):
    d = a - b
    return (d * d).sum(axis=-1)


def l2sq_distance_backward(a, b, ds):
    g = 2.0 * (a - b) * np.expand_dims(ds, -1)
    return g, -g


# ---------------------------------------------------------------------------
# scatter accumulation into embedding tables

def scatter_add_rows(table: np.ndarray, rows: np.ndarray, values: np.ndarray) -> None:
    """table[rows] += values with correct handling of duplicate rows.

    Equivalent to np.add.at but implemented with a sort + reduceat pass,
    which is much faster for the batch sizes used in training.
    """
    rows = np.asarray(rows).ravel()
    values = values.reshape(len(rows), -1)
    if len(rows) == 0:
        return
    order = np.argsort(rows, kind="stable")
    sorted_rows = rows[order]
    sorted_vals = values[order]
    boundaries = np.flatnonzero(np.r_[True, sorted_rows[1:] != sorted_rows[:-1]])
    sums = np.add.reduceat(sorted_vals, boundaries, axis=0)
    table[sorted_rows[boundaries]] += sums.reshape((-1,) + table.shape[1:])
