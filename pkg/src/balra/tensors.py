"""Dense multilinear algebra kernels.

Conventions used throughout the package:

* Tensors are ``numpy.float64`` arrays stored in C (row-major) order, i.e.
  the flat layout enumerates the last index fastest.
* The mode-``k`` unfolding puts mode ``k`` on the rows and the remaining
  modes on the columns **in increasing mode order**, again with the last
  of those modes varying fastest.  Equivalently::

      unfold(t, k) = t.transpose([k] + other_modes).reshape(t.shape[k], -1)

  With this convention the mode-``k`` unfolding of a Tucker model
  ``G x_1 X_1 ... x_d X_d`` is ``X_k  G_(k)  kron(X_j, j != k)^T`` with the
  Kronecker factors taken in increasing ``j``, and the CP analogue uses the
  Khatri-Rao product in increasing mode order.

All kernels are pure functions and run single-threaded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class FactorSet:
    """An ordered collection of factor matrices, optionally with a core.

    For CP/NMF-style models all factors share the same column count and
    ``core`` is ``None``.  For Tucker-style models the core extent along
    mode ``i`` must equal the column count of ``factors[i]``.
    """

    factors: list[np.ndarray]
    core: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.factors = [np.asarray(x, dtype=np.float64) for x in self.factors]
        if self.core is not None:
            self.core = np.asarray(self.core, dtype=np.float64)
        for i, x in enumerate(self.factors):
            if x.ndim != 2:
                raise ValueError(f"factor {i} is not a matrix (ndim={x.ndim})")
        if self.core is None:
            ranks = {x.shape[1] for x in self.factors}
            if len(ranks) > 1:
                raise ValueError(f"CP factors must share a column count, got {ranks}")
        else:
            if self.core.ndim != len(self.factors):
                raise ValueError("core order must equal the number of factors")
            for i, x in enumerate(self.factors):
                if self.core.shape[i] != x.shape[1]:
                    raise ValueError(
                        f"core extent {self.core.shape[i]} on mode {i} does not match "
                        f"factor column count {x.shape[1]}"
                    )

    @property
    def rank(self) -> int:
        return self.factors[0].shape[1]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(x.shape[0] for x in self.factors)

    def copy(self) -> "FactorSet":
        return FactorSet(
            [x.copy() for x in self.factors],
            None if self.core is None else self.core.copy(),
        )

    def reconstruct(self) -> np.ndarray:
        if self.core is None:
            return cp_reconstruct(self)
        return tucker_reconstruct(self)


def _check_mode(t: np.ndarray, mode: int) -> None:
    if not 0 <= mode < t.ndim:
        raise ValueError(f"mode {mode} out of range for order-{t.ndim} tensor")


def unfold(t: np.ndarray, mode: int) -> np.ndarray:
    """Matricize ``t`` along ``mode`` (rows = mode, columns = other modes
    in increasing order, last varying fastest)."""
    t = np.asarray(t)
    _check_mode(t, mode)
    order = [mode] + [m for m in range(t.ndim) if m != mode]
    return np.transpose(t, order).reshape(t.shape[mode], -1)


def fold(m: np.ndarray, mode: int, shape: tuple[int, ...]) -> np.ndarray:
    """Inverse of :func:`unfold` for a tensor of extents ``shape``."""
    shape = tuple(shape)
    if not 0 <= mode < len(shape):
        raise ValueError(f"mode {mode} out of range for shape {shape}")
    order = [mode] + [k for k in range(len(shape)) if k != mode]
    moved = np.asarray(m).reshape([shape[k] for k in order])
    return np.transpose(moved, np.argsort(order))


def mode_product(t: np.ndarray, u: np.ndarray, mode: int) -> np.ndarray:
    """Contract matrix ``u`` with ``t`` along ``mode``: result extent on
    ``mode`` becomes ``u.shape[0]``."""
    t = np.asarray(t)
    u = np.asarray(u)
    _check_mode(t, mode)
    if u.ndim != 2 or u.shape[1] != t.shape[mode]:
        raise ValueError(
            f"matrix of shape {u.shape} cannot contract mode {mode} "
            f"of extent {t.shape[mode]}"
        )
    return np.moveaxis(np.tensordot(u, t, axes=(1, mode)), 0, mode)


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices, (m x n) o (p x q) -> (mp x nq)."""
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    return np.kron(a, b)


def khatri_rao(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Columnwise Kronecker product; column ``q`` is ``kron(a[:,q], b[:,q])``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise ValueError(
            f"khatri_rao needs equal column counts, got {a.shape} and {b.shape}"
        )
    return (a[:, None, :] * b[None, :, :]).reshape(a.shape[0] * b.shape[0], a.shape[1])


def khatri_rao_list(mats: list[np.ndarray]) -> np.ndarray:
    """Khatri-Rao product of several matrices, left to right."""
    if not mats:
        raise ValueError("khatri_rao_list needs at least one matrix")
    out = mats[0]
    for m in mats[1:]:
        out = khatri_rao(out, m)
    return out


def kronecker_list(mats: list[np.ndarray]) -> np.ndarray:
    if not mats:
        raise ValueError("kronecker_list needs at least one matrix")
    out = mats[0]
    for m in mats[1:]:
        out = kronecker(out, m)
    return out


def lp_norm_pow(x: np.ndarray, p: float) -> float:
    """Sum of ``|x_k|^p`` (the p-th power of the lp norm), ``p > 0``."""
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    x = np.asarray(x)
    if p == 1:
        return float(np.sum(np.abs(x)))
    if p == 2:
        return float(np.sum(np.square(x)))
    return float(np.sum(np.abs(x) ** p))


def cp_reconstruct(f: FactorSet) -> np.ndarray:
    """Sum of rank-one outer products of the factor columns."""
    subs = [chr(ord("a") + i) + "z" for i in range(len(f.factors))]
    spec = ",".join(subs) + "->" + "".join(s[0] for s in subs)
    return np.einsum(spec, *f.factors, optimize=True)


def tucker_reconstruct(f: FactorSet) -> np.ndarray:
    """Core contracted with every factor along its mode."""
    if f.core is None:
        raise ValueError("tucker_reconstruct needs a core tensor")
    out = f.core
    for i, x in enumerate(f.factors):
        out = mode_product(out, x, i)
    return out


def superdiagonal(order: int, r: int) -> np.ndarray:
    """Order-``order`` tensor with ones on the superdiagonal (CP core)."""
    core = np.zeros((r,) * order)
    idx = np.arange(r)
    core[tuple(idx for _ in range(order))] = 1.0
    return core
