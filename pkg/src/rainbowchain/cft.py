"""Closed-form continuum predictions for the rainbow chain and their calibration.

Coordinates are physical: the chain covers ``x in [-L, L]`` with lattice
spacing 1, and the cut after ``ell`` sites of a ``2L``-site chain sits at
``x = ell - L``.  Additive constants are non-universal and are always fitted
when comparing with lattice data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from ._io import csv_text, emit

LN2 = np.log(2.0)
SMALL_H = 1e-8


@dataclass
class CftParams:
    c: float = 1.0
    c_prime: float = 0.0
    E_n: dict = field(default_factory=dict)
    L: float = 1.0
    h: float = 0.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("central charge must be positive")

    @property
    def beta_eff(self) -> float:
        return 2 * np.pi / self.h if self.h > 0 else float("inf")

    @property
    def T_eff(self) -> float:
        return self.h / (2 * np.pi)

    @property
    def z(self) -> float:
        return self.h * self.L

    @property
    def L_tilde(self) -> float:
        return float(tilde_length(self.L, self.h))


def _log_expm1_over_h(a, h):
    """``ln((e^{h a} - 1) / h)`` without overflow; ``ln a`` at ``h -> 0``."""
    a = np.asarray(a, dtype=float)
    if h < SMALL_H:
        return np.log(a)
    ha = h * a
    with np.errstate(divide="ignore"):
        big = ha > 30
        out = np.where(big, ha + np.log1p(-np.exp(-np.minimum(ha, 700))), 0.0)
        small = np.log(np.expm1(np.where(big, 1.0, ha)))
        return np.where(big, out, small) - np.log(h)


def tilde_length(L, h):
    """Image ``(e^{hL} - 1) / h`` of the half-length under the conformal map."""
    L = np.asarray(L, dtype=float)
    return L if h < SMALL_H else np.expm1(h * L) / h


def conformal_map(x, h: float, L: float):
    """``sign(x) (e^{h|x|} - 1) / h``; the identity for ``h < 1e-8``."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > L * (1 + 1e-12)):
        raise ValueError(f"x must lie in [-L, L] with L={L}")
    if h < 0:
        raise ValueError("h must be >= 0")
    if h < SMALL_H:
        return x.copy() if x.ndim else float(x)
    out = np.sign(x) * np.expm1(h * np.abs(x)) / h
    return out if out.ndim else float(out)


def sigma(x, h: float):
    """Conformal factor exponent, ``e^{sigma} = e^{-h|x|}``."""
    return -h * np.abs(np.asarray(x, dtype=float))


def halfchain_entropy_prediction(L, h: float, params: CftParams | None = None):
    """``(c/6) ln((e^{hL} - 1)/h) + c'``, reducing to ``(c/6) ln L + c'`` at ``h = 0``."""
    p = params or CftParams()
    L = np.asarray(L, dtype=float)
    if np.any(L <= 0):
        raise ValueError("L must be positive")
    if h < 0:
        raise ValueError("h must be >= 0")
    out = p.c / 6 * _log_expm1_over_h(L, h) + p.c_prime
    return out if out.ndim else float(out)


def _mapped_ratio(x, L: float, h: float):
    """``x~ / L~``, computed without forming ``e^{hL}``."""
    x = np.asarray(x, dtype=float)
    if h < SMALL_H:
        return x / L
    with np.errstate(divide="ignore"):
        r = np.exp(_log_expm1_over_h(np.abs(x), h) - _log_expm1_over_h(L, h))
    return np.sign(x) * r


def _renyi_prefactor(n: float) -> float:
    if not n > 0:
        raise ValueError("Renyi order must be positive")
    return (n + 1) / (12 * n)


def edge_log_y(x, L: float, h: float):
    """``ln Y(x)`` for the block ``[-L, x]``.

    ``Y = 8 e^{-h|x|} (L~/pi) cos(pi x~ / (2 L~))`` with ``L~`` the mapped
    half-length, so that ``h -> 0`` gives ``8 (L/pi) cos(pi x / 2L)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= L):
        raise ValueError("edge prediction needs |x| < L (Y vanishes at the ends)")
    ratio = np.abs(_mapped_ratio(x, L, h))
    return (
        np.log(8.0)
        + sigma(x, h)
        + _log_expm1_over_h(L, h)
        - np.log(np.pi)
        + np.log(np.cos(0.5 * np.pi * ratio))
    )


def edge_block_prediction(x, n: float, L: float, h: float):
    """Renyi-``n`` entropy of the edge block ``[-L, x]`` up to an additive constant."""
    out = _renyi_prefactor(n) * edge_log_y(x, L, h)
    return out if np.ndim(out) else float(out)


def bulk_log_y(x1, x2, L: float, h: float):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if np.any(x1 >= x2):
        raise ValueError("bulk block needs x1 < x2")
    if np.any(np.abs(x1) >= L) or np.any(np.abs(x2) >= L):
        raise ValueError("bulk block endpoints must satisfy |x| < L")
    t1 = _mapped_ratio(x1, L, h)
    t2 = _mapped_ratio(x2, L, h)
    log_lt = _log_expm1_over_h(L, h)
    return (
        sigma(x1, h)
        + sigma(x2, h)
        + np.log(16.0)
        + 2 * log_lt
        - 2 * np.log(np.pi)
        - np.log(np.cos(np.pi * (t1 + t2) / 4))
        + 2 * np.log(np.abs(np.sin(np.pi * (t1 - t2) / 4)))
        + np.log(np.cos(np.pi * t1 / 2))
        + np.log(np.cos(np.pi * t2 / 2))
    )


def bulk_block_prediction(x1, x2, n: float, L: float, h: float, E_n: float = 0.0):
    """Renyi-``n`` entropy of the block ``[x1, x2]``: ``((n+1)/12n) ln 4Y + E_n``."""
    out = _renyi_prefactor(n) * (np.log(4.0) + bulk_log_y(x1, x2, L, h)) + E_n
    return out if np.ndim(out) else float(out)


def thermofield_spacing_prediction(L: float, h: float) -> float:
    """Entanglement level spacing ``2 pi^2 / (h L)`` of the thermofield picture."""
    if h <= 0:
        raise ValueError("thermofield spacing is undefined at h = 0")
    if L <= 0:
        raise ValueError("L must be positive")
    return 2 * np.pi**2 / (h * L)


def local_coupling(x, h: float, J: float = 1.0):
    """Local hopping scale ``(J/2) e^{-h|x|}``."""
    return 0.5 * J * np.exp(-h * np.abs(np.asarray(x, dtype=float)))


def crossover_position(T_phys: float, L: float, h: float, J: float = 1.0) -> float:
    """``x0`` solving ``T = (J/2) e^{-h x0}``, clamped to ``[0, L]``."""
    if not T_phys > 0:
        raise ValueError("temperature must be positive")
    if h <= 0:
        raise ValueError("x0 is undefined at h = 0")
    if np.isinf(T_phys):
        return 0.0
    return float(np.clip(np.log(J / (2 * T_phys)) / h, 0.0, L))


def finite_T_profile(x, T_phys: float, L: float, h: float, J: float = 1.0):
    """Three-region entropy of ``[-L, x]`` at physical temperature ``T_phys``.

    Outside ``[-x0, x0]`` the chain is effectively at infinite temperature
    (``ln 2`` per site); inside it keeps the zero-temperature slope ``h/6``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > L * (1 + 1e-12)):
        raise ValueError("x must lie in [-L, L]")
    x0 = crossover_position(T_phys, L, h, J)
    ax = np.abs(x)
    out = np.where(
        x <= -x0,
        (L - ax) * LN2,
        np.where(
            x < x0,
            (L - x0) * LN2 + (x0 - ax) * h / 6,
            (L - 2 * x0 + x) * LN2,
        ),
    )
    return out if out.ndim else float(out)


def smooth_part(values) -> np.ndarray:
    """Remove even/odd ripples with a (1, 2, 1)/4 filter; end points kept as is."""
    v = np.asarray(values, dtype=float)
    out = v.copy()
    if v.size >= 3:
        out[1:-1] = 0.25 * (v[:-2] + 2 * v[1:-1] + v[2:])
    return out


class ConstantFit(NamedTuple):
    c: float  # multiplies the model; 1 when not fitted
    constant: float
    rms: float
    residuals: np.ndarray


def fit_constants(observed, model, fit_scale: bool = False) -> ConstantFit:
    """Least squares ``observed ~ c * model + constant``.

    With ``fit_scale=False`` only the additive constant is fitted and ``c = 1``.
    ``model`` should be the prediction evaluated at ``c = 1`` with zero constant.
    """
    y = np.asarray(observed, dtype=float)
    g = np.asarray(model, dtype=float)
    if y.shape != g.shape:
        raise ValueError("observed and model must have the same shape")
    if y.size < 4:
        raise ValueError("need at least 4 data points")
    if fit_scale:
        A = np.column_stack([g, np.ones_like(g)])
        if np.linalg.matrix_rank(A) < 2:
            raise ValueError("rank-deficient fit: model is constant over the data")
        (c, k), *_ = np.linalg.lstsq(A, y, rcond=None)
    else:
        c, k = 1.0, float(np.mean(y - g))
    r = y - (c * g + k)
    return ConstantFit(float(c), float(k), float(np.sqrt(np.mean(r**2))), r)


def fit_halfchain(L_values, S_values, h: float, fit_c: bool = True) -> tuple[CftParams, ConstantFit]:
    """Calibrate ``c`` and ``c'`` of the half-chain prediction against data."""
    L_values = np.asarray(L_values, dtype=float)
    g = halfchain_entropy_prediction(L_values, h, CftParams(c=1.0, c_prime=0.0))
    fit = fit_constants(S_values, g, fit_scale=fit_c)
    if not fit.c > 0:
        raise ValueError(f"fit produced a non-positive central charge {fit.c}")
    return CftParams(c=fit.c, c_prime=fit.constant, L=float(L_values.max()), h=h), fit


def prediction_csv(x, values, path: str | Path | None = None, comment: str | None = None) -> str:
    return emit(csv_text(["x", "S_pred"], zip(np.ravel(x), np.ravel(values)), comment), path)
