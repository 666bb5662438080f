"""Coupling profiles and hopping matrices for open free-fermion chains.

Sites carry 0-based indices ``0 .. N-1``.  The physical coordinate of site
``i`` is ``x(i) = i - (N - 1) / 2``, so the chain occupies ``[-L, L]`` with
``L = N / 2`` and the central link sits at ``x = 0``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

Kind = Literal["rainbow", "homogeneous", "custom"]


@dataclass(frozen=True)
class ChainSpec:
    """Lattice size, coupling profile and model parameters.

    Parameters
    ----------
    n_sites : int
        Number of sites ``N``; positive and even.
    h : float
        Inhomogeneity (inverse length).  ``h = 0`` is the uniform chain.
    J : float
        Overall energy scale.
    kind : {"rainbow", "homogeneous", "custom"}
        Which coupling profile to use.
    custom_couplings : sequence of float, optional
        The ``N - 1`` amplitudes for ``kind="custom"``.
    """

    n_sites: int
    h: float = 0.0
    J: float = 1.0
    kind: Kind = "rainbow"
    custom_couplings: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 2 or self.n_sites % 2:
            raise ValueError(f"n_sites must be an even integer >= 2, got {self.n_sites}")
        if not np.isfinite(self.h) or self.h < 0:
            raise ValueError(f"h must be >= 0, got {self.h}")
        if not np.isfinite(self.J) or self.J <= 0:
            raise ValueError(f"J must be > 0, got {self.J}")
        if self.kind not in ("rainbow", "homogeneous", "custom"):
            raise ValueError(f"unknown chain kind {self.kind!r}")
        if self.kind == "custom":
            if self.custom_couplings is None:
                raise ValueError("custom chain needs custom_couplings")
            t = np.asarray(self.custom_couplings, dtype=float)
            if t.shape != (self.n_sites - 1,):
                raise ValueError(
                    f"custom profile needs {self.n_sites - 1} couplings, got {t.size}"
                )
            if not np.all(np.isfinite(t)):
                raise ValueError("custom couplings must be finite reals")
            object.__setattr__(self, "custom_couplings", tuple(float(v) for v in t))

    @property
    def half_length(self) -> int:
        return self.n_sites // 2

    @property
    def alpha(self) -> float:
        """``exp(-h/2)``; the m-th link from the centre scales as ``alpha**(2m-1)``."""
        return float(np.exp(-self.h / 2))

    def couplings(self) -> np.ndarray:
        if self.kind == "rainbow":
            return rainbow_couplings(self)
        if self.kind == "homogeneous":
            return homogeneous_couplings(self)
        return np.array(self.custom_couplings, dtype=float)

    def site_positions(self) -> np.ndarray:
        return site_positions(self.n_sites)


def site_positions(n_sites: int) -> np.ndarray:
    """Physical coordinates ``i - (N-1)/2`` of the sites."""
    return np.arange(n_sites) - (n_sites - 1) / 2


def rainbow_couplings(spec: ChainSpec) -> np.ndarray:
    """Hopping amplitudes of the rainbow chain, left to right.

    The central link has amplitude ``J/2``; the link at distance ``m >= 1``
    from it (on either side) has ``(J/2) exp(-h (m - 1/2))``.
    """
    if spec.kind != "rainbow":
        raise ValueError(f"rainbow_couplings needs a rainbow spec, got {spec.kind!r}")
    L = spec.half_length
    m = np.abs(np.arange(spec.n_sites - 1) - (L - 1))
    t = 0.5 * spec.J * np.exp(-spec.h * (m - 0.5))
    t[m == 0] = 0.5 * spec.J
    return t


def homogeneous_couplings(spec: ChainSpec) -> np.ndarray:
    if spec.kind != "homogeneous":
        raise ValueError(
            f"homogeneous_couplings needs a homogeneous spec, got {spec.kind!r}"
        )
    return np.full(spec.n_sites - 1, 0.5 * spec.J)


def build_hopping_matrix(couplings: Sequence[float]) -> np.ndarray:
    """Dense symmetric tridiagonal ``T`` with zero diagonal.

    Single-body energies are the eigenvalues of ``-T``.
    """
    t = np.asarray(couplings, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("need a nonempty 1-D coupling list")
    return np.diag(t, 1) + np.diag(t, -1)


def couplings_of(T: np.ndarray) -> np.ndarray:
    """Nearest-neighbour amplitudes stored in a hopping matrix."""
    return np.diag(np.asarray(T), 1).copy()


def write_couplings_csv(couplings: Sequence[float], path: str | Path | None = None) -> str:
    """One-column CSV with header ``t``. Returns the text; writes it if *path* is given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"])
    for v in couplings:
        w.writerow([f"{float(v):.17g}"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_couplings_csv(path: str | Path) -> np.ndarray:
    rows = [
        r
        for r in csv.reader(Path(path).read_text().splitlines())
        if r and not r[0].startswith("#")
    ]
    if not rows or rows[0] != ["t"]:
        raise ValueError(f"{path}: expected a one-column CSV with header 't'")
    return np.array([float(r[0]) for r in rows[1:]])
