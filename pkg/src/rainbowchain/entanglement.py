"""Block entanglement from correlation matrices.

For a Gaussian number-conserving state every entanglement quantity of a block
follows from the eigenvalues ``nu`` of the restricted correlation matrix.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import xlogy

from ._io import csv_text, emit

NU_CLAMP = 1e-14
SATURATED_ENERGY = 30.0


def _vn(nu: np.ndarray) -> float:
    nu = np.clip(nu, 0.0, 1.0)
    return float(-(xlogy(nu, nu) + xlogy(1 - nu, 1 - nu)).sum())


def renyi_from_nu(nu: np.ndarray, n: float) -> float:
    """Order-``n`` Renyi entropy; ``n = 1`` is the von Neumann entropy."""
    nu = np.clip(np.asarray(nu, dtype=float), 0.0, 1.0)
    if n == 1:
        return _vn(nu)
    if n <= 0:
        raise ValueError(f"Renyi order must be positive, got {n}")
    if np.isinf(n):
        return float(-np.log(np.maximum(nu, 1 - nu)).sum())
    return float(np.log(nu**n + (1 - nu) ** n).sum() / (1 - n))


@dataclass
class EntanglementData:
    block: tuple[int, ...]
    nu: np.ndarray
    single_body_energies: np.ndarray  # ascending
    f0: float
    vn_entropy: float
    renyi: dict = field(default_factory=dict)

    def level_probabilities(self) -> np.ndarray:
        """Occupation probabilities ``nu`` of the entanglement modes, in energy order."""
        return 1.0 / (1.0 + np.exp(self.single_body_energies))


def _check_block(C: np.ndarray, block) -> list[int]:
    idx = [int(i) for i in block]
    if not idx:
        raise ValueError("block must be nonempty")
    n = C.shape[0]
    if min(idx) < 0 or max(idx) >= n:
        raise IndexError(f"block {idx} out of range for N={n}")
    if len(set(idx)) != len(idx):
        raise ValueError("block sites must be distinct")
    return idx


def block_occupations(C: np.ndarray, block) -> np.ndarray:
    idx = _check_block(C, block)
    return np.linalg.eigvalsh(C[np.ix_(idx, idx)])


def block_entanglement(
    C: np.ndarray, block, orders: Sequence[float] = (1,)
) -> EntanglementData:
    """Entropies and entanglement spectrum of *block*.

    The eigenvalues are clamped to ``[1e-14, 1 - 1e-14]`` only when mapped to
    entanglement energies ``ln((1-nu)/nu)``; entropies use the raw values.
    """
    C = np.asarray(C)
    idx = _check_block(C, block)
    nu = np.linalg.eigvalsh(C[np.ix_(idx, idx)])
    p = np.clip(nu, NU_CLAMP, 1 - NU_CLAMP)
    q = np.clip(1 - nu, NU_CLAMP, 1 - NU_CLAMP)
    eps = np.sort(np.log(q) - np.log(p))
    f0 = float(np.logaddexp(0.0, -eps).sum())
    svn = _vn(nu)
    renyi = {n: (svn if n == 1 else renyi_from_nu(nu, n)) for n in orders}
    return EntanglementData(tuple(idx), nu, eps, f0, svn, renyi)


def block_entropy(C: np.ndarray, block, n: float = 1) -> float:
    return renyi_from_nu(block_occupations(np.asarray(C), block), n)


@dataclass
class EntropyProfile:
    """Entropies of the left blocks ``[0, ell)`` for ``ell = 1 .. N-1``."""

    order: float
    ell: np.ndarray
    values: np.ndarray
    family: str = "left"

    @property
    def n_sites(self) -> int:
        return int(self.ell[-1]) + 1

    def cut_positions(self) -> np.ndarray:
        """Physical coordinate of each cut, ``x = ell - N/2``."""
        return self.ell - self.n_sites / 2

    def to_csv(self, path: str | Path | None = None, comment: str | None = None) -> str:
        return emit(csv_text(["ell", "S"], zip(self.ell, self.values), comment), path)


def entropy_profile(C: np.ndarray, order: float = 1) -> EntropyProfile:
    C = np.asarray(C)
    n = C.shape[0]
    ell = np.arange(1, n)
    vals = np.array([block_entropy(C, range(l), order) for l in ell])
    return EntropyProfile(order=order, ell=ell, values=vals)


class SpacingFit(NamedTuple):
    delta: float
    goodness: float
    ladder: str  # "half-integer" or "integer"
    n_used: int
    positions: np.ndarray | None = None  # ladder value paired with each sorted energy

    @property
    def flagged(self) -> bool:
        return not np.isfinite(self.goodness)


def _ladders(m: int) -> dict[str, list[np.ndarray]]:
    k = np.arange(m, dtype=float)
    centred = k - (m - 1) / 2
    shifted = [centred - 0.5, centred + 0.5]
    if m % 2 == 0:
        return {"half-integer": [centred], "integer": shifted}
    return {"integer": [centred], "half-integer": shifted}


def entanglement_spacing(data: EntanglementData) -> SpacingFit:
    """Fit the single-body entanglement energies to an equally spaced ladder.

    Energies with ``|eps| > 30`` (saturated ``nu``) are left out.  Both the
    integer and the half-integer ladder are tried; the one with the smaller
    relative rms residual wins.  ``goodness`` is ``rms residual / delta`` and
    is ``inf`` when the spacing is undefined.
    """
    eps = np.sort(np.asarray(data.single_body_energies))
    m = eps.size
    if m < 2:
        raise ValueError("spacing needs a block of at least two sites")
    if np.all(np.abs(np.asarray(data.nu) - 0.5) < 1e-12):
        return SpacingFit(0.0, float("inf"), "none", 0)
    keep = np.abs(eps) <= SATURATED_ENERGY
    if keep.sum() < 2:
        return SpacingFit(0.0, float("inf"), "none", int(keep.sum()))
    best = None
    for name, candidates in _ladders(m).items():
        for p in candidates:
            pk, ek = p[keep], eps[keep]
            pp = pk @ pk
            if pp == 0:
                continue
            delta = float(pk @ ek / pp)
            if delta == 0:
                continue
            good = float(np.sqrt(np.mean((ek - delta * pk) ** 2)) / abs(delta))
            if best is None or good < best.goodness:
                best = SpacingFit(delta, good, name, int(keep.sum()), p)
    return best if best is not None else SpacingFit(0.0, float("inf"), "none", 0)


def many_body_entanglement_levels(data: EntanglementData, count: int) -> np.ndarray:
    """The ``count`` lowest eigenvalues of ``H_E = sum_p eps_p n_p + f0``.

    Negative ``eps`` are filled in the reference configuration; excitations cost
    ``|eps|`` each, and the lowest subset sums are enumerated best-first.
    """
    eps = np.asarray(data.single_body_energies, dtype=float)
    m = eps.size
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > 2**m:
        raise ValueError(f"only {2**m} many-body levels exist for {m} modes")
    base = float(eps[eps < 0].sum()) + data.f0
    a = np.sort(np.abs(eps))
    out = [0.0]
    heap = [(a[0], 0)] if m else []
    while len(out) < count:
        s, i = heapq.heappop(heap)
        out.append(s)
        if i + 1 < m:
            heapq.heappush(heap, (s + a[i + 1], i + 1))
            heapq.heappush(heap, (s - a[i] + a[i + 1], i + 1))
    return base + np.array(out)


@dataclass
class ArcDiagram:
    """Pairs ``i < j`` whose correlation magnitude exceeds a threshold."""

    n_sites: int
    i: np.ndarray
    j: np.ndarray
    weight: np.ndarray
    threshold: float = 0.0

    def __len__(self):
        return int(self.i.size)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.i.tolist(), self.j.tolist()))

    def to_csv(self, path: str | Path | None = None, comment: str | None = None) -> str:
        rows = zip(self.i.tolist(), self.j.tolist(), self.weight)
        return emit(csv_text(["i", "j", "weight"], rows, comment), path)

    def to_svg(self, path: str | Path | None = None, size: int = 400) -> str:
        """Sites on the unit circle, one straight chord per pair, opacity ``weight / 0.5``."""
        r = 0.45 * size
        c = size / 2
        ang = 2 * np.pi * np.arange(self.n_sites) / self.n_sites
        px = c + r * np.cos(ang)
        py = c - r * np.sin(ang)
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f'<circle cx="{c:.3f}" cy="{c:.3f}" r="{r:.3f}" fill="none" stroke="#888" '
            'stroke-width="1"/>',
        ]
        for a, b, w in zip(self.i, self.j, self.weight):
            op = min(1.0, float(w) / 0.5)
            out.append(
                f'<line x1="{px[a]:.3f}" y1="{py[a]:.3f}" x2="{px[b]:.3f}" y2="{py[b]:.3f}" '
                f'stroke="#c03" stroke-width="1.5" stroke-opacity="{op:.4f}"/>'
            )
        for k in range(self.n_sites):
            out.append(f'<circle cx="{px[k]:.3f}" cy="{py[k]:.3f}" r="2.5" fill="#000"/>')
        out.append("</svg>")
        return emit("\n".join(out) + "\n", path)


def arc_diagram(C: np.ndarray, threshold: float = 0.0) -> ArcDiagram:
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    C = np.asarray(C)
    W = np.abs(C)
    i, j = np.triu_indices(C.shape[0], 1)
    w = W[i, j]
    sel = w > threshold
    return ArcDiagram(C.shape[0], i[sel], j[sel], w[sel], threshold)
