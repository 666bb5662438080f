"""Quench dynamics of Gaussian states under a quadratic Hamiltonian."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal, Sequence

import numpy as np

from ._io import csv_text, emit, json_text
from .chains import ChainSpec, build_hopping_matrix
from .entanglement import block_entropy
from .fermions import SingleBodySpectrum, diagonalize, ground_state_correlations

DEFAULT_RAINBOW_H = 6.0
TRANSIENT_DROP = 0.1


class Propagator:
    """Evolves correlation matrices under a fixed final Hamiltonian.

    ``-T`` is diagonalized once; ``C(t) = V (D * e^{i(e_k - e_l) t}) V^T`` with
    ``D = V^T C0 V``.  Every sample is computed from ``t = 0`` directly.
    """

    def __init__(self, T_final: np.ndarray | None = None, spectrum: SingleBodySpectrum | None = None):
        if spectrum is None:
            if T_final is None:
                raise ValueError("need a hopping matrix or its spectrum")
            spectrum = diagonalize(T_final)
        self.spectrum = spectrum
        self._V = spectrum.modes
        self._e = spectrum.energies

    def rotate_in(self, C0: np.ndarray) -> np.ndarray:
        C0 = np.asarray(C0)
        if C0.shape != (self._e.size, self._e.size):
            raise ValueError(
                f"correlation matrix of shape {C0.shape} does not match {self._e.size} sites"
            )
        return self._V.T @ C0 @ self._V

    def at(self, D: np.ndarray, t: float) -> np.ndarray:
        ph = np.exp(1j * self._e * t)
        return self._V @ (ph[:, None] * D * ph.conj()[None, :]) @ self._V.T

    def __call__(self, C0: np.ndarray, t: float) -> np.ndarray:
        if t == 0:
            return np.array(C0, dtype=complex)
        return self.at(self.rotate_in(C0), t)


def evolve(C0: np.ndarray, T_final: np.ndarray, t: float) -> np.ndarray:
    """``C(t) = <c^dag_i(t) c_j(t)>`` after evolving for time *t* under ``-T_final``.

    The result is complex Hermitian; ``t = 0`` returns ``C0`` unchanged.
    """
    return Propagator(T_final)(C0, t)


def build_dimer_state(n_sites: int, offset: int = 0) -> np.ndarray:
    """Product of nearest-neighbour bonding orbitals ``(c^dag_a + c^dag_b)/sqrt 2``.

    ``offset=0`` pairs ``(0,1), (2,3), ...``; ``offset=1`` pairs ``(1,2), (3,4), ...``
    and closes the chain with the bond ``(N-1, 0)``.
    """
    if n_sites < 2 or n_sites % 2:
        raise ValueError(f"dimer state needs an even number of sites, got {n_sites}")
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    C = np.zeros((n_sites, n_sites))
    for a in range(offset, n_sites + offset, 2):
        i, j = a % n_sites, (a + 1) % n_sites
        C[i, i] = C[j, j] = 0.5
        C[i, j] = C[j, i] = 0.5
    return C


def rainbow_bond_signs(n_sites: int) -> np.ndarray:
    """Bond signs ``(-1)^m`` of the large-``h`` rainbow ground state.

    Entry ``m`` belongs to the bond joining the sites at distance ``m + 1/2``
    from the centre.
    """
    return (-1.0) ** np.arange(n_sites // 2)


def build_rainbow_ideal(
    n_sites: int,
    phases: Sequence[float] | Literal["from-hamiltonian"] = "from-hamiltonian",
    h: float = DEFAULT_RAINBOW_H,
    J: float = 1.0,
) -> np.ndarray:
    """Rainbow state with one valence bond per mirror pair.

    By default this is the ground state of the rainbow chain at large *h*,
    which fixes the bond phases.  Passing a list of ``N/2`` signs instead
    builds ideal bonds ``(c^dag_i + s_m c^dag_{N-1-i}) / sqrt 2``, indexed
    from the central bond outward.
    """
    if n_sites < 2 or n_sites % 2:
        raise ValueError(f"rainbow state needs an even number of sites, got {n_sites}")
    if isinstance(phases, str):
        if phases != "from-hamiltonian":
            raise ValueError(f"unknown phase convention {phases!r}")
        spec = ChainSpec(n_sites, h=h, J=J, kind="rainbow")
        return ground_state_correlations(diagonalize(build_hopping_matrix(spec.couplings())))
    s = np.asarray(phases, dtype=float)
    L = n_sites // 2
    if s.shape != (L,):
        raise ValueError(f"need {L} bond signs, got {s.size}")
    C = np.zeros((n_sites, n_sites))
    for m in range(L):
        i, j = L - 1 - m, L + m
        C[i, i] = C[j, j] = 0.5
        C[i, j] = C[j, i] = 0.5 * s[m]
    return C


@dataclass(frozen=True)
class InitialState:
    """Recipe for a pure initial state at half filling."""

    kind: Literal["rainbow", "rainbow-ideal", "dimer", "gs"]
    n_sites: int
    spec: ChainSpec | None = None
    h: float = DEFAULT_RAINBOW_H
    offset: int = 0
    signs: tuple[float, ...] | None = None

    def correlations(self) -> np.ndarray:
        if self.kind == "rainbow":
            return build_rainbow_ideal(self.n_sites, h=self.h)
        if self.kind == "rainbow-ideal":
            signs = self.signs if self.signs is not None else rainbow_bond_signs(self.n_sites)
            return build_rainbow_ideal(self.n_sites, phases=signs)
        if self.kind == "dimer":
            return build_dimer_state(self.n_sites, self.offset)
        if self.kind == "gs":
            if self.spec is None or self.spec.n_sites != self.n_sites:
                raise ValueError("ground-state initial condition needs a matching ChainSpec")
            T = build_hopping_matrix(self.spec.couplings())
            return ground_state_correlations(diagonalize(T))
        raise ValueError(f"unknown initial state {self.kind!r}")


@dataclass
class QuenchTrajectory:
    times: np.ndarray
    blocks: np.ndarray  # left-block sizes ell
    entropies: np.ndarray  # shape (n_times, n_blocks)
    half_chain: np.ndarray
    trace_error: np.ndarray
    purity_error: np.ndarray
    n_sites: int
    snapshots: dict = field(default_factory=dict)

    def series(self, ell: int) -> np.ndarray:
        k = np.flatnonzero(self.blocks == ell)
        if not k.size:
            raise KeyError(f"block {ell} was not tracked")
        return self.entropies[:, k[0]]

    def half_chain_minimum(self) -> tuple[float, float]:
        k = int(np.argmin(self.half_chain))
        return float(self.times[k]), float(self.half_chain[k])

    def revival(self) -> tuple[float, float]:
        """Best return of the tracked profile to its ``t = 0`` shape after the half-chain minimum.

        Similarity is ``1 - |S(t) - S(0)| / |S(0)|`` over the tracked blocks.
        """
        k0 = int(np.argmin(self.half_chain))
        ref = self.entropies[0]
        norm = np.linalg.norm(ref)
        if k0 + 1 >= self.times.size or norm == 0:
            return float("nan"), float("nan")
        sim = 1 - np.linalg.norm(self.entropies[k0 + 1 :] - ref, axis=1) / norm
        k = int(np.argmax(sim))
        return float(self.times[k0 + 1 + k]), float(sim[k])

    def transient_delays(self, drop: float = TRANSIENT_DROP) -> dict[int, float]:
        """First time each block's entropy falls ``drop`` below its initial value (NaN if never)."""
        out = {}
        for k, ell in enumerate(self.blocks):
            below = np.flatnonzero(self.entropies[:, k] < self.entropies[0, k] - drop)
            out[int(ell)] = float(self.times[below[0]]) if below.size else float("nan")
        return out

    def summary(self) -> dict:
        t_min, s_min = self.half_chain_minimum()
        t_rev, fid = self.revival()
        return {
            "t_min": t_min,
            "S_min": s_min,
            "t_revival": t_rev,
            "revival_fidelity": fid,
        }

    def to_csv(self, path: str | Path | None = None, comment: str | None = None) -> str:
        rows = (
            (t, int(ell), self.entropies[a, b])
            for a, t in enumerate(self.times)
            for b, ell in enumerate(self.blocks)
        )
        return emit(csv_text(["t", "ell", "S"], rows, comment), path)

    def summary_json(self, path: str | Path | None = None) -> str:
        return emit(json_text(self.summary()), path)


def default_times(n_sites: int, dt: float = 0.25, t_max: float | None = None) -> np.ndarray:
    t_max = 2.0 * n_sites if t_max is None else t_max
    return np.arange(int(round(t_max / dt)) + 1) * dt


def run_quench(
    initial,
    final_spec: ChainSpec,
    times: Iterable[float] | None = None,
    blocks: Iterable[int] | None = None,
    order: float = 1,
    keep_snapshots: bool = False,
) -> QuenchTrajectory:
    """Entropies of left blocks along the evolution of *initial* under *final_spec*.

    *initial* is an :class:`InitialState` or a correlation matrix.  ``blocks``
    lists left-block sizes ``ell`` (default ``1 .. N/2``).
    """
    C0 = initial.correlations() if isinstance(initial, InitialState) else np.asarray(initial)
    n = C0.shape[0]
    if final_spec.n_sites != n:
        raise ValueError(f"final chain has {final_spec.n_sites} sites, state has {n}")
    times = default_times(n) if times is None else np.asarray(list(times), dtype=float)
    if np.any(np.diff(times) < 0):
        raise ValueError("time grid must be sorted")
    blocks = np.arange(1, n // 2 + 1) if blocks is None else np.asarray(list(blocks), dtype=int)
    if np.any(blocks < 1) or np.any(blocks > n - 1):
        raise ValueError("left-block sizes must lie in 1 .. N-1")

    prop = Propagator(build_hopping_matrix(final_spec.couplings()))
    D = prop.rotate_in(C0)
    S = np.empty((times.size, blocks.size))
    half = np.empty(times.size)
    tr_err = np.empty(times.size)
    pur_err = np.empty(times.size)
    snaps = {}
    for a, t in enumerate(times):
        C = np.array(C0, dtype=complex) if t == 0 else prop.at(D, t)
        S[a] = [block_entropy(C, range(ell), order) for ell in blocks]
        half[a] = block_entropy(C, range(n // 2), order)
        tr_err[a] = abs(np.trace(C).real - n / 2)
        pur_err[a] = np.abs(C @ C - C).max()
        if keep_snapshots:
            snaps[float(t)] = C
    return QuenchTrajectory(times, blocks, S, half, tr_err, pur_err, n, snaps)
