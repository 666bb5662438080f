"""Single-body spectra and correlation matrices of quadratic hopping Hamiltonians.

The Hamiltonian is ``H = -sum_i t_i c_i^dag c_{i+1} + h.c.``, i.e. the single-body
matrix is ``-T``.  Correlation matrices are ``C_ij = <c_i^dag c_j>``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np
import scipy.linalg as sla
from scipy.special import expit

EPS = np.finfo(float).eps
MAX_ORACLE_SITES = 12


class FillingAmbiguityError(ValueError):
    """The Fermi level is (numerically) degenerate, so the half-filled state is not unique."""


class EigensolverError(RuntimeError):
    def __init__(self, index: int, residual: float, msg: str = ""):
        self.index = index
        self.residual = residual
        super().__init__(
            msg or f"eigensolver inaccurate at level {index}: residual {residual:.3e}"
        )


@dataclass(frozen=True)
class SingleBodySpectrum:
    """Eigen-decomposition of ``-T``.

    ``energies`` ascend; column ``k`` of ``modes`` is the orbital of ``energies[k]``.
    """

    energies: np.ndarray
    modes: np.ndarray
    norm: float = 1.0  # spectral norm of T
    # zero-diagonal tridiagonal input: every level carries small *relative* error
    relative_accuracy: bool = False
    # exact zero mode forced by the coupling pattern (bipartite chains only)
    singular: bool = False

    @property
    def n_sites(self) -> int:
        return self.energies.size


def _is_tridiagonal(A: np.ndarray) -> bool:
    return not np.any(np.triu(A, 2)) and not np.any(np.tril(A, -2))


def _fix_signs(v: np.ndarray) -> np.ndarray:
    # first component above noise level made positive, column by column
    v = v.copy()
    big = np.abs(v) > 1e-8 * np.abs(v).max(axis=0)
    first = np.argmax(big, axis=0)
    s = np.sign(v[first, np.arange(v.shape[1])])
    s[s == 0] = 1.0
    return v * s


def diagonalize(T: np.ndarray) -> SingleBodySpectrum:
    """Full eigendecomposition of ``-T`` for a real symmetric hopping matrix.

    Tridiagonal input goes through the implicit QL/QR tridiagonal solver
    (LAPACK ``stev``).  With a zero diagonal the matrix is a bipartite
    (Golub-Kahan) tridiagonal and the solver resolves even exponentially small
    levels to relative accuracy, which is what keeps deep rainbow chains
    (``h L`` far beyond 30) usable.  A general dense routine would stop at
    levels of order ``eps * ||T||``.
    """
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("hopping matrix must be square")
    if not np.allclose(T, T.T, rtol=0, atol=1e-14 * max(1.0, np.abs(T).max())):
        raise ValueError("hopping matrix must be symmetric")
    H = -T
    tridiagonal = _is_tridiagonal(T) and T.shape[0] > 1
    bipartite = tridiagonal and not np.any(np.diag(T))
    try:
        if tridiagonal:
            e, v = sla.eigh_tridiagonal(
                np.diag(H).copy(), np.diag(H, 1).copy(), lapack_driver="stev"
            )
        else:
            e, v = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(-1, float("nan"), f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(e, kind="stable")
    e, v = e[order], _fix_signs(v[:, order])
    norm = float(np.abs(e).max()) if e.size else 0.0
    res = np.linalg.norm(H @ v - v * e, axis=0)
    bad = np.flatnonzero(res > 1e-10 * max(norm, EPS))
    if bad.size:
        k = int(bad[0])
        raise EigensolverError(k, float(res[k]))
    singular = False
    if bipartite and T.shape[0] % 2 == 0:
        # det(T) = +-prod(t_0 t_2 t_4 ...)^2
        singular = bool(np.any(np.diag(T, 1)[0::2] == 0))
    return SingleBodySpectrum(e, v, norm, relative_accuracy=bipartite, singular=singular)


def _fermi_gap_tol(spectrum: SingleBodySpectrum) -> float:
    if spectrum.relative_accuracy:
        return np.finfo(float).tiny
    return 8 * EPS * max(spectrum.norm, EPS)


def ground_state_correlations(
    spectrum: SingleBodySpectrum, gap_tol: float | None = None
) -> np.ndarray:
    """Half-filled ground state: projector onto the ``N/2`` lowest orbitals.

    Raises :class:`FillingAmbiguityError` if the chain has an exact zero mode
    or either level adjacent to the Fermi level is within ``gap_tol`` of zero.
    The default tolerance is the eigensolver's resolution: ``8 eps ||T||`` for
    general matrices, the smallest normal float for bipartite chains.
    """
    n = spectrum.n_sites
    if n % 2:
        raise ValueError(f"half filling needs an even number of sites, got {n}")
    tol = _fermi_gap_tol(spectrum) if gap_tol is None else gap_tol
    nf = n // 2
    e = spectrum.energies
    lo, hi = e[nf - 1], e[nf]
    if spectrum.singular or abs(lo) < tol or abs(hi) < tol or lo >= 0 or hi <= 0:
        raise FillingAmbiguityError(
            f"filling ambiguity: levels at the Fermi level are {lo:.3e}, {hi:.3e}"
        )
    v = spectrum.modes[:, :nf]
    return v @ v.T


def fermi_occupations(energies: np.ndarray, beta: float) -> np.ndarray:
    return expit(-beta * np.asarray(energies))


def thermal_correlations(spectrum: SingleBodySpectrum, beta: float) -> np.ndarray:
    """Gibbs-state correlations ``sum_k f(e_k) v_k v_k^T`` with Fermi-Dirac ``f``."""
    if not beta >= 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if np.isinf(beta):
        return ground_state_correlations(spectrum)
    f = fermi_occupations(spectrum.energies, beta)
    v = spectrum.modes
    return (v * f) @ v.T


def exact_oracle_entropy(T: np.ndarray, block) -> float:
    """Von Neumann entropy of *block* from the full many-body ground state.

    The ``N/2``-particle Slater determinant is expanded in the occupation basis
    with the block's fermions ordered first; the amplitude of a configuration is
    then the determinant of the filled orbitals restricted to its occupied rows.
    The reduced density matrix follows from the singular values of the
    block-by-complement amplitude matrix.
    """
    T = np.asarray(T, dtype=float)
    n = T.shape[0]
    if n > MAX_ORACLE_SITES:
        raise ValueError(f"oracle limited to N <= {MAX_ORACLE_SITES}, got {n}")
    block = sorted({int(i) for i in block})
    if not block or block[0] < 0 or block[-1] >= n:
        raise ValueError(f"block {block} out of range for N={n}")
    rest = [i for i in range(n) if i not in block]
    spectrum = diagonalize(T)
    ground_state_correlations(spectrum)  # same filling checks
    nf = n // 2
    V = spectrum.modes[:, :nf]

    def configs(sites):
        out = []
        for k in range(len(sites) + 1):
            out.extend(combinations(sites, k))
        return out

    ca, cb = configs(block), configs(rest)
    ia = {c: i for i, c in enumerate(ca)}
    ib = {c: i for i, c in enumerate(cb)}
    M = np.zeros((len(ca), len(cb)))
    for a in ca:
        need = nf - len(a)
        if need < 0 or need > len(rest):
            continue
        for b in combinations(rest, need):
            M[ia[a], ib[b]] = np.linalg.det(V[list(a) + list(b), :])
    p = np.linalg.svd(M, compute_uv=False) ** 2
    p = p[p > 1e-300]
    p = p / p.sum()
    return float(-(p * np.log(p)).sum())


def write_correlation_csv(C: np.ndarray, path: str | Path | None = None) -> str:
    """Full ``N x N`` matrix, one row per line, 17 significant digits."""
    C = np.asarray(C)
    if np.iscomplexobj(C):
        if np.abs(C.imag).max() > 0:
            raise ValueError("complex correlation matrices have no CSV form; pass C.real")
        C = C.real
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in C:
        w.writerow([f"{v:.17g}" for v in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_correlation_csv(path: str | Path) -> np.ndarray:
    lines = [l for l in Path(path).read_text().splitlines() if l and not l.startswith("#")]
    return np.array([[float(v) for v in r] for r in csv.reader(lines)])
