import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import rainbowchain as rc
from conftest import ground_state
from rainbowchain.fermions import SingleBodySpectrum


def test_two_site_spectrum():
    sp = rc.diagonalize(rc.build_hopping_matrix([0.5]))
    np.testing.assert_allclose(sp.energies, [-0.5, 0.5])
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(sp.modes, [[s, s], [s, -s]])


@pytest.mark.parametrize("n", [2, 7, 8, 33])
def test_homogeneous_band(n):
    t = 0.5
    sp = rc.diagonalize(rc.build_hopping_matrix(np.full(n - 1, t)))
    k = np.arange(1, n + 1)
    np.testing.assert_allclose(sp.energies, np.sort(-2 * t * np.cos(k * np.pi / (n + 1))), atol=1e-13)


def test_rainbow_strong_h_central_bond():
    spec = rc.ChainSpec(8, h=6.0)
    e = rc.diagonalize(rc.build_hopping_matrix(spec.couplings())).energies
    assert abs(e[-1] - 0.5) < spec.alpha * 0.5
    assert abs(e[0] + 0.5) < spec.alpha * 0.5


def test_orthonormal_antisymmetric_residual(rng):
    for n in (4, 10, 64):
        T = rc.build_hopping_matrix(rng.uniform(0.1, 1.0, n - 1))
        sp = rc.diagonalize(T)
        np.testing.assert_allclose(sp.modes.T @ sp.modes, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(sp.energies, -sp.energies[::-1], atol=1e-10)
        res = np.linalg.norm(-T @ sp.modes - sp.modes * sp.energies, axis=0)
        assert res.max() < 1e-10 * np.abs(sp.energies).max()


def test_sign_convention_deterministic():
    T = rc.build_hopping_matrix(rc.rainbow_couplings(rc.ChainSpec(20, h=0.8)))
    a, b = rc.diagonalize(T), rc.diagonalize(T)
    assert np.array_equal(a.energies, b.energies) and np.array_equal(a.modes, b.modes)
    for col in a.modes.T:
        first = col[np.abs(col) > 1e-8 * np.abs(col).max()][0]
        assert first > 0


def test_dense_fallback_matches():
    T = rc.build_hopping_matrix([0.3, 0.5, 0.2])
    T[0, 3] = T[3, 0] = 0.1  # not tridiagonal any more
    sp = rc.diagonalize(T)
    np.testing.assert_allclose(sp.energies, np.linalg.eigvalsh(-T), atol=1e-14)


def test_nonsymmetric_rejected():
    with pytest.raises(ValueError):
        rc.diagonalize(np.array([[0, 1.0], [0.5, 0]]))


def test_two_site_ground_state():
    C = ground_state(2, kind="homogeneous")
    np.testing.assert_allclose(C, [[0.5, 0.5], [0.5, 0.5]])


def test_ground_state_matches_fock_space(rng):
    for n in (4, 6, 8):
        T = rc.build_hopping_matrix(rng.uniform(0.1, 1.0, n - 1))
        C = rc.ground_state_correlations(rc.diagonalize(T))
        ref = oracles.correlations(oracles.ground_state(T), n)
        np.testing.assert_allclose(C, ref, atol=1e-10)
        np.testing.assert_allclose(np.diag(ref), 0.5, atol=1e-10)


def test_rainbow_large_h_mirror_bonds():
    n, h = 8, 8.0
    C = ground_state(n, h)
    alpha = np.exp(-h / 2)
    mirror = np.array([abs(C[i, n - 1 - i]) for i in range(n)])
    np.testing.assert_allclose(mirror, 0.5, atol=alpha)
    off = np.abs(C - np.diag(np.diag(C)))
    for i in range(n):
        off[i, n - 1 - i] = 0
    assert off.max() < alpha


def test_projector_and_trace(rng):
    for n in (6, 20, 64):
        C = ground_state(n, h=rng.uniform(0, 1))
        assert np.abs(C @ C - C).max() < 1e-9
        assert abs(np.trace(C) - n / 2) < 1e-10
        w = np.linalg.eigvalsh(C)
        assert w.min() > -1e-10 and w.max() < 1 + 1e-10


def test_filling_ambiguity():
    T = rc.build_hopping_matrix([0.5, 0.5, 0.0])  # three-site chain + free site: zero modes
    with pytest.raises(rc.FillingAmbiguityError):
        rc.ground_state_correlations(rc.diagonalize(T))
    sp = SingleBodySpectrum(np.array([-1.0, -1e-13, 1e-13, 1.0]), np.eye(4))
    with pytest.raises(rc.FillingAmbiguityError):
        rc.ground_state_correlations(sp, gap_tol=1e-12)


def test_deep_rainbow_not_ambiguous():
    # smallest level ~1e-14 is above solver resolution, so filling is well defined
    C = ground_state(64, h=1.0)
    assert abs(np.trace(C) - 32) < 1e-10


def test_thermal_limits():
    sp = rc.diagonalize(rc.build_hopping_matrix(rc.rainbow_couplings(rc.ChainSpec(10, h=0.5))))
    np.testing.assert_allclose(rc.thermal_correlations(sp, 0.0), 0.5 * np.eye(10), atol=1e-15)
    gs = rc.ground_state_correlations(sp)
    np.testing.assert_allclose(rc.thermal_correlations(sp, np.inf), gs, atol=1e-15)
    np.testing.assert_allclose(rc.thermal_correlations(sp, 1e5), gs, atol=1e-10)
    with pytest.raises(ValueError):
        rc.thermal_correlations(sp, -1.0)


def test_thermal_two_site():
    sp = rc.diagonalize(rc.build_hopping_matrix([0.5]))
    C = rc.thermal_correlations(sp, 2.0)
    f_lo, f_hi = 1 / (1 + math.exp(-1.0)), 1 / (1 + math.exp(1.0))
    assert f_lo == pytest.approx(0.7310585786300049)
    np.testing.assert_allclose(C[0, 0], 0.5)
    np.testing.assert_allclose(C[0, 1], (f_lo - f_hi) / 2)
    assert C[0, 1] == pytest.approx(0.2311, abs=1e-4)


def test_oracle_two_sites():
    assert rc.exact_oracle_entropy(rc.build_hopping_matrix([0.5]), [0]) == pytest.approx(math.log(2))


def test_oracle_matches_correlation_entropy():
    T = rc.build_hopping_matrix([0.5] * 3)
    C = rc.ground_state_correlations(rc.diagonalize(T))
    assert abs(rc.exact_oracle_entropy(T, [0, 1]) - rc.block_entropy(C, [0, 1])) < 1e-9


def test_oracle_matches_fock_space_ed(rng):
    for n in (4, 6, 8):
        T = rc.build_hopping_matrix(rng.uniform(0.1, 1.0, n - 1))
        psi = oracles.ground_state(T)
        a = int(rng.integers(0, n - 1))
        b = int(rng.integers(a + 1, n + 1))
        assert abs(rc.exact_oracle_entropy(T, range(a, b)) - oracles.block_entropy(psi, n, a, b)) < 1e-9


def test_oracle_rainbow_volume_law():
    T = rc.build_hopping_matrix(rc.rainbow_couplings(rc.ChainSpec(8, h=8.0)))
    assert abs(rc.exact_oracle_entropy(T, range(4)) - 4 * math.log(2)) < 0.01


def test_oracle_limits():
    with pytest.raises(ValueError):
        rc.exact_oracle_entropy(rc.build_hopping_matrix([0.5] * 13), [0])
    with pytest.raises(ValueError):
        rc.exact_oracle_entropy(rc.build_hopping_matrix([0.5] * 3), [4])
    with pytest.raises(rc.FillingAmbiguityError):
        rc.exact_oracle_entropy(rc.build_hopping_matrix([0.5, 0.5, 0.0]), [0])


@settings(max_examples=20, deadline=None)
@given(
    n=st.sampled_from([4, 6, 8]),
    seed=st.integers(0, 2**32 - 1),
)
def test_oracle_equivalence_property(n, seed):
    r = np.random.default_rng(seed)
    T = rc.build_hopping_matrix(r.uniform(0.05, 1.0, n - 1))
    C = rc.ground_state_correlations(rc.diagonalize(T))
    a = int(r.integers(0, n - 1))
    b = int(r.integers(a + 1, n + 1))
    assert abs(rc.exact_oracle_entropy(T, range(a, b)) - rc.block_entropy(C, range(a, b))) < 1e-8


def test_correlation_csv_roundtrip(tmp_path):
    C = ground_state(12, h=0.9)
    text = rc.write_correlation_csv(C, tmp_path / "c.csv")
    assert len(text.splitlines()) == 12
    np.testing.assert_array_equal(rc.read_correlation_csv(tmp_path / "c.csv"), C)
    with pytest.raises(ValueError):
        rc.write_correlation_csv(C + 1j * np.eye(12))
