import math

import numpy as np
import pytest

import _latspec as ls


def test_lattice_basics():
    L = ls.Lattice(np.eye(2))
    assert L.dim == 2
    assert L.det == pytest.approx(1.0)
    D = ls.dual(L)
    assert np.allclose(D.basis, np.eye(2))


def test_counting_and_norms():
    z2 = ls.Lattice.identity(2)
    assert ls.count_in_ball(z2, 1.0) == 5
    assert ls.count_in_ball(z2, 5.0) == 81
    assert ls.kth_norm(z2, 4) == pytest.approx(1.0)
    assert ls.kth_norm(z2, 5) == pytest.approx(math.sqrt(2.0))
    norms = ls.prefix_norms(z2, 8)
    assert norms == sorted(norms)


def test_spectra():
    z2 = ls.Lattice.identity(2)
    spec = ls.torus_spectrum(z2, 4)
    assert spec[0] == pytest.approx(0.0)
    assert spec[1] == pytest.approx(4.0 * math.pi**2)
    assert ls.torus_counting(z2, 4.0 * math.pi**2, strict=True) == 1
    evs, labels = ls.klein_spectrum(math.sqrt(2), math.sqrt(2), 3)
    assert evs[0] == 0.0
    assert labels[0] == (0, 0)
    assert ls.klein_injectivity(1.0, 2.0) == pytest.approx(1.0)


def test_minima_and_invariants():
    t4 = ls.theta_lattice(2, 2)
    mins = ls.successive_minima(t4)
    assert mins[0] == pytest.approx(2**-0.5)
    assert mins[1] == pytest.approx(2**0.5)
    ok, lo, hi = ls.check_minkowski(t4)
    assert ok
    assert all(r[0] for r in ls.check_transference(t4))
    ok, eps1, epsd = ls.check_succmin_bounds(t4)
    assert ok


def test_families_and_optimizer():
    assert ls.lambda_tilde(ls.theta_lattice(3, 2), 6) == pytest.approx(3**0.5)
    hexa = ls.moduli_lattice(0.5, math.sqrt(3) / 2)
    assert hexa.det == pytest.approx(1.0)
    rep = ls.optimize_torus_2d(1, a_steps=40, b_steps=40, b_max=1.5)
    assert rep["value"] == pytest.approx(4 * math.pi**2 * 2 / math.sqrt(3), rel=1e-2)
    assert ls.theta_discrepancy(3, 2) == pytest.approx(3.0)


def test_aniso():
    z2 = ls.Lattice.identity(2)
    e0 = np.array([[1.0], [0.0]])
    e1 = np.array([[0.0], [1.0]])
    blocks = [(e0, 0.2), (e1, 0.2)]
    assert ls.n_eps(blocks, 1.0, z2) == 81
    assert ls.main_term(blocks, ([0, 1], [], []), 1.0, z2) == pytest.approx(
        25 * math.pi
    )
    rot, rates = ls.lattice_to_Teps(ls.theta_lattice(2, 2))
    assert rates[0] == pytest.approx(2**-0.5)
    assert rates[1] == pytest.approx(2**0.5)


def test_errors():
    with pytest.raises(ls.LatspecError):
        ls.Lattice(np.array([[1.0, 2.0], [2.0, 4.0]]))
