import json
import math

import numpy as np
import pytest

import kosc


def test_params_validation():
    with pytest.raises(ValueError):
        kosc.OscillatorParams(1.5, 4)
    with pytest.raises(ValueError):
        kosc.OscillatorParams(0.5, 0)
    s = kosc.OscillatorParams(0.25, 3)
    assert (s.p, s.N, s.dim) == (0.25, 3, 4)


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("n", [1, 8, 64])
def test_gram_is_identity(p, n):
    gram, dual = kosc.orthogonality_gram(kosc.OscillatorParams(p, n))
    eye = np.eye(n + 1)
    assert np.abs(gram - eye).max() < 1e-10
    assert np.abs(dual - eye).max() < 1e-10


def test_jacobi_eigenvalues_against_numpy():
    s = kosc.OscillatorParams(0.3, 12)
    a, b = kosc.recurrence_coefficients(s)
    vals, vecs = kosc.eigh_tridiagonal(a, b)
    dense = np.diag(a) + np.diag(b, 1) + np.diag(b, -1)
    assert np.allclose(vals, np.linalg.eigvalsh(dense), atol=1e-12)
    assert np.allclose(vals, np.arange(13), atol=1e-11)
    weights = [kosc.weight(k, s) for k in range(13)]
    assert np.allclose(vecs[0] ** 2, weights, atol=1e-13)


def test_hamiltonian_spectrum():
    s = kosc.OscillatorParams(0.5, 4)
    h = kosc.tilde_hamiltonian(s)
    assert np.allclose(np.sort(np.linalg.eigvalsh(h)), [2, 2, 5, 5, 6], atol=1e-10)
    assert np.allclose(np.linalg.eigvalsh(kosc.h_as(s)), np.arange(5) + 0.5, atol=1e-9)


def test_coherent_states():
    s = kosc.OscillatorParams(0.3, 1)
    z = 0.6 + 0.8j
    v = kosc.displacement_state(z, s)
    assert abs(v[0] - math.cos(1.0)) < 1e-12
    assert abs(v[1] + z * math.sin(1.0)) < 1e-12

    s = kosc.OscillatorParams(0.5, 8)
    for z in [0.1, 0.5j, 1 + 1j, 2.0]:
        d = kosc.displacement_state(z, s)
        r = kosc.root_sum_state(z, s)
        assert kosc.aligned_distance(d, r) < 1e-7
        assert abs(np.linalg.norm(kosc.spin_state(z, s)) - 1) < 1e-12
        assert abs(np.linalg.norm(kosc.phase_coherent_state(z, 0.0, s)) - 1) < 1e-12


def test_run_checks_and_cli():
    report = kosc.run_checks(kosc.OscillatorParams(0.7, 6))
    assert report["passed"]
    assert any(e["name"] == "commutator_diag" for e in report["entries"])

    code, out, err = kosc.run_cli(["coherent", "--family", "spin", "--xi", "1", "0", "--N", "4"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["command"] == "coherent"
    assert abs(sum(row["prob"] for row in doc["rows"]) - 1) < 1e-10

    code, _, err = kosc.run_cli(["spectrum", "--p", "1.5"])
    assert code == 2
    assert "p must lie in (0,1)" in err
