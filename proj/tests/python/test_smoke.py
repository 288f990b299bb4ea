import numpy as np
import pytest

import jarlskog


def commutator_det(a, b, v):
    h = np.diag(a).astype(complex)
    hp = v @ np.diag(b) @ v.conj().T
    return np.linalg.det(h @ hp - hp @ h)


@pytest.mark.parametrize("n", [3, 4])
def test_closed_form_matches_numpy(n):
    for seed in range(20):
        p = jarlskog.sample_problem(n, seed)
        ref = commutator_det(p["a"], p["b"], p["V"])
        assert abs(jarlskog.det_direct(p["a"], p["b"], p["V"]) - ref) <= 1e-12 * max(1, abs(ref))
        assert abs(jarlskog.det_closed(p["a"], p["b"], p["V"]) - ref) <= 1e-9 * max(1, abs(ref))


def test_det4_terms_sum_to_closed_form():
    p = jarlskog.sample_problem(4, 3)
    terms = jarlskog.det4_terms(p["a"], p["b"], p["V"])
    total = sum(sum(group.values()) for group in terms.values())
    assert total.real == pytest.approx(jarlskog.det_closed(p["a"], p["b"], p["V"]).real, rel=1e-12)
    assert set(terms["pair_cubic"]) == {"(12)(34)", "(13)(24)", "(14)(23)"}


def test_t_factors():
    t = jarlskog.t_factors([0.0, 1.0, 2.0, 3.0])
    assert t == {"(12)(34)": 1.0, "(1243)": 4.0, "(13)(24)": 16.0, "(1324)": 12.0, "(14)(23)": 9.0, "(1234)": -3.0}


def test_haar_and_phases():
    v = jarlskog.haar_unitary(4, 42)
    assert np.allclose(v @ v.conj().T, np.eye(4), atol=1e-13)
    im, re = jarlskog.phase_table(v)
    assert im.shape == (4, 4, 4, 4)
    ref = v[0, 0] * v[1, 1] * np.conj(v[0, 1]) * np.conj(v[1, 0])
    assert im[0, 1, 0, 1] == pytest.approx(ref.imag, abs=1e-15)
    assert re[0, 1, 0, 1] == pytest.approx(ref.real, abs=1e-15)
    assert jarlskog.plaquette(v, 1, 2, 1, 2) == pytest.approx(ref, abs=1e-15)

    J, R = jarlskog.jr_matrices(v)
    assert np.allclose(jarlskog.expand_phases(J), im, atol=1e-12)
    assert max(f["max"] for f in jarlskog.unitary_relation_residuals(v).values()) <= 1e-13
    assert max(f["max"] for f in jarlskog.nonlinear_relation_residuals(v).values()) <= 1e-12

    rec = jarlskog.reconstruct_J(v)
    assert rec["status"] == "solved"
    assert np.allclose(rec["reconstructed"], J, atol=1e-9)
    assert jarlskog.reconstruct_J(np.eye(4))["status"] == "degenerate"


def test_rephasing_invariance():
    v = jarlskog.haar_unitary(3, 5)
    w = jarlskog.rephase(v, [0.1, 2.0, -1.0], [0.4, 0.0, 3.0])
    assert np.allclose(jarlskog.phase_table(w)[0], jarlskog.phase_table(v)[0], atol=1e-13)
    report = jarlskog.n3_phase_table(v)
    assert report["pattern_matches"]


def test_eigh_and_hermitian_entry_point():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    y = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h, hp = (x + x.conj().T) / 2, (y + y.conj().T) / 2
    w, _ = jarlskog.eigh(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    ref = np.linalg.det(h @ hp - hp @ h)
    assert abs(jarlskog.det_from_hermitian(h, hp) - ref) <= 1e-10 * abs(ref)


def test_verify_report():
    report = jarlskog.verify(4, trials=20, seed=1)
    assert report["all_pass"]
    assert report == jarlskog.verify(4, trials=20, seed=1, threads=2)


def test_problem_round_trip():
    p = jarlskog.sample_problem(3, 9)
    text = jarlskog.write_problem(p["a"], p["b"], p["V"])
    q = jarlskog.parse_problem(text)
    assert q["a"] == p["a"]
    assert np.array_equal(q["V"], p["V"])


def test_errors():
    with pytest.raises(jarlskog.NotUnitaryError):
        jarlskog.det_direct([0, 1, 2], [0, 1, 2], 2 * np.eye(3))
    with pytest.raises(jarlskog.DegenerateSpectrumError):
        jarlskog.det_direct([0, 0, 2], [0, 1, 2], np.eye(3))
    with pytest.raises(jarlskog.DimensionError):
        jarlskog.det_closed([0, 1, 2, 3, 4], [0, 1, 2, 3, 4], np.eye(5))
    with pytest.raises(jarlskog.ParseError):
        jarlskog.parse_problem("{")
    with pytest.raises(jarlskog.IndexOutOfRangeError):
        jarlskog.plaquette(np.eye(3), 0, 1, 1, 2)
    assert issubclass(jarlskog.DimensionError, ValueError)
